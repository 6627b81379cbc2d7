"""Finite-dimensional real Lie algebras given by exact structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .linalg import (
    Subspace,
    compose_bilinear,
    contains,
    contract,
    eye,
    format_vector,
    inverse,
    is_zero,
    qarray,
    solve,
    zeros,
)
from .report import Report, StructureError

HAT = "^"


class LieAlgebra:
    """Lie algebra with basis ``e_0..e_{n-1}`` and ``[e_i, e_j] = sum_k c[i,j,k] e_k``.

    The constructor rejects tensors that are not antisymmetric in the first
    two slots or violate the Jacobi identity.
    """

    def __init__(self, name: str, labels: Sequence[str], c, check: bool = True):
        labels = tuple(labels)
        n = len(labels)
        c = zeros(n, n, n) if n == 0 else qarray(c)
        if c.shape != (n, n, n):
            raise ValueError(f"structure tensor has shape {c.shape}, expected {(n, n, n)}")
        if len(set(labels)) != n:
            raise ValueError("basis labels must be distinct")
        if check:
            sym = c + c.transpose(1, 0, 2)
            if not is_zero(sym):
                i, j = next((i, j) for i in range(n) for j in range(n) if not is_zero(sym[i, j]))
                raise StructureError(
                    "ANTISYMMETRY", f"[{labels[i]},{labels[j]}] != -[{labels[j]},{labels[i]}]", (i, j)
                )
            rep = check_jacobi(c)
            if not rep.ok:
                (i, j, k), v = rep.first()
                raise StructureError(
                    "JACOBI",
                    f"Jacobi identity fails on ({labels[i]}, {labels[j]}, {labels[k]}): "
                    f"{format_vector(v, labels)}",
                    rep.failures,
                )
        c.flags.writeable = False
        self.name = name
        self.labels = labels
        self.c = c

    @classmethod
    def from_brackets(
        cls,
        name: str,
        labels: Sequence[str],
        brackets: Mapping[tuple[str, str], Mapping[str, object]],
        check: bool = True,
    ) -> "LieAlgebra":
        """Build from nonzero relations ``{(a, b): {label: coeff}}``; the
        opposite ordering is filled in by antisymmetry."""
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        c = zeros(n, n, n)
        for (a, b), out in brackets.items():
            i, j = index[a], index[b]
            if i == j:
                raise ValueError(f"[{a},{a}] must vanish")
            for lab, coeff in out.items():
                q = qarray([coeff])[0]
                c[i, j, index[lab]] += q
                c[j, i, index[lab]] -= q
        return cls(name, labels, c, check=check)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.labels == other.labels and self.same_constants(other)

    def __hash__(self):
        return hash((self.labels, tuple(self.c.flat)))

    def same_constants(self, other: "LieAlgebra") -> bool:
        return self.c.shape == other.c.shape and all(
            x == y for x, y in zip(self.c.flat, other.c.flat)
        )

    def basis_vector(self, label: str) -> np.ndarray:
        v = zeros(self.dim)
        v[self.labels.index(label)] = Fraction(1)
        return v

    def vec(self, combo: Mapping[str, object]) -> np.ndarray:
        """Vector from ``{label: coeff}``."""
        v = zeros(self.dim)
        for lab, coeff in combo.items():
            v[self.labels.index(lab)] += qarray([coeff])[0]
        return v

    def fmt(self, v) -> str:
        return format_vector(v, self.labels)

    def bracket(self, x, y) -> np.ndarray:
        x, y = qarray(x), qarray(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match the algebra dimension")
        return contract(y, contract(x, self.c, 1), 1)

    def ad(self, x) -> np.ndarray:
        """Matrix of ``y -> [x, y]``."""
        x = qarray(x)
        return contract(x, self.c, 1).T

    def ad_basis(self) -> list[np.ndarray]:
        return [self.c[i].T.copy() for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return is_zero(self.c)


def structure_tensor(g) -> np.ndarray:
    return g.c if isinstance(g, LieAlgebra) else qarray(g)


def jacobiator(c) -> np.ndarray:
    """``J[i,j,k] = [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]``."""
    c = structure_tensor(c)
    t = contract(c, c, ([2], [0]))  # t[i,j,k] = [[e_i,e_j],e_k]
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def check_jacobi(g) -> Report:
    """Jacobi identity over all basis triples ``i < j < k``.

    Accepts a :class:`LieAlgebra` or a raw structure tensor, so invalid
    tensors can be diagnosed without constructing an algebra.
    """
    c = structure_tensor(g)
    n = c.shape[0]
    report = Report("JACOBI")
    if n < 3:
        return report
    jac = jacobiator(c)
    for i, j, k in combinations(range(n), 3):
        if not is_zero(jac[i, j, k]):
            report.failures.append(((i, j, k), jac[i, j, k]))
    return report


def abelian(n: int, name: str | None = None, labels: Sequence[str] | None = None) -> LieAlgebra:
    labels = labels or [f"e{i + 1}" for i in range(n)]
    return LieAlgebra(name or f"R{n}", labels, zeros(n, n, n))


def matrix_lie_algebra(name: str, labels: Sequence[str], matrices: Sequence) -> LieAlgebra:
    """Lie algebra spanned by the given matrices under the commutator."""
    mats = [qarray(m) for m in matrices]
    flat = np.array([m.reshape(-1) for m in mats], dtype=object).T
    n = len(mats)
    c = zeros(n, n, n)
    for i in range(n):
        for j in range(i + 1, n):
            comm = (mats[i].dot(mats[j]) - mats[j].dot(mats[i])).reshape(-1)
            x = solve(flat, comm)
            if x is None:
                raise ValueError(f"span is not closed: [{labels[i]},{labels[j]}]")
            c[i, j] = x
            c[j, i] = -x
    return LieAlgebra(name, labels, c)


# --------------------------------------------------------------------------
# subspaces


def _check_ambient(g: LieAlgebra, s: Subspace) -> None:
    if s.ambient_dim != g.dim:
        raise ValueError("subspace lives in a space of the wrong dimension")


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    _check_ambient(g, s)
    if s.dim < 2:
        return True
    b = s.basis  # rows span s
    brackets = contract(b, contract(b, g.c, ([1], [0])), ([1], [1]))  # [b_p, b_q] at [q, p]
    return all(contains(s, brackets[q, p]) for p, q in combinations(range(s.dim), 2))


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    _check_ambient(g, s)
    return all(contains(s, g.bracket(e, x)) for e in eye(g.dim) for x in s.vectors())


def is_abelian(g: LieAlgebra, s: Subspace | None = None) -> bool:
    if s is None:
        return g.is_abelian()
    _check_ambient(g, s)
    return all(is_zero(g.bracket(x, y)) for x, y in combinations(s.vectors(), 2))


def restrict(g: LieAlgebra, vectors: Sequence, labels: Sequence[str] | None = None, name: str | None = None) -> LieAlgebra:
    """Intrinsic Lie algebra on the span of ``vectors`` (which must be a
    basis of a subalgebra), with constants in that basis."""
    vecs = [qarray(v) for v in vectors]
    k = len(vecs)
    basis = np.array(vecs, dtype=object).T.reshape(g.dim, k)
    c = zeros(k, k, k)
    for i in range(k):
        for j in range(i + 1, k):
            x = solve(basis, g.bracket(vecs[i], vecs[j]))
            if x is None:
                raise ValueError("span is not a subalgebra")
            c[i, j] = x
            c[j, i] = -x
    if labels is None:
        labels = [format_vector(v, g.labels, spaces=False) for v in vecs]
    return LieAlgebra(name or f"sub({g.name})", labels, c)


def killing_form(g: LieAlgebra) -> np.ndarray:
    ads = g.ad_basis()
    n = g.dim
    out = zeros(n, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = sum((ads[i] * ads[j].T).flat, Fraction(0))
    return out


# --------------------------------------------------------------------------
# constructions


def direct_sum(g: LieAlgebra, h: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n, m = g.dim, h.dim
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = g.c
    c[n:, n:, n:] = h.c
    labels = list(g.labels) + list(h.labels)
    if len(set(labels)) != n + m:
        labels = [f"{lab}_1" for lab in g.labels] + [f"{lab}_2" for lab in h.labels]
    return LieAlgebra(name or f"{g.name}+{h.name}", labels, c)


def apply_change_of_basis(g: LieAlgebra, p, labels: Sequence[str] | None = None, name: str | None = None) -> LieAlgebra:
    """Constants relative to the new basis ``f_j = sum_i p[i, j] e_i``."""
    p = qarray(p)
    p_inv = inverse(p)
    c = compose_bilinear(g.c, out=p_inv, left=p, right=p)
    if labels is None:
        labels = [format_vector(p[:, j], g.labels, spaces=False) for j in range(g.dim)]
    return LieAlgebra(name or g.name, labels, c)


change_basis = apply_change_of_basis


def is_homomorphism(g: LieAlgebra, h: LieAlgebra, phi) -> bool:
    """``phi [x, y] == [phi x, phi y]`` on basis pairs; ``phi`` is ``h.dim x g.dim``."""
    phi = qarray(phi).reshape(h.dim, g.dim)
    lhs = compose_bilinear(g.c, out=phi)
    rhs = compose_bilinear(h.c, left=phi, right=phi)
    return is_zero(lhs - rhs)


@dataclass(frozen=True)
class RealifiedComplexification:
    """Real algebra underlying ``g (x) C`` with basis ``e_1..e_n, ie_1..ie_n``."""

    base: LieAlgebra
    hat: LieAlgebra
    i_map: np.ndarray

    @property
    def n(self) -> int:
        return self.base.dim

    def real(self, v) -> np.ndarray:
        """``v`` in ``g`` viewed inside the hat algebra."""
        out = zeros(2 * self.n)
        out[: self.n] = qarray(v)
        return out

    def imag(self, v) -> np.ndarray:
        """``I v`` for ``v`` in ``g``."""
        out = zeros(2 * self.n)
        out[self.n:] = qarray(v)
        return out

    def complexify(self, m) -> np.ndarray:
        """Complex-linear extension of an endomorphism of ``g``."""
        m = qarray(m)
        n = self.n
        out = zeros(2 * n, 2 * n)
        out[:n, :n] = m
        out[n:, n:] = m
        return out


def hat_label(label: str) -> str:
    return label + HAT


def realify_complexification(g: LieAlgebra) -> RealifiedComplexification:
    n = g.dim
    c = zeros(2 * n, 2 * n, 2 * n)
    c[:n, :n, :n] = g.c
    c[:n, n:, n:] = g.c
    c[n:, :n, n:] = g.c
    c[n:, n:, :n] = -g.c
    imag = [hat_label(lab) for lab in g.labels]
    if set(imag) & set(g.labels):
        # second and later hats: X^ already names a real basis vector
        imag = [f"i{lab}" for lab in g.labels]
        while set(imag) & set(g.labels):
            imag = [f"i{lab}" for lab in imag]
    labels = list(g.labels) + imag
    # Jacobi for the hat algebra follows from Jacobi for g
    hat = LieAlgebra(f"{g.name}^", labels, c, check=False)
    i_map = zeros(2 * n, 2 * n)
    for k in range(n):
        i_map[n + k, k] = Fraction(1)
        i_map[k, n + k] = Fraction(-1)
    i_map.flags.writeable = False
    return RealifiedComplexification(g, hat, i_map)

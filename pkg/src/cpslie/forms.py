"""Exterior forms, the Chevalley-Eilenberg differential and metric data
compatible with a complex product structure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .lie import LieAlgebra
from .linalg import contract, eigenspace, eye, inverse, is_zero, qarray, rank, zeros
from .report import StructureError
from .structures import ComplexProductStructure


@dataclass(frozen=True, eq=False)
class KForm:
    """Alternating form; ``tensor`` has one axis per argument."""

    tensor: np.ndarray

    def __post_init__(self):
        t = qarray(self.tensor)
        if t.ndim < 1 or len(set(t.shape)) != 1:
            raise ValueError("form tensor must be square in every axis")
        object.__setattr__(self, "tensor", t)
        if t.ndim == 2 and not is_zero(t + t.T):
            raise ValueError("2-form must be antisymmetric")
        if t.ndim == 3:
            for perm in ((1, 0, 2), (0, 2, 1)):
                if not is_zero(t + t.transpose(perm)):
                    raise ValueError("3-form must be alternating")

    @property
    def degree(self) -> int:
        return self.tensor.ndim

    @property
    def dim(self) -> int:
        return self.tensor.shape[0]

    @classmethod
    def from_components(cls, dim: int, degree: int, comps: dict) -> "KForm":
        """Build from values on increasing index tuples, e.g. ``{(0, 1): 1}``."""
        t = zeros(*([dim] * degree))
        for idx, val in comps.items():
            idx = tuple(idx)
            q = qarray([val])[0]
            for perm in permutations(range(degree)):
                sign = _perm_sign(perm)
                t[tuple(idx[p] for p in perm)] = sign * q
        return cls(t)

    def components(self) -> dict[tuple[int, ...], Fraction]:
        """Nonzero values on increasing index tuples."""
        out = {}
        for idx in combinations(range(self.dim), self.degree):
            v = self.tensor[idx]
            if v != 0:
                out[idx] = v
        return out

    def is_zero(self) -> bool:
        return is_zero(self.tensor)


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class SymmetricForm:
    matrix: np.ndarray

    def __post_init__(self):
        m = qarray(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or not is_zero(m - m.T):
            raise ValueError("symmetric form must be a symmetric square matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def nondegenerate(self) -> bool:
        return rank(self.matrix) == self.matrix.shape[0]

    def __call__(self, x, y):
        return qarray(x).dot(self.matrix).dot(qarray(y))


def ce_differential(g: LieAlgebra, f: KForm) -> KForm:
    """``df(X,Y) = -f([X,Y])`` on 1-forms and
    ``dw(X,Y,Z) = -w([X,Y],Z) + w([X,Z],Y) - w([Y,Z],X)`` on 2-forms."""
    if f.dim != g.dim:
        raise ValueError("form and algebra dimensions differ")
    if f.degree == 1:
        return KForm(-contract(g.c, f.tensor, ([2], [0])) if g.dim else zeros(0, 0))
    if f.degree == 2:
        if g.dim == 0:
            return KForm(zeros(0, 0, 0))
        t = contract(g.c, f.tensor, ([2], [0]))  # t[i,j,k] = w([e_i,e_j], e_k)
        return KForm(-t + t.transpose(0, 2, 1) - t.transpose(2, 0, 1))
    raise ValueError("the differential is implemented for degrees 1 and 2")


def is_closed(g: LieAlgebra, f) -> bool:
    f = f if isinstance(f, KForm) else KForm(f)
    return ce_differential(g, f).is_zero()


def check_dual_product_integrability(g: LieAlgebra, e) -> bool:
    """Dual form of product integrability.

    With ``A(1,0)`` the annihilator of ``g-`` and ``A(0,1)`` that of ``g+``,
    ``d`` of a form in ``A(1,0)`` must have no ``(0,2)`` part, i.e. vanish on
    pairs from ``g-``; symmetrically for ``A(0,1)``.
    """
    e = qarray(e)
    if e.shape != (g.dim, g.dim) or not np.all(e.dot(e) == eye(g.dim)):
        raise StructureError("E-SQUARE", "E squared is not Id")
    plus, minus = eigenspace(e, 1), eigenspace(e, -1)
    for forms_of, pairs_from in ((minus, minus), (plus, plus)):
        for f in forms_of.annihilator().vectors():
            df = ce_differential(g, KForm(f)).tensor
            for a, b in combinations(pairs_from.vectors(), 2):
                if a.dot(df).dot(b) != 0:
                    return False
    return True


def signature(s) -> tuple[int, int]:
    """Inertia ``(p, q)`` of a symmetric form by exact congruence."""
    m = (s.matrix if isinstance(s, SymmetricForm) else SymmetricForm(s).matrix).copy()
    n = m.shape[0]
    pos = neg = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i, i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i, j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # v_i <- v_i + v_j gives diagonal entry 2 m[i,j]
            m[i, :] = m[i, :] + m[j, :]
            m[:, i] = m[:, i] + m[:, j]
            piv = i
        if piv != k:
            m[[k, piv]] = m[[piv, k]]
            m[:, [k, piv]] = m[:, [piv, k]]
        d = m[k, k]
        for i in range(k + 1, n):
            if m[i, k] != 0:
                factor = m[i, k] / d
                m[i, :] = m[i, :] - factor * m[k, :]
                m[:, i] = m[:, i] - factor * m[:, k]
        if d > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg


@dataclass
class MetricReport:
    j_invariant: bool
    e_invariant: bool
    omega_antisymmetric: bool
    omega_closed: bool | None
    nondegenerate: bool

    @property
    def ok(self) -> bool:
        return all(
            (self.j_invariant, self.e_invariant, self.omega_antisymmetric, bool(self.omega_closed), self.nondegenerate)
        )


def compatible_metric_suite(cps: ComplexProductStructure, G) -> tuple[np.ndarray, MetricReport]:
    """``w(X,Y) = G(X, JY)`` and the invariance and closedness flags.

    ``w`` is returned as a matrix; closedness is only evaluated when it is
    antisymmetric (``None`` otherwise).
    """
    G = G if isinstance(G, SymmetricForm) else SymmetricForm(G)
    m = G.matrix
    j, e = cps.j, cps.e
    omega = m.dot(j)
    anti = is_zero(omega + omega.T)
    closed = is_closed(cps.g, KForm(omega)) if anti else None
    report = MetricReport(
        j_invariant=is_zero(j.T.dot(m).dot(j) - m),
        e_invariant=is_zero(e.T.dot(m).dot(e) - m),
        omega_antisymmetric=anti,
        omega_closed=closed,
        nondegenerate=G.nondegenerate,
    )
    return omega, report


@dataclass
class HypersymplecticReport:
    w1_j_invariant: bool
    w1_e_invariant: bool
    h_symmetric: bool
    h_e_anti_invariant: bool
    plus_isotropic: bool
    minus_isotropic: bool
    plus_lagrangian_w2: bool
    minus_lagrangian_w2: bool
    signature: tuple[int, int] | None
    neutral: bool
    closed: tuple[bool, bool, bool]

    @property
    def ok(self) -> bool:
        return all(
            (
                self.w1_j_invariant,
                self.w1_e_invariant,
                self.h_symmetric,
                self.h_e_anti_invariant,
                self.plus_isotropic,
                self.minus_isotropic,
                self.neutral,
                *self.closed,
            )
        )


@dataclass
class Hypersymplectic:
    h: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray
    report: HypersymplecticReport


def _vanishes_on(m, s) -> bool:
    vs = s.vectors()
    return all(a.dot(m).dot(b) == 0 for a in vs for b in vs)


def hypersymplectic_suite(cps: ComplexProductStructure, w1) -> Hypersymplectic:
    """``h(X,Y) = w1(JX,Y)``, ``w2(X,Y) = h(X,EY)``, ``w3(X,Y) = h(X,JEY)``."""
    n = cps.dim
    if n % 4:
        raise StructureError("DIM-MOD-4", f"dimension {n} is not divisible by 4")
    w1 = (w1.tensor if isinstance(w1, KForm) else KForm(w1).tensor)
    if w1.shape != (n, n):
        raise StructureError("FORM-SHAPE", f"w1 must be a 2-form on a {n}-dimensional space")
    if rank(w1) != n:
        raise StructureError("DEGENERATE", "w1 is degenerate")
    j, e = cps.j, cps.e
    h = j.T.dot(w1)
    w2 = h.dot(e)
    w3 = h.dot(j).dot(e)
    sym = is_zero(h - h.T)
    sig = signature(h) if sym else None
    closed = tuple(
        is_zero(w + w.T) and is_closed(cps.g, KForm(w)) for w in (w1, w2, w3)
    )
    report = HypersymplecticReport(
        w1_j_invariant=is_zero(j.T.dot(w1).dot(j) - w1),
        w1_e_invariant=is_zero(e.T.dot(w1).dot(e) - w1),
        h_symmetric=sym,
        h_e_anti_invariant=is_zero(e.T.dot(h).dot(e) + h),
        plus_isotropic=_vanishes_on(h, cps.plus),
        minus_isotropic=_vanishes_on(h, cps.minus),
        plus_lagrangian_w2=_vanishes_on(w2, cps.plus),
        minus_lagrangian_w2=_vanishes_on(w2, cps.minus),
        signature=sig,
        neutral=sig == (n // 2, n // 2),
        closed=closed,
    )
    return Hypersymplectic(h, w1, w2, w3, report)


def extend_plus_form(cps: ComplexProductStructure, w) -> np.ndarray:
    """2-form on ``g`` from a 2-form ``w`` on ``g+`` (in plus-basis coordinates).

    In the basis ``{X_a, J X_a}`` it is ``w`` on both blocks with no mixed
    terms, which makes it invariant under ``J`` and ``E``.
    """
    k = cps.half
    w = qarray(w)
    if w.shape != (k, k) or not is_zero(w + w.T):
        raise ValueError(f"w must be an antisymmetric {k}x{k} matrix")
    plus = cps.plus.basis.T
    basis = np.hstack([plus, cps.j.dot(plus)])
    block = zeros(2 * k, 2 * k)
    block[:k, :k] = w
    block[k:, k:] = w
    inv = inverse(basis)
    return inv.T.dot(block).dot(inv)

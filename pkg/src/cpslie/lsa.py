"""Left-symmetric algebras, matched pairs and bicrossproducts.

Products and representations attached to a complex product structure are
written in its adapted basis: the basis of ``g+`` first, then that of ``g-``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .lie import LieAlgebra, check_jacobi, structure_tensor
from .linalg import (
    SingularMatrix,
    compose_bilinear,
    contract,
    eye,
    format_vector,
    inverse,
    is_zero,
    qarray,
    zeros,
)
from .report import Report, StructureError
from .structures import ComplexProductStructure, validate_cps


@dataclass(frozen=True, eq=False)
class BilinearProductSpace:
    """Vector space with an arbitrary bilinear product ``e_i e_j = sum_k a[i,j,k] e_k``."""

    a: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        a = qarray(self.a)
        n = a.shape[0]
        if a.shape != (n, n, n):
            raise ValueError("product tensor must have shape (n, n, n)")
        object.__setattr__(self, "a", a)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(n)))

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def commutator(self) -> np.ndarray:
        return self.a - self.a.transpose(1, 0, 2)


@dataclass(frozen=True, eq=False)
class LSAProduct:
    """Bilinear product on a Lie algebra, ``x . y`` with tensor ``a``."""

    base: LieAlgebra
    a: np.ndarray

    def __post_init__(self):
        a = qarray(self.a) if self.base.dim else zeros(0, 0, 0)
        n = self.base.dim
        if a.shape != (n, n, n):
            raise ValueError("product tensor must match the base algebra")
        object.__setattr__(self, "a", a)

    @property
    def dim(self) -> int:
        return self.base.dim

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", qarray(x), qarray(y), self.a)

    def left(self, x) -> np.ndarray:
        """Matrix of ``y -> x . y``."""
        return np.einsum("i,ijk->kj", qarray(x), self.a)

    def left_basis(self) -> list[np.ndarray]:
        return [self.a[i].T.copy() for i in range(self.dim)]

    def check(self) -> "LSAReport":
        return check_lsa(self)

    def is_trivial(self) -> bool:
        return is_zero(self.a)


@dataclass
class LSAReport:
    tfree: Report
    flat: Report

    @property
    def ok(self) -> bool:
        return self.tfree.ok and self.flat.ok

    def __bool__(self) -> bool:
        return self.ok


def associator_tensor(a) -> np.ndarray:
    """``t[i,j,k] = e_i(e_j e_k) - (e_i e_j)e_k``."""
    a = qarray(a)
    left_nested = contract(a, a, ([2], [1])).transpose(2, 0, 1, 3)
    right_nested = contract(a, a, ([2], [0]))
    return left_nested - right_nested


def associator(a, x, y, z) -> np.ndarray:
    a = qarray(a)

    def mul(u, v):
        return np.einsum("i,j,ijk->k", u, v, a)

    x, y, z = qarray(x), qarray(y), qarray(z)
    return mul(x, mul(y, z)) - mul(mul(x, y), z)


def check_lsa(p, bracket=None) -> LSAReport:
    """Report on the two LSA laws.

    ``p`` is an :class:`LSAProduct`, or a raw product tensor together with
    ``bracket`` (an algebra or raw structure tensor).  Torsion-freeness means
    ``[x,y] = xy - yx``; flatness means the associator is symmetric in its
    first two arguments.
    """
    if isinstance(p, LSAProduct):
        a, c = p.a, p.base.c
    else:
        a = qarray(p)
        c = structure_tensor(bracket) if bracket is not None else a - a.transpose(1, 0, 2)
    n = a.shape[0]
    tfree = Report("LSA-TFREE")
    flat = Report("LSA-FLAT")
    comm = a - a.transpose(1, 0, 2) - c
    for i, j in combinations(range(n), 2):
        if not is_zero(comm[i, j]):
            tfree.failures.append(((i, j), comm[i, j]))
    assoc = associator_tensor(a) if n else zeros(0, 0, 0, 0)
    defect = assoc - assoc.transpose(1, 0, 2, 3)
    for i, j in combinations(range(n), 2):
        for k in range(n):
            if not is_zero(defect[i, j, k]):
                flat.failures.append(((i, j, k), defect[i, j, k]))
    return LSAReport(tfree, flat)


# --------------------------------------------------------------------------
# matched pairs


@dataclass(frozen=True, eq=False)
class MatchedPair:
    """Two Lie algebras with ``rho: u -> gl(v)`` and ``mu: v -> gl(u)``.

    ``rho[i]`` is the matrix of ``rho(u_i)`` acting on ``v``; ``mu[j]`` the
    matrix of ``mu(v_j)`` acting on ``u``.
    """

    u: LieAlgebra
    v: LieAlgebra
    rho: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        p, q = self.u.dim, self.v.dim
        rho = qarray(self.rho) if p else zeros(0, q, q)
        mu = qarray(self.mu) if q else zeros(0, p, p)
        if rho.shape != (p, q, q) or mu.shape != (q, p, p):
            raise ValueError("rho must be (dim u, dim v, dim v) and mu (dim v, dim u, dim u)")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "mu", mu)

    def rho_of(self, x) -> np.ndarray:
        return np.einsum("i,ijk->jk", qarray(x), self.rho)

    def mu_of(self, a) -> np.ndarray:
        return np.einsum("i,ijk->jk", qarray(a), self.mu)


@dataclass
class MatchedPairReport:
    rho_rep: Report
    mu_rep: Report
    jacobi1: Report
    jacobi2: Report

    @property
    def ok(self) -> bool:
        return all(r.ok for r in (self.rho_rep, self.mu_rep, self.jacobi1, self.jacobi2))

    def __bool__(self) -> bool:
        return self.ok

    def reports(self) -> list[Report]:
        return [self.rho_rep, self.mu_rep, self.jacobi1, self.jacobi2]


def _representation_report(law: str, alg: LieAlgebra, mats: np.ndarray) -> Report:
    rep = Report(law)
    n = alg.dim
    for i, j in combinations(range(n), 2):
        image = np.einsum("k,kab->ab", alg.c[i, j], mats) if n else mats
        comm = mats[i].dot(mats[j]) - mats[j].dot(mats[i])
        if not is_zero(image - comm):
            rep.failures.append(((i, j), image - comm))
    return rep


def check_matched_pair(mp: MatchedPair) -> MatchedPairReport:
    u, v = mp.u, mp.v
    eu, ev = eye(u.dim), eye(v.dim)
    j1 = Report("MATCHED-RHO")
    for x in range(u.dim):
        rx = mp.rho[x]
        for a, b in combinations(range(v.dim), 2):
            A, B = ev[a], ev[b]
            val = (
                rx.dot(v.bracket(A, B))
                - v.bracket(rx.dot(A), B)
                - v.bracket(A, rx.dot(B))
                + mp.rho_of(mp.mu[a].dot(eu[x])).dot(B)
                - mp.rho_of(mp.mu[b].dot(eu[x])).dot(A)
            )
            if not is_zero(val):
                j1.failures.append(((x, a, b), val))
    j2 = Report("MATCHED-MU")
    for a in range(v.dim):
        ma = mp.mu[a]
        for x, y in combinations(range(u.dim), 2):
            X, Y = eu[x], eu[y]
            val = (
                ma.dot(u.bracket(X, Y))
                - u.bracket(ma.dot(X), Y)
                - u.bracket(X, ma.dot(Y))
                + mp.mu_of(mp.rho[x].dot(ev[a])).dot(Y)
                - mp.mu_of(mp.rho[y].dot(ev[a])).dot(X)
            )
            if not is_zero(val):
                j2.failures.append(((a, x, y), val))
    return MatchedPairReport(
        _representation_report("REP-RHO", u, mp.rho),
        _representation_report("REP-MU", v, mp.mu),
        j1,
        j2,
    )


def bicrossproduct_tensor(mp: MatchedPair) -> np.ndarray:
    p, q = mp.u.dim, mp.v.dim
    n = p + q
    c = zeros(n, n, n)
    c[:p, :p, :p] = mp.u.c
    c[p:, p:, p:] = mp.v.c
    for x in range(p):
        for a in range(q):
            # [X, A] = -mu(A) X + rho(X) A
            c[x, p + a, :p] = -mp.mu[a][:, x]
            c[x, p + a, p:] = mp.rho[x][:, a]
            c[p + a, x] = -c[x, p + a]
    return c


def bicrossproduct(mp: MatchedPair, name: str | None = None) -> LieAlgebra:
    labels = list(mp.u.labels) + list(mp.v.labels)
    if len(set(labels)) != len(labels):
        labels = [f"{lab}_u" for lab in mp.u.labels] + [f"{lab}_v" for lab in mp.v.labels]
    return LieAlgebra(name or f"{mp.u.name}><{mp.v.name}", labels, bicrossproduct_tensor(mp))


# --------------------------------------------------------------------------
# structures induced by a complex product structure


def adapted_constants(cps: ComplexProductStructure) -> np.ndarray:
    """Structure constants of ``g`` in the adapted basis."""
    return compose_bilinear(cps.g.c, out=cps.adapted_inv, left=cps.adapted, right=cps.adapted)


def adapted_j(cps: ComplexProductStructure) -> np.ndarray:
    return cps.adapted_inv.dot(cps.j).dot(cps.adapted)


def _sub_algebras(cps: ComplexProductStructure) -> tuple[LieAlgebra, LieAlgebra]:
    k = cps.half
    ca = adapted_constants(cps)
    name = cps.g.name
    u = LieAlgebra(f"{name}+", cps.plus_labels(), ca[:k, :k, :k])
    v = LieAlgebra(f"{name}-", cps.minus_labels(), ca[k:, k:, k:])
    return u, v


def induced_lsa(cps: ComplexProductStructure) -> tuple[LSAProduct, LSAProduct]:
    """``X.Y = -pi+ J[X, JY]`` on ``g+`` and ``A.B = -pi- J[A, JB]`` on ``g-``."""
    k = cps.half
    ca = adapted_constants(cps)
    ja = adapted_j(cps)
    n = cps.dim
    pi_plus = zeros(n, n)
    pi_minus = zeros(n, n)
    for i in range(n):
        (pi_plus if i < k else pi_minus)[i, i] = Fraction(1)
    plus_prod = compose_bilinear(ca, out=-pi_plus.dot(ja), right=ja)[:k, :k, :k]
    minus_prod = compose_bilinear(ca, out=-pi_minus.dot(ja), right=ja)[k:, k:, k:]
    u, v = _sub_algebras(cps)
    return LSAProduct(u, plus_prod), LSAProduct(v, minus_prod)


def matched_pair_from_cps(cps: ComplexProductStructure) -> MatchedPair:
    """Split the mixed bracket as ``[X, A] = -mu(A)X + rho(X)A``."""
    k = cps.half
    ca = adapted_constants(cps)
    u, v = _sub_algebras(cps)
    rho = zeros(k, k, k)
    mu = zeros(k, k, k)
    for x in range(k):
        for a in range(k):
            rho[x][:, a] = ca[x, k + a, k:]
            mu[a][:, x] = -ca[x, k + a, :k]
    return MatchedPair(u, v, rho, mu)


def extended_product_adapted(cps: ComplexProductStructure) -> np.ndarray:
    """``(X+A).(Y+B) = X.Y + rho(X)B + mu(A)Y + A.B`` in the adapted basis."""
    k = cps.half
    lp, lm = induced_lsa(cps)
    mp = matched_pair_from_cps(cps)
    n = 2 * k
    t = zeros(n, n, n)
    t[:k, :k, :k] = lp.a
    t[k:, k:, k:] = lm.a
    for x in range(k):
        for a in range(k):
            t[x, k + a, k:] = mp.rho[x][:, a]
            t[k + a, x, :k] = mp.mu[a][:, x]
    return t


def extended_product(cps: ComplexProductStructure) -> np.ndarray:
    """The product above, written in the original basis of ``g``."""
    t = extended_product_adapted(cps)
    return compose_bilinear(t, out=cps.adapted, left=cps.adapted_inv, right=cps.adapted_inv)


@dataclass
class Obstruction:
    """Obstruction tensors; ``phi[x, a, b]`` and ``psi[a, x, y]`` are vectors
    in ``g-`` and ``g+`` coordinates respectively."""

    phi: np.ndarray
    psi: np.ndarray

    @property
    def extends(self) -> bool:
        return is_zero(self.phi) and is_zero(self.psi)


def phi_psi_obstruction(cps: ComplexProductStructure) -> Obstruction:
    lp, lm = induced_lsa(cps)
    mp = matched_pair_from_cps(cps)
    k = cps.half
    e = eye(k)
    phi = zeros(k, k, k, k)
    psi = zeros(k, k, k, k)
    for x in range(k):
        rx = mp.rho[x]
        for a in range(k):
            for b in range(k):
                A, B = e[a], e[b]
                phi[x, a, b] = (
                    rx.dot(lm.mul(A, B))
                    - lm.mul(rx.dot(A), B)
                    - lm.mul(A, rx.dot(B))
                    + mp.rho_of(mp.mu[a][:, x]).dot(B)
                )
    for a in range(k):
        ma = mp.mu[a]
        for x in range(k):
            for y in range(k):
                X, Y = e[x], e[y]
                psi[a, x, y] = (
                    ma.dot(lp.mul(X, Y))
                    - lp.mul(ma.dot(X), Y)
                    - lp.mul(X, ma.dot(Y))
                    + mp.mu_of(mp.rho[x][:, a]).dot(Y)
                )
    return Obstruction(phi, psi)


# --------------------------------------------------------------------------
# constructions from LSA data


def aff_tensor(A: BilinearProductSpace) -> np.ndarray:
    """Bracket ``[(a,b),(a',b')] = (aa' - a'a, ab' - a'b)`` on ``A + A``."""
    n = A.dim
    c = zeros(2 * n, 2 * n, 2 * n)
    comm = A.commutator()
    c[:n, :n, :n] = comm
    c[:n, n:, n:] = A.a
    c[n:, :n, n:] = -A.a.transpose(1, 0, 2)
    return c


def aff_structures(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``J(a,b) = (-b,a)`` and ``E = Id + (-Id)`` on ``A + A``."""
    j = zeros(2 * n, 2 * n)
    e = zeros(2 * n, 2 * n)
    for i in range(n):
        j[n + i, i] = Fraction(1)
        j[i, n + i] = Fraction(-1)
        e[i, i] = Fraction(1)
        e[n + i, n + i] = Fraction(-1)
    return j, e


def aff_construction(A: BilinearProductSpace, name: str | None = None) -> tuple[LieAlgebra, ComplexProductStructure]:
    """``aff(A)`` together with its complex product structure.

    Raises ``StructureError("JACOBI")`` with the violating triples when the
    doubled bracket is not a Lie bracket, i.e. when ``A`` is not left-symmetric.
    """
    c = aff_tensor(A)
    rep = check_jacobi(c)
    n = A.dim
    labels = [f"{lab}" for lab in A.labels] + [f"{lab}'" for lab in A.labels]
    if not rep.ok:
        (i, j, k), v = rep.first()
        raise StructureError(
            "JACOBI",
            f"doubled bracket violates Jacobi on ({labels[i]}, {labels[j]}, {labels[k]}): "
            f"{format_vector(v, labels)}",
            rep.failures,
        )
    g = LieAlgebra(name or "aff(A)", labels, c)
    j, e = aff_structures(n)
    return g, validate_cps(g, j, e)


def _raise_matched(rep: MatchedPairReport) -> None:
    for r in rep.reports():
        if not r.ok:
            idx, v = r.first()
            raise StructureError(r.law, f"matched-pair law {r.law} fails on basis tuple {idx}", r.failures)


def matched_pair_from_lsa_pair(
    u: LSAProduct, v: LSAProduct, phi
) -> tuple[MatchedPair, ComplexProductStructure]:
    """``rho(X)A = phi(X . phi^-1 A)``, ``mu(A)X = phi^-1(A . phi X)`` and the
    complex product structure ``J(X,A) = (-phi^-1 A, phi X)`` on ``u >< v``."""
    if u.dim != v.dim:
        raise StructureError("DIM", "u and v must have the same dimension")
    phi = qarray(phi)
    n = u.dim
    if phi.shape != (n, n):
        raise StructureError("PHI-SHAPE", f"phi must be {n}x{n}")
    try:
        phi_inv = inverse(phi)
    except SingularMatrix:
        raise StructureError("PHI-SINGULAR", "phi is not invertible") from None
    for lsa in (u, v):
        rep = check_lsa(lsa)
        if not rep.ok:
            bad = rep.tfree if not rep.tfree.ok else rep.flat
            raise StructureError(bad.law, f"{lsa.base.name} is not an LSA", bad.failures)
    rho = np.array([phi.dot(m).dot(phi_inv) for m in u.left_basis()], dtype=object).reshape(n, n, n)
    lv = v.left_basis()
    mu = zeros(n, n, n)
    for a in range(n):
        mu[a] = phi_inv.dot(lv[a]).dot(phi)
    mp = MatchedPair(u.base, v.base, rho, mu)
    _raise_matched(check_matched_pair(mp))
    g = bicrossproduct(mp)
    j = zeros(2 * n, 2 * n)
    j[n:, :n] = phi
    j[:n, n:] = -phi_inv
    _, e = aff_structures(n)
    return mp, validate_cps(g, j, e)

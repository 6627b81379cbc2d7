"""Connections on Lie algebras as bilinear maps ``nabla_x y``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lie import LieAlgebra, RealifiedComplexification
from .linalg import compose_bilinear, compose_bilinear_sum, contract, is_zero, kernel, qarray, solve, zeros
from .lsa import extended_product
from .report import StructureError
from .structures import ComplexProductStructure


@dataclass(frozen=True, eq=False)
class Connection:
    """``nabla_{e_i} e_j = sum_k gamma[i,j,k] e_k``."""

    base: LieAlgebra
    gamma: np.ndarray

    def __post_init__(self):
        n = self.base.dim
        gamma = qarray(self.gamma) if n else zeros(0, 0, 0)
        if gamma.shape != (n, n, n):
            raise ValueError(f"gamma must have shape {(n, n, n)}")
        object.__setattr__(self, "gamma", gamma)

    @property
    def dim(self) -> int:
        return self.base.dim

    def nabla(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", qarray(x), qarray(y), self.gamma)

    def matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> nabla_x y``."""
        return np.einsum("i,ijk->kj", qarray(x), self.gamma)

    def __add__(self, d) -> "Connection":
        return Connection(self.base, self.gamma + qarray(d))


def zero_connection(g: LieAlgebra) -> Connection:
    return Connection(g, zeros(g.dim, g.dim, g.dim))


def torsion(c: Connection) -> np.ndarray:
    """``T[i,j] = nabla_i e_j - nabla_j e_i - [e_i, e_j]``."""
    return c.gamma - c.gamma.transpose(1, 0, 2) - c.base.c


def curvature(c: Connection) -> np.ndarray:
    """``R[i,j,k] = nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_[e_i,e_j] e_k``."""
    g = c.gamma
    if c.dim == 0:
        return zeros(0, 0, 0, 0)
    nested = contract(g, g, ([2], [1])).transpose(2, 0, 1, 3)
    along_bracket = contract(c.base.c, g, ([2], [0]))
    return nested - nested.transpose(1, 0, 2, 3) - along_bracket


def curvature_at(c: Connection, x, y, z) -> np.ndarray:
    x, y, z = qarray(x), qarray(y), qarray(z)
    return c.nabla(x, c.nabla(y, z)) - c.nabla(y, c.nabla(x, z)) - c.nabla(c.base.bracket(x, y), z)


def is_torsion_free(c: Connection) -> bool:
    return is_zero(torsion(c))


def is_flat(c: Connection) -> bool:
    return is_zero(curvature(c))


def nonzero_count(t) -> int:
    return sum(1 for v in np.asarray(t).flat if v != 0)


def parallel_check(c: Connection, t) -> bool:
    """``nabla_x (T y) == T (nabla_x y)`` for all basis ``x, y``."""
    t = qarray(t)
    if t.shape != (c.dim, c.dim):
        raise ValueError("endomorphism does not match the connection's algebra")
    return is_zero(compose_bilinear_sum(c.gamma, [(1, None, None, t), (-1, t, None, None)]))


def cp_connection(cps: ComplexProductStructure) -> Connection:
    """Torsion-free connection given by the extended product of ``cps``."""
    return Connection(cps.g, extended_product(cps))


def uniqueness_probe(cps: ComplexProductStructure, d, base: Connection | None = None) -> bool:
    """Whether ``nabla^CP + d`` still makes both ``J`` and ``E`` parallel.

    ``d`` must be symmetric in its first two slots and nonzero, so the
    perturbed connection stays torsion-free and differs from ``nabla^CP``.
    ``base`` may pass a precomputed ``cp_connection(cps)`` for batch probing.
    """
    d = qarray(d)
    if d.shape != (cps.dim,) * 3:
        raise ValueError("perturbation has the wrong shape")
    if not is_zero(d - d.transpose(1, 0, 2)):
        raise ValueError("perturbation must be symmetric in its first two slots")
    if is_zero(d):
        raise ValueError("perturbation must be nonzero")
    c = (base if base is not None else cp_connection(cps)) + d
    return parallel_check(c, cps.j) and parallel_check(c, cps.e)


def restrict_connection(c: Connection, cps: ComplexProductStructure, side: str = "plus") -> Connection:
    """Sub-block of ``c`` on ``g+`` (or ``g-``) in the adapted basis."""
    from .lsa import _sub_algebras

    k = cps.half
    ga = compose_bilinear(c.gamma, out=cps.adapted_inv, left=cps.adapted, right=cps.adapted)
    sl, other = (slice(0, k), slice(k, None)) if side == "plus" else (slice(k, None), slice(0, k))
    if not is_zero(ga[sl, sl, other]):
        raise StructureError("NOT-STABLE", f"g{'+' if side == 'plus' else '-'} is not preserved by the connection")
    u, v = _sub_algebras(cps)
    return Connection(u if side == "plus" else v, ga[sl, sl, sl])


def extend_to_hat(c: Connection, rc: RealifiedComplexification) -> Connection:
    """Complex-bilinear extension to the realified complexification."""
    if c.base.dim != rc.n:
        raise ValueError("connection and complexification have different bases")
    n = rc.n
    g = c.gamma
    out = zeros(2 * n, 2 * n, 2 * n)
    out[:n, :n, :n] = g
    out[:n, n:, n:] = g
    out[n:, :n, n:] = g
    out[n:, n:, :n] = -g
    return Connection(rc.hat, out)


def commutant(mats: Sequence) -> list[np.ndarray]:
    """Basis of the matrices commuting with every matrix in ``mats``."""
    mats = [qarray(m) for m in mats]
    n = mats[0].shape[0]
    rows = []
    units = []
    for a in range(n):
        for b in range(n):
            u = zeros(n, n)
            u[a, b] = 1
            units.append(u)
    for t in mats:
        cols = [(t.dot(u) - u.dot(t)).reshape(-1) for u in units]
        rows.append(np.array(cols, dtype=object).T)
    system = np.vstack(rows)
    return [v.reshape(n, n) for v in kernel(system).vectors()]


def parallel_connection(g: LieAlgebra, endos: Sequence) -> Connection:
    """The unique torsion-free connection making every matrix in ``endos`` parallel.

    Solved directly as a linear system: each ``nabla_x`` lies in the
    commutant of ``endos`` and torsion-freeness fixes the coefficients.
    Raises ``StructureError`` when there is no such connection or it is not unique.
    """
    n = g.dim
    basis = commutant(endos)
    r = len(basis)
    stack = np.array(basis, dtype=object).reshape(r, n, n)
    # gamma[i,j,k] = sum_a x[i,a] stack[a][k,j]
    rows, rhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = zeros(n * r)
                row[i * r:(i + 1) * r] = stack[:, k, j]
                row[j * r:(j + 1) * r] -= stack[:, k, i]
                rows.append(row)
                rhs.append(g.c[i, j, k])
    if not rows:
        if n * r:
            raise StructureError("NOT-UNIQUE", "the parallel torsion-free connection is not unique")
        return zero_connection(g)
    system = np.array(rows, dtype=object)
    x = solve(system, qarray(rhs))
    if x is None:
        raise StructureError("NO-CONNECTION", "no torsion-free connection makes these endomorphisms parallel")
    if kernel(system).dim:
        raise StructureError("NOT-UNIQUE", "the parallel torsion-free connection is not unique")
    x = x.reshape(n, r)
    gamma = np.einsum("ia,akj->ijk", x, stack) if r else zeros(n, n, n)
    return Connection(g, gamma)


def obata_connection(hc) -> Connection:
    """Torsion-free connection parallelizing a hypercomplex structure."""
    return parallel_connection(hc.g, [hc.j1, hc.j2])

"""Complex, product and complex product structures on Lie algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct

import numpy as np

from .lie import LieAlgebra, is_abelian, is_homomorphism, is_subalgebra, matrix_lie_algebra
from .linalg import (
    CirclePoint,
    SingularMatrix,
    Subspace,
    compose_bilinear,
    compose_bilinear_sum,
    eigenspace,
    eye,
    format_vector,
    inverse,
    is_zero,
    matmul,
    qarray,
    subspace_intersect,
    subspace_sum,
    zeros,
)
from .report import Report, StructureError


def _pair_report(law: str, defect: np.ndarray) -> Report:
    n = defect.shape[0]
    rep = Report(law)
    for i, j in iproduct(range(n), repeat=2):
        if i < j and not is_zero(defect[i, j]):
            rep.failures.append(((i, j), defect[i, j]))
    return rep


def nijenhuis_defect(g: LieAlgebra, j) -> np.ndarray:
    """``J[x,y] - [Jx,y] - [x,Jy] - J[Jx,Jy]`` as a bilinear tensor."""
    j = qarray(j)
    c = g.c
    return compose_bilinear_sum(c, [(1, j, None, None), (-1, None, j, None), (-1, None, None, j), (-1, j, j, j)])


def product_defect(g: LieAlgebra, e) -> np.ndarray:
    """``E[x,y] - [Ex,y] - [x,Ey] + E[Ex,Ey]`` as a bilinear tensor."""
    e = qarray(e)
    c = g.c
    return compose_bilinear_sum(c, [(1, e, None, None), (-1, None, e, None), (-1, None, None, e), (1, e, e, e)])


def check_complex_integrable(g: LieAlgebra, j) -> Report:
    return _pair_report("J-INTEGRABLE", nijenhuis_defect(g, j))


def check_product_integrable(g: LieAlgebra, e) -> Report:
    return _pair_report("E-INTEGRABLE", product_defect(g, e))


def check_bicomplex_condition(g: LieAlgebra, i) -> bool:
    """True iff ``[Ix, y] == I[x, y]`` for all ``x, y``."""
    i = qarray(i)
    return is_zero(compose_bilinear(g.c, left=i) - compose_bilinear(g.c, out=i))


def is_abelian_cs(g: LieAlgebra, j) -> bool:
    """True iff ``[Jx, Jy] == [x, y]`` for all ``x, y``."""
    j = qarray(j)
    return is_zero(compose_bilinear(g.c, left=j, right=j) - g.c)


def _same(a, b) -> bool:
    return is_zero(qarray(a) - qarray(b))


def _check_square(g: LieAlgebra, m, name: str) -> np.ndarray:
    m = qarray(m)
    if m.shape != (g.dim, g.dim):
        raise StructureError(f"{name}-SHAPE", f"{name} must be a {g.dim}x{g.dim} matrix, got {m.shape}")
    return m


def require_almost_complex(g: LieAlgebra, j, name: str = "J") -> np.ndarray:
    j = _check_square(g, j, name)
    if not _same(matmul(j, j), -eye(g.dim)):
        raise StructureError(f"{name}-SQUARE", f"{name} squared is not -Id")
    return j


def require_almost_product(g: LieAlgebra, e, name: str = "E") -> np.ndarray:
    e = _check_square(g, e, name)
    if not _same(matmul(e, e), eye(g.dim)):
        raise StructureError(f"{name}-SQUARE", f"{name} squared is not Id")
    if _same(e, eye(g.dim)) or _same(e, -eye(g.dim)):
        raise StructureError(f"{name}-TRIVIAL", f"{name} is +-Id")
    return e


def _raise_report(g: LieAlgebra, rep: Report, what: str) -> None:
    (i, j), v = rep.first()
    raise StructureError(
        rep.law,
        f"{what} fails on ({g.labels[i]}, {g.labels[j]}): defect {g.fmt(v)}",
        rep.failures,
    )


@dataclass(frozen=True, eq=False)
class ComplexProductStructure:
    """Validated pair ``(J, E)``; build with :func:`validate_cps`."""

    g: LieAlgebra
    j: np.ndarray
    e: np.ndarray
    plus: Subspace
    minus: Subspace

    @property
    def dim(self) -> int:
        return self.g.dim

    @property
    def half(self) -> int:
        return self.plus.dim

    @cached_property
    def f(self) -> np.ndarray:
        return matmul(self.j, self.e)

    @cached_property
    def adapted(self) -> np.ndarray:
        """Columns: basis of ``g+`` followed by basis of ``g-``."""
        return np.vstack([self.plus.basis, self.minus.basis]).T.copy()

    @cached_property
    def adapted_inv(self) -> np.ndarray:
        return inverse(self.adapted)

    @cached_property
    def proj_plus(self) -> np.ndarray:
        k = self.half
        d = zeros(self.dim, self.dim)
        for i in range(k):
            d[i, i] = Fraction(1)
        return self.adapted.dot(d).dot(self.adapted_inv)

    @cached_property
    def proj_minus(self) -> np.ndarray:
        return eye(self.dim) - self.proj_plus

    def plus_labels(self) -> list[str]:
        return [format_vector(v, self.g.labels, spaces=False) for v in self.plus.basis]

    def minus_labels(self) -> list[str]:
        return [format_vector(v, self.g.labels, spaces=False) for v in self.minus.basis]

    def transported(self, p) -> "ComplexProductStructure":
        """Same structure written in the basis ``f_j = sum_i p[i,j] e_i``."""
        from .lie import apply_change_of_basis

        p = qarray(p)
        p_inv = inverse(p)
        g2 = apply_change_of_basis(self.g, p)
        return validate_cps(g2, matmul(matmul(p_inv, self.j), p), matmul(matmul(p_inv, self.e), p))


def validate_cps(g: LieAlgebra, j, e) -> ComplexProductStructure:
    j = require_almost_complex(g, j)
    e = require_almost_product(g, e)
    if not _same(matmul(j, e), -matmul(e, j)):
        raise StructureError("ANTICOMMUTE", "JE != -EJ")
    rep = check_complex_integrable(g, j)
    if not rep.ok:
        _raise_report(g, rep, "integrability of J")
    rep = check_product_integrable(g, e)
    if not rep.ok:
        _raise_report(g, rep, "integrability of E")
    plus = eigenspace(e, 1)
    minus = eigenspace(e, -1)
    if plus.dim != minus.dim or plus.dim + minus.dim != g.dim:
        raise StructureError(
            "EIGEN-DIM", f"eigenspaces of E have dimensions {plus.dim} and {minus.dim}"
        )
    # forced by JE = -EJ; kept as a guard
    if plus.image(j) != minus:
        raise StructureError("EIGEN-DIM", "J(g+) differs from g-")
    for m in (j, e):
        m.flags.writeable = False
    return ComplexProductStructure(g, j, e, plus, minus)


def split_endomorphism(plus: Subspace, minus: Subspace) -> np.ndarray:
    """Endomorphism equal to ``Id`` on ``plus`` and ``-Id`` on ``minus``."""
    n = plus.ambient_dim
    p = np.vstack([plus.basis, minus.basis]).T
    d = zeros(n, n)
    for i in range(n):
        d[i, i] = Fraction(1 if i < plus.dim else -1)
    return matmul(matmul(p, d), inverse(p))


def cps_from_subalgebra_pair(g: LieAlgebra, j, plus: Subspace) -> ComplexProductStructure:
    """CPS whose ``+1`` eigenspace is ``plus`` and ``-1`` eigenspace ``J(plus)``."""
    j = require_almost_complex(g, j)
    minus = plus.image(j)
    if not is_subalgebra(g, plus):
        raise StructureError("PLUS-SUBALGEBRA", "g+ is not a subalgebra")
    if not is_subalgebra(g, minus):
        raise StructureError("MINUS-SUBALGEBRA", "J(g+) is not a subalgebra")
    if subspace_intersect(plus, minus).dim:
        raise StructureError("NOT-COMPLEMENTARY", "g+ and J(g+) intersect")
    if subspace_sum(plus, minus).dim != g.dim:
        raise StructureError("NOT-COMPLEMENTARY", "g+ + J(g+) is not all of g")
    return validate_cps(g, j, split_endomorphism(plus, minus))


def check_phi_condition(g: LieAlgebra, plus: Subspace, minus: Subspace, phi) -> Report:
    """``phi[X,Y] + phi^-1[phi X, phi Y] == [phi X, Y] + [X, phi Y]`` on
    basis pairs of ``plus``; ``phi`` maps plus-coordinates to minus-coordinates."""
    phi = qarray(phi)
    phi_inv = inverse(phi)
    xs = list(plus.basis)
    rep = Report("PHI-INTEGRABLE")

    def lift(v):  # X in plus -> phi X in g
        return minus.basis.T.dot(phi.dot(plus.coordinates(v)))

    def lift_inv(a):  # A in minus -> phi^-1 A in g
        return plus.basis.T.dot(phi_inv.dot(minus.coordinates(a)))

    for a in range(len(xs)):
        for b in range(a, len(xs)):
            x, y = xs[a], xs[b]
            lhs = lift(g.bracket(x, y)) + lift_inv(g.bracket(lift(x), lift(y)))
            rhs = g.bracket(lift(x), y) + g.bracket(x, lift(y))
            if not is_zero(lhs - rhs):
                rep.failures.append(((a, b), lhs - rhs))
    return rep


def cps_from_phi(g: LieAlgebra, plus: Subspace, minus: Subspace, phi) -> ComplexProductStructure:
    """CPS with ``J(X + A) = -phi^-1(A) + phi(X)`` on a double Lie algebra."""
    phi = qarray(phi)
    if plus.dim != minus.dim or plus.dim + minus.dim != g.dim or subspace_sum(plus, minus).dim != g.dim:
        raise StructureError("NOT-COMPLEMENTARY", "g+ and g- must be complementary of equal dimension")
    if not is_subalgebra(g, plus) or not is_subalgebra(g, minus):
        raise StructureError("NOT-DOUBLE", "g+ and g- must both be subalgebras")
    k = plus.dim
    if phi.shape != (k, k):
        raise StructureError("PHI-SHAPE", f"phi must be {k}x{k}")
    try:
        phi_inv = inverse(phi)
    except SingularMatrix:
        raise StructureError("PHI-SINGULAR", "phi is not invertible") from None
    rep = check_phi_condition(g, plus, minus, phi)
    if not rep.ok:
        (a, b), v = rep.first()
        raise StructureError(
            "PHI-INTEGRABLE",
            f"phi condition fails on plus basis pair ({a}, {b}): defect {g.fmt(v)}",
            rep.failures,
        )
    adapted = np.vstack([plus.basis, minus.basis]).T
    block = zeros(2 * k, 2 * k)
    block[k:, :k] = phi
    block[:k, k:] = -phi_inv
    j = adapted.dot(block).dot(inverse(adapted))
    return validate_cps(g, j, split_endomorphism(plus, minus))


def pencil(cps: ComplexProductStructure, p: CirclePoint) -> tuple[np.ndarray, Subspace]:
    """``E_t = c E + s JE`` and its ``+1`` eigenspace."""
    e_t = p.c * cps.e + p.s * cps.f
    return e_t, eigenspace(e_t, 1)


def check_equivalence(cps1: ComplexProductStructure, cps2: ComplexProductStructure, phi) -> bool:
    phi = qarray(phi)
    if cps1.dim != cps2.dim or phi.shape != (cps2.dim, cps1.dim):
        return False
    try:
        inverse(phi)
    except SingularMatrix:
        return False
    return (
        is_homomorphism(cps1.g, cps2.g, phi)
        and _same(phi.dot(cps1.j), cps2.j.dot(phi))
        and _same(phi.dot(cps1.e), cps2.e.dot(phi))
    )


# --------------------------------------------------------------------------
# matrix algebras


def _block_diag(a, b) -> np.ndarray:
    a, b = qarray(a), qarray(b)
    out = zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def standard_e0_j0(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``E0 = diag(Id, -Id)`` and ``J0 = [[0, -Id], [Id, 0]]`` on ``R^{2n}``."""
    e0 = _block_diag(eye(n), -eye(n))
    j0 = zeros(2 * n, 2 * n)
    j0[:n, n:] = -eye(n)
    j0[n:, :n] = eye(n)
    return e0, j0


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    m = zeros(n, n)
    m[i, j] = Fraction(1)
    return m


def gl_algebra(m: int, name: str | None = None) -> LieAlgebra:
    """``gl(m, R)`` in the basis of matrix units ``E_ij`` (row-major)."""
    units = [matrix_unit(m, i, j) for i in range(m) for j in range(m)]
    labels = [f"E{i + 1}{j + 1}" if m < 10 else f"E{i + 1}_{j + 1}" for i in range(m) for j in range(m)]
    return matrix_lie_algebra(name or f"gl({m},R)", labels, units)


def right_multiplication(m: int, a) -> np.ndarray:
    """Matrix of ``X -> X a`` on ``gl(m)`` in the row-major matrix-unit basis."""
    a = qarray(a)
    out = zeros(m * m, m * m)
    for i in range(m):
        for j in range(m):
            col = matrix_unit(m, i, j).dot(a).reshape(-1)
            out[:, i * m + j] = col
    return out


def gl_cps(n: int) -> ComplexProductStructure:
    """``J(A) = A J0``, ``E(A) = A E0`` on ``gl(2n, R)``."""
    g = gl_algebra(2 * n, name=f"gl({2 * n},R)")
    e0, j0 = standard_e0_j0(n)
    return validate_cps(g, right_multiplication(2 * n, j0), right_multiplication(2 * n, e0))


def sp_decomposition(n: int) -> tuple[LieAlgebra, tuple[Subspace, Subspace, Subspace]]:
    """``sp(n, R) = gl(n, R) + a+ + a-`` as three subalgebras."""
    if n < 1:
        raise ValueError("n must be at least 1")
    mats, labels, kinds = [], [], []
    for i in range(n):
        for j in range(n):
            a = matrix_unit(n, i, j)
            mats.append(_block_diag(a, -a.T))
            labels.append(f"A{i + 1}{j + 1}")
            kinds.append("gl")
    for kind, tag in (("plus", "B"), ("minus", "C")):
        for i in range(n):
            for j in range(i, n):
                s = matrix_unit(n, i, j) + matrix_unit(n, j, i) if i != j else matrix_unit(n, i, i)
                blk = zeros(2 * n, 2 * n)
                if kind == "plus":
                    blk[:n, n:] = s
                else:
                    blk[n:, :n] = s
                mats.append(blk)
                labels.append(f"{tag}{i + 1}{j + 1}")
                kinds.append(kind)
    _, j0 = standard_e0_j0(n)
    for x in mats:
        if not is_zero(x.T.dot(j0) + j0.dot(x)):
            raise AssertionError("block matrix outside sp(n)")
    g = matrix_lie_algebra(f"sp({n},R)", labels, mats)
    d = g.dim
    parts = []
    for kind in ("gl", "plus", "minus"):
        parts.append(Subspace.span([eye(d)[i] for i in range(d) if kinds[i] == kind], d))
    for s in parts:
        if not is_subalgebra(g, s):
            raise AssertionError("block part is not a subalgebra")
    if not (is_abelian(g, parts[1]) and is_abelian(g, parts[2])):
        raise AssertionError("a+ or a- is not abelian")
    return g, tuple(parts)

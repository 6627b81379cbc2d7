"""Hypercomplex structures induced on the realified complexification."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .lie import LieAlgebra, RealifiedComplexification, is_subalgebra, realify_complexification
from .linalg import Subspace, eye, matmul, subspace_intersect, subspace_sum
from .report import StructureError
from .structures import (
    ComplexProductStructure,
    check_complex_integrable,
    require_almost_complex,
    split_endomorphism,
    validate_cps,
)

DEFAULT_CAP = 64


@dataclass(frozen=True, eq=False)
class HypercomplexStructure:
    g: LieAlgebra
    j1: np.ndarray
    j2: np.ndarray

    @cached_property
    def j3(self) -> np.ndarray:
        return matmul(self.j1, self.j2)


def _same(a, b) -> bool:
    return bool(np.all(a == b))


def _integrable_or_raise(g: LieAlgebra, j, name: str) -> None:
    rep = check_complex_integrable(g, j)
    if not rep.ok:
        (i, k), v = rep.first()
        raise StructureError(
            f"{name}-INTEGRABLE",
            f"{name} is not integrable on ({g.labels[i]}, {g.labels[k]}): defect {g.fmt(v)}",
            rep.failures,
        )


def check_hypercomplex(g: LieAlgebra, j1, j2) -> HypercomplexStructure:
    """Validate ``{J1, J2}``; each failed law raises with its own code."""
    try:
        j1 = require_almost_complex(g, j1, "J1")
    except StructureError as err:
        raise StructureError("J1-SQUARE", err.message) from None
    try:
        j2 = require_almost_complex(g, j2, "J2")
    except StructureError as err:
        raise StructureError("J2-SQUARE", err.message) from None
    if not _same(matmul(j1, j2), -matmul(j2, j1)):
        raise StructureError("ANTICOMMUTE", "J1 J2 != -J2 J1")
    _integrable_or_raise(g, j1, "J1")
    _integrable_or_raise(g, j2, "J2")
    j3 = matmul(j1, j2)
    _integrable_or_raise(g, j3, "J3")
    if not (_same(matmul(j2, j3), j1) and _same(matmul(j3, j1), j2)):
        raise StructureError("QUATERNION", "J1, J2, J3 do not multiply like quaternion units")
    for m in (j1, j2):
        m.flags.writeable = False
    return HypercomplexStructure(g, j1, j2)


def _is_stable(s: Subspace, m) -> bool:
    return s.image(m) == s


def split_complex_structure(rc: RealifiedComplexification, u1: Subspace, u2: Subspace) -> np.ndarray:
    """Complex structure equal to ``I`` on ``u1`` and ``-I`` on ``u2``."""
    g = rc.hat
    if u1.dim == 0 or u2.dim == 0:
        raise StructureError("DEGENERATE-SPLIT", "both parts of the splitting must be nonzero")
    if subspace_intersect(u1, u2).dim or subspace_sum(u1, u2).dim != g.dim:
        raise StructureError("NOT-COMPLEMENTARY", "u1 and u2 are not complementary")
    for name, u in (("u1", u1), ("u2", u2)):
        if not is_subalgebra(g, u):
            raise StructureError("NOT-SUBALGEBRA", f"{name} is not a subalgebra")
        if not _is_stable(u, rc.i_map):
            raise StructureError("NOT-I-STABLE", f"{name} is not stable under I")
    i_hat = matmul(rc.i_map, split_endomorphism(u1, u2))
    _integrable_or_raise(g, i_hat, "I-HAT")
    return i_hat


def _complex_span(rc: RealifiedComplexification, s: Subspace) -> Subspace:
    vecs = [rc.real(v) for v in s.vectors()] + [rc.imag(v) for v in s.vectors()]
    return Subspace.span(vecs, 2 * rc.n)


def induce_hypercomplex(cps: ComplexProductStructure) -> tuple[RealifiedComplexification, HypercomplexStructure]:
    """``{I-hat, J-hat}`` on the realified complexification of ``cps.g``."""
    rc = realify_complexification(cps.g)
    i_hat = split_complex_structure(rc, _complex_span(rc, cps.plus), _complex_span(rc, cps.minus))
    j_hat = rc.complexify(cps.j)
    return rc, check_hypercomplex(rc.hat, i_hat, j_hat)


def induced_cps_on_hat(cps: ComplexProductStructure) -> ComplexProductStructure:
    """``{J-hat, E-hat}`` with ``E-hat = -I I-hat``."""
    rc, hc = induce_hypercomplex(cps)
    e_hat = -matmul(rc.i_map, hc.j1)
    return validate_cps(rc.hat, hc.j2, e_hat)


@dataclass(frozen=True, eq=False)
class Stage:
    level: int
    cps: ComplexProductStructure
    hypercomplex: HypercomplexStructure | None

    @property
    def algebra(self) -> LieAlgebra:
        return self.cps.g


def iterate_tower(cps: ComplexProductStructure, k: int, cap: int = DEFAULT_CAP) -> list[Stage]:
    """Stages ``0..k``; stage ``m`` is the ``m``-fold hat with its induced structures."""
    if k < 1:
        raise ValueError("k must be at least 1")
    final = cps.dim * 2**k
    if final > cap:
        raise StructureError("CAP", f"dimension {final} exceeds the cap {cap}")
    stages = [Stage(0, cps, None)]
    current = cps
    for level in range(1, k + 1):
        rc, hc = induce_hypercomplex(current)
        current = validate_cps(rc.hat, hc.j2, -matmul(rc.i_map, hc.j1))
        stages.append(Stage(level, current, hc))
    return stages


def iterate_family(cps: ComplexProductStructure, k: int, cap: int = DEFAULT_CAP) -> Stage:
    """The ``k``-fold hat of ``cps.g`` (dimension ``2^k dim g``)."""
    return iterate_tower(cps, k, cap)[-1]


def quaternion_check(hc: HypercomplexStructure) -> bool:
    n = hc.g.dim
    minus_id = -eye(n)
    return all(_same(matmul(m, m), minus_id) for m in (hc.j1, hc.j2, hc.j3))

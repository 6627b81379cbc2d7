"""Built-in example algebras and structures, with expected derived data.

Family entries take ``p``, the *half-angle* point ``(cos t/2, sin t/2)``;
the matrices use the full angle ``p.double()``.  Sampling ``p`` at rational
circle points keeps both angles exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

from .lie import LieAlgebra, abelian, hat_label, is_abelian, killing_form
from .linalg import (
    ANGLE_PI,
    CirclePoint,
    Subspace,
    circle_point,
    eye,
    is_zero,
    kernel,
    qarray,
    rank,
    zeros,
)
from .lsa import (
    BilinearProductSpace,
    aff_construction,
    associator,
    bicrossproduct,
    check_lsa,
    check_matched_pair,
    adapted_constants,
    extended_product,
    induced_lsa,
    phi_psi_obstruction,
)
from .report import Report, StructureError
from .structures import (
    ComplexProductStructure,
    check_complex_integrable,
    gl_cps,
    sp_decomposition,
    split_endomorphism,
    validate_cps,
)

DEFAULT_SAMPLES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3))

A4_FAMILIES = ("E", "E'", "E''", "Etilde")
_FAMILY_ALIASES = {"Eprime": "E'", "Edprime": "E''", "E~": "Etilde", "tilde": "Etilde"}


@dataclass
class CatalogEntry:
    key: str
    algebra: LieAlgebra
    j: np.ndarray | None = None
    e: np.ndarray | None = None
    cps: ComplexProductStructure | None = None
    negative: bool = False
    family: str | None = None
    p: CirclePoint | None = None
    fixtures: dict[str, Any] = field(default_factory=dict)
    description: str = ""

    @property
    def positive(self) -> bool:
        return self.cps is not None


# --------------------------------------------------------------------------
# transcription helpers


def _algebra(name: str, labels, brackets, check: bool = True) -> LieAlgebra:
    return LieAlgebra.from_brackets(name, list(labels), brackets, check=check)


def endo(g: LieAlgebra, images: Mapping[str, Mapping[str, object]]) -> np.ndarray:
    """Matrix whose column for ``label`` is the given image; others are zero."""
    m = zeros(g.dim, g.dim)
    for lab, out in images.items():
        m[:, g.labels.index(lab)] = g.vec(out)
    return m


def complex_from_pairs(g: LieAlgebra, pairs: Mapping[str, str]) -> np.ndarray:
    """``J a = b`` and ``J b = -a`` for each pair ``a: b``."""
    images = {}
    for a, b in pairs.items():
        images[a] = {b: 1}
        images[b] = {a: -1}
    return endo(g, images)


def _vecs(g: LieAlgebra, combos) -> list[np.ndarray]:
    return [g.vec(c) for c in combos]


def _hat_labels(labels) -> list[str]:
    return list(labels) + [hat_label(lab) for lab in labels]


def _hatted_pairs(pairs: Mapping[str, str]) -> dict[str, str]:
    out = dict(pairs)
    out.update({hat_label(a): hat_label(b) for a, b in pairs.items()})
    return out


def _half(p) -> CirclePoint:
    if p is None:
        raise StructureError("PARAMETER", "this entry needs a circle point p")
    if isinstance(p, CirclePoint):
        return p
    if isinstance(p, (tuple, list)):
        return CirclePoint(Fraction(p[0]), Fraction(p[1]))
    return circle_point(p)


# --------------------------------------------------------------------------
# entries


def _cn_abelian(n: int = 1) -> CatalogEntry:
    labels = [f"U{i + 1}" for i in range(n)] + [f"V{i + 1}" for i in range(n)]
    g = abelian(2 * n, name=f"C{n}", labels=labels)
    j = complex_from_pairs(g, {f"U{i + 1}": f"V{i + 1}" for i in range(n)})
    e = endo(g, {**{f"U{i + 1}": {f"U{i + 1}": 1} for i in range(n)}, **{f"V{i + 1}": {f"V{i + 1}": -1} for i in range(n)}})
    cps = validate_cps(g, j, e)
    return CatalogEntry("Cn_abelian", g, j, e, cps, description="abelian C^n with its standard structures")


def aff_r() -> LieAlgebra:
    return _algebra("aff(R)", "XY", {("X", "Y"): {"Y": 1}})


def _aff_r() -> CatalogEntry:
    g = aff_r()
    j = complex_from_pairs(g, {"X": "Y"})
    e = endo(g, {"X": {"X": 1}, "Y": {"Y": -1}})
    cps = validate_cps(g, j, e)
    fixtures = {
        "plus": _vecs(g, [{"X": 1}]),
        "minus": _vecs(g, [{"Y": 1}]),
        "products": [("X", "X", {"X": 1}), ("X", "Y", {"Y": 1}), ("Y", "X", {}), ("Y", "Y", {})],
        "flat": True,
        "extends": True,
    }
    return CatalogEntry("affR", g, j, e, cps, fixtures=fixtures, description="aff(R), [X,Y]=Y")


def _gl2n(n: int = 1) -> CatalogEntry:
    cps = gl_cps(n)
    return CatalogEntry(
        "gl2nR", cps.g, cps.j, cps.e, cps, fixtures={"flat": True},
        description=f"gl({2 * n},R) with right multiplication by J0, E0",
    )


GL2_BRACKETS = {("W", "X"): {"X": 2}, ("W", "Y"): {"Y": -2}, ("X", "Y"): {"W": 1}}


def _gl2r() -> CatalogEntry:
    g = _algebra("gl(2,R)", "WXYZ", GL2_BRACKETS)
    half = Fraction(1, 2)
    j = endo(g, {
        "W": {"X": -1, "Y": -1},
        "X": {"W": half, "Z": half},
        "Y": {"W": half, "Z": -half},
        "Z": {"X": -1, "Y": 1},
    })
    e = endo(g, {"W": {"Z": 1}, "X": {"X": -1}, "Y": {"Y": 1}, "Z": {"W": 1}})
    cps = validate_cps(g, j, e)
    fixtures = {
        "plus": _vecs(g, [{"Y": 1}, {"W": 1, "Z": 1}]),
        "minus": _vecs(g, [{"X": 1}, {"W": 1, "Z": -1}]),
        "plus_type": "aff",
        "minus_type": "aff",
        "flat": True,
        "hat": "gl2C",
    }
    return CatalogEntry("gl2R", g, j, e, cps, fixtures=fixtures, description="gl(2,R) with [W,X]=2X, [W,Y]=-2Y, [X,Y]=W")


def _gl2c() -> CatalogEntry:
    labels = ["W", "X", "Y", "Z", "W^", "X^", "Y^", "Z^"]
    # the sign of [W^,Y] and [X,Y^] is fixed by [Ix,y] = I[x,y]; see tests
    g = _algebra("gl(2,C)", labels, {
        ("W", "X"): {"X": 2}, ("W^", "X^"): {"X": -2},
        ("W", "Y"): {"Y": -2}, ("W^", "Y^"): {"Y": 2},
        ("X", "Y"): {"W": 1}, ("X^", "Y^"): {"W": -1},
        ("W", "X^"): {"X^": 2}, ("W^", "X"): {"X^": 2},
        ("W", "Y^"): {"Y^": -2}, ("W^", "Y"): {"Y^": -2},
        ("X^", "Y"): {"W^": 1}, ("X", "Y^"): {"W^": 1},
    })
    half = Fraction(1, 2)
    i_hat = endo(g, {
        "W": {"Z^": 1}, "X": {"X^": -1}, "Y": {"Y^": 1}, "Z": {"W^": 1},
        # X^ and Y^ are fixed by I-hat squared = -Id; see tests
        "W^": {"Z": -1}, "X^": {"X": 1}, "Y^": {"Y": -1}, "Z^": {"W": -1},
    })
    j_hat = endo(g, {
        "W": {"X": -1, "Y": -1}, "X": {"W": half, "Z": half}, "Y": {"W": half, "Z": -half}, "Z": {"X": -1, "Y": 1},
        "W^": {"X^": -1, "Y^": -1}, "X^": {"W^": half, "Z^": half}, "Y^": {"W^": half, "Z^": -half},
        "Z^": {"X^": -1, "Y^": 1},
    })
    return CatalogEntry("gl2C", g, j_hat, fixtures={"i_hat": i_hat, "j_hat": j_hat, "base": "gl2R"},
                        description="hypercomplex structure on gl(2,C) induced from gl2R")


A2_BRACKETS = {("A", "B"): {"B": 1}, ("A", "C"): {"C": -1}, ("A", "D"): {"D": -1}}
A4_BRACKETS = {("A", "B"): {"B": 1}, ("A", "C"): {"C": 1}, ("A", "D"): {"D": 1}}
AD_PAIRS = {"A": "B", "C": "D"}


def _a2() -> CatalogEntry:
    g = _algebra("A2", "ABCD", A2_BRACKETS)
    j = complex_from_pairs(g, AD_PAIRS)
    plus = Subspace.span(_vecs(g, [{"A": 1, "D": -1}, {"C": 1}]), 4)
    minus = Subspace.span(_vecs(g, [{"B": 1, "C": 1}, {"D": 1}]), 4)
    e = split_endomorphism(plus, minus)
    cps = validate_cps(g, j, e)
    amd, bpc = {"A": 1, "D": -1}, {"B": 1, "C": 1}
    fixtures = {
        "plus": plus.vectors(),
        "minus": minus.vectors(),
        "products": [
            (amd, amd, amd), (bpc, amd, {"C": 2}),
            (amd, {"C": 1}, {"C": -1}), (bpc, {"C": 1}, {}),
            (amd, bpc, bpc), (bpc, bpc, {"D": 2}),
            (amd, {"D": 1}, {"D": -1}), (bpc, {"D": 1}, {}),
        ]
        + [(lab, other, {}) for lab in ("C", "D") for other in "ABCD"],
        "associators": [((amd, bpc, amd), {"C": -4}), ((bpc, amd, amd), {"C": 2})],
        "curvature": ((amd, bpc, amd), {"C": -6}),
        "extends": False,
        "flat": False,
        "hat": "A2_hat",
    }
    return CatalogEntry("A2", g, j, e, cps, fixtures=fixtures, description="[A,B]=B, [A,C]=-C, [A,D]=-D")


def _a2_hat() -> CatalogEntry:
    g = _algebra("A2^", _hat_labels("ABCD"), {
        ("A", "B"): {"B": 1}, ("A^", "B^"): {"B": -1},
        ("A", "C"): {"C": -1}, ("A^", "C^"): {"C": 1},
        ("A", "D"): {"D": -1}, ("A^", "D^"): {"D": 1},
        ("A", "B^"): {"B^": 1}, ("A^", "B"): {"B^": 1},
        ("A", "C^"): {"C^": -1}, ("A^", "C"): {"C^": -1},
        ("A", "D^"): {"D^": -1}, ("A^", "D"): {"D^": -1},
    })
    i_hat = endo(g, {
        "A": {"A^": 1, "D^": -2}, "B": {"B^": -1, "C^": -2}, "C": {"C^": 1}, "D": {"D^": -1},
        "A^": {"A": -1, "D": 2}, "B^": {"B": 1, "C": 2}, "C^": {"C": -1}, "D^": {"D": 1},
    })
    j_hat = complex_from_pairs(g, _hatted_pairs(AD_PAIRS))
    return CatalogEntry("A2_hat", g, j_hat, fixtures={"i_hat": i_hat, "j_hat": j_hat, "base": "A2"},
                        description="hypercomplex structure induced from A2")


def h3r_algebra() -> LieAlgebra:
    return _algebra("h3+R", "XYZW", {("X", "Y"): {"Z": 1}})


def _h3r(p) -> CatalogEntry:
    u = _half(p)
    t = u.double()
    c, s = t.c, t.s
    g = h3r_algebra()
    j = complex_from_pairs(g, {"X": "Y", "Z": "W"})
    e = qarray([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, c, s], [0, 0, s, -c]])
    cps = validate_cps(g, j, e)
    fixtures = {
        "plus": _vecs(g, [{"X": 1}, {"Z": u.c, "W": u.s}]),
        "minus": _vecs(g, [{"Y": 1}, {"Z": -u.s, "W": u.c}]),
        "plus_type": "abelian",
        "minus_type": "abelian",
        "hat": "h3R_hat",
    }
    return CatalogEntry("h3R", g, j, e, cps, p=u, fixtures=fixtures, description="h3 + R, [X,Y]=Z, family E_t")


def _h3r_hat(p) -> CatalogEntry:
    t = _half(p).double()
    c, s = t.c, t.s
    g = _algebra("(h3+R)^", _hat_labels("XYZW"), {
        ("X", "Y"): {"Z": 1}, ("X^", "Y^"): {"Z": -1},
        ("X", "Y^"): {"Z^": 1}, ("X^", "Y"): {"Z^": 1},
    })
    i_hat = endo(g, {
        "X": {"X^": 1}, "Y": {"Y^": -1}, "Z": {"Z^": c, "W^": s}, "W": {"Z^": s, "W^": -c},
        "X^": {"X": -1}, "Y^": {"Y": 1}, "Z^": {"Z": -c, "W": -s}, "W^": {"Z": -s, "W": c},
    })
    j_hat = complex_from_pairs(g, _hatted_pairs({"X": "Y", "Z": "W"}))
    return CatalogEntry("h3R_hat", g, j_hat, p=_half(p), fixtures={"i_hat": i_hat, "j_hat": j_hat, "base": "h3R"},
                        description="hypercomplex structures induced from h3R")


def _family(family) -> str:
    family = "E" if family is None else _FAMILY_ALIASES.get(family, family)
    if family not in A4_FAMILIES:
        raise StructureError("UNKNOWN-FAMILY", f"unknown family {family!r}; expected one of {', '.join(A4_FAMILIES)}")
    return family


def a4_matrix(family: str, t: CirclePoint | None) -> np.ndarray:
    if family == "Etilde":
        return qarray([[-1, 0, 0, 0], [0, 1, 0, 0], [-2, 0, 1, 0], [0, 2, 0, -1]])
    c, s = t.c, t.s
    if family == "E":
        return qarray([[c, s, 0, 0], [s, -c, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    if family == "E'":
        return qarray([[c, s, 0, 0], [s, -c, 0, 0], [-s, 1 + c, 1, 0], [1 + c, s, 0, -1]])
    if family == "E''":
        return qarray([[c, s, -s, 1 + c], [s, -c, 1 + c, s], [0, 0, 1, 0], [0, 0, 0, -1]])


def _needs_angle(family: str) -> bool:
    return family != "Etilde"


def _a4(p, family) -> CatalogEntry:
    family = _family(family)
    g = _algebra("A4", "ABCD", A4_BRACKETS)
    j = complex_from_pairs(g, AD_PAIRS)
    u = _half(p) if _needs_angle(family) else None
    t = u.double() if u is not None else None
    if family in ("E'", "E''") and t == ANGLE_PI:
        raise StructureError("EXCLUDED-PARAMETER", f"{family} is not defined at the angle pi")
    e = a4_matrix(family, t)
    cps = validate_cps(g, j, e)
    if family == "E":
        plus = [{"C": 1}, {"A": u.c, "B": u.s}]
        minus = [{"D": 1}, {"A": -u.s, "B": u.c}]
    elif family == "E'":
        plus = [{"C": 1}, {"A": u.c, "B": u.s, "D": u.c}]
        minus = [{"D": 1}, {"A": -u.s, "B": u.c, "C": -u.c}]
    elif family == "E''":
        plus = [{"A": u.c, "B": u.s}, {"A": -u.c, "C": u.s}]
        minus = [{"A": -u.s, "B": u.c}, {"B": -u.c, "D": u.s}]
    else:
        plus = [{"C": 1}, {"B": 1, "D": 1}]
        minus = [{"D": 1}, {"A": 1, "C": 1}]
    fixtures = {
        "plus": _vecs(g, plus),
        "minus": _vecs(g, minus),
        "plus_type": "abelian" if family == "Etilde" else "aff",
        "minus_type": "aff",
        "hat": "A4_hat",
    }
    return CatalogEntry("A4", g, j, e, cps, family=family, p=u, fixtures=fixtures,
                        description=f"[A,B]=B, [A,C]=C, [A,D]=D with {family}")


def _a4_hat(p, family) -> CatalogEntry:
    family = _family(family)
    g = _algebra("A4^", _hat_labels("ABCD"), {
        ("A", "B"): {"B": 1}, ("A^", "B^"): {"B": -1},
        ("A", "C"): {"C": 1}, ("A^", "C^"): {"C": -1},
        ("A", "D"): {"D": 1}, ("A^", "D^"): {"D": -1},
        ("A", "B^"): {"B^": 1}, ("A^", "B"): {"B^": 1},
        ("A", "C^"): {"C^": 1}, ("A^", "C"): {"C^": 1},
        ("A", "D^"): {"D^": 1}, ("A^", "D"): {"D^": 1},
    })
    u = _half(p) if _needs_angle(family) else None
    t = u.double() if u is not None else None
    if family in ("E'", "E''") and t == ANGLE_PI:
        raise StructureError("EXCLUDED-PARAMETER", f"{family} is not defined at the angle pi")
    if family == "E":
        c, s = t.c, t.s
        images = {
            "A": {"A^": c, "B^": s}, "B": {"A^": s, "B^": -c}, "C": {"C^": 1}, "D": {"D^": -1},
            "A^": {"A": -c, "B": -s}, "B^": {"A": -s, "B": c}, "C^": {"C": -1}, "D^": {"D": 1},
        }
    elif family == "E'":
        c, s = t.c, t.s
        images = {
            "A": {"A^": c, "B^": s, "C^": -s, "D^": 1 + c},
            "B": {"A^": s, "B^": -c, "C^": 1 + c, "D^": s},
            "C": {"C^": 1}, "D": {"D^": -1},
            "A^": {"A": -c, "B": -s, "C": s, "D": -(1 + c)},
            "B^": {"A": -s, "B": c, "C": -(1 + c), "D": -s},
            "C^": {"C": -1}, "D^": {"D": 1},
        }
    elif family == "E''":
        c, s = t.c, t.s
        images = {
            "A": {"A^": c, "B^": s}, "B": {"A^": s, "B^": -c},
            "C": {"A^": -s, "B^": 1 + c, "C^": 1}, "D": {"A^": 1 + c, "B^": s, "D^": -1},
            "A^": {"A": -c, "B": -s}, "B^": {"A": -s, "B": c},
            "C^": {"A": s, "B": -(1 + c), "C": -1}, "D^": {"A": -(1 + c), "B": -s, "D": 1},
        }
    else:
        images = {
            "A": {"A^": -1, "C^": -2}, "B": {"B^": 1, "D^": 2}, "C": {"C^": 1}, "D": {"D^": -1},
            "A^": {"A": 1, "C": 2}, "B^": {"B": -1, "D": -2}, "C^": {"C": -1}, "D^": {"D": 1},
        }
    i_hat = endo(g, images)
    j_hat = complex_from_pairs(g, _hatted_pairs(AD_PAIRS))
    return CatalogEntry("A4_hat", g, j_hat, family=family, p=u,
                        fixtures={"i_hat": i_hat, "j_hat": j_hat, "base": "A4"},
                        description=f"hypercomplex structure induced from A4 with {family}")


def _h2() -> CatalogEntry:
    g = _algebra("H2", "AXYZ", {("X", "Y"): {"Z": 1}, ("A", "X"): {"Y": -1}, ("A", "Y"): {"X": 1}})
    j = complex_from_pairs(g, {"A": "Z", "X": "Y"})
    return CatalogEntry("H2", g, j, negative=True, fixtures={"j_integrable": True, "abelian_j": False},
                        description="[X,Y]=Z, [A,X]=-Y, [A,Y]=X; complex but no complex product structure")


def invariant_symmetric_forms(g: LieAlgebra) -> list[np.ndarray]:
    """Basis of the symmetric forms ``B`` with ``B([x,y],z) + B(y,[x,z]) = 0``."""
    n = g.dim
    idx = [(a, b) for a in range(n) for b in range(a, n)]
    units = []
    for a, b in idx:
        m = zeros(n, n)
        m[a, b] = m[b, a] = Fraction(1)
        units.append(m)
    rows = []
    for ad in g.ad_basis():
        cols = [(ad.T.dot(u) + u.dot(ad)).reshape(-1) for u in units]
        rows.append(np.array(cols, dtype=object).T)
    sol = kernel(np.vstack(rows))
    return [sum((x * u for x, u in zip(v, units)), zeros(n, n)) for v in sol.vectors()]


def _so3r() -> CatalogEntry:
    g = _algebra("R+so(3)", ["T", "L1", "L2", "L3"], {
        ("L1", "L2"): {"L3": 1}, ("L2", "L3"): {"L1": 1}, ("L3", "L1"): {"L2": 1},
    })
    forms = invariant_symmetric_forms(g)
    return CatalogEntry("so3R", g, negative=True, fixtures={"invariant_forms": forms},
                        description="R + so(3); carries an invariant inner product, no complex product structure")


def _spn(n: int = 1) -> CatalogEntry:
    g, parts = sp_decomposition(n)
    return CatalogEntry("spn", g, negative=True, fixtures={"parts": parts},
                        description=f"sp({n},R) = gl({n},R) + a+ + a-")


def _aff_a(A: BilinearProductSpace | None = None) -> CatalogEntry:
    if A is None:
        a = zeros(1, 1, 1)
        a[0, 0, 0] = Fraction(1)
        A = BilinearProductSpace(a, ("X",))
    g, cps = aff_construction(A)
    return CatalogEntry("affA", g, cps.j, cps.e, cps, description="aff(A) for a left-symmetric algebra A")


KEYS = (
    "Cn_abelian", "affR", "gl2R", "gl2nR", "spn", "affA", "A2", "h3R", "A4",
    "H2", "so3R", "gl2C", "A2_hat", "h3R_hat", "A4_hat",
)
FAMILY_KEYS = ("h3R", "A4", "h3R_hat", "A4_hat")


def get(key: str, p=None, family: str | None = None, n: int | None = None, A=None) -> CatalogEntry:
    """Instantiate a catalog entry.

    ``p`` is the half-angle circle point (or a rational ``t``) for the
    families; ``family`` selects the A4 product structure.
    """
    if key == "Cn_abelian":
        return _cn_abelian(n or 1)
    if key == "affR":
        return _aff_r()
    if key == "gl2R":
        return _gl2r()
    if key == "gl2nR":
        return _gl2n(n or 1)
    if key == "spn":
        return _spn(n or 1)
    if key == "affA":
        return _aff_a(A)
    if key == "A2":
        return _a2()
    if key == "h3R":
        return _h3r(p)
    if key == "A4":
        fam = _family(family)
        return _a4(p if _needs_angle(fam) else None, fam)
    if key == "H2":
        return _h2()
    if key == "so3R":
        return _so3r()
    if key == "gl2C":
        return _gl2c()
    if key == "A2_hat":
        return _a2_hat()
    if key == "h3R_hat":
        return _h3r_hat(p)
    if key == "A4_hat":
        fam = _family(family)
        return _a4_hat(p if _needs_angle(fam) else None, fam)
    raise StructureError("UNKNOWN-KEY", f"unknown catalog key {key!r}")


def hat_entry_for(entry: CatalogEntry) -> CatalogEntry | None:
    hat = entry.fixtures.get("hat")
    if hat is None:
        return None
    return get(hat, p=entry.p, family=entry.family)


def positive_instances(samples=DEFAULT_SAMPLES) -> list[CatalogEntry]:
    """Every positive entry at every sample point (families skip excluded angles)."""
    out = [_cn_abelian(1), _cn_abelian(2), _aff_r(), _gl2r(), _gl2n(1), _aff_a(), _a2()]
    for t in samples:
        u = circle_point(t)
        out.append(_h3r(u))
        for fam in ("E", "E'", "E''"):
            if fam != "E" and u.double() == ANGLE_PI:
                continue
            out.append(_a4(u, fam))
    out.append(_a4(None, "Etilde"))
    return out


# --------------------------------------------------------------------------
# verification pipeline


def dim2_type(g: LieAlgebra, s: Subspace) -> str:
    """``"abelian"`` or ``"aff"``: a 2-dim algebra is one or the other."""
    if s.dim != 2:
        raise ValueError("expected a 2-dimensional subalgebra")
    return "abelian" if is_abelian(g, s) else "aff"


def eigenspace_diffs(g: LieAlgebra, space: Subspace, vectors, name: str) -> list[str]:
    """Expected spanning vectors must lie in ``space`` and span it whenever
    they are independent (a displayed basis may collapse at special angles)."""
    out = [f"{g.fmt(v)} is not in {name}" for v in vectors if v not in space]
    want = Subspace.span(vectors, g.dim)
    if not out and want.dim == len(vectors) and want != space:
        out.append(f"{name} is {space}, expected {want}")
    return out


def _entry_tag(entry: CatalogEntry) -> str:
    tag = entry.key
    if entry.family:
        tag += f"[{entry.family}]"
    if entry.p is not None:
        tag += f"@{entry.p}"
    return tag


def verify_entry(entry: CatalogEntry) -> list[str]:
    """Run the whole pipeline on a positive entry; returns human-readable diffs."""
    from .connections import cp_connection, curvature_at, extend_to_hat, is_flat, is_torsion_free, parallel_check
    from .hypercomplex import induce_hypercomplex

    diffs: list[str] = []
    cps = entry.cps
    g = cps.g
    fx = entry.fixtures
    for side, space in (("plus", cps.plus), ("minus", cps.minus)):
        if side in fx:
            diffs.extend(eigenspace_diffs(g, space, fx[side], "g+" if side == "plus" else "g-"))
    for side, space in (("plus", cps.plus), ("minus", cps.minus)):
        want = fx.get(f"{side}_type")
        if want and dim2_type(g, space) != want:
            diffs.append(f"g{'+' if side == 'plus' else '-'} has type {dim2_type(g, space)}, expected {want}")
    lp, lm = induced_lsa(cps)
    for name, lsa in (("g+", lp), ("g-", lm)):
        rep = check_lsa(lsa)
        if not rep.ok:
            diffs.append(f"induced product on {name} violates {rep.tfree.law if not rep.tfree.ok else rep.flat.law}")
        if g.dim and rank(killing_form(lsa.base)) == lsa.dim and lsa.dim:
            diffs.append(f"{name} has nondegenerate Killing form")
    mp_rep = check_matched_pair(_matched(cps))
    for r in mp_rep.reports():
        if not r.ok:
            diffs.append(f"matched pair violates {r.law}")
    if not bicrossproduct(_matched(cps)).same_constants(LieAlgebra("x", [f"f{i}" for i in range(g.dim)], adapted_constants(cps))):
        diffs.append("bicrossproduct does not reproduce the adapted structure constants")
    prod = extended_product(cps)
    for x, y, want in fx.get("products", []):
        xv, yv = _as_vec(g, x), _as_vec(g, y)
        got = np.einsum("i,j,ijk->k", xv, yv, prod)
        if not is_zero(got - g.vec(want)):
            diffs.append(f"product {g.fmt(xv)} . {g.fmt(yv)} = {g.fmt(got)}, expected {g.fmt(g.vec(want))}")
    for (x, y, z), want in fx.get("associators", []):
        got = associator(prod, g.vec(x), g.vec(y), g.vec(z))
        if not is_zero(got - g.vec(want)):
            diffs.append(f"associator mismatch: {g.fmt(got)}")
    obstruction = phi_psi_obstruction(cps)
    flat_product = check_lsa(prod, g).flat.ok
    if obstruction.extends != flat_product:
        diffs.append("obstruction and flatness of the extended product disagree")
    if "extends" in fx and obstruction.extends != fx["extends"]:
        diffs.append(f"extends = {obstruction.extends}, expected {fx['extends']}")
    conn = cp_connection(cps)
    if not is_torsion_free(conn):
        diffs.append("complex product connection has torsion")
    if not (parallel_check(conn, cps.j) and parallel_check(conn, cps.e)):
        diffs.append("J or E is not parallel")
    flat = is_flat(conn)
    if "flat" in fx and flat != fx["flat"]:
        diffs.append(f"flat = {flat}, expected {fx['flat']}")
    if "curvature" in fx:
        (x, y, z), want = fx["curvature"]
        got = curvature_at(conn, g.vec(x), g.vec(y), g.vec(z))
        if not is_zero(got - g.vec(want)):
            diffs.append(f"curvature value {g.fmt(got)}, expected {g.fmt(g.vec(want))}")
    rc, hc = induce_hypercomplex(cps)
    hat_conn = extend_to_hat(conn, rc)
    if not (parallel_check(hat_conn, hc.j1) and parallel_check(hat_conn, hc.j2)):
        diffs.append("extended connection does not parallelize the hypercomplex structure")
    if is_flat(hat_conn) != flat:
        diffs.append("flatness differs between g and its complexification")
    hat = hat_entry_for(entry)
    if hat is not None:
        if not rc.hat.same_constants(hat.algebra) or rc.hat.labels != hat.algebra.labels:
            diffs.append("complexified brackets differ from the transcribed table")
        if not np.all(hc.j1 == hat.fixtures["i_hat"]):
            diffs.append("I-hat differs from the transcribed action")
        if not np.all(hc.j2 == hat.fixtures["j_hat"]):
            diffs.append("J-hat differs from the transcribed action")
    return [f"{_entry_tag(entry)}: {d}" for d in diffs]


def _matched(cps):
    from .lsa import matched_pair_from_cps

    return matched_pair_from_cps(cps)


def _as_vec(g: LieAlgebra, x) -> np.ndarray:
    if isinstance(x, str):
        return g.basis_vector(x)
    return g.vec(x)


def verify_negative() -> list[str]:
    from .structures import is_abelian_cs

    diffs = []
    h2 = _h2()
    if not check_complex_integrable(h2.algebra, h2.j).ok:
        diffs.append("H2: stored J is not integrable")
    if is_abelian_cs(h2.algebra, h2.j):
        diffs.append("H2: stored J is unexpectedly abelian")
    so3 = _so3r()
    forms = so3.fixtures["invariant_forms"]
    if not _in_span(forms, eye(4)):
        diffs.append("so3R: the identity is not an invariant form")
    return diffs


def _in_span(mats, target) -> bool:
    flat = [m.reshape(-1) for m in mats]
    n = target.size
    return Subspace.span(flat, n).dim == Subspace.span(flat + [target.reshape(-1)], n).dim


def verify_all(samples=DEFAULT_SAMPLES) -> Report:
    """Full pipeline over every positive entry and sample; failures carry diffs."""
    rep = Report("CATALOG")
    for entry in positive_instances(samples):
        for d in verify_entry(entry):
            rep.failures.append(((entry.key,), d))
    for d in verify_negative():
        rep.failures.append((("negative",), d))
    return rep

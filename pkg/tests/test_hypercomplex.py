import numpy as np
import pytest

from cpslie import catalog
from cpslie.catalog import endo
from cpslie.hypercomplex import (
    check_hypercomplex,
    induce_hypercomplex,
    induced_cps_on_hat,
    iterate_family,
    iterate_tower,
    quaternion_check,
    split_complex_structure,
)
from cpslie.lie import LieAlgebra, check_jacobi, realify_complexification
from cpslie.linalg import Subspace, compose_bilinear, eye, is_zero, matmul, qarray
from cpslie.report import StructureError
from cpslie.structures import validate_cps

HAT8 = ["W", "X", "Y", "Z", "W^", "X^", "Y^", "Z^"]


def literal_gl2c_brackets():
    # the table exactly as printed, including [W^,Y] = 2Y^ and [X,Y^] = -W^
    return {
        ("W", "X"): {"X": 2}, ("W^", "X^"): {"X": -2},
        ("W", "Y"): {"Y": -2}, ("W^", "Y^"): {"Y": 2},
        ("X", "Y"): {"W": 1}, ("X^", "Y^"): {"W": -1},
        ("W", "X^"): {"X^": 2}, ("W^", "X"): {"X^": 2},
        ("W", "Y^"): {"Y^": -2}, ("W^", "Y"): {"Y^": 2},
        ("X^", "Y"): {"W^": 1}, ("X", "Y^"): {"W^": -1},
    }


def test_printed_gl2c_table_is_not_the_complexification():
    g = LieAlgebra.from_brackets("literal", HAT8, literal_gl2c_brackets(), check=False)
    rc = realify_complexification(catalog.get("gl2R").algebra)
    i = rc.i_map
    assert not is_zero(compose_bilinear(g.c, left=i) - compose_bilinear(g.c, out=i))
    assert not check_jacobi(g).ok
    # the corrected table is exactly the realified complexification
    assert catalog.get("gl2C").algebra.same_constants(rc.hat)


def test_printed_i_hat_does_not_square_to_minus_one():
    g = catalog.get("gl2C").algebra
    literal = endo(g, {
        "W": {"Z^": 1}, "X": {"X^": -1}, "Y": {"Y^": 1}, "Z": {"W^": 1},
        "W^": {"Z": -1}, "X^": {"X": -1}, "Y^": {"Y": 1}, "Z^": {"W": -1},
    })
    assert not np.all(matmul(literal, literal) == -eye(8))
    fixed = catalog.get("gl2C").fixtures["i_hat"]
    assert np.all(matmul(fixed, fixed) == -eye(8))


def test_gl2c_action_lines():
    gl = catalog.get("gl2R")
    rc, hc = induce_hypercomplex(gl.cps)
    g = rc.hat

    def act(m, lab):
        return g.fmt(m[:, g.labels.index(lab)])

    assert act(hc.j1, "W") == "Z^"
    assert act(hc.j1, "X") == "-X^"
    assert act(hc.j1, "Z^") == "-W"
    assert act(hc.j2, "W") == "-X - Y"
    assert act(hc.j2, "Z^") == "-X^ + Y^"
    hat = catalog.get("gl2C")
    assert np.all(hc.j1 == hat.fixtures["i_hat"]) and np.all(hc.j2 == hat.fixtures["j_hat"])


@pytest.mark.parametrize("key", ["gl2R", "A2", "h3R", "A4", "affR"])
def test_induced_structures(key):
    e = catalog.get(key, p=2, family="E''")
    rc, hc = induce_hypercomplex(e.cps)
    assert quaternion_check(hc)
    assert np.all(matmul(hc.j1, rc.i_map) == matmul(rc.i_map, hc.j1))
    cps_hat = induced_cps_on_hat(e.cps)
    assert cps_hat.dim == 2 * e.cps.dim


def test_hypercomplex_error_codes():
    rc, hc = induce_hypercomplex(catalog.get("gl2R").cps)
    g = rc.hat

    def code(j1, j2):
        with pytest.raises(StructureError) as err:
            check_hypercomplex(g, j1, j2)
        return err.value.code

    assert code(eye(8), hc.j2) == "J1-SQUARE"
    assert code(hc.j1, eye(8)) == "J2-SQUARE"
    assert code(hc.j1, hc.j1) == "ANTICOMMUTE"


def test_split_complex_structure_errors():
    rc = realify_complexification(catalog.get("A2").algebra)
    n = 8
    e = eye(n)
    whole = Subspace.full(n)
    with pytest.raises(StructureError) as err:
        split_complex_structure(rc, whole, Subspace.zero(n))
    assert err.value.code == "DEGENERATE-SPLIT"
    real = Subspace.span(list(e[:4]), n)
    with pytest.raises(StructureError) as err:
        split_complex_structure(rc, real, real)
    assert err.value.code == "NOT-COMPLEMENTARY"
    imag = Subspace.span(list(e[4:]), n)
    with pytest.raises(StructureError) as err:
        split_complex_structure(rc, real, imag)
    assert err.value.code in {"NOT-SUBALGEBRA", "NOT-I-STABLE"}


def test_tower_dimensions_and_cap():
    cps = catalog.get("gl2R").cps
    stages = iterate_tower(cps, 2)
    assert [s.algebra.dim for s in stages] == [4, 8, 16]
    assert all(quaternion_check(s.hypercomplex) for s in stages[1:])
    assert iterate_family(cps, 1).algebra.same_constants(catalog.get("gl2C").algebra)
    with pytest.raises(StructureError) as err:
        iterate_tower(cps, 5)
    assert err.value.code == "CAP"
    with pytest.raises(StructureError):
        iterate_tower(cps, 2, cap=8)
    with pytest.raises(ValueError):
        iterate_tower(cps, 0)


def test_canonical_i_is_never_part_of_a_structure_on_a_nonabelian_hat():
    for entry in catalog.positive_instances():
        g = entry.algebra
        if g.is_abelian():
            continue
        rc = realify_complexification(g)
        n = g.dim
        conj = eye(2 * n)
        for k in range(n, 2 * n):
            conj[k, k] = -1
        e_c = rc.complexify(entry.e)
        for e in (e_c, conj, matmul(e_c, conj), -matmul(rc.i_map, induce_hypercomplex(entry.cps)[1].j1)):
            with pytest.raises(StructureError):
                validate_cps(rc.hat, rc.i_map, e)


def test_canonical_i_on_abelian_hat_is_fine():
    entry = catalog.get("Cn_abelian", n=1)
    rc = realify_complexification(entry.algebra)
    conj = qarray(np.diag([1, 1, -1, -1]))
    assert validate_cps(rc.hat, rc.i_map, conj).dim == 4

"""Acceptance criteria 1-8, each reported as one PASS/FAIL line.

All comparisons are exact equalities of Fractions.  The lines are printed in
the pytest terminal summary (see conftest) and by ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from cpslie import catalog
from cpslie.catalog import endo
from cpslie.connections import (
    cp_connection,
    curvature,
    curvature_at,
    extend_to_hat,
    is_flat,
    is_torsion_free,
    nonzero_count,
    obata_connection,
    parallel_check,
    uniqueness_probe,
)
from cpslie.forms import (
    KForm,
    ce_differential,
    check_dual_product_integrability,
    extend_plus_form,
    hypersymplectic_suite,
)
from cpslie.hypercomplex import induce_hypercomplex
from cpslie.lie import check_jacobi, is_abelian, is_ideal, realify_complexification
from cpslie.linalg import eye, is_zero, matmul, qarray
from cpslie.lsa import (
    BilinearProductSpace,
    adapted_constants,
    aff_tensor,
    associator,
    bicrossproduct,
    check_lsa,
    check_matched_pair,
    extended_product,
    induced_lsa,
    matched_pair_from_cps,
    phi_psi_obstruction,
)
from cpslie.randgen import (
    random_aff_cps,
    random_almost_product,
    random_invertible,
    random_lsa,
    random_product,
)
from cpslie.report import StructureError
from cpslie.structures import check_product_integrable, is_abelian_cs, validate_cps

RESULTS: dict[int, tuple[bool, str]] = {}
SEED = 20261016
PROBES_PER_ENTRY = 200
RANDOM_PRODUCTS = 120
RANDOM_ALMOST_PRODUCTS = 50


def record(n: int, failures: list[str], summary: str) -> None:
    ok = not failures
    detail = summary if ok else f"{summary}; " + "; ".join(failures[:6]) + (" ..." if len(failures) > 6 else "")
    RESULTS[n] = (ok, detail)
    print(result_line(n))
    assert ok, detail


def result_line(n: int) -> str:
    ok, detail = RESULTS[n]
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


# ---------------------------------------------------------------------------
# 1. gl(2,R)


# the action lines exactly as printed for the complexification of gl(2,R)
HALF = Fraction(1, 2)
PRINTED_I = {
    "W": {"Z^": 1}, "X": {"X^": -1}, "Y": {"Y^": 1}, "Z": {"W^": 1},
    "W^": {"Z": -1}, "X^": {"X": -1}, "Y^": {"Y": 1}, "Z^": {"W": -1},
}
PRINTED_J = {
    "W": {"X": -1, "Y": -1}, "X": {"W": HALF, "Z": HALF}, "Y": {"W": HALF, "Z": -HALF}, "Z": {"X": -1, "Y": 1},
    "W^": {"X^": -1, "Y^": -1}, "X^": {"W^": HALF, "Z^": HALF}, "Y^": {"W^": HALF, "Z^": -HALF},
    "Z^": {"X^": -1, "Y^": 1},
}


def test_criterion_1_gl2():
    fails = []
    entry = catalog.get("gl2R")
    g = entry.algebra
    try:
        cps = validate_cps(g, entry.j, entry.e)
    except StructureError as err:
        record(1, [f"validate_cps: {err}"], "gl(2,R)")
        return
    fails += catalog.eigenspace_diffs(g, cps.plus, [g.vec({"Y": 1}), g.vec({"W": 1, "Z": 1})], "g+")
    fails += catalog.eigenspace_diffs(g, cps.minus, [g.vec({"X": 1}), g.vec({"W": 1, "Z": -1})], "g-")
    count = nonzero_count(curvature(cp_connection(cps)))
    if count:
        fails.append(f"curvature has {count} nonzero entries")
    rc, hc = induce_hypercomplex(cps)
    h = rc.hat
    lines = 0
    for name, printed, got in (("I^", PRINTED_I, hc.j1), ("J^", PRINTED_J, hc.j2)):
        want = endo(h, printed)
        for k, lab in enumerate(h.labels):
            lines += 1
            if not np.all(got[:, k] == want[:, k]):
                fails.append(f"{name} {lab}: printed {h.fmt(want[:, k])}, induced {h.fmt(got[:, k])}")
    summary = f"validate_cps ok, eigenspaces checked, curvature entries {count}, {lines} printed action lines compared"
    if all("I^ X^" in f or "I^ Y^" in f for f in fails) and fails:
        square = matmul(endo(h, PRINTED_I), endo(h, PRINTED_I))
        fails.append(f"printed I^ squared is -Id: {bool(np.all(square == -eye(8)))}")
    record(1, fails, summary)


# ---------------------------------------------------------------------------
# 2. A2


def test_criterion_2_a2():
    fails = []
    entry = catalog.get("A2")
    cps, g = entry.cps, entry.algebra
    prod = extended_product(cps)
    amd, bpc = g.vec({"A": 1, "D": -1}), g.vec({"B": 1, "C": 1})
    C, D = g.basis_vector("C"), g.basis_vector("D")

    def mul(x, y):
        return np.einsum("i,j,ijk->k", x, y, prod)

    table = [
        (amd, amd, amd), (bpc, amd, 2 * C), (amd, C, -C), (bpc, C, 0 * C),
        (amd, bpc, bpc), (bpc, bpc, 2 * D), (amd, D, -D), (bpc, D, 0 * D),
    ]
    for x, y, want in table:
        if not np.all(mul(x, y) == want):
            fails.append(f"L_{g.fmt(x)} {g.fmt(y)} = {g.fmt(mul(x, y))}, expected {g.fmt(want)}")
    for z in (C, D):
        if not is_zero(np.einsum("i,ijk->jk", z, prod)):
            fails.append(f"L_{g.fmt(z)} is not zero")
    for (x, y, z), want in (((amd, bpc, amd), -4 * C), ((bpc, amd, amd), 2 * C)):
        got = associator(prod, x, y, z)
        if not np.all(got == want):
            fails.append(f"associator {g.fmt(got)}, expected {g.fmt(want)}")
    if phi_psi_obstruction(cps).extends:
        fails.append("obstruction vanishes")
    conn = cp_connection(cps)
    if is_flat(conn):
        fails.append("connection is flat")
    witness = curvature_at(conn, amd, bpc, amd)
    if not np.all(witness == -6 * C):
        fails.append(f"R(A-D, B+C)(A-D) = {g.fmt(witness)}")
    for key, want_flat in (("A2", False), ("gl2R", True)):
        c = catalog.get(key).cps
        rc, hc = induce_hypercomplex(c)
        ext = extend_to_hat(cp_connection(c), rc)
        obata = obata_connection(hc)
        if not np.all(ext.gamma == obata.gamma):
            fails.append(f"{key}: extended connection differs from the Obata connection")
        flat_g, flat_hat = is_flat(cp_connection(c)), is_flat(obata)
        if not (flat_g == flat_hat == want_flat):
            fails.append(f"{key}: flat on g {flat_g}, on the complexification {flat_hat}")
    record(2, fails, "8 product lines, L_C = L_D = 0, associators -4C and 2C, obstruction, curvature -6C, Obata both ways")


# ---------------------------------------------------------------------------
# 3. h3 + R


def test_criterion_3_h3r():
    fails = []
    for t in catalog.DEFAULT_SAMPLES:
        tag = f"t={t}"
        try:
            entry = catalog.get("h3R", p=t)
            cps = validate_cps(entry.algebra, entry.j, entry.e)
        except StructureError as err:
            fails.append(f"{tag}: {err}")
            continue
        g = cps.g
        fails += [f"{tag}: {d}" for d in catalog.eigenspace_diffs(g, cps.plus, entry.fixtures["plus"], "g+")]
        fails += [f"{tag}: {d}" for d in catalog.eigenspace_diffs(g, cps.minus, entry.fixtures["minus"], "g-")]
        if not (is_abelian(g, cps.plus) and is_abelian(g, cps.minus)):
            fails.append(f"{tag}: an eigenspace is not abelian")
        mp = matched_pair_from_cps(cps)
        rebuilt = bicrossproduct(mp)
        if not np.all(rebuilt.c == adapted_constants(cps)):
            fails.append(f"{tag}: bicrossproduct constants differ")
        rc, hc = induce_hypercomplex(cps)
        hat = catalog.get("h3R_hat", p=t)
        if not np.all(hc.j1 == hat.fixtures["i_hat"]):
            fails.append(f"{tag}: I-hat differs from the printed action")
        if not np.all(hc.j2 == hat.fixtures["j_hat"]):
            fails.append(f"{tag}: J-hat differs from the printed action")
        if not rc.hat.same_constants(hat.algebra):
            fails.append(f"{tag}: complexified brackets differ")
    record(3, fails, f"{len(catalog.DEFAULT_SAMPLES)} samples: validation, abelian eigenspaces, round trip, I-hat/J-hat")


# ---------------------------------------------------------------------------
# 4. A4


def test_criterion_4_a4():
    validation, types, hats = [], [], []
    checked = 0
    for fam in ("E", "E'", "E''", "Etilde"):
        samples = [None] if fam == "Etilde" else list(catalog.DEFAULT_SAMPLES)
        for t in samples:
            u = None if t is None else catalog._half(t)
            if fam in ("E'", "E''") and u.double() == catalog.ANGLE_PI:
                continue
            tag = f"{fam}@t={t}"
            checked += 1
            try:
                entry = catalog.get("A4", p=t, family=fam)
                cps = validate_cps(entry.algebra, entry.j, entry.e)
            except StructureError as err:
                validation.append(f"{tag}: {err}")
                continue
            for side, space in (("plus", cps.plus), ("minus", cps.minus)):
                name = "g+" if side == "plus" else "g-"
                diffs = catalog.eigenspace_diffs(cps.g, space, entry.fixtures[side], name)
                validation += [f"{tag}: {d}" for d in diffs]
            want = ("abelian", "aff") if fam == "Etilde" else ("aff", "aff")
            got = (catalog.dim2_type(cps.g, cps.plus), catalog.dim2_type(cps.g, cps.minus))
            if got != want:
                types.append(f"{tag}: types {got[0]}/{got[1]}, printed {want[0]}/{want[1]}")
            rc, hc = induce_hypercomplex(cps)
            hat = catalog.get("A4_hat", p=t, family=fam)
            if not (np.all(hc.j1 == hat.fixtures["i_hat"]) and np.all(hc.j2 == hat.fixtures["j_hat"])):
                hats.append(f"{tag}: hypercomplex action differs")
    summary = (
        f"{checked} instances; validation failures {len(validation)}, "
        f"type mismatches {len(types)}, hypercomplex mismatches {len(hats)}"
    )
    record(4, validation + hats + types, summary)


# ---------------------------------------------------------------------------
# 5. positive instances end to end


def _random_symmetric_tensor(rng, n):
    while True:
        d = qarray(rng.integers(-2, 3, size=(n, n, n)).tolist())
        d = d + d.transpose(1, 0, 2)
        if not is_zero(d):
            return d


def test_criterion_5_pipelines():
    rng = np.random.default_rng(SEED)
    fails = []
    entries = catalog.positive_instances()
    probes = 0
    for entry in entries:
        tag = catalog._entry_tag(entry)
        cps = entry.cps
        for lsa in induced_lsa(cps):
            if not check_lsa(lsa).ok:
                fails.append(f"{tag}: induced product is not an LSA")
        if not check_matched_pair(matched_pair_from_cps(cps)).ok:
            fails.append(f"{tag}: matched-pair laws fail")
        conn = cp_connection(cps)
        if not is_torsion_free(conn):
            fails.append(f"{tag}: torsion")
        if not (parallel_check(conn, cps.j) and parallel_check(conn, cps.e)):
            fails.append(f"{tag}: J or E not parallel")
        for _ in range(PROBES_PER_ENTRY):
            probes += 1
            if uniqueness_probe(cps, _random_symmetric_tensor(rng, cps.dim), base=conn):
                fails.append(f"{tag}: a perturbed connection keeps J and E parallel")
                break
        rc, hc = induce_hypercomplex(cps)
        ext = extend_to_hat(conn, rc)
        if not (parallel_check(ext, hc.j1) and parallel_check(ext, hc.j2)):
            fails.append(f"{tag}: extension does not parallelize I-hat and J-hat")
    record(5, fails, f"{len(entries)} entries, {probes} perturbation probes")


# ---------------------------------------------------------------------------
# 6. Jacobi of aff(A) versus the LSA laws


def test_criterion_6_jacobi_iff_lsa():
    rng = np.random.default_rng(SEED + 6)
    disagreements = []
    lsa_count = 0
    for k in range(RANDOM_PRODUCTS):
        n = 1 + k % 3
        kind = k % 4
        if kind == 0:
            a = random_product(rng, n)
        elif kind == 1:
            a = random_lsa(rng, n)
        elif kind == 2:
            # an LSA with one entry nudged; usually breaks the laws
            a = random_lsa(rng, n)
            i, j, m = (int(x) for x in rng.integers(0, n, size=3))
            a[i, j, m] += 1
        else:
            a = random_product(rng, n, density=0.2)
        lsa = check_lsa(a).ok
        jac = check_jacobi(aff_tensor(BilinearProductSpace(a))).ok
        lsa_count += lsa
        if lsa != jac:
            disagreements.append(f"product #{k} (dim {n}): LSA {lsa}, Jacobi {jac}")
    record(
        6,
        disagreements,
        f"{RANDOM_PRODUCTS} products in dims 1-3 ({lsa_count} LSAs, {RANDOM_PRODUCTS - lsa_count} not), "
        f"{len(disagreements)} disagreements",
    )


# ---------------------------------------------------------------------------
# 7. negative and structural fixtures


def test_criterion_7_negative():
    fails = []
    h2 = catalog.get("H2")
    if is_abelian_cs(h2.algebra, h2.j):
        fails.append("H2 J is abelian")
    hats = 0
    for entry in catalog.positive_instances():
        g = entry.algebra
        if g.is_abelian():
            continue
        rc = realify_complexification(g)
        n = g.dim
        conj = eye(2 * n)
        for k in range(n, 2 * n):
            conj[k, k] = Fraction(-1)
        e_c = rc.complexify(entry.e)
        e_hat = -matmul(rc.i_map, induce_hypercomplex(entry.cps)[1].j1)
        hats += 1
        for name, e in (("E_C", e_c), ("conjugation", conj), ("E_C conjugation", matmul(e_c, conj)), ("E-hat", e_hat)):
            try:
                validate_cps(rc.hat, rc.i_map, e)
            except StructureError:
                continue
            fails.append(f"{catalog._entry_tag(entry)}: I with {name} validates")
    rng = np.random.default_rng(SEED + 7)
    both = 0
    runs = 0
    for k in range(60):
        if k % 3 == 2:
            base = catalog.get("Cn_abelian", n=1 + k % 2).cps
            cps = base.transported(random_invertible(rng, base.dim))
        else:
            cps = random_aff_cps(rng, 1 + k % 2)
        runs += 1
        if is_ideal(cps.g, cps.plus) and is_ideal(cps.g, cps.minus):
            both += 1
            if not cps.g.is_abelian():
                fails.append(f"random structure #{k}: both eigenspaces are ideals in a non-abelian algebra")
    record(
        7,
        fails,
        f"H2 J not abelian; I rejected on {hats} non-abelian complexifications; "
        f"{runs} random structures, {both} with both eigenspaces ideals",
    )


# ---------------------------------------------------------------------------
# 8. forms


def test_criterion_8_forms():
    fails = []
    algebras = {e.algebra.name: e.algebra for e in catalog.positive_instances()}
    for key in ("H2", "so3R", "gl2C", "A2_hat"):
        g = catalog.get(key).algebra
        algebras[g.name] = g
    forms_checked = 0
    for name, g in algebras.items():
        for i in range(g.dim):
            f = eye(g.dim)[i]
            if not ce_differential(g, ce_differential(g, KForm(f))).is_zero():
                fails.append(f"{name}: d^2 of a basis 1-form is nonzero")
            forms_checked += 1
    pairs = 0
    for entry in catalog.positive_instances():
        pairs += 1
        if check_dual_product_integrability(entry.algebra, entry.e) != check_product_integrable(entry.algebra, entry.e).ok:
            fails.append(f"{catalog._entry_tag(entry)}: dual criterion disagrees")
    rng = np.random.default_rng(SEED + 8)
    pool = [catalog.get(k, p=1).algebra for k in ("affR", "gl2R", "A2", "h3R", "A4", "H2", "so3R")]
    agree_true = 0
    for k in range(RANDOM_ALMOST_PRODUCTS):
        g = pool[k % len(pool)]
        e = random_almost_product(rng, g.dim)
        direct = check_product_integrable(g, e).ok
        agree_true += direct
        if check_dual_product_integrability(g, e) != direct:
            fails.append(f"random almost product #{k}: dual criterion disagrees")
    cps = catalog.get("Cn_abelian", n=2).cps
    res = hypersymplectic_suite(cps, extend_plus_form(cps, qarray([[0, 1], [-1, 0]])))
    if res.report.signature != (2, 2):
        fails.append(f"signature {res.report.signature}")
    if res.report.closed != (True, True, True):
        fails.append(f"closedness {res.report.closed}")
    record(
        8,
        fails,
        f"d^2 = 0 on {forms_checked} basis 1-forms over {len(algebras)} algebras; dual criterion on {pairs} catalog pairs "
        f"and {RANDOM_ALMOST_PRODUCTS} random structures ({agree_true} integrable); abelian R^4 signature (2, 2), closed",
    )


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

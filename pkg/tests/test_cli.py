import io
import json

import numpy as np
import pytest

from cpslie import catalog
from cpslie.cli import run
from cpslie.forms import KForm
from cpslie.hypercomplex import check_hypercomplex
from cpslie.io import (
    InputError,
    algebra_from_doc,
    algebra_to_doc,
    cps_bundle,
    form_from_doc,
    form_to_doc,
    load_bundle,
    tensor_block,
    tensor_from_block,
)
from cpslie.lsa import induced_lsa
from cpslie.structures import validate_cps


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def test_verify_gl2():
    code, out, _ = cli("verify-cps", "--catalog", "gl2R")
    assert code == 0 and "PASS" in out


def test_flat_check_reports_witness():
    code, out, _ = cli("connection", "--catalog", "A2", "--flat")
    assert code == 1
    assert "R(A - D, B + C)(A - D) = -6C" in out


def test_bad_j_file(tmp_path):
    e = catalog.get("gl2R")
    doc = cps_bundle(e.algebra, e.j, e.e)
    doc["J"]["matrix"][0][0] = "1"
    code, _, err = cli("verify-cps", write(tmp_path, "bad.json", doc))
    assert code == 2 and "J squared is not -Id" in err


def test_nonintegrable_structure_is_a_law_failure(tmp_path):
    e = catalog.get("gl2R")
    j = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]
    doc = {"algebra": algebra_to_doc(e.algebra), "J": j, "E": cps_bundle(e.algebra, e.j, e.e)["E"]}
    code, out, _ = cli("verify-cps", write(tmp_path, "rot.json", doc))
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize(
    "text",
    ["{", '{"algebra": {"name": "x", "basis": ["a"], "brackets": []}, "J": [[0.5]]}', "[]"],
)
def test_malformed_files(tmp_path, text):
    code, _, err = cli("verify-cps", write(tmp_path, "m.json", text))
    assert code == 2 and err.startswith("error")


def test_missing_file():
    assert cli("verify-cps", "/nonexistent/x.json")[0] == 2


def test_unknown_verb_and_option():
    assert cli("frobnicate")[0] == 2
    assert cli("verify-cps", "--catalog", "gl2R", "--bogus")[0] == 2
    assert cli("verify-cps", "--catalog", "nope")[0] == 2
    assert cli("verify-cps", "--catalog", "h3R", "--t", "0.5")[0] == 2


def test_machine_output_round_trips(tmp_path):
    code, out, _ = cli("verify-cps", "--catalog", "A4", "--family", "E'", "--t", "1/2", "--machine")
    assert code == 0
    doc = json.loads(out)
    g, j, e = load_bundle(doc)
    cps = validate_cps(g, j, e)
    ref = catalog.get("A4", p="1/2", family="E'")
    assert g.same_constants(ref.algebra) and np.all(cps.e == ref.e)
    again = cli("verify-cps", write(tmp_path, "rt.json", doc), "--machine")
    assert again[0] == 0 and json.loads(again[1])["E"] == doc["E"]


def test_hypercomplex_machine_output_revalidates():
    code, out, _ = cli("hypercomplex", "--catalog", "h3R", "--t", "3", "--machine")
    assert code == 0
    doc = json.loads(out)
    assert all(doc["checks"].values())
    g, i, j = load_bundle({"algebra": doc["algebra"], "J": doc["I"], "E": doc["J"]})
    check_hypercomplex(g, i, j)


def test_lsa_output(tmp_path):
    code, out, _ = cli("lsa", "--catalog", "A2", "--machine")
    assert code == 0
    doc = json.loads(out)
    lp, _ = induced_lsa(catalog.get("A2").cps)
    assert np.all(tensor_from_block(doc["g+"]["product"], doc["g+"]["basis"]) == lp.a)
    assert doc["extended"]["extends"] is False


@pytest.mark.parametrize("verb", ["matched-pair", "bicross", "connection"])
def test_pipeline_verbs(verb):
    assert cli(verb, "--catalog", "gl2R")[0] == 0


def test_aff_verb(tmp_path):
    good = {"basis": ["x", "y"], "product": [{"i": "x", "j": "y", "out": {"y": "1"}}]}
    code, out, _ = cli("aff", write(tmp_path, "good.json", good), "--machine")
    assert code == 0 and json.loads(out)["algebra"]["dim"] == 4
    bad = {"basis": ["x", "y"], "product": [
        {"i": "x", "j": "x", "out": {"x": "2"}},
        {"i": "x", "j": "y", "out": {"y": "1"}},
        {"i": "y", "j": "x", "out": {"y": "1"}},
    ]}
    code, out, _ = cli("aff", write(tmp_path, "bad.json", bad))
    assert code == 1 and "FAIL  JACOBI" in out


def test_iterate_and_cap():
    code, out, _ = cli("iterate", "--catalog", "A2", "--k", "2", "--machine")
    assert code == 0 and json.loads(out)["dims"] == [4, 8, 16]
    code, _, err = cli("iterate", "--catalog", "A2", "--k", "3", "--cap", "16")
    assert code == 2 and "CAP" in err


def test_forms_verbs(tmp_path):
    assert cli("forms", "--catalog", "Cn_abelian", "--n", "2", "--hypersymplectic")[0] == 0
    assert cli("forms", "--catalog", "Cn_abelian", "--n", "1", "--hypersymplectic")[0] == 2
    metric = write(tmp_path, "g.json", {"matrix": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]})
    assert cli("forms", "--catalog", "Cn_abelian", "--n", "2", "--metric", metric)[0] == 0
    assert cli("forms", "--catalog", "gl2R", "--metric", metric)[0] == 1


def test_catalog_verbs(tmp_path):
    code, out, _ = cli("catalog", "list")
    assert code == 0 and "A4" in out.split()
    code, out, _ = cli("catalog", "show", "gl2C", "--machine")
    assert code == 0 and json.loads(out)["algebra"]["dim"] == 8
    out_path = tmp_path / "report.json"
    code, out, _ = cli("catalog", "verify", "--t", "1/2", "--out", str(out_path))
    assert code == 0 and json.loads(out_path.read_text())["ok"] is True
    # the printed type claims fail at angle 0
    assert cli("catalog", "verify", "--t", "0")[0] == 1


def test_exit_codes_are_deterministic():
    assert cli("lsa", "--catalog", "A2", "--machine") == cli("lsa", "--catalog", "A2", "--machine")


# json documents


@pytest.mark.parametrize("key", ["gl2R", "A2", "gl2C", "so3R"])
def test_algebra_doc_round_trip(key):
    g = catalog.get(key).algebra
    assert algebra_from_doc(json.loads(json.dumps(algebra_to_doc(g)))) == g


@pytest.mark.parametrize(
    "doc",
    [
        {"name": "x", "basis": ["a", "a"]},
        {"name": "x", "basis": ["a", "b"], "dim": 3},
        {"name": "x", "basis": ["a", "b"], "brackets": [{"i": "a", "j": "c", "out": {}}]},
        {"name": "x", "basis": ["a", "b"], "brackets": [{"i": "a", "j": "b", "out": {"a": "1"}}, {"i": "b", "j": "a", "out": {"a": "1"}}]},
        {"name": "x", "basis": ["a", "b"], "brackets": [{"i": "a", "j": "a", "out": {}}]},
        {"basis": ["a"]},
    ],
)
def test_algebra_doc_errors(doc):
    with pytest.raises(InputError):
        algebra_from_doc(doc)


def test_tensor_and_form_round_trip():
    lp, _ = induced_lsa(catalog.get("A2").cps)
    labels = lp.base.labels
    assert np.all(tensor_from_block(tensor_block(lp.a, labels), labels) == lp.a)
    w = KForm.from_components(4, 2, {(0, 1): 1, (2, 3): "-1/2"})
    back = form_from_doc(form_to_doc(w.tensor, "ABCD"), "ABCD")
    assert np.all(back.tensor == w.tensor)
    with pytest.raises(InputError):
        form_from_doc({"degree": 2, "components": {"A": "1"}}, "ABCD")

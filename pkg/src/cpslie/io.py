"""JSON documents for algebras, endomorphisms, tensors and forms.

Rationals are strings ``"p/q"`` (or ``"p"``).  Endomorphism matrices act on
column vectors: column ``j`` is the image of basis vector ``j``.
"""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .lie import LieAlgebra
from .linalg import format_rational, parse_rational, qarray, zeros


class InputError(ValueError):
    """A document is malformed (as opposed to failing a mathematical law)."""


def _rat(text):
    try:
        return parse_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise InputError(f"not a rational: {text!r}") from err


def _require(doc: Any, key: str, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"missing field {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"field {key!r} has the wrong type")
    return val


def _combo_doc(v, labels: Sequence[str]) -> dict[str, str]:
    return {labels[k]: format_rational(x) for k, x in enumerate(v) if x != 0}


def _combo_from_doc(out: Any, index: dict[str, int], n: int) -> np.ndarray:
    if not isinstance(out, dict):
        raise InputError("'out' must be an object mapping labels to rationals")
    v = zeros(n)
    for lab, val in out.items():
        if lab not in index:
            raise InputError(f"unknown basis label {lab!r}")
        v[index[lab]] += _rat(val)
    return v


# --------------------------------------------------------------------------
# algebras


def algebra_to_doc(g: LieAlgebra) -> dict:
    brackets = []
    for i, j in combinations(range(g.dim), 2):
        out = _combo_doc(g.c[i, j], g.labels)
        if out:
            brackets.append({"i": g.labels[i], "j": g.labels[j], "out": out})
    return {"name": g.name, "dim": g.dim, "basis": list(g.labels), "brackets": brackets}


def algebra_from_doc(doc: Any) -> LieAlgebra:
    """Parse an algebra document; law violations raise ``StructureError``."""
    name = _require(doc, "name", str)
    basis = _require(doc, "basis", list)
    if not all(isinstance(b, str) for b in basis):
        raise InputError("basis labels must be strings")
    if len(set(basis)) != len(basis):
        raise InputError("basis labels must be distinct")
    if "dim" in doc and doc["dim"] != len(basis):
        raise InputError(f"dim is {doc['dim']} but {len(basis)} labels are given")
    n = len(basis)
    index = {lab: k for k, lab in enumerate(basis)}
    c = zeros(n, n, n)
    seen = set()
    for entry in doc.get("brackets", []):
        a, b = _require(entry, "i", str), _require(entry, "j", str)
        if a not in index or b not in index:
            raise InputError(f"unknown basis label in bracket [{a},{b}]")
        i, j = index[a], index[b]
        if i == j:
            raise InputError(f"[{a},{a}] must not be listed")
        if frozenset((i, j)) in seen:
            raise InputError(f"bracket [{a},{b}] listed twice")
        seen.add(frozenset((i, j)))
        v = _combo_from_doc(_require(entry, "out"), index, n)
        c[i, j] = v
        c[j, i] = -v
    return LieAlgebra(name, basis, c)


# --------------------------------------------------------------------------
# matrices and tensors


def matrix_to_doc(m) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in qarray(m)]


def matrix_from_doc(rows: Any, n: int | None = None) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    m = qarray([[_rat(x) for x in r] for r in rows]) if rows else zeros(0, 0)
    if n is not None and m.shape != (n, n):
        raise InputError(f"matrix must be {n}x{n}, got {m.shape[0]}x{m.shape[1] if m.ndim == 2 else 0}")
    return m


def endomorphism_to_doc(algebra_name: str, m) -> dict:
    return {"algebra": algebra_name, "matrix": matrix_to_doc(m)}


def endomorphism_from_doc(doc: Any, g: LieAlgebra) -> np.ndarray:
    if isinstance(doc, list):
        return matrix_from_doc(doc, g.dim)
    return matrix_from_doc(_require(doc, "matrix"), g.dim)


def tensor_block(t, labels: Sequence[str]) -> list[dict]:
    """Bilinear map as ``[{"i", "j", "out"}]`` over all ordered pairs with nonzero value."""
    t = qarray(t)
    out = []
    for i in range(t.shape[0]):
        for j in range(t.shape[1]):
            combo = _combo_doc(t[i, j], labels)
            if combo:
                out.append({"i": labels[i], "j": labels[j], "out": combo})
    return out


def tensor_from_block(block: Any, labels: Sequence[str]) -> np.ndarray:
    if not isinstance(block, list):
        raise InputError("tensor block must be a list")
    n = len(labels)
    index = {lab: k for k, lab in enumerate(labels)}
    t = zeros(n, n, n)
    for entry in block:
        a, b = _require(entry, "i", str), _require(entry, "j", str)
        if a not in index or b not in index:
            raise InputError(f"unknown basis label in entry ({a},{b})")
        t[index[a], index[b]] += _combo_from_doc(_require(entry, "out"), index, n)
    return t


def representation_block(mats, source: Sequence[str], target: Sequence[str]) -> list[dict]:
    """``rho(u_i) v_j`` as ``{"i": u label, "j": v label, "out": combo in v}``."""
    out = []
    for i, m in enumerate(mats):
        for j in range(len(target)):
            combo = _combo_doc(m[:, j], target)
            if combo:
                out.append({"i": source[i], "j": target[j], "out": combo})
    return out


def form_to_doc(tensor, labels: Sequence[str]) -> dict:
    """Alternating form as values on increasing label tuples."""
    t = qarray(tensor)
    comps = {}
    for idx in combinations(range(t.shape[0]), t.ndim):
        if t[idx] != 0:
            comps[",".join(labels[k] for k in idx)] = format_rational(t[idx])
    return {"degree": t.ndim, "components": comps}


def form_from_doc(doc: Any, labels: Sequence[str]):
    from .forms import KForm

    degree = _require(doc, "degree", int)
    comps = _require(doc, "components", dict)
    index = {lab: k for k, lab in enumerate(labels)}
    parsed = {}
    for key, val in comps.items():
        labs = key.split(",")
        if len(labs) != degree or any(lab not in index for lab in labs):
            raise InputError(f"bad form component key {key!r}")
        parsed[tuple(index[lab] for lab in labs)] = _rat(val)
    return KForm.from_components(len(labels), degree, parsed)


# --------------------------------------------------------------------------
# files


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from err
    except json.JSONDecodeError as err:
        raise InputError(f"{path} is not valid JSON: {err}") from err


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def cps_bundle(g: LieAlgebra, j, e) -> dict:
    return {
        "algebra": algebra_to_doc(g),
        "J": endomorphism_to_doc(g.name, j),
        "E": endomorphism_to_doc(g.name, e),
    }


def load_bundle(doc: Any) -> tuple[LieAlgebra, np.ndarray | None, np.ndarray | None]:
    """Algebra plus optional ``J`` and ``E`` from a bundle document."""
    g = algebra_from_doc(_require(doc, "algebra"))
    j = endomorphism_from_doc(doc["J"], g) if "J" in doc else None
    e = endomorphism_from_doc(doc["E"], g) if "E" in doc else None
    return g, j, e

"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for malformed input (bad files, wrong shapes, J^2 != -Id and similar).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import catalog
from .connections import (
    cp_connection,
    curvature,
    curvature_at,
    is_flat,
    nonzero_count,
    parallel_check,
    torsion,
)
from .forms import (
    check_dual_product_integrability,
    compatible_metric_suite,
    extend_plus_form,
    hypersymplectic_suite,
)
from .hypercomplex import DEFAULT_CAP, induce_hypercomplex, iterate_tower
from .io import (
    InputError,
    algebra_to_doc,
    dump_json,
    endomorphism_to_doc,
    form_from_doc,
    form_to_doc,
    load_bundle,
    load_json,
    matrix_from_doc,
    matrix_to_doc,
    representation_block,
    tensor_block,
    tensor_from_block,
)
from .lie import LieAlgebra
from .linalg import format_rational, format_vector, parse_rational, zeros
from .lsa import (
    BilinearProductSpace,
    adapted_constants,
    aff_construction,
    bicrossproduct,
    check_lsa,
    check_matched_pair,
    extended_product,
    induced_lsa,
    matched_pair_from_cps,
    phi_psi_obstruction,
)
from .report import StructureError
from .structures import check_product_integrable, validate_cps

# failures of these codes mean the input is not of the right kind at all
INPUT_CODES = {
    "J-SQUARE", "J-SHAPE", "E-SQUARE", "E-SHAPE", "E-TRIVIAL", "ANTISYMMETRY",
    "PARAMETER", "UNKNOWN-KEY", "UNKNOWN-FAMILY", "EXCLUDED-PARAMETER",
    "DIM-MOD-4", "FORM-SHAPE", "CAP", "MISSING",
}


class Output:
    """Collects human lines and a machine document; one writer at the end."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []
        self.doc: dict[str, Any] = {}
        self.ok = True

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.doc.setdefault("checks", {})[name] = passed
        self.lines.append(f"{'PASS' if passed else 'FAIL'}  {name}{'  ' + detail if detail else ''}")
        if not passed:
            self.ok = False

    def render(self) -> str:
        if self.machine:
            self.doc["ok"] = self.ok
            return dump_json(self.doc)
        return "\n".join(self.lines)


# --------------------------------------------------------------------------
# loading inputs


def _entry(args) -> catalog.CatalogEntry:
    p = _first_t(args)
    return catalog.get(args.catalog, p=p, family=args.family, n=args.n)


def _first_t(args):
    return args.t[0] if args.t else None


def _load_algebra_and_structures(args) -> tuple[LieAlgebra, Any, Any, catalog.CatalogEntry | None]:
    if args.catalog:
        entry = _entry(args)
        return entry.algebra, entry.j, entry.e, entry
    if not args.input:
        raise StructureError("MISSING", "give an input file or --catalog KEY")
    g, j, e = load_bundle(load_json(args.input))
    return g, j, e, None


def _load_cps(args):
    g, j, e, entry = _load_algebra_and_structures(args)
    if entry is not None and entry.cps is not None:
        return entry.cps, entry
    if j is None or e is None:
        raise StructureError("MISSING", "the input needs both J and E")
    return validate_cps(g, j, e), entry


def _fmt_matrix_actions(g: LieAlgebra, m, name: str) -> list[str]:
    return [f"  {name} {lab} = {format_vector(m[:, k], g.labels)}" for k, lab in enumerate(g.labels)]


# --------------------------------------------------------------------------
# verbs


def cmd_verify_cps(args, out: Output) -> None:
    cps, _ = _load_cps(args)
    g = cps.g
    out.line(f"algebra {g.name} (dim {g.dim})")
    out.check("complex product structure", True)
    out.line("g+ = span{" + ", ".join(cps.plus_labels()) + "}")
    out.line("g- = span{" + ", ".join(cps.minus_labels()) + "}")
    out.doc.update(
        algebra=algebra_to_doc(g),
        J=endomorphism_to_doc(g.name, cps.j),
        E=endomorphism_to_doc(g.name, cps.e),
        plus=cps.plus_labels(),
        minus=cps.minus_labels(),
    )


def _product_lines(labels, a) -> list[str]:
    lines = []
    for i in range(len(labels)):
        for j in range(len(labels)):
            v = a[i, j]
            if any(x != 0 for x in v):
                lines.append(f"  {labels[i]} . {labels[j]} = {format_vector(v, labels)}")
    return lines or ["  (trivial product)"]


def cmd_lsa(args, out: Output) -> None:
    cps, _ = _load_cps(args)
    lp, lm = induced_lsa(cps)
    for name, lsa in (("g+", lp), ("g-", lm)):
        out.line(f"induced product on {name} (basis {', '.join(lsa.base.labels)}):")
        out.lines.extend(_product_lines(lsa.base.labels, lsa.a))
        rep = check_lsa(lsa)
        out.check(f"{name} {rep.tfree.law}", rep.tfree.ok)
        out.check(f"{name} {rep.flat.law}", rep.flat.ok)
        out.doc[name] = {"basis": list(lsa.base.labels), "product": tensor_block(lsa.a, lsa.base.labels)}
    prod = extended_product(cps)
    g = cps.g
    ext = check_lsa(prod, g)
    obstruction = phi_psi_obstruction(cps)
    out.line("extended product on g:")
    out.lines.extend(_product_lines(g.labels, prod))
    out.line(f"extended product tfree: {ext.tfree.ok}; flat: {ext.flat.ok}; obstruction vanishes: {obstruction.extends}")
    out.doc["extended"] = {"product": tensor_block(prod, g.labels), "flat": ext.flat.ok, "extends": obstruction.extends}


def cmd_matched_pair(args, out: Output) -> None:
    cps, _ = _load_cps(args)
    mp = matched_pair_from_cps(cps)
    rep = check_matched_pair(mp)
    out.line(f"u = g+ (basis {', '.join(mp.u.labels)}), v = g- (basis {', '.join(mp.v.labels)})")
    for i, lab in enumerate(mp.u.labels):
        for j, lab2 in enumerate(mp.v.labels):
            out.line(f"  rho({lab}) {lab2} = {format_vector(mp.rho[i][:, j], mp.v.labels)}")
    for i, lab in enumerate(mp.v.labels):
        for j, lab2 in enumerate(mp.u.labels):
            out.line(f"  mu({lab}) {lab2} = {format_vector(mp.mu[i][:, j], mp.u.labels)}")
    for r in rep.reports():
        detail = f"first failure at basis tuple {r.first()[0]}" if not r.ok else ""
        out.check(r.law, r.ok, detail)
    out.doc.update(
        u=algebra_to_doc(mp.u),
        v=algebra_to_doc(mp.v),
        rho=representation_block(mp.rho, mp.u.labels, mp.v.labels),
        mu=representation_block(mp.mu, mp.v.labels, mp.u.labels),
    )


def cmd_bicross(args, out: Output) -> None:
    cps, _ = _load_cps(args)
    mp = matched_pair_from_cps(cps)
    h = bicrossproduct(mp)
    same = bool(np.all(h.c == adapted_constants(cps)))
    out.line(f"bicrossproduct {h.name} with basis {', '.join(h.labels)}")
    for entry in algebra_to_doc(h)["brackets"]:
        combo = " + ".join(f"{v}*{k}" for k, v in entry["out"].items())
        out.line(f"  [{entry['i']},{entry['j']}] = {combo}")
    out.check("round trip matches g in the adapted basis", same)
    out.doc["algebra"] = algebra_to_doc(h)


def cmd_aff(args, out: Output) -> None:
    if not args.input:
        raise StructureError("MISSING", "aff needs a product file")
    doc = load_json(args.input)
    basis = doc.get("basis") if isinstance(doc, dict) else None
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise InputError("product document needs a 'basis' list of labels")
    a = tensor_from_block(doc.get("product", []), basis)
    A = BilinearProductSpace(a, tuple(basis))
    lsa_rep = check_lsa(a)
    try:
        g, cps = aff_construction(A, name=doc.get("name"))
    except StructureError as err:
        (i, j, k), v = err.witness[0]
        labels = list(basis) + [f"{b}'" for b in basis]
        out.check("JACOBI", False, f"on ({labels[i]}, {labels[j]}, {labels[k]}): {format_vector(v, labels)}")
        out.check("input is left-symmetric", lsa_rep.ok)
        out.doc["witness"] = [labels[i], labels[j], labels[k]]
        return
    out.check("JACOBI", True)
    out.check("input is left-symmetric", lsa_rep.ok)
    out.line("g+ = span{" + ", ".join(cps.plus_labels()) + "}, g- = span{" + ", ".join(cps.minus_labels()) + "}")
    out.doc.update(algebra=algebra_to_doc(g), J=endomorphism_to_doc(g.name, cps.j), E=endomorphism_to_doc(g.name, cps.e))


def curvature_witness(cps):
    """First nonzero ``R(x,y)z`` over adapted-basis triples, or ``None``."""
    conn = cp_connection(cps)
    basis = list(cps.adapted.T)
    for x in basis:
        for y in basis:
            for z in basis:
                v = curvature_at(conn, x, y, z)
                if any(c != 0 for c in v):
                    return x, y, z, v
    return None


def cmd_connection(args, out: Output) -> None:
    cps, _ = _load_cps(args)
    g = cps.g
    conn = cp_connection(cps)
    t = torsion(conn)
    r = curvature(conn)
    out.line(f"complex product connection on {g.name}")
    out.check("J parallel", parallel_check(conn, cps.j))
    out.check("E parallel", parallel_check(conn, cps.e))
    out.doc["gamma"] = tensor_block(conn.gamma, g.labels)
    want_all = not (args.torsion or args.curvature or args.flat)
    if args.torsion or want_all:
        count = nonzero_count(t)
        out.check("torsion-free", count == 0, f"{count} nonzero torsion entries")
        out.doc["torsion_nonzero"] = count
    if args.curvature or want_all:
        count = nonzero_count(r)
        out.line(f"curvature: {count} nonzero entries")
        out.doc["curvature_nonzero"] = count
        if args.full:
            for i, a in enumerate(g.labels):
                for j, b in enumerate(g.labels):
                    for k, c in enumerate(g.labels):
                        if any(x != 0 for x in r[i, j, k]):
                            out.line(f"  R({a},{b}){c} = {g.fmt(r[i, j, k])}")
    if args.flat:
        flat = is_flat(conn)
        detail = ""
        if not flat:
            x, y, z, v = curvature_witness(cps)
            detail = f"R({g.fmt(x)}, {g.fmt(y)})({g.fmt(z)}) = {g.fmt(v)}"
            out.doc["witness"] = {"x": g.fmt(x), "y": g.fmt(y), "z": g.fmt(z), "value": g.fmt(v)}
        out.check("flat", flat, detail)


def cmd_hypercomplex(args, out: Output) -> None:
    cps, entry = _load_cps(args)
    rc, hc = induce_hypercomplex(cps)
    h = rc.hat
    out.check("hypercomplex structure on the complexification", True)
    out.lines.extend(_fmt_matrix_actions(h, hc.j1, "I^"))
    out.lines.extend(_fmt_matrix_actions(h, hc.j2, "J^"))
    if entry is not None:
        hat = catalog.hat_entry_for(entry)
        if hat is not None:
            out.check("matches the catalog action of I^", bool(np.all(hat.fixtures["i_hat"] == hc.j1)))
            out.check("matches the catalog action of J^", bool(np.all(hat.fixtures["j_hat"] == hc.j2)))
    out.doc.update(
        algebra=algebra_to_doc(h),
        I=endomorphism_to_doc(h.name, hc.j1),
        J=endomorphism_to_doc(h.name, hc.j2),
    )


def cmd_iterate(args, out: Output) -> None:
    cps, _ = _load_cps(args)
    stages = iterate_tower(cps, args.k, cap=args.cap)
    for st in stages[1:]:
        out.check(f"stage {st.level}: hypercomplex, dim {st.algebra.dim}", True)
    last = stages[-1]
    out.doc.update(
        dims=[st.algebra.dim for st in stages],
        algebra=algebra_to_doc(last.algebra),
        I=endomorphism_to_doc(last.algebra.name, last.hypercomplex.j1),
        J=endomorphism_to_doc(last.algebra.name, last.hypercomplex.j2),
    )


def cmd_forms(args, out: Output) -> None:
    cps, _ = _load_cps(args)
    g = cps.g
    dual = check_dual_product_integrability(g, cps.e)
    direct = check_product_integrable(g, cps.e).ok
    out.check("dual criterion agrees with the direct check", dual == direct)
    if args.metric:
        G = matrix_from_doc(load_json(args.metric).get("matrix"), g.dim)
        try:
            omega, rep = compatible_metric_suite(cps, G)
        except ValueError as err:
            raise InputError(str(err)) from err
        out.check("G J-invariant", rep.j_invariant)
        out.check("G E-invariant", rep.e_invariant)
        out.check("omega antisymmetric", rep.omega_antisymmetric)
        out.check("omega closed", bool(rep.omega_closed))
        out.doc["omega"] = matrix_to_doc(omega)
    if args.hypersymplectic or args.w1:
        if args.w1:
            w1 = form_from_doc(load_json(args.w1), g.labels).tensor
        else:
            k = cps.half
            if k % 2:
                raise StructureError("DIM-MOD-4", f"dimension {g.dim} is not divisible by 4")
            w = zeros(k, k)
            for a in range(0, k, 2):
                w[a, a + 1], w[a + 1, a] = Fraction(1), Fraction(-1)
            w1 = extend_plus_form(cps, w)
        res = hypersymplectic_suite(cps, w1)
        r = res.report
        out.check("w1 J-invariant", r.w1_j_invariant)
        out.check("w1 E-invariant", r.w1_e_invariant)
        out.check("h symmetric", r.h_symmetric)
        out.check("h(EX,EY) = -h(X,Y)", r.h_e_anti_invariant)
        out.check("g+ and g- isotropic for h", r.plus_isotropic and r.minus_isotropic)
        out.check(f"signature {r.signature} is neutral", r.neutral)
        for k, closed in enumerate(r.closed, start=1):
            out.check(f"w{k} closed", closed)
        out.doc.update(
            h=matrix_to_doc(res.h),
            w1=form_to_doc(res.w1, g.labels),
            w2=form_to_doc(res.w2, g.labels),
            w3=form_to_doc(res.w3, g.labels),
        )


def cmd_catalog(args, out: Output) -> None:
    if args.action == "list":
        for key in catalog.KEYS:
            out.line(key)
        out.doc["keys"] = list(catalog.KEYS)
        return
    if args.action == "show":
        if not args.key:
            raise StructureError("MISSING", "catalog show needs a key")
        entry = catalog.get(args.key, p=_first_t(args), family=args.family, n=args.n)
        g = entry.algebra
        out.line(f"{entry.key}: {entry.description}")
        out.line(f"basis {', '.join(g.labels)}")
        for b in algebra_to_doc(g)["brackets"]:
            out.line(f"  [{b['i']},{b['j']}] = " + " + ".join(f"{v}*{k}" for k, v in b["out"].items()))
        doc: dict[str, Any] = {"key": entry.key, "algebra": algebra_to_doc(g), "negative": entry.negative}
        for name, m in (("J", entry.j), ("E", entry.e)):
            if m is not None:
                out.lines.extend(_fmt_matrix_actions(g, m, name))
                doc[name] = endomorphism_to_doc(g.name, m)
        if "i_hat" in entry.fixtures:
            out.lines.extend(_fmt_matrix_actions(g, entry.fixtures["i_hat"], "I^"))
            doc["I"] = endomorphism_to_doc(g.name, entry.fixtures["i_hat"])
        if entry.cps is not None:
            out.line("g+ = span{" + ", ".join(entry.cps.plus_labels()) + "}")
            out.line("g- = span{" + ", ".join(entry.cps.minus_labels()) + "}")
        out.doc.update(doc)
        return
    samples = args.t or list(catalog.DEFAULT_SAMPLES)
    rep = catalog.verify_all(samples)
    out.line(f"samples t = {', '.join(format_rational(t) for t in samples)}")
    for _, diff in rep.failures:
        out.line(f"  {diff}")
    out.check("catalog pipeline", rep.ok, f"{len(rep.failures)} differences")
    out.doc["differences"] = [d for _, d in rep.failures]


# --------------------------------------------------------------------------
# argument parsing


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        p.add_argument("input", nargs="?", help="JSON bundle with 'algebra', 'J', 'E'")
    p.add_argument("--catalog", metavar="KEY", help="use a built-in example instead of a file")
    p.add_argument("--t", action="append", type=_rational_arg, default=[], metavar="P/Q",
                   help="circle parameter (half angle); repeatable for catalog verify")
    p.add_argument("--family", help="A4 family: E, E', E'' or Etilde")
    p.add_argument("--n", type=int, help="size parameter for Cn_abelian, gl2nR and spn")
    p.add_argument("--machine", action="store_true", help="print JSON instead of tables")
    p.add_argument("--out", metavar="PATH", help="also write the JSON document to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpslie", description="Exact checks for complex product structures on Lie algebras.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, fn, help_text in (
        ("verify-cps", cmd_verify_cps, "validate (J, E)"),
        ("lsa", cmd_lsa, "induced left-symmetric products"),
        ("matched-pair", cmd_matched_pair, "matched pair (rho, mu) and its laws"),
        ("bicross", cmd_bicross, "rebuild g as a bicrossproduct"),
        ("aff", cmd_aff, "aff(A) for a product file"),
        ("hypercomplex", cmd_hypercomplex, "induced hypercomplex structure"),
    ):
        p = sub.add_parser(verb, help=help_text)
        _common(p)
        p.set_defaults(func=fn)
    p = sub.add_parser("connection", help="complex product connection")
    _common(p)
    p.add_argument("--torsion", action="store_true")
    p.add_argument("--curvature", action="store_true")
    p.add_argument("--flat", action="store_true", help="fail with a witness unless flat")
    p.add_argument("--full", action="store_true", help="print every nonzero curvature value")
    p.set_defaults(func=cmd_connection)
    p = sub.add_parser("iterate", help="iterated complexification tower")
    _common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_iterate)
    p = sub.add_parser("forms", help="dual criterion, metric and hypersymplectic suites")
    _common(p)
    p.add_argument("--metric", metavar="PATH", help="symmetric form document {'matrix': ...}")
    p.add_argument("--hypersymplectic", action="store_true", help="use the standard form on g+ extended to g")
    p.add_argument("--w1", metavar="PATH", help="2-form document for the hypersymplectic suite")
    p.set_defaults(func=cmd_forms)
    p = sub.add_parser("catalog", help="built-in examples")
    p.add_argument("action", choices=["list", "show", "verify"])
    p.add_argument("key", nargs="?")
    _common(p, with_input=False)
    p.set_defaults(func=cmd_catalog)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = Output(args.machine)
    try:
        args.func(args, out)
    except (InputError, ValueError) as err:
        if isinstance(err, StructureError):
            return _structure_failure(err, out, args, stdout, stderr)
        print(f"error: {err}", file=stderr)
        return 2
    _emit(out, args, stdout)
    return 0 if out.ok else 1


def _structure_failure(err: StructureError, out: Output, args, stdout, stderr) -> int:
    if err.code in INPUT_CODES:
        print(f"error: {err}", file=stderr)
        return 2
    out.check(err.code, False, err.message)
    out.doc["error"] = {"code": err.code, "message": err.message}
    _emit(out, args, stdout)
    return 1


def _emit(out: Output, args, stdout) -> None:
    print(out.render(), file=stdout)
    if getattr(args, "out", None):
        out.doc["ok"] = out.ok
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(out.doc) + "\n")


def main() -> None:
    sys.exit(run())

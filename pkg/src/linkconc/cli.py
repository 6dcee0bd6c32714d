"""Command-line front end.

Exit status: 0 on a completed computation (an "obstructed" verdict is a
successful result), 2 when an input fails validation, 3 when a search or
series expansion would exceed its cap.  Set LINKCONC_SERIES_MAX_TERMS to
change the series cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import ccomplex, fusion, lattice, milnor, obstructions, seifert, solvability
from .algebra import LaurentPolynomial
from .errors import DocumentError, LinkConcError, SearchSpaceTooLarge
from .io import dumps, envelope, load_document

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _globals() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--degree-cap", type=int, default=milnor.DEFAULT_DEGREE_CAP)
    common.add_argument("--bound", type=int, default=None)
    common.add_argument("--tolerance", type=float, default=1e-12)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _globals()
    p = _Parser(prog="linkconc", description="Exact link-concordance invariants and obstruction checks.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("seifert", parents=[common], help="Alexander polynomial, signatures, rho_0, Arf")
    s.add_argument("input")
    s.add_argument("--plot", metavar="PATH", help="write the signature plateau table to PATH")
    s.add_argument("--search", action="store_true", help="run the bounded metabolizer search (uses --bound, default 1)")

    b = sub.add_parser("blanchfield", parents=[common], help="Blanchfield pairing of two classes")
    b.add_argument("input")
    b.add_argument("--r", required=True, help="comma-separated ints or a JSON list of Laurent maps")
    b.add_argument("--s", required=True)

    h = sub.add_parser("hbl", parents=[common], help="Blanchfield self-pairing obstruction")
    h.add_argument("input")

    m = sub.add_parser("milnor", parents=[common], help="Milnor invariants of a pure-braid closure")
    m.add_argument("input")
    m.add_argument("--index", help="multi-index such as 1,2,3 (last entry names the longitude)")

    c = sub.add_parser("ccomplex", parents=[common], help="validate C-complex data and check or search a certificate")
    c.add_argument("input")
    c.add_argument("--certificate")

    f = sub.add_parser("fusion", parents=[common], help="fusion forms, isomorphism witnesses and V + (-V) metabolizers")
    f.add_argument("input")
    f.add_argument("other", nargs="?")
    f.add_argument("--witness", help="JSON file holding the isomorphism matrix P")

    v = sub.add_parser("solvability", parents=[common], help="grade of a doubling operator output")
    _grade_flags(v)

    t = sub.add_parser("tower", parents=[common], help="replay the grade chain for an n-solvable example")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--trefoil-pairs", type=int, default=1)
    return p


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "y"):
        return True
    if low in ("0", "false", "no", "n"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _grade_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nR", dest="n_r", default="inf", help="solvability of R (half-integer or inf)")
    p.add_argument("--k", type=int, default=1, help="derived depth of eta")
    p.add_argument("--p", default="0", help="solvability of J (half-integer)")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--boundary-flag", type=_bool, default=False)
    p.add_argument("--eta-count", type=int, default=1)
    p.add_argument("--blanchfield-nonzero", type=_bool, default=False)
    p.add_argument("--arf-zero", type=_bool, default=False)
    p.add_argument("--rho0-attested", type=_bool, default=False)


# -- commands ------------------------------------------------------------------


def _seifert_report(args) -> tuple[dict, list[str]]:
    v = seifert.SeifertMatrix.from_json(load_document(args.input, "seifert"))
    delta = seifert.alexander_polynomial(v)
    profile = seifert.signature_profile(v)
    rho0, exact = profile.rho_zero(), profile.exact
    sig = seifert.signature_at(v, -1)
    arf = seifert.arf(v)
    result = {
        "name": v.name,
        "genus": v.genus,
        "alexander": {"text": str(delta), "coefficients": delta.to_json()},
        "signature_at_minus_one": sig,
        "rho0": str(rho0),
        "rho0_exact": exact,
        "arf": arf,
        "signature_profile": profile.to_json(),
    }
    lines = [
        f"knot: {v.name or '(unnamed)'}  genus {v.genus}",
        f"Alexander polynomial: {delta}",
        f"signature at -1: {sig}",
        f"rho_0: {rho0}" + ("" if exact else " (jump angles rounded to 40 digits)"),
        f"Arf invariant: {arf}",
        "signature plateaus (theta/pi start: sigma): "
        + ", ".join(f"{row['theta_over_pi']}: {row['sigma']}" for row in result["signature_profile"]),
    ]
    if args.search:
        found = seifert.metabolizer_search(v, args.bound or 1)
        result["metabolizer"] = None if found is None else [list(r) for r in found.witness]
        lines.append(
            "metabolizer: not found within bound (not a proof of non-metabolic)"
            if found is None
            else f"metabolizer witness: {result['metabolizer']}"
        )
    if args.plot:
        Path(args.plot).write_text(dumps(profile.to_json()))
        lines.append(f"plateau table written to {args.plot}")
    return result, lines


def emit_signature_plot(input_path: str, output_path: str) -> list[dict]:
    """Write the signature plateau table of a Seifert document; returns the table."""
    v = seifert.SeifertMatrix.from_json(load_document(input_path, "seifert"))
    table = seifert.signature_profile(v).to_json()
    Path(output_path).write_text(dumps(table))
    return table


def _vector(text: str) -> list[LaurentPolynomial]:
    text = text.strip()
    if text.startswith("["):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"bad vector {text!r}: {exc.msg}") from exc
        return [LaurentPolynomial.from_json(x) if isinstance(x, dict) else LaurentPolynomial.const(Fraction(x)) for x in raw]
    try:
        return [LaurentPolynomial.const(int(x)) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise DocumentError(f"bad vector {text!r}") from exc


def _blanchfield_report(args):
    v = seifert.SeifertMatrix.from_json(load_document(args.input, "seifert"))
    value = seifert.blanchfield(v, _vector(args.r), _vector(args.s))
    return {"value": value.to_json(), "text": str(value)}, [f"Bl(r, s) = {value}  (mod Lambda)"]


def _hbl_report(args):
    data = obstructions.TwoComponentInput.from_json(load_document(args.input, "two-component"))
    res = obstructions.hbl_obstruction(data)
    lines = [f"Bl(L2, L2) = {res.value}  (mod Lambda)"]
    if res.obstructed:
        lines.append(f"[{res.citation}] nonzero self-pairing => {res.verdict}")
    else:
        lines.append(res.verdict)
    return res.to_json(), lines


def _milnor_report(args):
    b = milnor.BraidWord.from_json(load_document(args.input, "braid"))
    if args.index:
        idx = milnor.parse_index(args.index)
        mu = milnor.milnor_invariant(b, idx)
        return {"index": milnor.format_index(idx), "mu": mu}, [f"mu({milnor.format_index(idx)}) = {mu}"]
    table = milnor.first_nonvanishing(b, args.degree_cap)
    doc = table.to_json()
    if table.all_vanish:
        lines = [f"all Milnor invariants vanish up to length {args.degree_cap}"]
    else:
        lines = [f"first nonvanishing length: {table.length}"]
        lines += [f"  mu({k}) = {val}" for k, val in doc["mu"].items()]
    return doc, lines


def _ccomplex_report(args):
    data = ccomplex.CComplexData.from_json(load_document(args.input, "ccomplex"))
    report = ccomplex.validate(data)
    result = {"validation": report.to_json()}
    lines = ["C-complex data: " + ("valid" if report.valid else "INVALID")]
    lines += [f"  {msg}" for msg in report.failures]
    if not report.valid:
        return result, lines, EXIT_INPUT
    if args.certificate:
        cert = ccomplex.MetabolicCertificate.from_json(load_document(args.certificate, "certificate"))
        res = ccomplex.check_metabolic(data, cert)
        result["certificate"] = res.to_json()
        lines.append(f"certificate: {res.status}")
        lines += [f"  {msg}" for msg in res.reasons]
        if res.certified:
            lines.append("[metabolic-ccomplex-half-solvable] metabolic linking form => the link is 0.5-solvable")
    elif args.bound is not None:
        cand = ccomplex.search_metabolic(data, args.bound)
        result["candidate"] = None if cand is None else cand.to_json()
        lines.append(
            "no algebraic candidate within bound (not a proof)"
            if cand is None
            else f"advisory candidate (unattested): derivative {[list(x) for x in cand.derivative]}"
        )
    return result, lines, EXIT_OK


def _fusion_report(args):
    f = fusion.FusionForm.from_json(load_document(args.input, "fusion"))
    result = {"form": f.to_json(), "embedded_replacement": fusion.embedded_replacement(f).to_json()}
    lines = [f"fusion form: genera {list(f.genera)}, {f.fusion_arcs} fusion arcs, size {f.size}"]
    if not args.other:
        return result, lines
    g = fusion.FusionForm.from_json(load_document(args.other, "fusion"))
    if args.witness:
        raw = json.loads(Path(args.witness).read_text())
        p = raw["matrix"] if isinstance(raw, dict) else raw
        source = "the given witness"
    else:
        source = "a witness found within bound"
        p = fusion.isomorphism_search(f, g, args.bound or 1)
        if p is None:
            result["isomorphic"] = None
            lines.append("no isomorphism witness within bound (not a proof)")
            return result, lines
    iso = fusion.form_isomorphic(f, g, p)
    result["isomorphic"] = iso.accepted
    result["isomorphism_witness"] = [list(r) for r in p]
    if not iso.accepted:
        lines.append("witness rejected: " + "; ".join(iso.reasons))
        return result, lines
    band = fusion.band_sum_with_negative(f, g, p)
    result["band_sum"] = {
        "form": band.form.to_json(),
        "witness": [list(r) for r in band.witness],
        "metabolizer_accepted": band.check.accepted,
    }
    lines.append(f"forms isomorphic via {source}")
    lines.append(f"V_f + (-V_g) metabolizer witness accepted: {band.check.accepted}")
    if band.check.accepted:
        lines.append("[isomorphic-forms-half-solve-equivalent] the two links are 0.5-solve-equivalent")
    return result, lines


def _solvability_report(args):
    op = solvability.DoublingOperator(
        solvability.SolvabilityGrade.of(args.n_r),
        args.k,
        args.eta_count,
        args.boundary_flag,
        args.blanchfield_nonzero,
    )
    grade = solvability.tower_grade(op, args.p, args.iterations)
    rep = solvability.chl_nontriviality_report(op, args.arf_zero, args.rho0_attested, args.iterations)
    result = {
        "grade": str(grade),
        "operator": {"nR": str(op.n_r), "k": op.eta_depth, "eta_count": op.eta_count, "boundary_flag": op.boundary_flag},
        "p": str(solvability.SolvabilityGrade.of(args.p)),
        "iterations": args.iterations,
        "nontriviality": rep.to_json(),
    }
    lines = [
        f"[{solvability.CITE_DOUBLING}] grade after {args.iterations} application(s): {grade}",
        f"[{rep.citation}] {rep.statement}",
        "(the grade calculus is stated for knots and is applied to links in the same way)",
    ]
    return result, lines


def _tower_report(args):
    rep = solvability.theorem_main_driver(args.n, args.trefoil_pairs)
    lines = [f"{s.subject}: {s.grade}-solvable  [{s.citation}] {s.note}" for s in rep.steps]
    lines.append(
        ("contradiction flagged: " if rep.inconsistent else "no contradiction: ") + rep.contradiction
    )
    return rep.to_json(), lines


_COMMANDS = {
    "seifert": _seifert_report,
    "blanchfield": _blanchfield_report,
    "hbl": _hbl_report,
    "milnor": _milnor_report,
    "ccomplex": _ccomplex_report,
    "fusion": _fusion_report,
    "solvability": _solvability_report,
    "tower": _tower_report,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code = EXIT_OK
    try:
        res = _COMMANDS[args.verb](args)
        if len(res) == 3:
            result, lines, code = res
        else:
            result, lines = res
    except SearchSpaceTooLarge as exc:
        print(f"linkconc: search cap exceeded: {exc}", file=err)
        return EXIT_CAP
    except (LinkConcError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"linkconc: invalid input: {exc}", file=err)
        return EXIT_INPUT
    if args.format == "json":
        out.write(dumps(envelope(args.verb, result)))
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

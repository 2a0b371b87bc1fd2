"""Command-line front end.

Exit codes: 0 when every verdict passes, 2 when some verdict fails, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .algebra import MonomialOrder, format_polynomial
from .cohomology import InconsistencyError, local_cohomology_table, stratification_data
from .criterion import constant_cohomology_criterion, obstruction_space_dims
from .degeneration import NonMonomialInitialError, verify_constant_cohomology
from .hochster import NotSquarefreeError, hochster_table, reduced_cohomology
from .idealfile import IdealFileError, canonical_field_name, parse_ideal_file
from .tangent import InvalidTangentError, fib_tangent_dim, induced_cohomology_maps, tangent_vector

COMMANDS = ("cohom", "criterion", "tangent", "degenerate", "stratify", "hochster", "crosscheck")

PASS, FAIL, ERROR = 0, 2, 1


def _parse_window(text):
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like lo:hi") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window needs lo <= hi")
    return lo, hi


def _frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _table_doc(table, window):
    doc = table.to_json(*window) if window else table.to_json()
    return doc


def _table_text(table, window):
    lo, hi = window if window else table.window
    return table.render(lo, hi)


def run_cohom(ideal, args):
    t = local_cohomology_table(ideal)
    return PASS, {"table": _table_doc(t, args.window)}, _table_text(t, args.window)


def run_criterion(ideal, args):
    rep = constant_cohomology_criterion(ideal)
    doc = rep.to_json()
    if args.obstructions:
        obs = obstruction_space_dims(ideal)
        doc["obstructions"] = {"ext1_I_RI": obs["ext1_I_RI"],
                               "ext2_dual_cohomology": {str(i): v for i, v in obs["ext2_dual_cohomology"].items()}}
    lines = [f"verdict: {rep.verdict}",
             f"cohen_macaulay: {str(rep.cohen_macaulay).lower()}",
             f"squarefree: {str(rep.squarefree).lower()}"]
    for pr in rep.pairs:
        lines.append(f"  [Hom(Ext^{pr.j - 1}, Ext^{pr.j})]_0 = {pr.dimension}"
                     f"   (dual to H^{pr.cohomology_index - 1} -> H^{pr.cohomology_index})")
    if "obstructions" in doc:
        lines.append(f"dim [Ext^1(I, R/I)]_0 = {doc['obstructions']['ext1_I_RI']}")
    return (PASS if rep.passed else FAIL), doc, "\n".join(lines)


def run_tangent(ideal, args):
    rep = fib_tangent_dim(ideal)
    doc = rep.to_json(format_polynomial)
    lines = [f"dim_HS: {rep.dim_HS}", f"dim_Fib: {rep.dim_Fib}"]
    if args.phi:
        assignment = {}
        for item in args.phi:
            g, sep, v = item.partition("->")
            if not sep:
                raise InvalidTangentError(f"expected GEN->IMAGE, got {item!r}")
            assignment[g.strip()] = v.strip()
        phi = tangent_vector(ideal, assignment)
        flags = induced_cohomology_maps(ideal, phi)
        nonzero = sorted(i for i, z in flags.items() if not z)
        doc["phi"] = {"images": [format_polynomial(v) for v in phi], "nonzero_indices": nonzero}
        lines.append("phi induces nonzero maps on H^i for i in " + (str(nonzero) if nonzero else "[] (none)"))
    return PASS, doc, "\n".join(lines)


def run_degenerate(ideal, args, weight=None):
    order = ideal.ring.order if weight is None else None
    rep = verify_constant_cohomology(ideal, order=order, weight=weight)
    doc = {
        "weight": list(rep.weight),
        "family": rep.family.format(),
        "special_fiber": [format_polynomial(g) for g in rep.special.gens],
        "equal": rep.equal,
        "semicontinuity_ok": rep.semicontinuity_ok,
        "hilbert_series_equal": rep.macaulay_ok,
        "status": rep.status,
        "criterion": rep.criterion.to_json(),
        "table_general": _table_doc(rep.table_general, args.window or rep.window),
        "table_special": _table_doc(rep.table_special, args.window or rep.window),
    }
    lines = [f"weight: {list(rep.weight)}",
             "family: " + ", ".join(rep.family.format()),
             "special fiber: " + ", ".join(doc["special_fiber"]),
             f"criterion on special fiber: {rep.criterion.verdict}",
             f"tables equal: {str(rep.equal).lower()}",
             f"semicontinuity: {'ok' if rep.semicontinuity_ok else 'VIOLATED'}",
             "general fiber:", _table_text(rep.table_general, args.window or rep.window),
             "special fiber:", _table_text(rep.table_special, args.window or rep.window)]
    ok = rep.equal and rep.semicontinuity_ok
    return (PASS if ok else FAIL), doc, "\n".join(lines)


def run_stratify(ideal, args):
    data = stratification_data(ideal)
    doc = {"g": data.g.to_json(), "hilbert_polynomial": [_frac(c) for c in data.polynomial],
           "checked_window": list(data.checked), "table": _table_doc(data.h, args.window)}
    poly = " + ".join(f"{_frac(c)}*nu^{k}" for k, c in enumerate(data.polynomial) if c) or "0"
    lines = [f"g = {data.g!r}", f"P(nu) = {poly}",
             f"identity g - sum (-1)^i h_i = P checked on [{data.checked[0]}, {data.checked[1]}]",
             _table_text(data.h, args.window)]
    return PASS, doc, "\n".join(lines)


def run_hochster(ideal, args):
    t = hochster_table(ideal)
    Delta = t.extra["complex"]
    coh = reduced_cohomology(Delta, None, ideal.ring.field.p)
    doc = {"facets": [[ideal.ring.names[i] for i in range(ideal.ring.n) if f >> i & 1] for f in Delta.facets],
           "reduced_cohomology": {str(k): v for k, v in sorted(coh.items())},
           "table": _table_doc(t, args.window)}
    lines = ["facets: " + " ".join("{" + ",".join(f) + "}" for f in doc["facets"]),
             "reduced cohomology: " + (", ".join(f"H~^{k}={v}" for k, v in sorted(coh.items())) or "0"),
             _table_text(t, args.window)]
    return PASS, doc, "\n".join(lines)


def run_crosscheck(ideal, args):
    a = hochster_table(ideal)
    b = local_cohomology_table(ideal)
    same = a.same_as(b)
    per = {str(i): a.ext_series(i) == b.ext_series(i) for i in range(a.n + 1)}
    doc = {"equal": same, "per_index": per}
    lines = [f"hochster vs duality: {'equal' if same else 'DIFFERENT'}"]
    lines += [f"  h_{i}: {'ok' if v else 'mismatch'}" for i, v in per.items()]
    return (PASS if same else FAIL), doc, "\n".join(lines)


RUNNERS = {
    "cohom": run_cohom,
    "criterion": run_criterion,
    "tangent": run_tangent,
    "degenerate": run_degenerate,
    "stratify": run_stratify,
    "hochster": run_hochster,
    "crosscheck": run_crosscheck,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1, keeping 2 for failed verdicts."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ERROR, f"{self.prog}: error: {message}\n")


def _join_window(argv):
    """Allow ``--window -3:3`` (a value that starts with a dash)."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def build_parser():
    ap = _Parser(prog="fiberfull", description="Exact local cohomology of ideals and their Groebner degenerations.")
    ap.add_argument("--version", action="version", version=f"fiberfull {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="ideal file ('-' for stdin)")
    ap.add_argument("--ideal", action="append", help="run only on the named ideal (repeatable)")
    ap.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    ap.add_argument("--field", help="override the field: qq or gf:p")
    ap.add_argument("--order", help="override the order: lex, grevlex or weight:w1,w2,...")
    ap.add_argument("--window", type=_parse_window, help="rendering window lo:hi")
    ap.add_argument("--weight", help="degenerate: name of a weight declared in the file, or w1,w2,...")
    ap.add_argument("--phi", action="append", help="tangent: GEN->IMAGE (repeatable); unspecified generators map to 0")
    ap.add_argument("--obstructions", action="store_true", help="criterion: also report obstruction-space dimensions")
    return ap


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_window(argv))
    except SystemExit as e:  # usage errors, --help, --version
        return e.code
    try:
        source = parse_ideal_file(_read(args.file))
        if args.field or args.order:
            field_name = canonical_field_name(args.field) if args.field else None
            order_text = repr(MonomialOrder.parse(args.order)) if args.order else None
            source = source.with_overrides(field_name, order_text)
        names = args.ideal or list(source.ideals)
        weight = None
        if args.weight:
            if args.weight in source.weights:
                weight = source.weights[args.weight]
            else:
                weight = tuple(int(x) for x in args.weight.split(","))
        results = {}
        texts = []
        code = PASS
        for name in names:
            ideal = source.ideal(name)
            runner = RUNNERS[args.command]
            if args.command == "degenerate":
                c, doc, text = runner(ideal, args, weight)
            else:
                c, doc, text = runner(ideal, args)
            code = max(code, c)
            results[name] = doc
            texts.append(f"== {name} = ({', '.join(source.ideals[name])})\n{text}")
    except (IdealFileError, NotSquarefreeError, InvalidTangentError, NonMonomialInitialError,
            InconsistencyError, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"error: {msg}", file=err)
        return ERROR
    if args.json:
        report = {
            "meta": {"engine": "fiberfull", "version": __version__, "command": args.command,
                     "field": source.field_name, "order": source.order_text,
                     "window": list(args.window) if args.window else None,
                     "exit_code": code},
            "input": {"ring": list(source.names), "ideals": {k: source.ideals[k] for k in names}},
            "result": results,
        }
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(texts) + "\n")
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""
Command line front end.

    painleve-fibrations verify --system H_I^Mat
    painleve-fibrations classify --system 'H_Gar^{9/2}' --fibration both
    painleve-fibrations table --set genus1
    painleve-fibrations classify --curve mycurve.json

Exit codes: 0 all checks pass, 1 usage error, 2 a check failed or a
computed type disagrees with the paper, 3 unsupported input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import catalog as C
from .algebra import MultiPoly, Witness, parse_expr
from .curves import (SpectralCurve, WeierstrassG1, WeierstrassG2, UnsupportedShape,
                     reduce_to_weierstrass, GenusDrop)
from .hamiltonian import DEFAULT_SEED
from .kodaira import classify_g1_at_infinity
from .liu import classify_g2_at_infinity

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- helpers -----------------------------------------------------------------

def _ords_json(ords):
    return {k: ("inf" if v == float("inf") else v) for k, v in ords.items()}


def _poly(obj):
    if isinstance(obj, str):
        return parse_expr(obj)
    if isinstance(obj, (int, float)):
        return MultiPoly.const(obj)
    return MultiPoly.from_json(obj)


def load_curve_json(path):
    """Curve JSON: shape g1 (a, b), g2 (coefficients a0..a6) or spectral (poly)."""
    d = json.loads(Path(path).read_text())
    shape = d.get("shape")
    fib = d.get("fibration_variable", "h")
    if shape == "g1":
        ab = d.get("coefficients", d)    # to_json nests a, b; hand-written files may not
        return WeierstrassG1(_poly(ab["a"]), _poly(ab["b"]), fib)
    if shape == "g2":
        cs = [_poly(c) for c in d["coefficients"]]
        if len(cs) != 7:
            raise UnsupportedShape("g2 curves need 7 coefficients a0..a6")
        return WeierstrassG2(cs, fib)
    if shape == "spectral":
        return SpectralCurve(_poly(d["poly"]), fib, d.get("spectator"),
                             d.get("x", "x"), d.get("y", "y"))
    raise UnsupportedShape(f"unknown curve shape {shape!r}")


def _resolve(args, cat):
    if args.all:
        return list(cat)
    if not args.system:
        raise UsageError("give --system NAME (repeatable) or --all")
    out = []
    for n in args.system:
        try:
            out.append(C.get_entry(n, cat))
        except C.UnknownSystem:
            raise UsageError(f"unknown system {n!r}")
    return out


def _fibs(args, entry):
    want = ["h", "g"] if args.fibration == "both" else [args.fibration]
    return [f for f in want if f in entry.curves]


# --- tasks (run in worker processes when --jobs > 1) -------------------------

def _verify_task(name, seed, corrected, ddir):
    cat = C.load_catalog(ddir)
    e = C.get_entry(name, cat)
    checks = C.verify_entry(e, seed=seed, corrected=corrected)
    return {"system": e.name, "checks": [c.to_json() for c in checks],
            "passed": all(c.passed for c in checks) if checks else None}


def _g1_json(rep):
    d = rep.to_json()
    row = getattr(rep, "expected", None)
    d["fibration"] = "h"
    d["expected"] = ({"kodaira": row["kodaira_ascii"], "dynkin": row["dynkin_ascii"]}
                     if row else None)
    d["agreement"] = C.g1_agreement(rep)
    return d


def _g2_json(rep):
    row = rep.expected
    exp = None
    if row:
        exp = {k: row.get(k) for k in ("nu_type", "dynkin", "stable", "phi", "ogg", "page")}
    return {"system": rep.system, "fibration": rep.fibration, "ords": _ords_json(rep.ords),
            "stable": rep.stable.kind, "expected": exp, "agreement": rep.agreement}


def _classify_task(name, fib, seed, ddir):
    cat = C.load_catalog(ddir)
    e = C.get_entry(name, cat)
    try:
        rep = C.classify_entry(e, fib, Witness(seed))
    except (UnsupportedShape, GenusDrop) as exc:
        return {"system": e.name, "fibration": fib, "error": f"{type(exc).__name__}: {exc}"}
    if isinstance(rep.model.model, WeierstrassG1):
        return _g1_json(rep)
    return _g2_json(rep)


def _pmap(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, *zip(*tasks)))   # map keeps catalog order


# --- rendering ---------------------------------------------------------------

def _render(rows, columns, fmt, header=""):
    if fmt == "json":
        seed = int(header) if header.lstrip("-").isdigit() else header
        return json.dumps({"seed": seed, "rows": rows}, indent=1, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue().rstrip("\n")
    if fmt == "markdown":
        lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        for r in rows:
            lines.append("| " + " | ".join(_cell(r.get(c)).replace("|", "\\|") for c in columns) + " |")
        return (f"seed {header}\n\n" if header else "") + "\n".join(lines)
    widths = [max(len(c), *(len(_cell(r.get(c))) for r in rows)) if rows else len(c) for c in columns]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(_cell(r.get(c)).ljust(w) for c, w in zip(columns, widths)).rstrip())
    return (f"# seed {header}\n" if header else "") + "\n".join(lines)


def _cell(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


# --- commands ----------------------------------------------------------------

def cmd_verify(args, out):
    cat = C.load_catalog(args.data_dir)
    entries = _resolve(args, cat)
    todo = [e for e in entries if (e.space is not None and "H" in e.hamiltonians) or e.lax]
    skipped = [e.name for e in entries if e not in todo]
    if skipped and not args.all:
        print(f"no conserved quantities or Lax data bundled for: {', '.join(skipped)}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    res = _pmap(_verify_task, [(e.name, args.seed, args.corrected, args.data_dir) for e in todo],
                args.jobs)
    if args.format == "json":
        print(json.dumps({"seed": args.seed, "results": res, "skipped": skipped},
                         indent=1, sort_keys=True), file=out)
    else:
        rows = []
        for r in res:
            for c in r["checks"]:
                rows.append({"system": r["system"], "check": c["check"],
                             "result": "pass" if c["passed"] else "FAIL", "detail": c["detail"]})
        print(_render(rows, ["system", "check", "result", "detail"], args.format, str(args.seed)),
              file=out)
        if skipped and args.format == "text":
            print(f"# skipped (no bundled H, G or Lax data): {len(skipped)} entries", file=out)
    return EXIT_OK if all(r["passed"] for r in res) else EXIT_MISMATCH


def _classify_curve(args, out):
    try:
        c = load_curve_json(args.curve)
        w = reduce_to_weierstrass(c) if isinstance(c, SpectralCurve) else c
        wit = Witness(args.seed)
        if isinstance(w, WeierstrassG1):
            rep = classify_g1_at_infinity(w, wit, Path(args.curve).name)
            d = _g1_json(rep)
        else:
            rep = classify_g2_at_infinity(w, None, wit, Path(args.curve).name)
            d = _g2_json(rep)
    except (UnsupportedShape, GenusDrop) as exc:
        print(f"unsupported curve: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read curve file: {exc}")
    _print_classify([d], args, out)
    return EXIT_OK


def _print_classify(res, args, out):
    if args.format == "json":
        print(json.dumps({"seed": args.seed, "results": res}, indent=1, sort_keys=True), file=out)
        return
    rows = []
    for r in res:
        if "error" in r:
            rows.append({"system": r["system"], "fibration": r["fibration"], "computed": "-",
                         "expected": "-", "agreement": None, "detail": r["error"]})
            continue
        if "kodaira" in r:
            comp = f"{r['kodaira']} ({r['dynkin']})"
            exp = f"{r['expected']['kodaira']} ({r['expected']['dynkin']})" if r["expected"] else None
            det = f"ordDelta={r['ordDelta']} ordJ={r['ordJ']}"
        else:
            comp = r["stable"]
            exp = (f"{r['expected']['stable']} [{r['expected']['nu_type']}]"
                   if r["expected"] else None)
            det = " ".join(f"{k}={v}" for k, v in r["ords"].items())
        rows.append({"system": r["system"], "fibration": r["fibration"], "computed": comp,
                     "expected": exp, "agreement": r["agreement"], "detail": det})
    print(_render(rows, ["system", "fibration", "computed", "expected", "agreement", "detail"],
                  args.format, str(args.seed)), file=out)


def cmd_classify(args, out):
    if args.curve:
        if args.system or args.all:
            raise UsageError("--curve cannot be combined with --system/--all")
        return _classify_curve(args, out)
    cat = C.load_catalog(args.data_dir)
    entries = _resolve(args, cat)
    tasks = [(e.name, f, args.seed, args.data_dir) for e in entries for f in _fibs(args, e)]
    nocurve = [e.name for e in entries if not _fibs(args, e)]
    if nocurve and not args.all:
        print(f"no bundled curve for: {', '.join(nocurve)} (use --curve FILE)", file=sys.stderr)
        return EXIT_UNSUPPORTED
    res = _pmap(_classify_task, tasks, args.jobs)
    _print_classify(res, args, out)
    if any("error" in r for r in res):
        return EXIT_UNSUPPORTED
    return EXIT_OK if all(r["agreement"] is not False for r in res) else EXIT_MISMATCH


TABLE_COLUMNS = ["hamiltonian", "spectral_type", "nu_type", "dynkin", "stable", "phi", "ogg",
                 "nu", "page"]


def cmd_table(args, out):
    cat = C.load_catalog(args.data_dir)
    if args.set == "genus1":
        entries = [e for e in cat if e.dimension == 2]
        res = _pmap(_classify_task, [(e.name, "h", args.seed, args.data_dir) for e in entries],
                    args.jobs)
        rows = []
        for e, r in zip(entries, res):
            row = e.expected_row("h")
            rows.append({"hamiltonian": e.name, "kodaira": row["kodaira_ascii"],
                         "dynkin": row["dynkin_ascii"],
                         "computed": f"{r['kodaira']} ({r['dynkin']})",
                         "status": "computed" if r["agreement"] else "MISMATCH"})
        print(_render(rows, ["hamiltonian", "kodaira", "dynkin", "computed", "status"],
                      args.format, str(args.seed)), file=out)
        return EXIT_OK if all(r["status"] == "computed" for r in rows) else EXIT_MISMATCH
    fibs = ["h", "g"] if args.fibration == "both" else [args.fibration]
    entries = [e for e in cat if e.dimension == 4]
    tasks = [(e.name, f, args.seed, args.data_dir) for f in fibs for e in entries if f in e.curves]
    got = {(r["system"], r["fibration"]): r for r in _pmap(_classify_task, tasks, args.jobs)}
    rows = []
    for f in fibs:
        for e in entries:
            row = dict(e.expected_row(f))
            r = got.get((e.name, f))
            if r is None:
                status, comp = "expected", None
            elif r.get("agreement"):
                status, comp = "computed", r["stable"]
            else:
                status, comp = "MISMATCH", r.get("stable")
            rows.append({"system": e.name, "fibration": f,
                         **{c: row[c] for c in TABLE_COLUMNS},
                         "computed_stable": comp, "status": status})
    cols = ["system", "fibration"] + TABLE_COLUMNS + ["computed_stable", "status"]
    print(_render(rows, cols, args.format, str(args.seed)), file=out)
    return EXIT_MISMATCH if any(r["status"] == "MISMATCH" for r in rows) else EXIT_OK


# --- entry point ---------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="painleve-fibrations",
                                description="Integrability checks and singular fibers of "
                                            "autonomous Painleve-type systems.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "markdown", "csv", "json"], default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--data-dir", default=None,
                        help="catalog data directory (default: bundled, or $PAINLEVE_DATA_DIR)")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="Liouville integrability checks")
    v.add_argument("--system", action="append")
    v.add_argument("--all", action="store_true")
    v.add_argument("--corrected", action="store_true",
                   help="apply documented errata and parameter constraints")
    c = sub.add_parser("classify", parents=[common], help="singular fiber at infinity")
    c.add_argument("--system", action="append")
    c.add_argument("--all", action="store_true")
    c.add_argument("--fibration", choices=["h", "g", "both"], default="h")
    c.add_argument("--curve", help="curve JSON file")
    t = sub.add_parser("table", parents=[common], help="reproduce the paper's tables")
    t.add_argument("--set", choices=["genus1", "genus2"], default="genus1")
    t.add_argument("--fibration", choices=["h", "g", "both"], default="h")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.jobs < 1:
        print("--jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        fn = {"verify": cmd_verify, "classify": cmd_classify, "table": cmd_table}[args.command]
        return fn(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except C.DataIntegrity as exc:
        print(f"data integrity: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())

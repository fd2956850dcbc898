"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import __version__
from .kernels import KERNEL_KINDS, KernelSpec, NorlundWeights
from .means import error_curve, get_function, lebesgue_constant_curve
from .sweeps import fit_band, format_value, theorem1_sweep, verify_identities
from .variation import condition_profile, sequence


class UsageError(Exception):
    pass


def _table_text(rows, columns, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: _json_value(r[c]) for c in columns} for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_value(r[c]) for c in columns])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, float):
        return float(format(v, ".12g"))
    if isinstance(v, int) and v.bit_length() > 53:
        return str(v)
    return v


def _emit(args, text: str, manifest: dict, started: float):
    manifest = {"command": args.command, "config": _config_echo(args), "version": __version__,
                "wall_time": round(time.perf_counter() - started, 3), **manifest}
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        with open(args.out + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=1)
            fh.write("\n")
    else:
        sys.stdout.write(text)
        sys.stderr.write(json.dumps(manifest) + "\n")


def _config_echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "inject_fault")}


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify_identities(args) -> int:
    started = time.perf_counter()
    fault = None
    if args.inject_fault:
        n, cell = (int(x) for x in args.inject_fault.split(","))
        fault = (n, cell)
    try:
        checked, failures = verify_identities(args.nmin, args.nmax, args.mode, args.jobs, fault)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [{"n": f.n, "check": f.check, "cell": "" if f.cell is None else f.cell, "detail": f.detail}
            for f in failures]
    report = {"checked": checked, "failures": len(failures)}
    if failures:
        first = failures[0]
        report["first_failure"] = {"n": first.n, "check": first.check, "cell": first.cell}
        sys.stderr.write(f"FAIL n={first.n} check={first.check} cell={first.cell} {first.detail}\n")
    _emit(args, _table_text(rows, ["n", "check", "cell", "detail"], args.format), report, started)
    return 1 if failures else 0


SWEEP_COLUMNS = ["n", "order", "VS", "VL", "F_l1", "ratio",
                 "H1_l1", "H21_l1", "H22_l1", "H23_l1", "H3_l1"]


def cmd_theorem1_sweep(args) -> int:
    started = time.perf_counter()
    if args.nmin < 4:
        raise UsageError("theorem1-sweep needs --nmin >= 4")
    records = theorem1_sweep(args.nmin, args.nmax, args.family_max, args.jobs)
    columns = SWEEP_COLUMNS + (["wall_time"] if args.timing else [])
    rows = [r.as_row(args.timing) for r in records]
    band = fit_band(records)
    text = _table_text(rows, columns, args.format)
    if args.format == "csv":
        text += ("# band c={} C={} n_at_c={} n_at_C={} C_over_c={}\n"
                 .format(*(format_value(band[k]) for k in ("c", "C", "n_at_c", "n_at_C", "C_over_c"))))
    _emit(args, text, {"rows": len(rows), "band": band}, started)
    return 0


def _sequence(args):
    try:
        return sequence(args.seq)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_variation(args) -> int:
    started = time.perf_counter()
    rows, classes = condition_profile(_sequence(args), args.amax, args.amin)
    cols = ["A", "n", "bits", "VS", "VL", "mem_sum", "runmax_VL", "runmax_mem"]
    _emit(args, _table_text(rows, cols, args.format), {"rows": len(rows), "classes": classes}, started)
    return 0


def cmd_converge(args) -> int:
    started = time.perf_counter()
    try:
        f = get_function(args.fn)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = error_curve(_sequence(args), f, args.amax, args.amin)
    key = "error_sup" if args.norm == "sup" else "error_L1"
    vals = [r[key] for r in rows]
    summary = {"norm": args.norm, "monotone_decreasing": all(a > b for a, b in zip(vals, vals[1:]))}
    _emit(args, _table_text(rows, ["A", "n", "error_sup", "error_L1"], args.format), summary, started)
    return 0


def cmd_lebesgue(args) -> int:
    started = time.perf_counter()
    rows = lebesgue_constant_curve(_sequence(args), args.amax, args.amin)
    F = [r["F_l1"] for r in rows]
    summary = {"max_over_min": max(F) / min(F) if F else None, "final_over_initial": F[-1] / F[0] if F else None}
    _emit(args, _table_text(rows, ["A", "n", "F_l1", "VL", "ratio"], args.format), summary, started)
    return 0


def cmd_kernel_dump(args) -> int:
    started = time.perf_counter()
    if args.kind not in KERNEL_KINDS:
        raise UsageError(f"unknown kernel kind {args.kind!r}")
    weights = NorlundWeights.logarithmic() if args.kind == "norlund_general" else None
    try:
        g = KernelSpec(args.kind, args.n, weights, args.res, args.mode == "exact").build()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        text = g.to_json() + "\n"
    else:
        text = g.to_csv()
    _emit(args, text, {"resolution": g.resolution, "mode": g.mode}, started)
    return 0


def cmd_acceptance(args) -> int:
    from .acceptance import run_all
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(only)
    for r in results:
        print(r.line(), flush=True)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="walshlog", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seq=False):
        sp.add_argument("--out", help="output path; a .manifest.json is written beside it")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
        if seq:
            sp.add_argument("--seq", required=True)
            sp.add_argument("--amax", type=int, default=10)
            sp.add_argument("--amin", type=int, default=None)

    sp = sub.add_parser("verify-identities", help="exact checks of the kernel decomposition")
    sp.add_argument("--nmin", type=int, default=4)
    sp.add_argument("--nmax", type=int, default=256)
    sp.add_argument("--mode", choices=("exact", "double"), default="exact")
    sp.add_argument("--inject-fault", dest="inject_fault", help=argparse.SUPPRESS)
    common(sp)
    sp.set_defaults(func=cmd_verify_identities)

    sp = sub.add_parser("theorem1-sweep", help="kernel norms against V_L over a range of n")
    sp.add_argument("--nmin", type=int, default=4)
    sp.add_argument("--nmax", type=int, default=512)
    sp.add_argument("--family-max", dest="family_max", type=int, default=4096,
                    help="also sweep family members up to this index (0 disables)")
    sp.add_argument("--timing", action="store_true", help="add a wall_time column")
    common(sp)
    sp.set_defaults(func=cmd_theorem1_sweep)

    sp = sub.add_parser("variation", help="V_S, V_L and mem sums along a sequence")
    common(sp, seq=True)
    sp.set_defaults(func=cmd_variation)

    sp = sub.add_parser("converge", help="||L_{m_A} f - f|| along a sequence")
    sp.add_argument("--fn", default="identity")
    sp.add_argument("--norm", choices=("sup", "l1"), default="sup")
    common(sp, seq=True)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("lebesgue", help="||F_{m_A}||_1 along a sequence")
    common(sp, seq=True)
    sp.set_defaults(func=cmd_lebesgue)

    sp = sub.add_parser("kernel-dump", help="write one kernel as CSV or JSON")
    sp.add_argument("--kind", default="norlund_log", help="|".join(KERNEL_KINDS))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--res", type=int, default=None)
    sp.add_argument("--mode", choices=("exact", "double"), default="exact")
    common(sp)
    sp.set_defaults(func=cmd_kernel_dump)

    sp = sub.add_parser("acceptance", help="run the acceptance criteria")
    sp.add_argument("--only", help="comma separated criterion numbers")
    sp.set_defaults(func=cmd_acceptance)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    if getattr(args, "amax", 1) < 1:
        parser.error("--amax must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"walshlog: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

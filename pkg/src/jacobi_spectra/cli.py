"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numerical
failure, 4 I/O error.  Reports go to stdout (or --output) as JSON; --pretty
adds a short human summary on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .bands import ac_measure, band_length_bounds, band_structure, spectral_hull, verify_theorem2
from .bounds import bound_table, theorem1_bound, two_value_closed_form, verify_polya_ac
from .errors import InvalidModelError, NumericalError
from .extremal import verify_nesting
from .ids import ids_profile, verify_deift_simon
from .model import OperatorSpec, Window, make_constant, make_free, make_two_value, unroll
from .report import dumps
from .suites import SUITES, run_suite
from .svgplot import render_discriminant
from .transfer import MAX_POLY_PERIOD, corner_det, discriminant_eval

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3, 4
BUILDERS = ("free", "constant", "two-value")


class InputError(Exception):
    pass


def build_model(args) -> OperatorSpec:
    name = args.model
    if name == "free":
        return make_free(args.q)
    if name == "constant":
        return make_constant(args.a, args.b, args.q)
    if name == "two-value":
        return make_two_value(args.R, args.m, args.l)
    text = name
    if not name.lstrip().startswith("{"):
        try:
            text = Path(name).read_text()
        except OSError as exc:
            raise InputError(f"model {name!r} is neither a builder ({', '.join(BUILDERS)}) nor a readable file: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid model JSON: {exc}")
    return OperatorSpec.from_dict(data)


def parse_window(args) -> Window:
    if args.window is not None:
        parts = args.window.strip().strip("()[]").split(",")
        if len(parts) != 2:
            raise InputError(f"window must look like 'E_L,E_R', got {args.window!r}")
        try:
            return Window(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise InputError(f"bad window {args.window!r}: {exc}")
    return Window(float(args.EL), float(args.ER))


def add_model_options(p: argparse.ArgumentParser, required: bool = True):
    g = p.add_argument_group("model")
    g.add_argument("--model", required=required, default=None,
                   help="builder name (free, constant, two-value), path to a JSON file, or inline JSON")
    g.add_argument("--q", type=int, default=1, help="period for free/constant")
    g.add_argument("--a", type=float, default=1.0, help="off-diagonal value for constant")
    g.add_argument("--b", type=float, default=0.0, help="diagonal value for constant")
    g.add_argument("--R", type=float, default=8.0, help="second diagonal value for two-value")
    g.add_argument("--m", type=int, default=1, help="number of zeros per period for two-value")
    g.add_argument("--l", type=int, default=1, help="number of R entries per period for two-value")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacobi-spectra", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="print a human summary to stderr")
    common.add_argument("--tol", type=float, default=None, help="tolerance (must be positive)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("models", parents=[common], help="list builders or print a model as JSON")
    add_model_options(p, required=False)

    p = sub.add_parser("bands", parents=[common], help="band structure and band-length bounds")
    add_model_options(p)

    p = sub.add_parser("ids", parents=[common], help="integrated density of states on a grid")
    add_model_options(p)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--method", choices=("exact", "truncation"), default="exact")
    p.add_argument("--N", type=int, default=None, help="truncation size (default 2000 q)")
    p.add_argument("--emin", type=float, default=None)
    p.add_argument("--emax", type=float, default=None)

    p = sub.add_parser("bound", parents=[common], help="window bound table over n = q, 2q, ..., tq")
    add_model_options(p)
    p.add_argument("--window", default=None, help="'E_L,E_R'; use --window=-2,2 for a negative start")
    p.add_argument("--EL", default="-inf")
    p.add_argument("--ER", default="inf")
    p.add_argument("--t", type=int, default=8, help="largest multiple of the period")

    p = sub.add_parser("verify", parents=[common], help="seeded verification suites")
    add_model_options(p, required=False)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--suites", default="all", help=f"comma list from {', '.join(SUITES)} or 'all'")
    p.add_argument("--count", type=int, default=100, help="random operators per suite")

    p = sub.add_parser("plot", parents=[common], help="SVG of the discriminant with bands")
    add_model_options(p)
    p.add_argument("--grid", type=int, default=800)
    p.add_argument("--emin", type=float, default=None)
    p.add_argument("--emax", type=float, default=None)
    return parser


def cmd_models(args) -> tuple[dict, int]:
    if args.model is None:
        examples = {"free": make_free(1), "constant": make_constant(1.0, 0.0, 1), "two-value": make_two_value(8.0, 1, 1)}
        return {"builders": {k: v.to_dict() for k, v in examples.items()}}, EXIT_OK
    return build_model(args).to_dict(), EXIT_OK


def cmd_bands(args) -> tuple[dict, int]:
    spec = build_model(args)
    bs = band_structure(spec, args.tol if args.tol is not None else 1e-12)
    bounds = band_length_bounds(spec)
    from_right = []
    for j, bound in enumerate(bounds, start=1):
        l, r = bs.band_from_right(j)
        from_right.append({"index": j, "band": [l, r], "length": r - l, "bound": bound})
    return {
        "model": spec.to_dict(),
        "bands": [list(b) for b in bs.bands],
        "lengths": list(bs.lengths),
        "edge_signs": list(bs.edge_signs),
        "closed_gaps": list(bs.closed_gaps),
        "right_to_left": from_right,
        "ac_measure": ac_measure(bs),
        "four_A_q": 4 * spec.geometric_mean,
    }, EXIT_OK


def cmd_ids(args) -> tuple[dict, int]:
    spec = build_model(args)
    if args.grid < 1:
        raise InputError("grid must be positive")
    lo, hi = spectral_hull(spec)
    lo = args.emin if args.emin is not None else lo
    hi = args.emax if args.emax is not None else hi
    grid = np.linspace(lo, hi, args.grid)
    if args.method == "exact":
        prof = ids_profile(spec, grid)
    else:
        prof = ids_profile(spec, grid, "truncation", args.N or 2000 * spec.period)
    return {"model": spec.to_dict(), **prof.to_dict()}, EXIT_OK


def cmd_bound(args) -> tuple[dict, int]:
    spec = build_model(args)
    w = parse_window(args)
    if args.t < 1:
        raise InputError("t must be positive")
    table = bound_table(spec, w, args.t)
    best = min(table, key=lambda r: r.value)
    out = {
        "model": spec.to_dict(),
        "window": [w.E_L, w.E_R],
        "table": [r.to_dict() for r in table],
        "min_bound": best.to_dict()["bound"],
        "min_n": best.n,
        "ac_measure": ac_measure(band_structure(spec), w),
    }
    # lengths that are not multiples of q: shown for comparison, not used for min_bound
    q = spec.period
    extra = [theorem1_bound(unroll(spec, n), w) for n in range(q, args.t * q + 1) if n % q]
    if extra:
        low = min(extra, key=lambda r: r.value)
        out["intermediate"] = {
            "table": [r.to_dict() for r in extra],
            "min_bound": low.to_dict()["bound"],
            "min_n": low.n,
            "below_periodic_min": low.value < best.value,
        }
    if args.model == "two-value":
        left, right = two_value_closed_form(args.R, args.m, args.l)
        out["closed_form"] = {"window_low": left, "window_high": right}
    return out, EXIT_OK


def _model_suite(name: str, spec: OperatorSpec, seed: int, tol: float) -> dict:
    if name == "theorem2":
        rep = verify_theorem2(spec, tol)
        return {"suite": name, "passed": rep.passed, "equality": [c.equality for c in rep.checks],
                "all_equal": rep.all_equal, "worst": -rep.worst_slack, "tolerance": tol}
    if name == "polya":
        rep = verify_polya_ac(spec, seed=seed, tol=tol)
        return {"suite": name, "passed": rep.passed, "ac_measure": rep.total_measure,
                "four_A_q": rep.global_bound, "equality": rep.equality, "worst": rep.worst_excess, "tolerance": tol}
    if name == "deift-simon":
        rep = verify_deift_simon(spec)
        return {"suite": name, "passed": rep.passed, "min_lhs": rep.min_lhs, "max_lhs": rep.max_lhs,
                "min_location": rep.min_location, "worst": 1.0 - rep.min_lhs, "tolerance": 1e-6}
    if name == "nesting":
        reps = [verify_nesting(spec, n) for n in range(1, 5) if n * spec.period <= MAX_POLY_PERIOD]
        return {"suite": name, "passed": all(r.passed for r in reps),
                "worst": max((r.pointwise_error for r in reps), default=0.0),
                "coefficient_error": max((r.coefficient_error for r in reps), default=0.0), "tolerance": 1e-9}
    if name == "bf":
        lead = math.prod(spec.a)
        worst = 0.0
        for E in np.linspace(-6.0, 6.0, 50):
            det = corner_det(spec, float(E))
            worst = max(worst, abs(discriminant_eval(spec, float(E)) - det / lead) / (1 + abs(det)))
        return {"suite": name, "passed": worst <= 1e-8, "worst": worst, "tolerance": 1e-8}
    return run_suite(name, seed)


def _suite_job(job):
    name, spec_dict, seed, count, tol = job
    if spec_dict is not None:
        return _model_suite(name, OperatorSpec.from_dict(spec_dict), seed, tol)
    return run_suite(name, seed, count, tol)


def cmd_verify(args) -> tuple[dict, int]:
    tol = args.tol if args.tol is not None else 1e-9
    names = list(SUITES) if args.suites == "all" else [s.strip() for s in args.suites.split(",") if s.strip()]
    unknown = [n for n in names if n not in SUITES]
    if unknown or not names:
        raise InputError(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
    if args.count < 1:
        raise InputError("count must be positive")
    spec_dict = build_model(args).to_dict() if args.model is not None else None
    jobs = [(n, spec_dict, args.seed, args.count, tol) for n in names]
    workers = _thread_cap()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_suite_job, jobs))
    else:
        results = [_suite_job(j) for j in jobs]
    passed = all(r["passed"] for r in results)
    out = {"seed": args.seed, "count": args.count, "passed": passed, "suites": results}
    if spec_dict is not None:
        out["model"] = spec_dict
    return out, EXIT_OK if passed else EXIT_VERIFY


def cmd_plot(args) -> tuple[str, int]:
    spec = build_model(args)
    if args.grid < 2:
        raise InputError("grid must be at least 2")
    bs = band_structure(spec)
    lo, hi = spectral_hull(spec)
    rng = (args.emin if args.emin is not None else lo, args.emax if args.emax is not None else hi)
    if not rng[0] < rng[1]:
        raise InputError("emin must be below emax")
    return render_discriminant(spec, bs, args.grid, rng), EXIT_OK


def _thread_cap() -> int:
    raw = os.environ.get("JACOBI_SPECTRA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


COMMANDS = {"models": cmd_models, "bands": cmd_bands, "ids": cmd_ids, "bound": cmd_bound,
            "verify": cmd_verify, "plot": cmd_plot}


def _summary(command: str, payload) -> str:
    if command == "verify":
        return "\n".join(f"{r['suite']:<12} {'PASS' if r['passed'] else 'FAIL'}  worst={r['worst']:.3e}"
                         for r in payload["suites"])
    if command == "bands":
        return "\n".join(f"[{l:.10f}, {r:.10f}]" for l, r in payload["bands"])
    if command == "bound":
        return f"min bound {payload['min_bound']} at n = {payload['min_n']}"
    return command


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.tol is not None and not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        payload, code = COMMANDS[args.command](args)
    except (InputError, InvalidModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = payload if isinstance(payload, str) else dumps(payload)
    if args.pretty and not isinstance(payload, str):
        print(_summary(args.command, payload), file=sys.stderr)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

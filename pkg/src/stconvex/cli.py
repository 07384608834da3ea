"""Command-line interface.

Subcommands: ``check``, ``sweep``, ``jack``, ``identity`` and ``campaign``.
Exit codes: 0 consistent and reliable, 1 a reliable inconsistency (or a failed
identity/Jack check), 2 input or parse error, 3 unreliable evaluation.
"""

from __future__ import annotations

import argparse
import itertools
import math
import sys
import time

import numpy as np

from . import __version__
from .campaign import run_campaign
from .catalog import BuildContext, build_function, build_w
from .errors import EvaluationUnreliable, STCError
from .functionals import Direction, FunctionPair, identity_residual
from .jack import DEFAULT_SAMPLES, DEFAULT_TOL, jack_verify
from .report import SCHEMA_VERSION, csv_text, dumps, loads, validate, write_atomic
from .series import DEFAULT_ORDER, R_MAX
from .specparse import parse_spec, print_spec
from .theorems import (
    RELIABILITY_THRESHOLD,
    DiskGrid,
    TheoremParams,
    check,
    rho_floor,
    starlike_margin,
)

EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_UNRELIABLE = 0, 1, 2, 3
IDENTITY_TOL = 1e-9
SWEEPABLE = ("mu", "beta", "gamma", "delta", "rho", "alpha", "n")


class InputError(Exception):
    pass


def _grid_arg(text: str) -> tuple[int, int]:
    try:
        r, a = text.lower().split("x")
        return int(r), int(a)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 64x512, got {text!r}") from None


def _delta_arg(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"delta must be RE or RE,IM, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order")
    p.add_argument("--seed", type=int, default=0, help="default seed for random constructors")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")


def _theorem_args(p: argparse.ArgumentParser):
    p.add_argument("--theorem", type=int, required=True, choices=[1, 2, 3, 4, 5])
    p.add_argument("--f", required=True, metavar="SPEC")
    p.add_argument("--g", required=True, metavar="SPEC")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--delta", type=_delta_arg, default=complex(0.5, 0.0), metavar="RE[,IM]")
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--n", type=int, default=None, help="class index (default min(n1, n2))")
    p.add_argument("--grid", type=_grid_arg, default=(64, 512), metavar="RxA")
    p.add_argument("--rmax", type=float, default=R_MAX)
    _common(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stconvex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="check one theorem instance on a disk grid")
    _theorem_args(p)

    p = sub.add_parser("sweep", help="check a theorem over a parameter grid")
    _theorem_args(p)
    p.add_argument("--sweep", action="append", required=True, metavar="NAME=START:END:STEP",
                   help="also NAME=v1,v2,...; rho accepts START=floor+EPS")
    p.add_argument("--csv", metavar="PATH", help="write one CSV row per parameter tuple")

    p = sub.add_parser("jack", help="probe Jack's lemma for a given w")
    p.add_argument("--w", required=True, metavar="SPEC")
    p.add_argument("--radii", type=_float_list, default=[0.3, 0.6, 0.9])
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _common(p)

    p = sub.add_parser("identity", help="verify the logarithmic-derivative identity")
    p.add_argument("--f", required=True, metavar="SPEC")
    p.add_argument("--g", required=True, metavar="SPEC")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--direction", choices=[d.value for d in Direction], default="forward")
    _common(p)

    p = sub.add_parser("campaign", help="randomized implication-consistency campaign")
    p.add_argument("--theorem", type=int, required=True, choices=[1, 2, 3, 4, 5])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="PATH")
    return parser


def _canon(spec: str) -> str:
    return print_spec(parse_spec(spec))


def _grid(args) -> DiskGrid:
    n_radii, angles = args.grid
    try:
        return DiskGrid.geometric(n_radii, angles, args.rmax)
    except (ValueError, STCError) as exc:
        raise InputError(f"bad grid: {exc}") from exc


def _pair(args) -> FunctionPair:
    ctx = BuildContext(args.order, args.seed)
    return FunctionPair(build_function(args.f, ctx), build_function(args.g, ctx))


def _params(args, pair: FunctionPair, **override) -> TheoremParams:
    values = dict(mu=args.mu, beta=args.beta, gamma=args.gamma, delta=args.delta,
                  rho=args.rho, alpha=args.alpha, n=args.n)
    values.update(override)
    if values["n"] is None:
        values["n"] = pair.n
    if values["alpha"] is None:
        values["alpha"] = 0.0
    if args.theorem not in (3, 5):
        values["rho"] = None
    return TheoremParams(args.theorem, values["mu"], values["beta"], values["gamma"],
                         values["delta"], n=int(values["n"]), rho=values["rho"],
                         alpha=values["alpha"])


def _echo(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("json", "csv", "command"):
            continue
        if key in ("f", "g", "w") and value is not None:
            try:
                value = _canon(value)
            except STCError:
                pass  # echo the text as given
        if isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def _strip_paths(argv) -> list[str]:
    """``argv`` without output paths, which must not affect the report."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a in ("--json", "--csv"):
            skip = True
        elif not a.startswith(("--json=", "--csv=")):
            out.append(a)
    return out


def _json_path(argv) -> str | None:
    """``--json PATH`` from a command line argparse rejected."""
    for i, a in enumerate(argv):
        if a == "--json" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--json="):
            return a.split("=", 1)[1]
    return None


def _exit_for(verdicts) -> tuple[int, str]:
    if any(not v.consistent and v.reliable for v in verdicts):
        return EXIT_INCONSISTENT, "inconsistent"
    if any(not v.reliable for v in verdicts):
        return EXIT_UNRELIABLE, "unreliable"
    return EXIT_OK, "consistent"


def cmd_check(args) -> tuple[int, str, dict, float]:
    pair = _pair(args)
    tp = _params(args, pair)
    grid = _grid(args)
    verdict = check(tp, pair, grid)
    try:
        margin = starlike_margin(pair.g, tp.alpha, grid)
    except EvaluationUnreliable:
        margin = None
    code, status = _exit_for([verdict])
    return code, status, {"verdict": verdict.to_dict(), "starlike_margin": margin}, verdict.reliability


def _sweep_values(spec: str, args, pair) -> tuple[str, list[float]]:
    if "=" not in spec:
        raise InputError(f"sweep must look like NAME=START:END:STEP, got {spec!r}")
    name, rng = spec.split("=", 1)
    name = name.strip()
    if name not in SWEEPABLE:
        raise InputError(f"cannot sweep {name!r}; choose from {', '.join(SWEEPABLE)}")
    if ":" not in rng:
        try:
            values = [float(x) for x in rng.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"bad value list {rng!r}") from None
    else:
        parts = rng.split(":")
        if len(parts) != 3:
            raise InputError(f"range must be START:END:STEP, got {rng!r}")
        start_text, end_text, step_text = parts
        try:
            if start_text.startswith("floor"):
                if name != "rho":
                    raise InputError("only rho accepts a floor-relative start")
                eps = float(start_text[5:] or 0.0)
                start = rho_floor(args.delta.real, args.mu, args.n or pair.n) + eps
            else:
                start = float(start_text)
            end, step = float(end_text), float(step_text)
        except ValueError:
            raise InputError(f"bad range {rng!r}") from None
        if not step > 0 or start > end:
            raise InputError(f"empty range {rng!r}")
        count = int(math.floor((end - start) / step + 1e-9)) + 1
        values = [start + i * step for i in range(count)]
    if not values:
        raise InputError(f"empty range for {name}")
    return name, values


def cmd_sweep(args) -> tuple[int, str, dict, float]:
    pair = _pair(args)
    grid = _grid(args)
    axes = [_sweep_values(s, args, pair) for s in args.sweep]
    names = [a[0] for a in axes]
    if len(set(names)) != len(names):
        raise InputError("each parameter may be swept only once")
    header = ["theorem", "mu", "beta", "gamma", "delta_re", "delta_im", "rho", "alpha", "n",
              "hyp_sup", "hyp_bound", "concl_sup", "concl_bound", "hyp_holds",
              "consistent", "reliable", "reliability", "error"]
    rows, verdicts, invalid = [], [], 0
    worst = 0.0
    for combo in itertools.product(*(a[1] for a in axes)):
        override = dict(zip(names, combo))
        if "delta" in override:
            override["delta"] = complex(override["delta"], args.delta.imag)
        if "n" in override:
            override["n"] = int(round(override["n"]))
        try:
            tp = _params(args, pair, **override)
        except STCError as exc:
            invalid += 1
            rows.append([args.theorem] + [override.get(k, "") for k in
                        ("mu", "beta", "gamma")] + ["", "", override.get("rho", ""),
                        override.get("alpha", ""), override.get("n", "")] + [""] * 8 + [str(exc)])
            continue
        v = check(tp, pair, grid)
        verdicts.append(v)
        worst = max(worst, v.reliability)
        rows.append([tp.id, tp.mu, tp.beta, tp.gamma, tp.delta.real, tp.delta.imag,
                     "" if tp.rho is None else tp.rho, tp.alpha, tp.n, v.hyp_sup, v.hyp_bound,
                     v.concl_sup, v.concl_bound, v.hyp_holds, v.consistent, v.reliable,
                     v.reliability, ""])
    if args.csv:
        write_atomic(args.csv, csv_text(header, rows))
    counts = {
        "consistent": sum(v.consistent for v in verdicts),
        "inconsistent": sum(not v.consistent for v in verdicts),
        "unreliable": sum(not v.reliable for v in verdicts),
        "hyp_holds": sum(v.hyp_holds for v in verdicts),
        "invalid": invalid,
    }
    code, status = _exit_for(verdicts)
    if code == EXIT_OK and invalid:
        code, status = EXIT_INPUT, "invalid parameters"
    return code, status, {"rows": len(rows), "counts": counts}, worst


def _jack_dict(rep) -> dict:
    return {
        "r": rep.r, "z0": rep.z0, "wmax": rep.wmax, "quotient": rep.quotient,
        "k_est": rep.k_est, "imag_residual": rep.imag_residual, "order_ok": bool(rep.order_ok),
        "vanish": rep.vanish, "flat": rep.flat, "degenerate": rep.degenerate,
    }


def cmd_jack(args) -> tuple[int, str, dict, float]:
    w = build_w(args.w, BuildContext(args.order, args.seed))
    reports = jack_verify(w, args.radii, args.tol, args.samples)
    live = [r for r in reports if not r.degenerate]
    all_real = all(r.imag_residual < args.tol for r in live)
    all_order = all(r.order_ok for r in live)
    ok = all_real and all_order
    results = {"reports": [_jack_dict(r) for r in reports], "all_real": all_real,
               "all_order_ok": all_order}
    return (EXIT_OK if ok else EXIT_INCONSISTENT), ("ok" if ok else "violated"), results, 0.0


def cmd_identity(args) -> tuple[int, str, dict, float]:
    pair = _pair(args)
    d = Direction(args.direction)
    res = identity_residual(pair, args.mu, d)
    worst = float(np.max(np.abs(res.coeffs)))
    ok = worst < IDENTITY_TOL
    results = {"direction": d.value, "mu": args.mu, "max_residual": worst,
               "tolerance": IDENTITY_TOL, "holds": ok}
    return (EXIT_OK if ok else EXIT_INCONSISTENT), ("ok" if ok else "violated"), results, 0.0


def cmd_campaign(args) -> tuple[int, str, dict, float]:
    if args.count < 1:
        raise InputError("count must be positive")
    summary = run_campaign(args.theorem, args.count, args.seed)
    counts = dict(summary.counts)
    failures = [s.seed for s in summary.samples
                if not s.verdict.consistent or (s.verdict.hyp_holds and s.verdict.hyp_undefined)]
    worst = max(s.verdict.reliability for s in summary.samples)
    results = {"counts": counts, "rejected_g": summary.rejected_g, "failures": failures}
    if failures:
        return EXIT_INCONSISTENT, "inconsistent", results, worst
    if counts.get("unreliable"):
        return EXIT_UNRELIABLE, "unreliable", results, worst
    return EXIT_OK, "consistent", results, worst


COMMANDS = {
    "check": cmd_check,
    "sweep": cmd_sweep,
    "jack": cmd_jack,
    "identity": cmd_identity,
    "campaign": cmd_campaign,
}


def run(argv=None) -> tuple[int, dict]:
    """Execute a command line; returns ``(exit_code, report)``."""
    t0 = time.perf_counter()
    parser = build_parser()
    name = None
    args = None
    errors: list[str] = []
    results = None
    tail = None
    try:
        args = parser.parse_args(argv)
        name = args.command
        code, status, results, tail = COMMANDS[name](args)
    except (InputError, STCError, ValueError) as exc:
        code, status = EXIT_INPUT, "input error"
        errors.append(f"{type(exc).__name__}: {exc}")
    if name is None:
        name = next((a for a in (argv or []) if a in COMMANDS), "check")
    echo = _echo(args) if args is not None else {"argv": _strip_paths(argv or [])}
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": {"name": name, "args": echo},
        "exit_code": code,
        "status": status,
        "results": results,
        "reliability": {
            "max_tail_bound": tail,
            "threshold": RELIABILITY_THRESHOLD,
            "reliable": tail is not None and tail <= RELIABILITY_THRESHOLD,
        },
        "errors": errors,
        "timing": {"elapsed_s": time.perf_counter() - t0},
    }
    text = dumps(report)
    validate(loads(text))
    path = getattr(args, "json", None) if args is not None else _json_path(argv or [])
    if path:
        write_atomic(path, text)
    return code, report


def main(argv=None) -> int:
    code, report = run(sys.argv[1:] if argv is None else argv)
    for err in report["errors"]:
        print(f"error: {err}", file=sys.stderr)
    print(f"{report['command']['name']}: {report['status']} (exit {code})")
    return code


if __name__ == "__main__":
    sys.exit(main())

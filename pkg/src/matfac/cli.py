"""Command-line driver: simulation benchmarks, fitting, rolling validation.

Exit codes: 0 on success, 2 on bad flags (including shape/flag mismatches
detected before any computation), 1 on runtime failure.  Every failure path
prints a one-line diagnostic on stderr whose first word is a machine-stable
error token.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .baselines import alpha_pca_fit, varimax_rotate
from .errors import MatfacError
from .panel_io import read_panel_csv, write_factors_csv, write_matrix_csv
from .replication import ESTIMATORS, run_grid
from .rolling import rolling_validate
from .rpils import RpilsConfig, one_step_fit, rpils_fit
from .simulate import scenario_grid

_REPORT_COLUMNS = "scenario,T,p1,p2,estimator,metric,mean,sd,reps"


def _fail(token: str, message: str, code: int) -> int:
    print(f"{token}: {message}", file=sys.stderr)
    return code


def _add_estimator_flags(parser, default_estimator="rpils"):
    parser.add_argument("--estimator", choices=ESTIMATORS, default=default_estimator)
    parser.add_argument("--m1", type=int, default=3)
    parser.add_argument("--m2", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epsilon", type=float, default=1e-6)
    parser.add_argument("--max-iter", type=int, default=100)
    parser.add_argument(
        "--delta-mode", choices=("absolute", "relative"), default="absolute"
    )
    parser.add_argument(
        "--init", choices=("gaussian", "hadamard", "alpha-pca"), default="gaussian"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matfac",
        description="Matrix factor model estimation by iterative least squares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("replicate", help="simulation benchmark over a scenario grid")
    rep.add_argument("--scenario", choices=("A", "B"), required=True)
    rep.add_argument("--reps", type=int, default=500)
    rep.add_argument("--out", default="report.csv")
    rep.add_argument("--threads", type=int, default=1)
    _add_estimator_flags(rep)

    fit = sub.add_parser("fit", help="fit loadings and factors on a panel file")
    fit.add_argument("--input", required=True)
    fit.add_argument("--out-dir", required=True)
    fit.add_argument("--varimax", action="store_true")
    _add_estimator_flags(fit)

    roll = sub.add_parser("rolling", help="rolling-window validation on a panel file")
    roll.add_argument("--input", required=True)
    roll.add_argument("--window", type=int, required=True)
    roll.add_argument("--eval", type=int, required=True, dest="eval_len")
    roll.add_argument("--out", default="rolling.csv")
    _add_estimator_flags(roll)

    return parser


def _threads_from_env(flag_value: int) -> int:
    raw = os.environ.get("MATFAC_THREADS")
    if raw is None:
        return flag_value
    return int(raw)


def _fit_panel(panel, args):
    """Dispatch one fit according to the estimator flags."""
    if args.estimator == "alpha-pca":
        return alpha_pca_fit(panel, args.m1, args.m2)
    init = args.init.replace("-", "_")
    if args.estimator == "ose2":
        init = "alpha_pca"
    elif args.estimator == "ose1":
        init = "gaussian"
    cfg = RpilsConfig(
        m1=args.m1,
        m2=args.m2,
        epsilon=args.epsilon,
        max_iter=args.max_iter,
        init=init,
        seed=args.seed,
        delta_mode=args.delta_mode,
    )
    if args.estimator in ("ose1", "ose2"):
        return one_step_fit(panel, cfg)
    return rpils_fit(panel, cfg)


def _cmd_replicate(args) -> int:
    if args.reps < 1:
        return _fail("BadFlags", f"--reps must be >= 1, got {args.reps}", 2)
    try:
        threads = _threads_from_env(args.threads)
    except ValueError:
        return _fail("BadFlags", "MATFAC_THREADS must be an integer", 2)
    if threads < 1:
        return _fail("BadFlags", f"thread count must be >= 1, got {threads}", 2)
    configs = scenario_grid(args.scenario)
    if args.m1 > min(c.p1 for c in configs) or args.m2 > min(c.p2 for c in configs):
        return _fail("BadFlags", "--m1/--m2 exceed the smallest grid dimension", 2)
    rows = run_grid(
        scenario=args.scenario,
        configs=configs,
        estimators=(args.estimator,),
        reps=args.reps,
        base_seed=args.seed,
        m1=args.m1,
        m2=args.m2,
        epsilon=args.epsilon,
        max_iter=args.max_iter,
        delta_mode=args.delta_mode,
        threads=threads,
    )
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(_REPORT_COLUMNS + "\n")
        for row in rows:
            fh.write(
                f"{row.scenario},{row.t_len},{row.p1},{row.p2},{row.estimator},"
                f"{row.metric},{row.mean:.17g},{row.sd:.17g},{row.reps}\n"
            )
    return 0


def _cmd_fit(args) -> int:
    panel = read_panel_csv(args.input)
    _, p1, p2 = panel.shape
    if args.m1 > p1 or args.m2 > p2:
        return _fail(
            "BadFlags", f"--m1/--m2 ({args.m1},{args.m2}) exceed panel dims ({p1},{p2})", 2
        )
    fit = _fit_panel(panel, args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    r, c = fit.loadings.r, fit.loadings.c
    if args.varimax:
        r = varimax_rotate(r)
        c = varimax_rotate(c)
    write_matrix_csv(r, out_dir / "loadings_r.csv")
    write_matrix_csv(c, out_dir / "loadings_c.csv")
    write_factors_csv(fit.factors, out_dir / "factors.csv")
    summary = {
        "format_version": 1,
        "estimator": args.estimator,
        "init": args.init,
        "seed": args.seed,
        "m1": args.m1,
        "m2": args.m2,
        "epsilon": args.epsilon,
        "max_iter": args.max_iter,
        "delta_mode": args.delta_mode,
        "varimax": bool(args.varimax),
        "t_len": int(panel.shape[0]),
        "p1": int(p1),
        "p2": int(p2),
        "iterations": fit.iterations,
        "converged": fit.converged,
        "delta_trace": list(fit.delta_trace),
        "elapsed_seconds": fit.elapsed,
    }
    (out_dir / "fit.json").write_text(
        json.dumps(summary, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    return 0


def _cmd_rolling(args) -> int:
    panel = read_panel_csv(args.input)
    t_len, p1, p2 = panel.shape
    if args.window < 1 or args.eval_len < 1:
        return _fail("BadFlags", "--window and --eval must be >= 1", 2)
    if args.window + args.eval_len > t_len:
        return _fail(
            "BadFlags",
            f"--window + --eval = {args.window + args.eval_len} exceeds panel length {t_len}",
            2,
        )
    if args.m1 > p1 or args.m2 > p2:
        return _fail(
            "BadFlags", f"--m1/--m2 ({args.m1},{args.m2}) exceed panel dims ({p1},{p2})", 2
        )
    rows = rolling_validate(
        panel, args.window, args.eval_len, lambda sub: _fit_panel(sub, args)
    )
    v_values = [row["v"] for row in rows if not math.isnan(row["v"])]
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("window,start,mse,rho,v\n")
        for row in rows:
            fh.write(
                f"{row['window']},{row['start']},{row['mse']:.17g},"
                f"{row['rho']:.17g},{row['v']:.17g}\n"
            )
        mean_mse = float(np.mean([r["mse"] for r in rows]))
        mean_rho = float(np.mean([r["rho"] for r in rows]))
        mean_v = float(np.mean(v_values)) if v_values else math.nan
        fh.write(f"mean,,{mean_mse:.17g},{mean_rho:.17g},{mean_v:.17g}\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "replicate": _cmd_replicate,
        "fit": _cmd_fit,
        "rolling": _cmd_rolling,
    }
    try:
        return handlers[args.command](args)
    except MatfacError as exc:
        return _fail(exc.token, str(exc), 1)
    except OSError as exc:
        return _fail("Io", str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver.

Exit status: 0 on success, 1 for invalid input (config, arguments, output
path), 2 when a numerical procedure fails (root bracket, quadrature).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from . import analytic as an
from .config_io import parse_run_config
from .errors import ClusterCastError, ConfigError, DomainError, NumericalError
from .simulate import Disk, Rect, TrialPlan, default_workers, duality_void_test
from .sweep import (PRESETS, SweepSpec, format_cell, preset, rows_to_csv, run_sweep,
                    write_text_atomic)

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2

DUALITY_SETS = (Rect(0.0, 0.0, 4.0, 4.0, "square_4x4"), Disk(0.0, 0.0, 2.0, "disk_r2"),
                Rect(-4.0, -1.0, 4.0, 1.0, "strip_8x2"))


class _Parser(argparse.ArgumentParser):
    """Argument errors are validation failures (exit 1), not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--trials", type=int, default=10_000,
                        help="Monte Carlo trials per estimate (default 10000)")
    common.add_argument("--out", help="write CSV here instead of standard output")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default $CLUSTERCAST_WORKERS or 1)")
    common.add_argument("--summary", action="store_true",
                        help="print key scalars after the run")

    parser = _Parser(prog="clustercast",
                     description="Multicast outage, contention intensity and capacity "
                                 "of clustered wireless networks.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analytic", parents=[common], help="analytic quantities for one config")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo estimates for one config")
    sub.add_parser("gain", parents=[common], help="capacity gain over divisors of tau")
    sub.add_parser("sweep", parents=[common], help="sweep described in the config file")
    p = sub.add_parser("preset", parents=[common], help="built-in sweep")
    p.add_argument("name", choices=PRESETS)
    sub.add_parser("duality-test", parents=[common], help="cluster/Poisson void test")
    return parser


def _load(args):
    if args.config is None:
        raise ConfigError([("--config", "--config is required for this command")])
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError([("--config", f"cannot read {args.config}: {exc.strerror}")]) from None
    return parse_run_config(text)


def _emit(args, rows, text=None):
    text = rows_to_csv(rows) if text is None else text
    if not args.out:
        sys.stdout.write(text)
        return
    try:
        write_text_atomic(args.out, text)
    except OSError as exc:
        raise ConfigError([("--out", f"cannot write {args.out}: {exc.strerror}")]) from None


def _table(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_cell(x) for x in r])
    return buf.getvalue()


def _summary(rows):
    keys = (("lambda_bar", ("analytic_lambda_bar", "sim_lambda_bar", "closed_form_lambda_bar")),
            ("b", ("analytic_rate", "sim_rate")),
            ("C_eps", ("analytic_mtc", "sim_mtc")))
    for row in rows:
        label = ""
        if row.get("sweep_param"):
            label = f"{row['sweep_param']}={format_cell(row['sweep_value'])} "
        if row.get("curve_param"):
            label += f"{row['curve_param']}={format_cell(row['curve_value'])} "
        parts = []
        for name, cols in keys:
            for c in cols:
                val = row.get(c, math.nan)
                if not (isinstance(val, float) and math.isnan(val)):
                    parts.append(f"{name}[{c.split('_')[0]}]={val:.6g}")
        print((label + " ".join(parts)).strip())


def _single_spec(args, rc, pipelines):
    cfg = rc.network
    return SweepSpec("lambda_t", (cfg.lambda_t,), cfg, pipelines, args.seed, None,
                     trials=args.trials, workers=args.workers,
                     interferer_refresh=rc.interferer_refresh,
                     interference_field=rc.interference_field, quad=rc.quad)


def cmd_analytic(args):
    rc = _load(args)
    rows = run_sweep(_single_spec(args, rc, ("analytic",)))
    _emit(args, rows)
    if args.summary:
        cfg = rc.network
        _summary(rows)
        print(f"v*={an.optimize_tessellation(cfg.tau, cfg.k, cfg.epsilon)}")


def cmd_simulate(args):
    rc = _load(args)
    rows = run_sweep(_single_spec(args, rc, ("simulate",)))
    _emit(args, rows)
    if args.summary:
        _summary(rows)


def cmd_gain(args):
    cfg = _load(args).network
    best = an.optimize_tessellation(cfg.tau, cfg.k, cfg.epsilon)
    rows = []
    for v in an.divisors(cfg.tau):
        rows.append((v, an.capacity_gain(v, cfg.tau, cfg.k, cfg.epsilon),
                     an.convexity_certificate(v, cfg.tau), int(v == best)))
    _emit(args, None, _table(("v", "capacity_gain_db", "convexity_certificate", "optimal"), rows))
    if args.summary:
        print(f"v*={best} g_c={an.capacity_gain(best, cfg.tau, cfg.k, cfg.epsilon):.6g}dB")


def cmd_sweep(args):
    rc = _load(args)
    sw = rc.sweep
    if not sw:
        raise ConfigError([("sweep", "config has no sweep section (sweep, grid, pipelines)")])
    spec = SweepSpec(sw["param"], sw["grid"], rc.network, sw["pipelines"], args.seed, None,
                     curve_param=sw["curve"], curve_values=sw["curve_values"],
                     trials=args.trials, workers=args.workers,
                     interferer_refresh=rc.interferer_refresh,
                     interference_field=rc.interference_field, quad=rc.quad)
    rows = run_sweep(spec)
    _emit(args, rows)
    if args.summary:
        _summary(rows)


def cmd_preset(args):
    rows = run_sweep(preset(args.name, args.seed, args.trials, args.workers))
    _emit(args, rows)
    if args.summary:
        _summary(rows)
        if args.name == "fig5":
            base = rows[0]
            print(f"v*={an.optimize_tessellation(base['tau'], base['k'], base['epsilon'])}")


def cmd_duality(args):
    rc = _load(args)
    plan = TrialPlan(master_seed=args.seed, trials=args.trials, worker_count=args.workers)
    report = duality_void_test(rc.network, plan, DUALITY_SETS)
    rows = [(r.name, r.area, r.target, r.empirical, r.std_err, r.z, r.p_value) for r in report]
    _emit(args, None, _table(("set", "area", "target", "empirical", "std_err", "z", "p_value"),
                             rows))
    if args.summary:
        for r in report:
            print(f"{r.name}: void={r.empirical:.4f} target={r.target:.4f} z={r.z:+.2f}")


COMMANDS = {"analytic": cmd_analytic, "simulate": cmd_simulate, "gain": cmd_gain,
            "sweep": cmd_sweep, "preset": cmd_preset, "duality-test": cmd_duality}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.workers is None:
            args.workers = default_workers()
        if args.workers < 1:
            raise ConfigError([("--workers", "--workers must be positive")])
        if args.trials < 1:
            raise ConfigError([("--trials", "--trials must be positive")])
        COMMANDS[args.command](args)
    except ConfigError as exc:
        for fld, msg in exc.problems:
            print(f"error: {fld}: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DomainError, ClusterCastError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

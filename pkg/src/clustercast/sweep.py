"""Parameter sweeps, built-in figure presets and CSV output."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
import warnings
from dataclasses import dataclass, field

from . import analytic as an
from .analytic.quadrature import DEFAULT_QUAD, QuadratureSpec
from .config_io import PIPELINES, SWEEPABLE
from .errors import ConfigError
from .model import NetworkConfig
from .simulate import (TrialPlan, estimate_max_intensity, estimate_outage, estimate_rate,
                       simulate_multihop_outage)

SCHEMA_VERSION = 1

CONFIG_COLUMNS = ("lambda_t", "lambda_r", "s", "alpha", "beta", "m", "epsilon", "tau", "v",
                  "window_radius", "a_hat", "k")
RESULT_COLUMNS = (
    "analytic_lambda_bar", "closed_form_lambda_bar", "analytic_outage_at_lambda_t",
    "rate_lower", "rate_upper", "analytic_rate", "analytic_mtc", "capacity_gain_db",
    "sim_outage_at_lambda_t", "sim_outage_stderr", "sim_lambda_bar", "sim_lambda_ci_low",
    "sim_lambda_ci_high", "sim_trials_used", "sim_rate", "sim_rate_stderr", "sim_mtc",
)
COLUMNS = ("schema_version", "sweep_param", "sweep_value", "curve_param", "curve_value") \
    + CONFIG_COLUMNS + RESULT_COLUMNS


@dataclass(frozen=True)
class SweepSpec:
    param: str
    grid: tuple
    base: NetworkConfig
    pipelines: tuple = ("analytic",)
    master_seed: int = 0
    out: str | None = None
    curve_param: str | None = None
    curve_values: tuple = ()
    trials: int = 10_000
    workers: int | None = None
    interferer_refresh: str = "attempt"
    interference_field: str = "independent"
    quad: QuadratureSpec = field(default=DEFAULT_QUAD)

    def __post_init__(self):
        problems = []
        if self.param not in SWEEPABLE:
            problems.append(("sweep", f"sweep must name a config field, got {self.param!r}"))
        if not self.grid:
            problems.append(("grid", "grid must not be empty"))
        elif any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            problems.append(("grid", "grid must be strictly increasing"))
        if not self.pipelines:
            problems.append(("pipelines", "pipelines must not be empty"))
        elif any(p not in PIPELINES for p in self.pipelines):
            problems.append(("pipelines", f"pipelines must be drawn from {PIPELINES}"))
        if self.curve_param is not None and self.curve_param not in SWEEPABLE:
            problems.append(("curve", f"curve must name a config field, got {self.curve_param!r}"))
        if problems:
            raise ConfigError(problems)

    def points(self):
        """Validated configs in output order (curve-major, then grid)."""
        curves = self.curve_values if self.curve_param else (None,)
        out, problems = [], []
        for cv in curves:
            for gv in self.grid:
                changes = {self.param: _coerce(self.param, gv)}
                if cv is not None:
                    changes[self.curve_param] = _coerce(self.curve_param, cv)
                try:
                    out.append((gv, cv, self.base.replace(**changes)))
                except ConfigError as exc:
                    where = f"{self.param}={gv:g}"
                    if cv is not None:
                        where += f", {self.curve_param}={cv:g}"
                    problems.extend((f, f"{m} (at {where})") for f, m in exc.problems)
        if problems:
            raise ConfigError(problems)
        return out


def _coerce(name, value):
    if name in ("m", "tau", "v"):
        if value != int(value):
            raise ConfigError([(name, f"{name} must be an integer")])
        return int(value)
    return float(value)


def _nan_row():
    return {c: math.nan for c in RESULT_COLUMNS}


def analytic_row(config, quad=DEFAULT_QUAD):
    row = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", an.ScalingHypothesisWarning)
        row["closed_form_lambda_bar"] = (an.multihop_closed_form_max_intensity(config, quad)
                                         if config.v > 1 else
                                         an.closed_form_max_intensity(config, quad))
    row["capacity_gain_db"] = an.capacity_gain(config.v, config.tau, config.k, config.epsilon)
    row["analytic_outage_at_lambda_t"] = an.outage_probability(config.lambda_t, config.tau,
                                                               config, quad=quad)
    if config.v == 1:
        lam = an.solve_max_intensity(config, quad=quad)
    else:
        # no exact multihop root exists in closed analysis; use the scaling law
        lam = row["closed_form_lambda_bar"]
    row["analytic_lambda_bar"] = lam if config.v == 1 else math.nan
    bounds = an.rate_bounds(lam, config, quad)
    row["rate_lower"], row["rate_upper"] = bounds.lower, bounds.upper
    row["analytic_rate"] = an.ergodic_rate(lam, config, quad)
    row["analytic_mtc"] = an.mtc(config, lam, row["analytic_rate"])
    return row


def simulate_row(config, plan):
    row = {}
    outage_fn = simulate_multihop_outage if config.v > 1 else estimate_outage
    at = outage_fn(config, plan)
    row["sim_outage_at_lambda_t"], row["sim_outage_stderr"] = at.p_hat, at.std_err
    est = estimate_max_intensity(config, plan)
    row["sim_lambda_bar"] = est.lambda_bar
    row["sim_lambda_ci_low"] = est.ci_low
    row["sim_lambda_ci_high"] = est.ci_high
    row["sim_trials_used"] = est.trials_used
    rate = estimate_rate(config.replace(lambda_t=est.lambda_bar), plan)
    row["sim_rate"] = rate.mean
    row["sim_rate_stderr"] = rate.std_err
    row["sim_mtc"] = an.mtc(config, est.lambda_bar, rate.mean)
    return row


def run_sweep(spec):
    """Evaluate every sweep point; writes CSV to ``spec.out`` when set."""
    plan = TrialPlan(master_seed=spec.master_seed, trials=spec.trials,
                     worker_count=spec.workers, interferer_refresh=spec.interferer_refresh,
                     interference_field=spec.interference_field)
    rows = []
    for gv, cv, cfg in spec.points():
        row = {"schema_version": SCHEMA_VERSION, "sweep_param": spec.param, "sweep_value": gv,
               "curve_param": spec.curve_param or "", "curve_value": math.nan if cv is None else cv}
        for c in CONFIG_COLUMNS:
            val = cfg.k if c == "k" else getattr(cfg, c)
            row[c] = cfg.window() if c == "window_radius" and val is None else val
        row.update(_nan_row())
        if "analytic" in spec.pipelines:
            row.update(analytic_row(cfg, spec.quad))
        if "simulate" in spec.pipelines:
            row.update(simulate_row(cfg, plan))
        rows.append(row)
    if spec.out:
        write_csv_atomic(spec.out, rows)
    return rows


# --------------------------------------------------------------------------
# presets

FIG2_GRID = (2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 15.0, 20.0)


def preset(name, master_seed=0, trials=10_000, workers=None, out=None):
    """Built-in sweeps.

    ``fig2``: single-hop MTC against cluster radius for tau in {1, 3, 10}.
    ``fig5``: multihop MTC against the number of regions v for tau = 20.
    """
    if name == "fig2":
        base = NetworkConfig(lambda_t=1e-3, lambda_r=0.1, s=5.0, alpha=3.0, beta=2.0,
                             epsilon=0.1, tau=1)
        return SweepSpec("s", FIG2_GRID, base, ("analytic", "simulate"), master_seed, out,
                         curve_param="tau", curve_values=(1, 3, 10), trials=trials,
                         workers=workers)
    if name == "fig5":
        # s = 10 puts the analytic optimum strictly inside 1 < v < tau
        base = NetworkConfig(lambda_t=1e-4, lambda_r=0.2, s=10.0, alpha=3.0, beta=2.0,
                             epsilon=0.1, tau=20, v=1)
        grid = tuple(float(v) for v in an.divisors(20))
        return SweepSpec("v", grid, base, ("analytic", "simulate"), master_seed, out,
                         trials=trials, workers=workers, interferer_refresh="slot")
    raise ConfigError([("preset", f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")])


PRESETS = ("fig2", "fig5")


# --------------------------------------------------------------------------
# CSV


def format_cell(value):
    """Shortest text that parses back to the same value (``nan`` for missing)."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    return str(value)


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow([format_cell(row[c]) for c in COLUMNS])
    return buf.getvalue()


def write_text_atomic(path, text):
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".clustercast-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv_atomic(path, rows):
    write_text_atomic(path, rows_to_csv(rows))


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))

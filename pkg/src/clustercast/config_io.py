"""Flat ``key = value`` configuration files.

Grammar: one ``key = value`` pair per line; ``#`` starts a comment that
runs to the end of the line; blank lines are ignored; keys are unique.
Lists (``grid``, ``pipelines``, ``curve_values``) are comma separated.

Network keys and defaults::

    lambda_t = 0          # interferer (cluster) intensity
    lambda_r              # required
    s                     # required
    alpha                 # required
    beta                  # required
    m = 1
    epsilon = 0.1
    tau = 1
    v = 1
    window_radius = auto  # see model.default_window_radius
    a_hat = 1.0

Quadrature keys: ``rel_tol = 1e-9``, ``abs_tol = 1e-12``,
``max_subdivisions = 200``, ``derivative_step_policy = exact``,
``delta1_method = beta``.

Simulation keys: ``interferer_refresh = attempt``,
``interference_field = independent``.

Sweep keys: ``sweep`` (parameter name), ``grid``, ``pipelines``
(``analytic``, ``simulate``), ``curve`` and ``curve_values``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .analytic.quadrature import QuadratureSpec
from .errors import ConfigError
from .model import NetworkConfig
from .simulate.plan import FIELD_MODES, REFRESH_MODES

FLOAT_KEYS = ("lambda_t", "lambda_r", "s", "alpha", "beta", "epsilon", "a_hat")
INT_KEYS = ("m", "tau", "v")
REQUIRED = ("lambda_r", "s", "alpha", "beta")
NETWORK_DEFAULTS = {"lambda_t": 0.0, "m": 1, "epsilon": 0.1, "tau": 1, "v": 1,
                    "window_radius": None, "a_hat": 1.0}
# stand-ins used only so that cross-field checks still run when a key is bad
_PLACEHOLDER = {"lambda_r": 0.1, "s": 5.0, "alpha": 4.0, "beta": 1.0}

QUAD_KEYS = {"rel_tol": float, "abs_tol": float, "max_subdivisions": int,
             "derivative_step_policy": str, "delta1_method": str}
SIM_KEYS = ("interferer_refresh", "interference_field")
SWEEP_KEYS = ("sweep", "grid", "pipelines", "curve", "curve_values")
PIPELINES = ("analytic", "simulate")
SWEEPABLE = FLOAT_KEYS + INT_KEYS

ALL_KEYS = FLOAT_KEYS + INT_KEYS + ("window_radius",) + tuple(QUAD_KEYS) + SIM_KEYS + SWEEP_KEYS


@dataclass(frozen=True)
class RunConfig:
    network: NetworkConfig
    quad: QuadratureSpec = QuadratureSpec()
    interferer_refresh: str = "attempt"
    interference_field: str = "independent"
    sweep: dict = field(default_factory=dict)


def parse_pairs(text):
    """Split config text into an ordered ``{key: raw_value}`` plus problems."""
    pairs, problems = {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append((f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}"))
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            problems.append((f"line {lineno}", "missing key"))
        elif key in pairs:
            problems.append((key, f"duplicate key on line {lineno}"))
        else:
            pairs[key] = value
    return pairs, problems


def _number(key, raw, kind, problems):
    try:
        if kind is int:
            val = float(raw)
            if val != int(val):
                raise ValueError
            return int(val)
        return float(raw)
    except (ValueError, OverflowError):
        problems.append((key, f"{key} must be {'an integer' if kind is int else 'a number'}, "
                              f"got {raw!r}"))
        return None


def _number_list(key, raw, problems):
    vals = []
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            vals.append(float(item))
        except ValueError:
            problems.append((key, f"{key} entries must be numbers, got {item!r}"))
            return None
    return vals


def parse_run_config(text):
    """Validate config text; raises :class:`ConfigError` listing every problem."""
    pairs, problems = parse_pairs(text)
    for key in pairs:
        if key not in ALL_KEYS:
            problems.append((key, f"unknown key {key!r}"))

    net = dict(NETWORK_DEFAULTS)
    bad_or_missing = set()
    for key in FLOAT_KEYS + INT_KEYS:
        if key in pairs:
            val = _number(key, pairs[key], int if key in INT_KEYS else float, problems)
            if val is None:
                bad_or_missing.add(key)
            else:
                net[key] = val
        elif key in REQUIRED:
            problems.append((key, f"{key} is required"))
            bad_or_missing.add(key)
    if "window_radius" in pairs and pairs["window_radius"].lower() != "auto":
        val = _number("window_radius", pairs["window_radius"], float, problems)
        net["window_radius"] = val
    for key in bad_or_missing:
        net[key] = _PLACEHOLDER.get(key, NETWORK_DEFAULTS.get(key))
    network = None
    try:
        network = NetworkConfig(**net)
    except ConfigError as exc:
        problems.extend(p for p in exc.problems if p[0] not in bad_or_missing)

    quad_kw = {}
    for key, kind in QUAD_KEYS.items():
        if key in pairs:
            val = pairs[key] if kind is str else _number(key, pairs[key], kind, problems)
            if val is not None:
                quad_kw[key] = val
    quad = None
    try:
        quad = QuadratureSpec(**quad_kw)
    except ConfigError as exc:
        problems.extend(exc.problems)

    sim = {"interferer_refresh": "attempt", "interference_field": "independent"}
    for key, allowed in (("interferer_refresh", REFRESH_MODES),
                         ("interference_field", FIELD_MODES)):
        if key in pairs:
            if pairs[key] not in allowed:
                problems.append((key, f"{key} must be one of {', '.join(allowed)}"))
            else:
                sim[key] = pairs[key]

    sweep = {}
    if any(k in pairs for k in SWEEP_KEYS):
        sweep, sweep_problems = _parse_sweep(pairs)
        problems.extend(sweep_problems)

    if problems:
        raise ConfigError(problems)
    return RunConfig(network, quad, sim["interferer_refresh"], sim["interference_field"], sweep)


def _parse_sweep(pairs):
    problems = []
    out = {}
    param = pairs.get("sweep")
    if param is None:
        problems.append(("sweep", "sweep is required when grid or pipelines is given"))
    elif param not in SWEEPABLE:
        problems.append(("sweep", f"sweep must name a config field, got {param!r}"))
    out["param"] = param
    grid = _number_list("grid", pairs.get("grid", ""), problems)
    if grid is not None:
        if not grid:
            problems.append(("grid", "grid must not be empty"))
        elif any(b <= a for a, b in zip(grid, grid[1:])):
            problems.append(("grid", "grid must be strictly increasing"))
    out["grid"] = tuple(grid or ())
    pipes = [p.strip() for p in pairs.get("pipelines", "analytic").split(",") if p.strip()]
    if not pipes:
        problems.append(("pipelines", "pipelines must not be empty"))
    for p in pipes:
        if p not in PIPELINES:
            problems.append(("pipelines", f"unknown pipeline {p!r}"))
    out["pipelines"] = tuple(pipes)
    curve = pairs.get("curve")
    if curve is not None and curve not in SWEEPABLE:
        problems.append(("curve", f"curve must name a config field, got {curve!r}"))
    out["curve"] = curve
    values = _number_list("curve_values", pairs.get("curve_values", ""), problems)
    if curve is not None and not values:
        problems.append(("curve_values", "curve_values must not be empty when curve is set"))
    out["curve_values"] = tuple(values or ())
    return out, problems


def validate_config(text):
    """Parse and validate config text into a :class:`NetworkConfig`."""
    return parse_run_config(text).network


def config_to_text(config):
    lines = []
    for f in dataclasses.fields(config):
        val = getattr(config, f.name)
        lines.append(f"{f.name} = {'auto' if val is None else repr(val)}")
    return "\n".join(lines) + "\n"

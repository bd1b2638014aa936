"""Command-line harness: single-point reports, figure sweeps, optimization,
and the invariant suite.

Subcommands: point, fig1, fig2, fig3, optimize, verify.
Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 numeric domain error during evaluation.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import __version__, machine, stochastic
from .backend import REGIME_NAMES
from .config import ConfigError, RunConfig, load_config
from .detector import BathSpec, effective_temperature_high_T
from .numerics import ConvergenceError, DomainError
from .sweeps import (RunReport, SweepSpec, base_metadata, beta_eff_products,
                     evaluate_points, render, resolve_threads)
from .verify import FAULT_HOOKS, run_verify

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_FIG1_RANGE = (0.02, 1.5)
_FIG2_RANGE = (0.02, 3.0)
_FIG3_LEFT_RANGE = (0.02, 1.0)
_FIG3_RIGHT_RANGE = (0.0, 0.9)


def _parse_speeds(raw: str) -> tuple[float, float]:
    parts = raw.split(",")
    if len(parts) != 2:
        raise ConfigError("--speeds expects vA,vB")
    try:
        va, vb = float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError("--speeds expects two numbers") from None
    for name, v in (("speed_A", va), ("speed_B", vb)):
        if not 0.0 <= v < 1.0:
            raise ConfigError(f"{name}: speed must lie in [0, 1)")
    return va, vb


def _point_row(cfg: RunConfig):
    """Full single-point statistics row (see csv_schema.json: point)."""
    point = cfg.point()
    stats = machine.cycle_statistics(point)
    regime = stats.regime
    sigma = stats.entropy_production
    if sigma > 0.0:
        rep = machine.tur_report(point)
        tur = (rep.classical_rhs, rep.shifted_rhs, rep.generalized_rhs, rep.ratio_R)
    else:
        tur = (math.nan,) * 4

    engine = regime is machine.OperatingRegime.ENGINE
    fridge = regime is machine.OperatingRegime.REFRIGERATOR
    eta = machine.otto_efficiency(point) if engine else math.nan
    eta_rhs = machine.efficiency_power_tradeoff_rhs(point) if engine else math.nan
    eps = machine.cop(point) if fridge else math.nan
    eps_rhs = machine.cop_tradeoff_rhs(point) if fridge else math.nan
    chi = machine.figure_of_merit(point) if fridge else math.nan
    try:
        carnot_eta = machine.carnot_efficiency_eff(point)
        carnot_eps = machine.cop_carnot_eff(point)
    except DomainError:
        carnot_eta, carnot_eps = math.nan, math.nan

    dist = stochastic.enumerate_distribution(point)
    ift_residual = abs(stochastic.check_integral_ft(dist) - 1.0)
    exchange_dev = 0.0
    for fwd, rev, entropy in stochastic.check_exchange_ft(dist):
        if rev > 0.0:
            exchange_dev = max(exchange_dev,
                               abs(fwd / rev * math.exp(-entropy) - 1.0))
    w1 = stochastic.moments(dist, 1, 0)
    qh1 = stochastic.moments(dist, 0, 1)
    var_w = stochastic.moments(dist, 2, 0) - w1 * w1
    var_qh = stochastic.moments(dist, 0, 2) - qh1 * qh1
    sigma_or = math.fsum(t.probability * t.entropy for t in dist.trajectories)
    oracle_dev = max(abs(w1 - stats.mean_work),
                     abs(qh1 - stats.mean_heat_hot),
                     abs(var_w - stats.var_work),
                     abs(var_qh - stats.var_heat_hot),
                     abs(sigma_or - sigma))

    columns = (
        "omega_A", "omega_B", "freq_ratio", "speed_A", "speed_B",
        "beta_A", "beta_B", "beta_eff_A", "beta_eff_B", "a_product", "b_product",
        "mean_work", "mean_heat_hot", "mean_heat_cold",
        "var_work", "var_heat_hot", "entropy_production", "snr",
        "classical_rhs", "shifted_rhs", "generalized_rhs", "ratio_R",
        "otto_efficiency", "carnot_efficiency_eff", "efficiency_tradeoff_rhs",
        "cop", "cop_carnot_eff", "cop_tradeoff_rhs", "figure_of_merit",
        "ift_residual", "exchange_ft_max_dev", "oracle_max_abs_dev", "regime",
    )
    analytic = cfg.analytic_mode
    row = [
        point.omega_A, point.omega_B, point.omega_B / point.omega_A,
        math.nan if analytic else cfg.speed_A,
        math.nan if analytic else cfg.speed_B,
        math.nan if analytic else cfg.beta_A,
        math.nan if analytic else cfg.beta_B,
        point.beta_eff_A, point.beta_eff_B, point.a, point.b,
        stats.mean_work, stats.mean_heat_hot, stats.mean_heat_cold,
        stats.var_work, stats.var_heat_hot, sigma, stats.snr,
        *tur,
        eta, carnot_eta, eta_rhs,
        eps, carnot_eps, eps_rhs, chi,
        ift_residual, exchange_dev, oracle_dev, str(regime),
    ]
    return columns, row


def cmd_point(args) -> RunReport:
    cfg = load_config(args.config, args.set)
    cfg.validate()
    columns, row = _point_row(cfg)
    return RunReport("point", columns, [row], base_metadata(cfg))


def _boundary_flags(regimes) -> list[int]:
    flags = [0] * len(regimes)
    for i in range(1, len(regimes)):
        if regimes[i] != regimes[i - 1]:
            flags[i] = 1
    return flags


def _sweep_freq_ratio(cfg: RunConfig, speed_a: float, speed_b: float,
                      ratios: np.ndarray, threads: int):
    """Cycle statistics along an omega_B/omega_A sweep at fixed speeds."""
    if cfg.temperature_model == "series":
        beta_a = (cfg.beta_A if speed_a == 0.0 else
                  1.0 / effective_temperature_high_T(BathSpec(1.0 / cfg.beta_A), speed_a))
        beta_b = (cfg.beta_B if speed_b == 0.0 else
                  1.0 / effective_temperature_high_T(BathSpec(1.0 / cfg.beta_B), speed_b))
        a = np.full_like(ratios, beta_a * cfg.omega_A)
        b = beta_b * ratios * cfg.omega_A
    else:
        a_scalar = beta_eff_products(
            np.array([cfg.beta_A * cfg.omega_A]), np.array([speed_a]))[0]
        a = np.full_like(ratios, a_scalar)
        b = beta_eff_products(cfg.beta_B * ratios * cfg.omega_A,
                              np.full_like(ratios, speed_b))
    omega_b = ratios * cfg.omega_A
    out = evaluate_points(np.full_like(ratios, cfg.omega_A), omega_b, a, b,
                          threads)
    return out


def cmd_fig1(args) -> RunReport:
    """Noise-to-signal ratio of the hot heat against its three bounds."""
    cfg = load_config(args.config, args.set)
    cfg.validate()
    if cfg.analytic_mode:
        raise ConfigError("fig1 sweeps the detector pipeline; give bath "
                          "temperatures and speeds, not beta_eff")
    if args.speeds is not None:
        panels = [("custom", *_parse_speeds(args.speeds))]
    else:
        panels = [("a", 0.0, 0.8), ("b", 0.8, 0.0)]
    ratios = SweepSpec("freq_ratio", _FIG1_RANGE[0], _FIG1_RANGE[1],
                       args.grid, cfg).grid()
    threads = resolve_threads()
    columns = ("panel", "speed_A", "speed_B", "freq_ratio", "snr",
               "classical_rhs", "shifted_rhs", "generalized_rhs",
               "regime", "regime_boundary")
    rows = []
    for panel, va, vb in panels:
        out = _sweep_freq_ratio(cfg, va, vb, ratios, threads)
        names = [REGIME_NAMES[c] for c in out["regime_code"]]
        flags = _boundary_flags(names)
        for i, ratio in enumerate(ratios):
            rows.append([panel, va, vb, float(ratio), float(out["snr"][i]),
                         float(out["classical_rhs"][i]),
                         float(out["shifted_rhs"][i]),
                         float(out["generalized_rhs"][i]),
                         names[i], flags[i]])
    meta = base_metadata(cfg, {"grid": str(args.grid)})
    return RunReport("fig1", columns, rows, meta)


def cmd_fig2(args) -> RunReport:
    """Entropy-weighted noise ratio R along thermal-product sweeps."""
    cfg = load_config(args.config, args.set)
    cfg.validate()
    if cfg.analytic_mode:
        raise ConfigError("fig2 sweeps the detector pipeline; give bath "
                          "temperatures and speeds, not beta_eff")
    moving = _parse_speeds(args.speeds) if args.speeds is not None else (0.8, 0.0)
    pairs = [(0.0, 0.0), moving]
    columns = ("panel", "speed_A", "speed_B", "sweep_product", "a_product",
               "b_product", "entropy_production", "snr", "ratio_R", "regime")
    rows = []
    threads = resolve_threads()
    # held thermal products come from the config (0.5 with caption defaults)
    fixed_a = cfg.beta_A * cfg.omega_A
    fixed_b = cfg.beta_B * cfg.omega_B
    for panel in ("vary_b", "vary_a"):
        variable = "b_product" if panel == "vary_b" else "a_product"
        grid = SweepSpec(variable, _FIG2_RANGE[0], _FIG2_RANGE[1],
                         args.grid, cfg).grid()
        for va, vb in pairs:
            if panel == "vary_b":
                a = np.full_like(grid, beta_eff_products(
                    np.array([fixed_a]), np.array([va]))[0])
                b = beta_eff_products(grid, np.full_like(grid, vb))
                omega_a = np.full_like(grid, cfg.omega_A)
                omega_b = grid / cfg.beta_B
            else:
                a = beta_eff_products(grid, np.full_like(grid, va))
                b = np.full_like(grid, beta_eff_products(
                    np.array([fixed_b]), np.array([vb]))[0])
                omega_a = grid / cfg.beta_A
                omega_b = np.full_like(grid, cfg.omega_B)
            out = evaluate_points(omega_a, omega_b, a, b, threads)
            names = [REGIME_NAMES[c] for c in out["regime_code"]]
            for i, x in enumerate(grid):
                rows.append([panel, va, vb, float(x), float(a[i]), float(b[i]),
                             float(out["entropy_production"][i]),
                             float(out["snr"][i]), float(out["ratio_R"][i]),
                             names[i]])
    meta = base_metadata(cfg, {"grid": str(args.grid)})
    return RunReport("fig2", columns, rows, meta)


def cmd_fig3(args) -> RunReport:
    """Cooling power sweeps and the optimized-COP velocity scan.

    Both panels live in the leading high-temperature regime, so the command
    defaults to the series temperature model (override with --set
    temperature_model=exact).
    """
    cfg = load_config(args.config, args.set,
                      base=RunConfig(temperature_model="series"))
    cfg.validate()
    if cfg.analytic_mode:
        raise ConfigError("fig3 sweeps the detector pipeline; give bath "
                          "temperatures and speeds, not beta_eff")
    va, vb = _parse_speeds(args.speeds) if args.speeds is not None else (0.8, 0.8)
    threads = resolve_threads()
    rows = []
    columns = ("panel", "speed_A", "speed_B", "x", "mean_heat_cold",
               "eps_carnot_static", "eps_carnot_eff", "eps_star",
               "optimal_freq_ratio", "regime")

    def series_beta(beta, speed):
        if speed == 0.0:
            return beta
        return 1.0 / effective_temperature_high_T(BathSpec(1.0 / beta), speed)

    eps_static_left = cfg.beta_A / (cfg.beta_B - cfg.beta_A) \
        if cfg.beta_B > cfg.beta_A else math.nan

    # left panel: cooling power vs frequency ratio for four speed sets,
    # each annotated with its effective Carnot COP bound
    ratios = SweepSpec("freq_ratio", _FIG3_LEFT_RANGE[0], _FIG3_LEFT_RANGE[1],
                       args.grid, cfg).grid()
    for sa, sb in ((0.0, 0.0), (va, 0.0), (0.0, vb), (va, vb)):
        beta_a = series_beta(cfg.beta_A, sa)
        beta_b = series_beta(cfg.beta_B, sb)
        eps_eff = beta_a / (beta_b - beta_a) if beta_b > beta_a else math.nan
        out = _sweep_freq_ratio(cfg, sa, sb, ratios, threads)
        names = [REGIME_NAMES[c] for c in out["regime_code"]]
        for i, ratio in enumerate(ratios):
            rows.append(["cooling", sa, sb, float(ratio),
                         float(out["mean_heat_cold"][i]),
                         eps_static_left, eps_eff, math.nan, math.nan,
                         names[i]])

    # right panel: COP at maximum figure of merit vs speed of qubit A
    # (leading high-temperature effective temperatures, qubit B static)
    ratio_beta = 0.65
    beta_b = cfg.beta_B
    beta_a = ratio_beta * beta_b
    eps_static = ratio_beta / (1.0 - ratio_beta)
    speeds = SweepSpec("speed_A", _FIG3_RIGHT_RANGE[0], _FIG3_RIGHT_RANGE[1],
                       args.grid, cfg).grid()
    for v in speeds:
        if v == 0.0:
            beta_eff_a = beta_a
        else:
            beta_eff_a = 1.0 / effective_temperature_high_T(BathSpec(1.0 / beta_a), v)
        eps_eff = beta_eff_a / (beta_b - beta_eff_a)
        eps_star = machine.cop_at_max_chi(eps_eff)
        opt_ratio = machine.optimal_frequency_ratio_chi(beta_eff_a, beta_b)
        rows.append(["cop_opt", float(v), 0.0, float(v), math.nan,
                     eps_static, eps_eff, eps_star, opt_ratio, "refrigerator"])
    meta = base_metadata(cfg, {"grid": str(args.grid),
                               "right_panel_beta_ratio": str(ratio_beta)})
    return RunReport("fig3", columns, rows, meta)


def cmd_optimize(args) -> RunReport:
    """Closed-form vs golden-section optimum of the high-temperature chi."""
    cfg = load_config(args.config, args.set)
    cfg.validate()
    point = cfg.point()
    beta_a, beta_b = point.beta_eff_A, point.beta_eff_B
    closed = machine.optimal_frequency_ratio_chi(beta_a, beta_b)
    numeric, chi_max = machine.optimize_figure_of_merit(beta_a, beta_b,
                                                        point.omega_A)
    eps_c = machine.cop_carnot_eff(point)
    eps_star = machine.cop_at_max_chi(eps_c)
    eps_at_ratio = closed / (1.0 - closed)
    columns = ("beta_eff_A", "beta_eff_B", "omega_A",
               "optimal_ratio_closed_form", "optimal_ratio_numeric",
               "ratio_abs_dev", "chi_max_high_t", "eps_carnot_eff",
               "eps_star", "eps_at_optimal_ratio")
    row = [beta_a, beta_b, point.omega_A, closed, numeric,
           abs(closed - numeric), chi_max, eps_c, eps_star, eps_at_ratio]
    return RunReport("optimize", columns, [row], base_metadata(cfg))


def cmd_verify(args) -> int:
    started = time.perf_counter()
    results = run_verify(grid=args.grid, seed=args.seed,
                         inject_fault=args.inject_fault)
    elapsed = time.perf_counter() - started
    for result in results:
        print(result.line())
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} families passed "
          f"in {elapsed:.2f} s")
    if failed:
        print("failed families: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _emit(report: RunReport, args) -> None:
    text = render(report, args.format)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relmachine",
        description="swap thermal machine with moving detectors: statistics, "
                    "bounds, and figure sweeps")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid_default=400, speeds=False):
        p.add_argument("--config", default=None, help="key = value config file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override one configuration entry (repeatable)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--grid", type=int, default=grid_default,
                       help="points per sweep")
        if speeds:
            p.add_argument("--speeds", default=None, metavar="VA,VB",
                           help="detector speeds for the moving curves")

    common(sub.add_parser("point", help="single operating-point report"))
    common(sub.add_parser("fig1", help="noise ratio vs frequency ratio, "
                                       "with the three bounds"), speeds=True)
    common(sub.add_parser("fig2", help="ratio R along thermal-product sweeps"),
           speeds=True)
    common(sub.add_parser("fig3", help="cooling power and optimized COP"),
           speeds=True)
    common(sub.add_parser("optimize", help="figure-of-merit optimization "
                                           "cross-check"))
    pv = sub.add_parser("verify", help="run the invariant suite")
    pv.add_argument("--grid", type=int, default=1000,
                    help="random operating points per family")
    pv.add_argument("--seed", type=int, default=20260808)
    pv.add_argument("--inject-fault", choices=FAULT_HOOKS, default=None,
                    help="self-test hook: corrupt one formula and expect FAIL")
    return parser


_COMMANDS = {
    "point": cmd_point,
    "fig1": cmd_fig1,
    "fig2": cmd_fig2,
    "fig3": cmd_fig3,
    "optimize": cmd_optimize,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    try:
        report = _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, ConvergenceError, machine.RegimeError,
            machine.DegeneratePointError) as exc:
        print(f"numeric domain error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(report, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

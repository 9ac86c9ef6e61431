"""Handlers of the command suite.

Each handler takes the parsed arguments and the resolved RunConfig, writes
its artifacts and returns the paths it wrote (stdout output is not listed).
"""

import argparse
import logging
import math
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np

from ..core.config import Family, RunConfig
from ..core.errors import ParameterDomainError, UsageError
from ..mc.conjecture import conjecture_search
from ..mc.estimators import (
    Estimate,
    estimate_functional,
    estimate_potential_integral,
    estimate_restricted,
    estimate_variance_sigma,
)
from ..mc.sampler import SamplerSettings
from ..paths.panels import delayed_growth_panels
from ..paths.functionals import make_functional
from ..paths.horizon import HorizonPolicy
from ..paths.sampling import sample_subordinator
from ..series.coefficients import SeriesCoefficients, SeriesKind, frac_euler_numbers
from ..series.evaluation import eval_series, west_series
from ..series.radius import estimate_radius
from ..solver.grid import GridFunction, linear_problem, logistic_problem, uniform_grid
from ..solver.identities import (
    RefinementReport,
    closure_residual,
    delayed_rushed_ratio,
    ladder_residual,
    verify_convolved_rhs,
)
from ..solver.ivp import solve_ivp
from ..special.laplace import cross_check
from ..special.mittag_leffler import mittag_leffler, ml_method
from ..special.moments import moment_phi_k, moment_transform
from ..special.wright import inv_stable_density
from ..symbols.base import SymbolSpec
from ..symbols.registry import symbol_from_config
from ..symbols.tail import TailKernel, TailMode
from .csvio import read_table, sibling, write_rows, write_table

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, RunConfig], list[Path]]


# =============================================================================
# Helpers
# =============================================================================


def _meta(config: RunConfig, spec: SymbolSpec | None = None, **extra: Any) -> dict[str, Any]:
    meta: dict[str, Any] = {}
    if spec is not None:
        meta["family"] = spec.family.value
        meta.update(spec.params)
    meta.update(extra)
    return meta


def _sampler(config: RunConfig) -> SamplerSettings:
    return SamplerSettings(
        ds=config.ds,
        batch_size=config.batch_size,
        exact_stable=config.exact_stable,
        threads=config.threads,
        policy=HorizonPolicy.from_settings(config.horizon_policy),
    )


def _functional(config: RunConfig) -> Callable[[Any], Any]:
    return make_functional(config.v, v0=config.v0, c=config.c, decay=config.decay)


def _require_out(args: argparse.Namespace) -> Path:
    if not args.out:
        raise UsageError(f"'{args.command_name}' writes several columns and needs --out")
    return Path(args.out)


def _written(*paths: Path | None) -> list[Path]:
    return [p for p in paths if p is not None]


def _estimate_rows(est: Estimate) -> list[list[Any]]:
    return [[est.mean, est.sample_variance, est.stderr, est.n, est.seed]]


ESTIMATE_HEADER = ["mean", "sample_variance", "stderr", "n", "seed"]


def _refinement_rows(report: RefinementReport) -> list[list[Any]]:
    rates = [math.nan, *report.rates]
    return [[h, r, rate] for h, r, rate in zip(report.dts, report.residuals, rates)]


# =============================================================================
# symbols / simulate / panels
# =============================================================================


def symbols_eval(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    lam = np.asarray(config.lam, dtype=np.float64)
    phi_values = np.atleast_1d(spec.phi(lam))
    limit = spec.phi_over_lambda_limit()
    ratio = np.where(lam > 0, phi_values / np.where(lam > 0, lam, 1.0), limit)
    meta = _meta(config, spec, phi_over_lambda_limit=limit)
    first = write_table(
        args.out, {"lambda": lam, "phi": phi_values, "phi_over_lambda": ratio}, meta
    )

    second = None
    if config.z:
        kernel = TailKernel(spec, TailMode(args.mode), config.quadrature)
        z = np.asarray(config.z, dtype=np.float64)
        target = sibling(args.out, "tail") if args.out else None
        second = write_table(target, {"z": z, "tail": kernel(z)}, {**meta, "mode": args.mode})
    return _written(first, second)


def simulate(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    out = _require_out(args)
    spec = symbol_from_config(config)
    path = sample_subordinator(spec, config.ds, config.s_max, config.seed)
    meta = _meta(config, spec, ds=config.ds, s_max=path.s_max, seed=config.seed)
    return _written(write_table(out, {"s": path.s_grid, "H": path.values}, meta))


def panels_cmd(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    out = _require_out(args)
    if config.family != Family.STABLE:
        raise ParameterDomainError("panels uses the stable family")
    result = delayed_growth_panels(
        alpha=config.alpha,
        v0=config.v0,
        seed=config.seed,
        s_max=config.s_max,
        ds=config.ds,
        horizon=config.horizon or 8e5,
        points=config.points,
        policy=HorizonPolicy.from_settings(config.horizon_policy),
    )
    meta = {"family": "stable", **result.params}
    changed = result.time_changed
    panel = write_table(
        out, {"t": changed.t_grid, "L": changed.L_values, "v_of_L": changed.v_of_L}, meta
    )
    curve = write_table(sibling(out, "curve"), {"s": result.s_grid, "v": result.v_values}, meta)
    path = write_table(
        sibling(out, "path"), {"s": result.path.s_grid, "H": result.path.values}, meta
    )
    return _written(panel, curve, path)


# =============================================================================
# special
# =============================================================================


def special_ml(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    z = config.z or [-1.0]
    rows = [[x, mittag_leffler(config.alpha, x), ml_method(config.alpha, x)] for x in z]
    meta = {"function": "mittag_leffler", "alpha": config.alpha}
    return _written(write_rows(args.out, ["input", "value", "method"], rows, meta))


def special_phik(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    method = config.inversion.method
    closed = spec.family in (Family.IDENTITY, Family.STABLE)
    value = moment_phi_k(spec, config.k, config.t, method, config.inversion)
    rows = [[config.t, value, "closed_form" if closed else method]]
    meta = _meta(config, spec, function="phi_k", k=config.k)
    return _written(write_rows(args.out, ["input", "value", "method"], rows, meta))


def special_density(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    x = np.asarray(config.z or [1.0], dtype=np.float64)
    values = np.atleast_1d(inv_stable_density(config.alpha, config.t, x))
    rows = [[xi, vi, "wright"] for xi, vi in zip(x, values)]
    meta = {"function": "inv_stable_density", "alpha": config.alpha, "t": config.t}
    return _written(write_rows(args.out, ["input", "value", "method"], rows, meta))


def special_invert(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    if config.k < 1:
        raise ParameterDomainError("Inversion needs k >= 1", details={"k": config.k})
    check = cross_check(moment_transform(spec, config.k, "talbot"), config.t, config.inversion)
    rows = [
        [config.t, check.stehfest, "gaver_stehfest"],
        [config.t, check.talbot, "talbot"],
    ]
    meta = _meta(config, spec, function="phi_k", k=config.k, rel_diff=check.rel_diff,
                 agrees=check.agrees)
    return _written(write_rows(args.out, ["input", "value", "method"], rows, meta))


# =============================================================================
# series
# =============================================================================


def _euler(config: RunConfig) -> SeriesCoefficients:
    return frac_euler_numbers(config.alpha, config.u0, config.K, config.start_at_one)


def _coefficients_from_file(path: str) -> SeriesCoefficients:
    table = read_table(path)
    meta = table.meta
    alpha = float(meta["alpha"]) if meta.get("alpha") else None
    u0 = float(meta["u0"]) if meta.get("u0") else None
    kind = SeriesKind(meta.get("kind", SeriesKind.CUSTOM.value))
    return SeriesCoefficients(kind, table["E_k"], alpha, u0)


def series_euler(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    coeffs = _euler(config)
    k = np.arange(coeffs.K + 1)
    return _written(write_table(args.out, {"k": k, "E_k": coeffs.values}, coeffs.describe()))


def series_eval(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    out = _require_out(args)
    coeffs = _coefficients_from_file(args.coeffs) if args.coeffs else _euler(config)
    spec = symbol_from_config(config)
    radius = estimate_radius(coeffs)
    t = uniform_grid(config.tmax, config.tmax / config.steps)
    values = [eval_series(coeffs, spec, float(s), radius, None, config.inversion) for s in t]
    meta = _meta(config, spec, **coeffs.describe(), radius=radius.r)
    columns = {
        "t": t,
        "u": [v.value for v in values],
        "trunc_bound": [v.trunc_bound for v in values],
    }
    return _written(write_table(out, columns, meta))


def series_west(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    value = west_series(config.alpha, config.u0, config.t, config.K)
    meta = {"alpha": config.alpha, "u0": config.u0, "K": config.K}
    rows = [[value.t, value.value, value.trunc_bound]]
    return _written(write_rows(args.out, ["t", "u", "trunc_bound"], rows, meta))


def series_radius(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    coeffs = _coefficients_from_file(args.coeffs) if args.coeffs else _euler(config)
    est = estimate_radius(coeffs)
    rows = [[est.r, est.method.value, est.ratio, est.root, est.unstable, est.variable]]
    header = ["r", "method", "ratio", "root", "unstable", "variable"]
    return _written(write_rows(args.out, header, rows, coeffs.describe()))


# =============================================================================
# solve / verify
# =============================================================================


def _sigma_from_file(path: str) -> GridFunction:
    table = read_table(path)
    name = "sigma_hat" if "sigma_hat" in table.columns else "sigma"
    if name not in table.columns or "t" not in table.columns:
        raise UsageError(
            f"Forcing file {path} needs columns t and sigma_hat (or sigma)",
            details={"columns": ",".join(table.columns)},
        )
    t = table["t"]
    return GridFunction(float(t[1] - t[0]), table[name])


def solve(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    out = _require_out(args)
    spec = symbol_from_config(config)
    if config.rhs == "logistic":
        sigma = _sigma_from_file(args.sigma_file) if args.sigma_file else None
        problem = logistic_problem(spec, config.u0, config.T, config.dt, sigma)
    else:
        if args.sigma_file:
            raise UsageError("A forcing file applies to the logistic right-hand side only")
        problem = linear_problem(spec, config.decay, config.u0, config.T, config.dt)
    u = solve_ivp(problem, config.solver, config.quadrature)
    meta = _meta(config, spec, rhs=config.rhs, u0=config.u0, T=config.T, dt=config.dt,
                 forcing=args.sigma_file or "none")
    return _written(write_table(out, {"t": u.t_grid, "u": u.values}, meta))


def verify_convolved(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    report = verify_convolved_rhs(spec, config.decay, config.c, config.T, config.dt,
                                  settings=config.quadrature)
    meta = _meta(config, spec, check="convolved_rhs", decay=config.decay, c=config.c,
                 T=config.T, monotone=report.monotone)
    rows = _refinement_rows(report)
    return _written(write_rows(args.out, ["dt", "max_residual", "rate"], rows, meta))


def verify_ladder(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    report = ladder_residual(spec, config.k, config.T, config.dt, t_min=config.t_min,
                             inversion=config.inversion, settings=config.quadrature)
    meta = _meta(config, spec, check="ladder", k=config.k, T=config.T, t_min=config.t_min,
                 monotone=report.monotone)
    rows = _refinement_rows(report)
    return _written(write_rows(args.out, ["dt", "max_residual", "rate"], rows, meta))


def verify_closure(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    v = make_functional("logistic", v0=config.u0)
    t = uniform_grid(config.T, config.dt)
    table = estimate_variance_sigma(spec, v, t, config.n, config.seed, _sampler(config))
    report = closure_residual(spec, table.u_hat, table.sigma_hat, t_min=config.t_min,
                              settings=config.quadrature)
    noise = float(np.max(table.stderr_sigma) + 2.0 * np.max(table.stderr_u))
    bound = 5.0 * (noise + config.dt)
    meta = _meta(config, spec, check="variance_closure", u0=config.u0, n=config.n,
                 seed=config.seed, dt=config.dt, t_min=config.t_min)
    summary = [[report.max_abs, bound, report.max_abs <= bound]]
    written = write_rows(None if not args.out else sibling(args.out, "summary"),
                         ["max_residual", "bound", "within_bound"], summary, meta)
    detail = None
    if args.out:
        detail = write_table(
            args.out,
            {"t": t, "u_hat": table.u_hat.values, "sigma_hat": table.sigma_hat.values,
             "residual": np.nan_to_num(report.residual, nan=0.0)},
            meta,
        )
    return _written(detail, written)


def verify_delayed(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    v = _functional(config)
    v_grid = GridFunction.from_callable(v, config.T, config.dt)
    lhs = lhs_stderr = None
    if math.isfinite(spec.phi_over_lambda_limit()):
        est = estimate_potential_integral(spec, v, config.T, config.n, config.seed,
                                          _sampler(config))
        lhs, lhs_stderr = est.mean, est.stderr
    else:
        lhs = math.inf
    report = delayed_rushed_ratio(spec, v_grid, lhs=lhs, lhs_stderr=lhs_stderr)
    rows = [[report.lhs, report.lhs_stderr, report.rhs, report.integral_v, report.limit,
             report.ratio, report.classification.value, report.z_score]]
    header = ["lhs", "lhs_stderr", "rhs", "integral_v", "limit", "ratio", "classification",
              "z_score"]
    meta = _meta(config, spec, check="delayed_rushed", v=config.v, T=config.T, n=config.n,
                 seed=config.seed)
    return _written(write_rows(args.out, header, rows, meta))


# =============================================================================
# mc
# =============================================================================


def mc_functional(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    spec = symbol_from_config(config)
    est = estimate_functional(spec, _functional(config), config.t, config.n, config.seed,
                              _sampler(config))
    meta = _meta(config, spec, v=config.v, t=config.t)
    return _written(write_rows(args.out, ESTIMATE_HEADER, _estimate_rows(est), meta))


def mc_restricted(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    if config.r is None:
        raise UsageError("'mc restricted' needs --r")
    spec = symbol_from_config(config)
    est = estimate_restricted(spec, _functional(config), config.t, config.r, config.n,
                              config.seed, _sampler(config))
    meta = _meta(config, spec, v=config.v, t=config.t, r=config.r)
    return _written(write_rows(args.out, ESTIMATE_HEADER, _estimate_rows(est), meta))


def mc_sigma(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    out = _require_out(args)
    spec = symbol_from_config(config)
    t = uniform_grid(config.tmax, config.tmax / config.steps)
    table = estimate_variance_sigma(spec, _functional(config), t, config.n, config.seed,
                                    _sampler(config))
    columns = {
        "t": t,
        "u_hat": table.u_hat.values,
        "sigma_hat": table.sigma_hat.values,
        "stderr_u": table.stderr_u,
        "stderr_sigma": table.stderr_sigma,
    }
    meta = _meta(config, spec, v=config.v, v0=config.v0, n=config.n, seed=config.seed)
    return _written(write_table(out, columns, meta))


def mc_conjecture(args: argparse.Namespace, config: RunConfig) -> list[Path]:
    out = _require_out(args)
    spec = symbol_from_config(config)
    t = uniform_grid(config.tmax, config.tmax / config.steps)[1:]
    result = conjecture_search(spec, config.u0, config.K, t, config.reg, config.dps,
                               config.inversion)
    lo, hi = result.trust_interval
    meta = _meta(config, spec, u0=config.u0, K=config.K, reg=config.reg, trust_min=lo,
                 trust_max=hi, condition_number=result.condition_number,
                 iterations=result.iterations, converged=result.converged)
    coeffs = write_table(out, {"k": np.arange(result.K + 1), "E_hat": result.coefficients}, meta)
    grid = np.concatenate([np.zeros(result.t_grid.size), np.ones(result.refined_t.size)])
    residual = write_table(
        sibling(out, "residual"),
        {
            "t": np.concatenate([result.t_grid, result.refined_t]),
            "residual": np.concatenate([result.residual, result.refined_residual]),
            "refined": grid,
        },
        meta,
    )
    return _written(coeffs, residual)


HANDLERS: dict[str, Handler] = {
    "symbols eval": symbols_eval,
    "simulate": simulate,
    "panels": panels_cmd,
    "special ml": special_ml,
    "special phik": special_phik,
    "special density": special_density,
    "special invert": special_invert,
    "series euler": series_euler,
    "series eval": series_eval,
    "series west": series_west,
    "series radius": series_radius,
    "solve": solve,
    "verify convolved": verify_convolved,
    "verify closure": verify_closure,
    "verify ladder": verify_ladder,
    "verify delayed": verify_delayed,
    "mc functional": mc_functional,
    "mc sigma": mc_sigma,
    "mc restricted": mc_restricted,
    "mc conjecture": mc_conjecture,
}

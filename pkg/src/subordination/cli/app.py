"""Argument parsing and the run loop of the command suite."""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from ..core.config import Family, RunConfig, load_config
from ..core.errors import ExitCode, SubordinationError, UsageError
from ..core.logging import bind_run_context, setup_logging
from .commands import HANDLERS
from .csvio import sibling, write_rows
from .manifest import RunManifest

logger = logging.getLogger(__name__)

PROG = "subordination"


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message, details={"usage": self.format_usage().strip()})


# flag, type, help
OPTIONS: dict[str, tuple[str, Any, str]] = {
    "alpha": ("--alpha", float, "Stable index in (0, 1]"),
    "gamma": ("--gamma", float, "Tempering parameter"),
    "a": ("--a", float, "Gamma family a"),
    "b": ("--b", float, "Gamma family b"),
    "mu": ("--mu", float, "Inverse Gaussian mu"),
    "ds": ("--ds", float, "Operational-time step"),
    "s_max": ("--smax", float, "Operational-time horizon"),
    "horizon": ("--horizon", float, "Wall-clock horizon"),
    "points": ("--points", int, "Wall-clock grid points"),
    "v0": ("--v0", float, "Initial value of the logistic functional"),
    "u0": ("--u0", float, "Initial datum"),
    "decay": ("--decay", float, "Decay rate"),
    "c": ("--c", float, "Amplitude or constant value"),
    "t": ("--t", float, "Wall-clock time"),
    "tmax": ("--tmax", float, "Upper end of the time grid"),
    "steps": ("--steps", int, "Number of grid steps"),
    "n": ("--n", int, "Replications"),
    "r": ("--r", float, "Restriction level"),
    "batch_size": ("--batch-size", int, "Paths per random-stream batch"),
    "T": ("--T", float, "Final time"),
    "dt": ("--dt", float, "Time step"),
    "t_min": ("--t-min", float, "Lower end of the residual window"),
    "K": ("--K", int, "Truncation order"),
    "k": ("--k", int, "Moment order"),
    "reg": ("--reg", float, "Ridge regularization"),
    "dps": ("--dps", int, "mpmath working digits"),
}


def _options(parser: argparse.ArgumentParser, *keys: str) -> None:
    for key in keys:
        flag, kind, help_text = OPTIONS[key]
        parser.add_argument(flag, dest=key, type=kind, help=help_text)


def _common() -> argparse.ArgumentParser:
    parent = CliParser(add_help=False, allow_abbrev=False)
    parent.add_argument("--config", help="YAML file of flat key: value pairs")
    parent.add_argument("--out", help="Output CSV (stdout when omitted and allowed)")
    parent.add_argument("--manifest", help="Manifest path (default: <out>.manifest.json)")
    parent.add_argument("--threads", type=int, help="Worker pool size")
    parent.add_argument("--seed", type=int, help="Master seed")
    parent.add_argument("--method", choices=["gaver_stehfest", "talbot"],
                        help="Laplace inverter")
    parent.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR")
    parent.add_argument("--log-format", choices=["simple", "structured"])
    return parent


def _symbol(sigma_flag: str = "--sigma") -> argparse.ArgumentParser:
    parent = CliParser(add_help=False, allow_abbrev=False)
    families = [f.value for f in Family if f != Family.CUSTOM]
    parent.add_argument("--family", choices=families, help="Symbol family")
    _options(parent, "alpha", "gamma", "a", "b", "mu")
    parent.add_argument(sigma_flag, dest="sigma", type=float, help="Inverse Gaussian sigma")
    return parent


def _monte_carlo() -> argparse.ArgumentParser:
    parent = CliParser(add_help=False, allow_abbrev=False)
    _options(parent, "n", "batch_size", "ds", "v0", "c", "decay")
    parent.add_argument("--v", choices=["logistic", "exp", "identity", "constant"],
                        help="Functional applied to L_t")
    parent.add_argument("--exact-stable", dest="exact_stable",
                        action=argparse.BooleanOptionalAction, default=None,
                        help="Draw stable L_t from its self-similar marginal")
    return parent


def build_parser() -> CliParser:
    """Parser of the full command suite."""
    common, symbol, mc = _common(), _symbol(), _monte_carlo()
    parser = CliParser(prog=PROG, description="Non-local logistic growth experiments",
                       allow_abbrev=False)
    commands = parser.add_subparsers(dest="command", required=True)

    def leaf(
        group: Any,
        name: str,
        full: str,
        parents: list[argparse.ArgumentParser],
        help_text: str,
        aliases: tuple[str, ...] = (),
    ) -> argparse.ArgumentParser:
        p = group.add_parser(
            name, parents=parents, help=help_text, aliases=list(aliases), allow_abbrev=False
        )
        p.set_defaults(command_name=full)
        return p

    def nest(name: str, help_text: str) -> Any:
        p = commands.add_parser(name, help=help_text, allow_abbrev=False)
        return p.add_subparsers(dest="action", required=True)

    symbols = nest("symbols", "Bernstein symbols")
    p = leaf(symbols, "eval", "symbols eval", [common, symbol], "Phi, Phi/lambda and tails")
    p.add_argument("--lambda", dest="lam", type=float, nargs="+", help="Laplace arguments")
    p.add_argument("--z", type=float, nargs="+", help="Tail evaluation points")
    p.add_argument("--mode", choices=["closed_form", "quadrature"], default="closed_form")

    p = leaf(commands, "simulate", "simulate", [common, symbol], "Simulate one path")
    _options(p, "ds", "s_max")

    p = leaf(
        commands, "panels", "panels", [common, symbol], "Delayed-growth panels",
        aliases=("figure1",),
    )
    _options(p, "v0", "ds", "s_max", "horizon", "points")

    special = nest("special", "Special functions")
    p = leaf(special, "ml", "special ml", [common], "Mittag-Leffler function")
    _options(p, "alpha")
    p.add_argument("--z", type=float, nargs="+", help="Arguments")
    p = leaf(special, "phik", "special phik", [common, symbol], "Rescaled moment phi_k(t)")
    _options(p, "k", "t")
    p = leaf(special, "density", "special density", [common], "Inverse stable density")
    _options(p, "alpha", "t")
    p.add_argument("--z", type=float, nargs="+", help="Points x")
    p = leaf(special, "invert", "special invert", [common, symbol], "Compare both inverters")
    _options(p, "k", "t")

    series = nest("series", "Fractional Euler series")
    p = leaf(series, "euler", "series euler", [common], "Fractional Euler numbers")
    _options(p, "alpha", "u0", "K")
    p.add_argument("--start-at-one", dest="start_at_one",
                   action=argparse.BooleanOptionalAction, default=None,
                   help="Start the recursion sum at i = 1")
    p = leaf(series, "eval", "series eval", [common, symbol], "Evaluate a coefficient file")
    _options(p, "u0", "K", "tmax", "steps")
    p.add_argument("--coeffs", help="Coefficient CSV from 'series euler'")
    p.add_argument("--start-at-one", dest="start_at_one",
                   action=argparse.BooleanOptionalAction, default=None)
    p = leaf(series, "west", "series west", [common], "Mittag-Leffler series of u")
    _options(p, "alpha", "u0", "t", "K")
    p = leaf(series, "radius", "series radius", [common], "Convergence radius")
    _options(p, "alpha", "u0", "K")
    p.add_argument("--coeffs", help="Coefficient CSV")
    p.add_argument("--start-at-one", dest="start_at_one",
                   action=argparse.BooleanOptionalAction, default=None)

    p = leaf(commands, "solve", "solve", [common, _symbol("--ig-sigma")], "March the IVP")
    _options(p, "u0", "decay", "T", "dt")
    p.add_argument("--rhs", choices=["logistic", "linear"])
    p.add_argument("--sigma", dest="sigma_file", help="Forcing CSV (t, sigma_hat)")

    verify = nest("verify", "Identity checks")
    p = leaf(
        verify, "convolved", "verify convolved", [common, symbol], "Convolved right-hand side",
        aliases=("lemma31",),
    )
    _options(p, "decay", "c", "T", "dt")
    p = leaf(
        verify, "closure", "verify closure", [common, symbol, mc], "Variance closure",
        aliases=("theorem41",),
    )
    _options(p, "u0", "T", "dt", "t_min")
    p = leaf(verify, "ladder", "verify ladder", [common, symbol], "Moment ladder")
    _options(p, "k", "T", "dt", "t_min")
    p = leaf(verify, "delayed", "verify delayed", [common, symbol, mc], "Delayed/rushed growth")
    _options(p, "T", "dt")

    group = nest("mc", "Monte Carlo estimators")
    p = leaf(group, "functional", "mc functional", [common, symbol, mc], "E[v(L_t)]")
    _options(p, "t")
    p = leaf(group, "sigma", "mc sigma", [common, symbol, mc], "Mean and variance tables")
    _options(p, "tmax", "steps")
    p = leaf(group, "restricted", "mc restricted", [common, symbol, mc], "E[v(L_t); L_t < r]")
    _options(p, "t", "r")
    p = leaf(group, "conjecture", "mc conjecture", [common, symbol], "Collocation search")
    _options(p, "u0", "K", "tmax", "steps", "reg", "dps")
    return parser


def overrides_from(args: argparse.Namespace) -> dict[str, Any]:
    """Config overrides given on the command line."""
    out: dict[str, Any] = {}
    for key, info in RunConfig.model_fields.items():
        value = getattr(args, key, None)
        if value is not None:
            out[info.alias or key] = value
    if getattr(args, "method", None):
        out["inversion"] = {"method": args.method}
    logging_overrides = {
        name: value
        for name, value in (("level", args.log_level), ("format", args.log_format))
        if value
    }
    if logging_overrides:
        out["logging"] = logging_overrides
    return out


def _manifest_path(args: argparse.Namespace) -> Path | None:
    if args.manifest:
        return Path(args.manifest)
    if args.out:
        out = Path(args.out)
        stem = out.name[: -len(out.suffix)] if out.suffix else out.name
        return out.with_name(f"{stem}.manifest.json")
    return None


def _report(error: SubordinationError, out: str | None) -> Path | None:
    """Error JSON on stderr; numerical failures also get a diagnostics CSV."""
    print(json.dumps(error.to_dict(), default=str), file=sys.stderr)
    if error.exit_code != ExitCode.TOLERANCE or not out:
        return None
    rows = [["category", error.category], ["message", error.message]]
    rows += [[key, value] for key, value in error.details.items()]
    return write_rows(sibling(out, "diagnostics"), ["key", "value"], rows,
                      {"error_type": type(error).__name__})


def run(argv: Sequence[str]) -> int:
    """Parse argv, run one command, write its manifest and return the exit code."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SubordinationError as e:
        print(json.dumps(e.to_dict(), default=str), file=sys.stderr)
        return int(e.exit_code)
    except SystemExit as e:  # --help
        return int(e.code or 0)

    manifest: RunManifest | None = None
    code = ExitCode.OK
    try:
        config = load_config(args.config, overrides_from(args))
        setup_logging(
            level=config.logging.level,
            log_format=config.logging.format,
            log_file=config.logging.file,
            max_size_mb=config.logging.max_size_mb,
            backup_count=config.logging.backup_count,
        )
        manifest = RunManifest(
            command=[PROG, *argv],
            subcommand=args.command_name,
            config=config.model_dump(mode="json", by_alias=True),
            seed=config.seed,
        )
        bind_run_context(subcommand=args.command_name, seed=config.seed)
        logger.info("Running '%s'", args.command_name)
        for path in HANDLERS[args.command_name](args, config):
            manifest.add_output(path)
        manifest.finish(ExitCode.OK)
    except SubordinationError as e:
        code = e.exit_code
        logger.error("%s failed: %s", args.command_name, e)
        diagnostics = _report(e, args.out)
        if manifest is not None:
            if diagnostics is not None:
                manifest.add_output(diagnostics)
            manifest.finish(code, e.to_dict())
    except Exception as e:
        code = ExitCode.FAILURE
        logger.exception("Unexpected failure: %s", e)
        if manifest is not None:
            manifest.finish(code, {"error_type": type(e).__name__, "message": str(e)})

    target = _manifest_path(args)
    if manifest is not None and target is not None:
        manifest.write(target)
    return int(code)

"""Configuration management with Pydantic validation.

Provides type-safe run configuration with:
- Pydantic models for validation of every flat key
- YAML file loading with line-accurate error messages
- Environment override of the master seed
- Flag-over-file precedence merging
"""

import logging
from enum import Enum
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigurationError

logger = logging.getLogger(__name__)


class Family(str, Enum):
    """Bernstein symbol families."""

    IDENTITY = "identity"
    STABLE = "stable"
    TEMPERED_STABLE = "tempered_stable"
    GAMMA = "gamma"
    INVERSE_GAUSSIAN = "inverse_gaussian"
    CUSTOM = "custom"


# =============================================================================
# Numerical settings
# =============================================================================


class QuadratureSettings(BaseModel):
    """Adaptive quadrature tolerances (scipy.integrate.quad)."""

    epsabs: float = Field(1e-8, gt=0, description="Absolute tolerance")
    epsrel: float = Field(1e-10, gt=0, description="Relative tolerance")
    limit: int = Field(200, ge=50, description="Maximum subintervals")


class InversionSettings(BaseModel):
    """Numerical Laplace inversion settings."""

    method: Literal["gaver_stehfest", "talbot"] = Field(
        "gaver_stehfest", description="Default inverter"
    )
    stehfest_order: int = Field(18, ge=4, le=60, description="Gaver-Stehfest order (even)")
    talbot_nodes: int = Field(32, ge=8, le=200, description="Talbot contour nodes")
    rtol: float = Field(1e-6, gt=0, description="Cross-check relative tolerance")

    @field_validator("stehfest_order")
    @classmethod
    def validate_even(cls, v: int) -> int:
        if v % 2:
            raise ValueError("Gaver-Stehfest order must be even")
        return v


class HorizonSettings(BaseModel):
    """Geometric horizon extension for path simulation."""

    growth: float = Field(2.0, gt=1.0, description="Horizon growth factor per extension")
    max_doublings: int = Field(30, ge=0, le=60, description="Maximum horizon extensions")


class SolverSettings(BaseModel):
    """Implicit time-march settings."""

    tol: float = Field(1e-13, gt=0, description="Scalar step tolerance")
    max_iterations: int = Field(100, ge=5, description="Fixed-point iteration cap")


class LoggingSettings(BaseModel):
    """Logging configuration."""

    level: str = Field("INFO", description="Log level")
    format: Literal["simple", "structured"] = Field("simple", description="Console format")
    file: str | None = Field(None, description="Log file path")
    max_size_mb: int = Field(10, ge=1, description="Max log file size")
    backup_count: int = Field(3, ge=0, description="Number of backup files")


# =============================================================================
# Run configuration (flat keys mirroring the CLI flags)
# =============================================================================


def _check_open_unit(name: str, v: float) -> float:
    if not 0.0 < v < 1.0:
        raise ValueError(f"{name} must lie in (0, 1)")
    return v


class RunConfig(BaseModel):
    """Fully resolved parameter set of one experiment.

    Every field is a flat key of the config file and mirrors a CLI flag.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    # Symbol
    family: Family = Field(Family.STABLE, description="Symbol family")
    alpha: float = Field(0.5, description="Stable index in (0, 1]")
    gamma: float = Field(1.0, gt=0, description="Tempering parameter")
    a: float = Field(1.0, gt=0, description="Gamma shape-rate numerator a")
    b: float = Field(1.0, gt=0, description="Gamma rate b")
    sigma: float = Field(1.0, description="Inverse Gaussian sigma (nonzero)")
    mu: float = Field(1.0, gt=0, description="Inverse Gaussian mu")
    lam: list[float] = Field(default_factory=lambda: [1.0], alias="lambda")
    z: list[float] = Field(default_factory=list, description="Evaluation points")

    # Paths
    ds: float = Field(1e-3, gt=0, description="Operational-time step")
    s_max: float = Field(10.0, gt=0, description="Operational-time horizon")
    horizon: float | None = Field(8e5, gt=0, description="Wall-clock horizon of the panels")
    points: int = Field(4000, ge=10, description="Wall-clock grid points of the panels")

    # Data of the growth problem
    v0: float = Field(0.1, description="Classical initial datum")
    u0: float = Field(0.5, description="Non-local initial datum")
    v: Literal["logistic", "exp", "identity", "constant"] = Field(
        "logistic", description="Functional v applied to L_t"
    )
    decay: float = Field(1.0, ge=0, description="Decay rate a of f(u) = -a u")
    c: float = Field(1.0, description="Amplitude / constant value")

    # Monte Carlo
    t: float = Field(1.0, gt=0, description="Wall-clock time")
    tmax: float = Field(1.0, gt=0, description="Upper end of the time grid")
    steps: int = Field(100, ge=1, description="Number of grid steps")
    n: int = Field(100_000, ge=2, description="Replications")
    r: float | None = Field(None, gt=0, description="Restriction level H_r")
    batch_size: int = Field(1000, ge=1, description="Paths per RNG batch")
    exact_stable: bool = Field(True, description="Use exact stable marginals")
    seed: int = Field(0, ge=0, description="Master seed")
    threads: int | None = Field(None, ge=1, description="Worker pool size")

    # Solver
    T: float = Field(1.0, gt=0, description="Final time")
    dt: float = Field(1e-3, gt=0, description="Time step")
    rhs: Literal["logistic", "linear"] = Field("logistic", description="Right-hand side f")
    t_min: float = Field(0.1, ge=0, description="Lower end of residual window")

    # Series / special
    K: int = Field(20, ge=1, le=400, description="Truncation order")
    k: int = Field(1, ge=0, description="Moment order")
    reg: float = Field(0.0, ge=0, description="Ridge regularization")
    start_at_one: bool = Field(False, description="Start the recursion at i = 1")
    dps: int = Field(40, ge=15, le=200, description="mpmath working digits")

    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    inversion: InversionSettings = Field(default_factory=InversionSettings)
    horizon_policy: HorizonSettings = Field(default_factory=HorizonSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        return v

    @field_validator("sigma")
    @classmethod
    def validate_sigma(cls, v: float) -> float:
        if v == 0.0:
            raise ValueError("sigma must be nonzero")
        return v

    @field_validator("u0")
    @classmethod
    def validate_u0(cls, v: float) -> float:
        return _check_open_unit("u0", v)

    @field_validator("v0")
    @classmethod
    def validate_v0(cls, v: float) -> float:
        return _check_open_unit("v0", v)

    def symbol_params(self) -> dict[str, float]:
        """Parameters relevant to the configured family."""
        per_family: dict[Family, tuple[str, ...]] = {
            Family.IDENTITY: (),
            Family.STABLE: ("alpha",),
            Family.TEMPERED_STABLE: ("alpha", "gamma"),
            Family.GAMMA: ("a", "b"),
            Family.INVERSE_GAUSSIAN: ("sigma", "mu"),
            Family.CUSTOM: (),
        }
        return {name: getattr(self, name) for name in per_family[self.family]}


def accepted_keys() -> list[str]:
    """Flat keys accepted in config files."""
    keys = []
    for name, info in RunConfig.model_fields.items():
        keys.append(info.alias or name)
    return sorted(keys)


class SeedSettings(BaseSettings):
    """Environment override of the master seed (SUBORDINATION_SEED)."""

    model_config = SettingsConfigDict(env_prefix="SUBORDINATION_")

    seed: int | None = None


# =============================================================================
# Loading
# =============================================================================


def _key_lines(text: str) -> dict[str, int]:
    """Map each top-level key to its 1-based line in the YAML text."""
    node = yaml.compose(text)
    if node is None:
        return {}
    if not isinstance(node, yaml.MappingNode):
        raise ConfigurationError(
            "Config file must be a flat mapping of key: value pairs",
            details={"line": node.start_mark.line + 1},
        )
    return {key.value: key.start_mark.line + 1 for key, _ in node.value}


def _validate(data: dict[str, Any], lines: dict[str, int], source: str) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else "?"
        details: dict[str, Any] = {"key": key, "source": source}
        if key in lines:
            details["line"] = lines[key]
        raise ConfigurationError(f"Invalid value for '{key}': {first['msg']}", details, e) from e


def read_config_file(path: str | Path) -> tuple[dict[str, Any], dict[str, int]]:
    """Read raw key-value pairs and their line numbers from a config file.

    Raises:
        ConfigurationError: If the file is malformed or has unknown keys
    """
    config_path = Path(path)
    try:
        text = config_path.read_text(encoding="utf-8")
        lines = _key_lines(text)
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Malformed config file {config_path}", cause=e) from e
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {config_path}", cause=e) from e

    accepted = set(accepted_keys())
    unknown = sorted(set(data) - accepted)
    if unknown:
        raise ConfigurationError(
            f"Unknown config key '{unknown[0]}'",
            details={
                "line": lines.get(unknown[0]),
                "accepted": ", ".join(sorted(accepted)),
            },
        )
    return data, lines


def load_config(
    path: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Load, merge and validate a run configuration.

    Precedence: defaults < config file < environment seed < overrides (flags).

    Args:
        path: Optional YAML file of flat key: value pairs
        overrides: Values given on the command line (None entries are ignored)

    Returns:
        Validated RunConfig

    Raises:
        ConfigurationError: On unknown keys, type mismatches or domain errors
    """
    data: dict[str, Any] = {}
    lines: dict[str, int] = {}
    source = "defaults"
    if path is not None:
        data, lines = read_config_file(path)
        source = str(path)
        _validate(data, lines, source)
        logger.info("Loaded config from %s", path)

    env_seed = SeedSettings().seed
    if env_seed is not None:
        data["seed"] = env_seed
        logger.debug("Master seed taken from environment: %d", env_seed)

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(data.get(key), dict):
            data[key] = {**data[key], **value}
        else:
            data[key] = value

    return _validate(data, lines, source)

"""Configuration management for hydrogen-entanglement.

Uses Pydantic settings for validation and environment variable loading.
Library functions take explicit keyword arguments whose defaults match the
values below; the CLI reads Settings() and passes them through.
"""

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Upper bound for any user-supplied tolerance.
MAX_TOLERANCE = 1e-3


def check_tolerance(value: float, name: str = "tolerance") -> float:
    """Validate that a tolerance lies in (0, MAX_TOLERANCE]."""
    if not 0.0 < value <= MAX_TOLERANCE:
        raise ValueError(f"{name} must lie in (0, {MAX_TOLERANCE:g}], got {value!r}")
    return value


class LoggingConfig(BaseSettings):
    """Logging configuration."""

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING",
        description="Logging level",
    )
    format: Literal["json", "console"] = Field(
        default="console",
        description="Log output format",
    )

    model_config = SettingsConfigDict(env_prefix="LOG_")


class ToleranceConfig(BaseSettings):
    """Numerical tolerances shared by the analysis modules."""

    model_config = SettingsConfigDict(env_prefix="TOL_")

    rank: float = Field(
        default=1e-12,
        description="Absolute threshold on Schmidt eigenvalues counted in the rank",
    )
    clamp: float = Field(
        default=1e-12,
        description="Eigenvalues in [-clamp, 0) are reported as 0",
    )
    imaginary_residue: float = Field(
        default=1e-10,
        description="Max imaginary part tolerated on a homogeneous spectrum",
    )
    state_norm_input: float = Field(
        default=1e-6,
        description="Max |norm - 1| of a JSON state before it is rejected",
    )

    @field_validator("*")
    @classmethod
    def validate_range(cls, v: float) -> float:
        """Every tolerance must be positive and at most 1e-3."""
        return check_tolerance(v)


class EigenSolverConfig(BaseSettings):
    """Cyclic Jacobi eigensolver configuration."""

    model_config = SettingsConfigDict(env_prefix="EIG_")

    max_sweeps: int = Field(
        default=100,
        ge=1,
        description="Iteration cap on full Jacobi sweeps",
    )
    offdiag_rel_tol: float = Field(
        default=1e-14,
        gt=0.0,
        description="Converged when ||offdiag||_F <= offdiag_rel_tol * ||a||_F",
    )
    degeneracy_gap: float = Field(
        default=1e-10,
        gt=0.0,
        description="Eigenvalues closer than this form a degenerate cluster",
    )
    method: Literal["jacobi", "lapack", "auto"] = Field(
        default="auto",
        description="Jacobi for small matrices, LAPACK eigh above 256 rows when auto",
    )


class HydrogenConfig(BaseSettings):
    """Defaults for the analytic hydrogen pipeline (scaled units hbar = a0 = 1)."""

    model_config = SettingsConfigDict(env_prefix="HYDROGEN_")

    a0: float = Field(default=1.0, gt=0.0, description="Bohr radius")
    hbar: float = Field(default=1.0, gt=0.0, description="Reduced Planck constant")
    mass_ratio: float = Field(
        default=1836.15267,
        gt=0.0,
        description="Proton-electron mass ratio m_p/m_e (CODATA)",
    )
    k_max: float = Field(default=20.0, gt=0.0, description="Radial k cutoff in units of 1/a0")
    n_bins: int = Field(default=2048, ge=16, description="Radial k bins")
    tail_warning_mass: float = Field(
        default=1e-3,
        gt=0.0,
        description="k-space mass beyond k_max that triggers a precision warning",
    )


class LatticeConfig(BaseSettings):
    """Defaults and bounds for the 1D lattice hydrogen analog."""

    model_config = SettingsConfigDict(env_prefix="LATTICE_")

    max_sites: int = Field(default=1024, ge=8, description="Largest accepted lattice size")
    edge_guard_bins: int = Field(
        default=10,
        ge=0,
        description="Grid points next to the zone edge checked for aliasing",
    )
    edge_mass_warning: float = Field(
        default=1e-8,
        gt=0.0,
        description="Spectral mass near the zone edge that triggers a precision warning",
    )
    scan_workers: int = Field(
        default=1,
        ge=1,
        description="Thread pool size for the decay scan (1 = sequential)",
    )


class Settings(BaseSettings):
    """Root settings container."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8")

    service_name: str = Field(
        default="hydrogen-entanglement",
        description="Name bound to every log event",
    )

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    eigensolver: EigenSolverConfig = Field(default_factory=EigenSolverConfig)
    hydrogen: HydrogenConfig = Field(default_factory=HydrogenConfig)
    lattice: LatticeConfig = Field(default_factory=LatticeConfig)

"""Run configurations for the CLI subcommands.

Pydantic models validating the parsed command line before any computation
starts. Each model carries only what its subcommand needs.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from hydrogen_entanglement.config import check_tolerance
from hydrogen_entanglement.hydrogen import MIN_BINS, PROTON_ELECTRON_MASS_RATIO
from hydrogen_entanglement.lattice import MAX_SITES, MIN_SITES

Subcommand = Literal["schmidt", "hydrogen", "lattice"]


class RunConfig(BaseModel):
    """Options shared by every subcommand."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    subcommand: Subcommand
    out: str = Field(default="-", description="CSV destination, '-' for stdout")
    summary: str | None = Field(default=None, description="JSON summary destination")
    tol: float = Field(default=1e-12, description="Rank tolerance on Schmidt eigenvalues")

    @field_validator("tol")
    @classmethod
    def validate_tol(cls, v: float) -> float:
        return check_tolerance(v, "tol")

    def summary_target(self) -> str:
        """Resolve where the JSON summary goes.

        Explicit ``--summary`` wins; otherwise ``<stem>.summary.json`` next to a
        file output, or '-' (stderr) when the CSV goes to stdout.
        """
        if self.summary is not None:
            return self.summary
        if self.out == "-":
            return "-"
        out = Path(self.out)
        return str(out.with_name(f"{out.stem}.summary.json"))


class SchmidtRunConfig(RunConfig):
    subcommand: Literal["schmidt"] = "schmidt"
    input: Path
    norm_tol: float = Field(default=1e-6, description="Accepted |norm - 1| before renormalizing")

    @field_validator("norm_tol")
    @classmethod
    def validate_norm_tol(cls, v: float) -> float:
        return check_tolerance(v, "norm_tol")


class HydrogenRunConfig(RunConfig):
    subcommand: Literal["hydrogen"] = "hydrogen"
    a0: float = Field(default=1.0, gt=0.0)
    hbar: float = Field(default=1.0, gt=0.0)
    mass_ratio: float = Field(default=PROTON_ELECTRON_MASS_RATIO, gt=0.0)
    total_momentum: tuple[float, float, float] = (0.0, 0.0, 0.0)
    k_max: float = Field(default=20.0, gt=0.0)
    n_bins: int = Field(default=2048, ge=MIN_BINS)


class LatticeRunConfig(RunConfig):
    subcommand: Literal["lattice"] = "lattice"
    n_sites: int = Field(default=64, ge=MIN_SITES, le=MAX_SITES)
    box_length: float = Field(default=40.0, gt=0.0)
    decay: float | None = Field(default=None, gt=0.0)
    decays: tuple[float, ...] | None = None
    com_index: int = 0
    mass_ratio: float = Field(default=1.0, gt=0.0)
    hbar: float = Field(default=1.0, gt=0.0)
    workers: int = Field(default=1, ge=1)

    @field_validator("n_sites")
    @classmethod
    def validate_even(cls, v: int) -> int:
        if v % 2:
            raise ValueError(f"n_sites must be even, got {v}")
        return v

    @field_validator("decays")
    @classmethod
    def validate_decays(cls, v: tuple[float, ...] | None) -> tuple[float, ...] | None:
        if v is not None and (not v or any(a <= 0 for a in v)):
            raise ValueError("decays must be a non-empty list of positive lengths")
        return v

    @model_validator(mode="after")
    def one_decay_mode(self) -> LatticeRunConfig:
        if (self.decay is None) == (self.decays is None):
            raise ValueError("give exactly one of --decay or --decays")
        return self

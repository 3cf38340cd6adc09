"""JSON state file schema.

A state file is an object with integer ``dim_u`` and ``dim_v`` and two
row-major arrays ``re`` and ``im`` of length dim_u * dim_v holding the real and
imaginary parts of the coefficient matrix d.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pydantic
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hydrogen_entanglement.bipartite import PureBipartiteState
from hydrogen_entanglement.utils.errors import ValidationError

INPUT_NORM_TOL = 1e-6


class StateDocument(BaseModel):
    """On-disk representation of a pure bipartite state."""

    model_config = ConfigDict(extra="forbid", strict=False)

    dim_u: int = Field(ge=1)
    dim_v: int = Field(ge=1)
    re: list[float]
    im: list[float]

    @model_validator(mode="after")
    def check_lengths(self) -> StateDocument:
        expected = self.dim_u * self.dim_v
        if len(self.re) != expected or len(self.im) != expected:
            raise ValueError(
                f"re and im must each hold dim_u * dim_v = {expected} values, "
                f"got {len(self.re)} and {len(self.im)}"
            )
        return self

    def to_matrix(self) -> np.ndarray:
        d = np.asarray(self.re, dtype=np.float64) + 1j * np.asarray(self.im, dtype=np.float64)
        return d.reshape(self.dim_u, self.dim_v)

    @classmethod
    def from_state(cls, state: PureBipartiteState) -> StateDocument:
        flat = state.d.reshape(-1)
        return cls(
            dim_u=state.dim_u,
            dim_v=state.dim_v,
            re=[float(x) for x in flat.real],
            im=[float(x) for x in flat.imag],
        )


def parse_state_document(text: str, *, norm_tol: float = INPUT_NORM_TOL) -> PureBipartiteState:
    """Parse and validate a JSON state document.

    Args:
        text: JSON text
        norm_tol: States whose norm is within this distance of 1 are
            renormalized with a warning; others are rejected

    Returns:
        Validated PureBipartiteState

    Raises:
        ValidationError: On malformed JSON, schema violations or a bad norm
    """
    try:
        document = StateDocument.model_validate_json(text)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first.get("loc", ())) or "document"
        raise ValidationError(
            f"Invalid state file at '{location}': {first.get('msg')}",
            invariant="state_schema",
            details={"errors": e.error_count(), "location": location},
        ) from e
    return PureBipartiteState.from_matrix(document.to_matrix(), renormalize_tol=norm_tol)


def load_state_json(source: str | Path, *, norm_tol: float = INPUT_NORM_TOL) -> PureBipartiteState:
    """Read a state from a file path, or from JSON text when ``source`` starts with '{'."""
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return parse_state_document(source, norm_tol=norm_tol)
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(
            f"Cannot read state file {path}: {e.strerror or e}",
            invariant="input_readable",
            details={"path": str(path)},
        ) from e
    return parse_state_document(text, norm_tol=norm_tol)


def dump_state_json(state: PureBipartiteState) -> str:
    """Serialize a state to JSON text with sorted keys."""
    return json.dumps(StateDocument.from_state(state).model_dump(), sort_keys=True)

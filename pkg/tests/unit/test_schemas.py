"""Unit tests for state file and run configuration schemas."""

import json

import numpy as np
import pydantic
import pytest

from hydrogen_entanglement.bipartite import random_state
from hydrogen_entanglement.schemas.run import (
    HydrogenRunConfig,
    LatticeRunConfig,
    RunConfig,
    SchmidtRunConfig,
)
from hydrogen_entanglement.schemas.state import (
    StateDocument,
    dump_state_json,
    load_state_json,
    parse_state_document,
)
from hydrogen_entanglement.utils.errors import ValidationError


class TestStateDocument:
    """Tests for parsing JSON state files."""

    def test_loads_bell_fixture(self, fixtures_dir):
        """Test that the Bell fixture becomes diag(1/sqrt2, 1/sqrt2)."""
        state = load_state_json(fixtures_dir / "bell_state.json")
        np.testing.assert_allclose(state.d, np.eye(2) / np.sqrt(2.0))
        assert state.warnings == ()

    def test_loads_inline_json(self):
        """Test that JSON text is accepted in place of a path."""
        state = load_state_json('{"dim_u": 1, "dim_v": 1, "re": [0.0], "im": [1.0]}')
        assert state.d[0, 0] == 1j

    def test_row_major_layout(self, fixtures_dir):
        """Test that re/im are read row by row."""
        state = load_state_json(fixtures_dir / "product_state.json")
        assert state.d.shape == (2, 3)
        assert state.d[1, 0] == pytest.approx(0.36)

    def test_renormalizes_near_unit_norm(self, fixtures_dir):
        """Test that a norm off by 1e-7 is rescaled with a warning."""
        state = load_state_json(fixtures_dir / "unnormalized_state.json")
        assert abs(state.norm - 1.0) <= 1e-14
        assert len(state.warnings) == 1

    def test_rejects_malformed_json(self, fixtures_dir):
        """Test that truncated JSON is a schema error."""
        with pytest.raises(ValidationError) as exc_info:
            load_state_json(fixtures_dir / "malformed.json")
        assert exc_info.value.details["invariant"] == "state_schema"

    def test_rejects_wrong_lengths(self):
        """Test that re must hold dim_u * dim_v values."""
        text = json.dumps({"dim_u": 2, "dim_v": 2, "re": [1.0], "im": [0.0]})
        with pytest.raises(ValidationError):
            parse_state_document(text)

    def test_rejects_extra_keys(self):
        """Test that unknown fields are refused."""
        text = json.dumps({"dim_u": 1, "dim_v": 1, "re": [1.0], "im": [0.0], "name": "x"})
        with pytest.raises(ValidationError):
            parse_state_document(text)

    def test_rejects_far_from_normalized(self):
        """Test that a norm of 2 is not renormalized."""
        text = json.dumps({"dim_u": 1, "dim_v": 1, "re": [2.0], "im": [0.0]})
        with pytest.raises(ValidationError) as exc_info:
            parse_state_document(text)
        assert exc_info.value.details["invariant"] == "unit_norm"

    def test_missing_file(self, tmp_path):
        """Test that an unreadable path is reported as a validation error."""
        with pytest.raises(ValidationError) as exc_info:
            load_state_json(tmp_path / "absent.json")
        assert exc_info.value.details["invariant"] == "input_readable"

    def test_dump_then_load(self):
        """Test that a dumped state loads back unchanged."""
        state = random_state(2, 3, seed=4)
        loaded = load_state_json(dump_state_json(state))
        np.testing.assert_array_equal(loaded.d, state.d)

    def test_document_to_matrix(self):
        """Test StateDocument.to_matrix for a complex entry."""
        doc = StateDocument(dim_u=1, dim_v=2, re=[0.6, 0.0], im=[0.0, 0.8])
        np.testing.assert_array_equal(doc.to_matrix(), [[0.6, 0.8j]])


class TestRunConfig:
    """Tests for CLI run configurations."""

    def test_summary_next_to_output(self):
        """Test that the summary defaults to <stem>.summary.json."""
        config = RunConfig(subcommand="schmidt", out="results/table.csv")
        assert config.summary_target() == "results/table.summary.json"

    def test_summary_to_stderr_with_stdout_table(self):
        """Test that '-' output sends the summary to stderr."""
        assert RunConfig(subcommand="schmidt").summary_target() == "-"
        assert RunConfig(subcommand="schmidt", summary="s.json").summary_target() == "s.json"

    @pytest.mark.parametrize("tol", [0.0, 1e-2])
    def test_tolerance_range(self, tol):
        """Test that --tol must lie in (0, 1e-3]."""
        with pytest.raises(pydantic.ValidationError):
            SchmidtRunConfig(input="state.json", tol=tol)

    def test_hydrogen_bins(self):
        """Test that fewer than 16 bins are refused."""
        with pytest.raises(pydantic.ValidationError):
            HydrogenRunConfig(n_bins=8)

    def test_lattice_needs_exactly_one_decay_mode(self):
        """Test that decay and decays are mutually exclusive and one is required."""
        with pytest.raises(pydantic.ValidationError):
            LatticeRunConfig()
        with pytest.raises(pydantic.ValidationError):
            LatticeRunConfig(decay=1.0, decays=(1.0, 2.0))
        assert LatticeRunConfig(decays=(1.0, 2.0)).decays == (1.0, 2.0)

    @pytest.mark.parametrize("n_sites", [63, 4, 2048])
    def test_lattice_sizes(self, n_sites):
        """Test odd, too small and too large lattices."""
        with pytest.raises(pydantic.ValidationError):
            LatticeRunConfig(n_sites=n_sites, decay=1.0)

    def test_configs_are_frozen(self):
        """Test that a validated config cannot be changed."""
        config = LatticeRunConfig(decay=1.0)
        with pytest.raises(pydantic.ValidationError):
            config.decay = 2.0  # type: ignore[misc]

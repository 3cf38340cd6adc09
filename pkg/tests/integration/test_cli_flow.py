"""Integration tests for the command-line flow: arguments to files and exit codes."""

import io
import json
import math

import pytest

from hydrogen_entanglement.export import (
    read_radial_csv,
    read_scan_csv,
    read_schmidt_csv,
    read_spectrum_csv,
)


class TestSchmidtCommand:
    """Tests for `hydrogen-entanglement schmidt`."""

    def test_bell_state_to_files(self, run_cli, fixtures_dir, tmp_path):
        """Test that the Bell fixture gives purity 1/2 and entropy ln 2."""
        out = tmp_path / "bell.csv"
        result = run_cli(["schmidt", str(fixtures_dir / "bell_state.json"), "--out", str(out)])
        assert result.exit_code == 0
        table = read_schmidt_csv(out)
        assert table.rank == 2
        summary = json.loads((tmp_path / "bell.summary.json").read_text())
        assert summary["format_version"] == 1
        assert summary["purity"] == pytest.approx(0.5, abs=1e-12)
        assert summary["entropy"] == pytest.approx(math.log(2.0), abs=1e-9)
        assert summary["warnings"] == []

    def test_product_state_to_stdout(self, run_cli, fixtures_dir):
        """Test that '-' writes the table to stdout and the summary to stderr."""
        result = run_cli(["schmidt", str(fixtures_dir / "product_state.json")])
        assert result.exit_code == 0
        table = read_schmidt_csv(io.StringIO(result.stdout))
        assert table.rank == 1
        assert '"rank": 1' in result.stderr

    def test_stderr_summary_is_parseable_with_debug_logging(
        self, run_cli, fixtures_dir, monkeypatch
    ):
        """Test that LOG_LEVEL=DEBUG does not interleave log lines with a stderr summary."""
        monkeypatch.setenv("LOG_LEVEL", "DEBUG")
        result = run_cli(["schmidt", str(fixtures_dir / "unnormalized_state.json")])
        assert result.exit_code == 0
        summary = json.loads(result.stderr)
        assert summary["rank"] == 2
        assert len(summary["warnings"]) == 1

    def test_explicit_summary_path(self, run_cli, fixtures_dir, tmp_path):
        """Test that --summary overrides the derived path."""
        summary_path = tmp_path / "nested" / "s.json"
        result = run_cli(
            [
                "schmidt",
                str(fixtures_dir / "unnormalized_state.json"),
                "--out",
                str(tmp_path / "t.csv"),
                "--summary",
                str(summary_path),
            ]
        )
        assert result.exit_code == 0
        summary = json.loads(summary_path.read_text())
        assert len(summary["warnings"]) == 1

    def test_identical_runs_identical_bytes(self, run_cli, fixtures_dir, tmp_path):
        """Test that two runs produce byte-identical outputs."""
        for name in ("a", "b"):
            run_cli(["schmidt", str(fixtures_dir / "bell_state.json"), "--out", str(tmp_path / f"{name}.csv")])
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        assert (tmp_path / "a.summary.json").read_bytes() == (tmp_path / "b.summary.json").read_bytes()

    def test_malformed_input_exits_2(self, run_cli, fixtures_dir):
        """Test that a malformed JSON file is a validation error."""
        result = run_cli(["schmidt", str(fixtures_dir / "malformed.json")])
        assert result.exit_code == 2
        error = result.error()
        assert error["type"] == "ValidationError"
        assert error["details"]["invariant"] == "state_schema"
        assert result.stdout == ""

    def test_tolerance_out_of_range_exits_2(self, run_cli, fixtures_dir):
        """Test that --tol above 1e-3 is rejected before any computation."""
        result = run_cli(["schmidt", str(fixtures_dir / "bell_state.json"), "--tol", "0.5"])
        assert result.exit_code == 2
        assert result.error()["details"]["field"] == "tol"

    def test_non_convergence_exits_3(self, run_cli, tmp_path, monkeypatch):
        """Test that an eigensolver failure maps to exit code 3."""
        monkeypatch.setenv("EIG_METHOD", "jacobi")
        monkeypatch.setenv("EIG_MAX_SWEEPS", "1")
        state = tmp_path / "dense.json"
        values = [math.sin(1.0 + i * i) for i in range(36)]
        norm = math.sqrt(sum(v * v for v in values))
        state.write_text(
            json.dumps(
                {"dim_u": 6, "dim_v": 6, "re": [v / norm for v in values], "im": [0.0] * 36}
            )
        )
        result = run_cli(["schmidt", str(state)])
        assert result.exit_code == 3
        assert result.error()["type"] == "NumericalFailure"

    def test_bad_environment_is_configuration_error(self, run_cli, fixtures_dir, monkeypatch):
        """Test that an out-of-range TOL_ variable exits with code 2."""
        monkeypatch.setenv("TOL_RANK", "5")
        result = run_cli(["schmidt", str(fixtures_dir / "bell_state.json")])
        assert result.exit_code == 2
        assert result.error()["category"] == "configuration"


class TestHydrogenCommand:
    """Tests for `hydrogen-entanglement hydrogen`."""

    def test_default_run(self, run_cli, tmp_path):
        """Test that the default pipeline reports Delta p = 1 and unit trace."""
        out = tmp_path / "hydrogen.csv"
        result = run_cli(["hydrogen", "--n-bins", "512", "--out", str(out)])
        assert result.exit_code == 0
        table = read_radial_csv(out)
        assert table.k.size == 512
        summary = json.loads((tmp_path / "hydrogen.summary.json").read_text())
        assert summary["delta_p"] == 1.0
        assert summary["delta_p_quadrature"] == pytest.approx(1.0, abs=1e-8)
        assert summary["trace_check"] == pytest.approx(1.0, abs=1e-3)
        assert summary["trace_quadrature"] == pytest.approx(1.0, abs=1e-8)
        assert summary["warnings"] == []

    def test_boosted_run(self, run_cli, tmp_path):
        """Test that <p> follows (m_e/M) P with an unchanged width."""
        out = tmp_path / "boosted.csv"
        result = run_cli(
            [
                "hydrogen",
                "--mass-ratio",
                "1",
                "--total-momentum",
                "0",
                "0",
                "3",
                "--n-bins",
                "64",
                "--out",
                str(out),
            ]
        )
        assert result.exit_code == 0
        summary = json.loads((tmp_path / "boosted.summary.json").read_text())
        assert summary["mean_momentum"] == pytest.approx([0.0, 0.0, 1.5], abs=1e-6)
        assert summary["expected_mean_momentum"] == [0.0, 0.0, 1.5]
        assert summary["lab_delta_p"] == pytest.approx(1.0, abs=1e-6)

    def test_short_cutoff_warns(self, run_cli, tmp_path):
        """Test that a truncating k_max is reported in the summary."""
        out = tmp_path / "short.csv"
        assert run_cli(["hydrogen", "--k-max", "2", "--n-bins", "64", "--out", str(out)]).exit_code == 0
        summary = json.loads((tmp_path / "short.summary.json").read_text())
        assert summary["warnings"]

    def test_too_few_bins_exits_2(self, run_cli):
        """Test that --n-bins below 16 is a validation error."""
        result = run_cli(["hydrogen", "--n-bins", "4"])
        assert result.exit_code == 2


class TestLatticeCommand:
    """Tests for `hydrogen-entanglement lattice`."""

    def test_single_decay(self, run_cli, tmp_path):
        """Test the N = 64 consistency run end to end."""
        out = tmp_path / "lattice.csv"
        result = run_cli(
            ["lattice", "--n-sites", "64", "--box-length", "40", "--decay", "1", "--out", str(out)]
        )
        assert result.exit_code == 0
        dist = read_spectrum_csv(out)
        assert dist.n_sites == 64
        summary = json.loads((tmp_path / "lattice.summary.json").read_text())
        assert summary["mode"] == "single"
        assert summary["consistency"]["max_deviation"] <= 1e-9
        assert summary["schmidt"]["purity"] == pytest.approx(
            summary["spectral"]["purity"], abs=1e-9
        )

    def test_decay_scan(self, run_cli, tmp_path):
        """Test that the scan table is monotone over the resolved regime."""
        out = tmp_path / "scan.csv"
        result = run_cli(
            [
                "lattice",
                "--n-sites",
                "64",
                "--box-length",
                "64",
                "--decays",
                "2,4,6,8,12",
                "--workers",
                "2",
                "--out",
                str(out),
            ]
        )
        assert result.exit_code == 0
        rows = read_scan_csv(out)
        assert [r.regime_flag for r in rows] == [
            "under_resolved",
            "resolved",
            "resolved",
            "resolved",
            "box_limited",
        ]
        summary = json.loads((tmp_path / "scan.summary.json").read_text())
        assert summary["delta_p_decreasing_in_regime"] is True
        assert summary["resolved_rows"] == 3
        assert summary["delta_p_times_decay"]["spread"] < 0.2
        assert len(summary["warnings"]) == 2

    def test_non_periodic_com_exits_2(self, run_cli):
        """Test that a non-representable COM momentum is a validation error."""
        result = run_cli(
            ["lattice", "--decay", "1", "--com-index", "1", "--mass-ratio", "1836.15267"]
        )
        assert result.exit_code == 2
        assert result.error()["category"] == "periodicity"

    def test_odd_sites_exits_2(self, run_cli):
        """Test that an odd lattice is rejected."""
        assert run_cli(["lattice", "--n-sites", "63", "--decay", "1"]).exit_code == 2

    def test_decay_modes_are_exclusive(self, run_cli):
        """Test that argparse refuses --decay together with --decays."""
        with pytest.raises(SystemExit) as exc_info:
            run_cli(["lattice", "--decay", "1", "--decays", "1,2"])
        assert exc_info.value.code == 2

"""Handler for the ``lattice`` subcommand: 1D pair analog and decay scans."""

from __future__ import annotations

from hydrogen_entanglement.bipartite import entanglement_report
from hydrogen_entanglement.export import write_scan_csv, write_spectrum_csv
from hydrogen_entanglement.handlers.base import BaseCommandHandler
from hydrogen_entanglement.lattice import (
    build_state,
    consistency_report,
    entanglement_vs_decay_scan,
    regime_flag,
    scan_constant,
)
from hydrogen_entanglement.schemas.run import LatticeRunConfig
from hydrogen_entanglement.utils.errors import ValidationError


class LatticeHandler(BaseCommandHandler[LatticeRunConfig]):
    """Single-decay consistency run, or a scan over several decays."""

    COMMAND = "lattice"

    def execute(self, config: LatticeRunConfig) -> None:
        if config.decays is not None:
            self._scan(config, list(config.decays))
        elif config.decay is not None:
            self._single(config, config.decay)

    def _parameters(self, config: LatticeRunConfig) -> dict[str, object]:
        return {
            "n_sites": config.n_sites,
            "box_length": config.box_length,
            "com_index": config.com_index,
            "mass_ratio": config.mass_ratio,
            "hbar": config.hbar,
            "tol": config.tol,
        }

    def _single(self, config: LatticeRunConfig, decay: float) -> None:
        lattice_settings = self.settings.lattice
        pair = build_state(
            config.n_sites,
            config.box_length,
            decay,
            config.com_index,
            config.mass_ratio,
            max_sites=lattice_settings.max_sites,
        )
        report = consistency_report(
            pair,
            config.tol,
            hbar=config.hbar,
            clamp_tol=self.settings.tolerances.clamp,
            imaginary_tol=self.settings.tolerances.imaginary_residue,
            edge_guard_bins=lattice_settings.edge_guard_bins,
            edge_mass_warning=lattice_settings.edge_mass_warning,
            eigensolver=self.settings.eigensolver,
        )
        entanglement = entanglement_report(report.schmidt)

        self.write_table(config, lambda stream: write_spectrum_csv(stream, report.spectrum))
        self.write_summary(
            config,
            {
                "command": self.COMMAND,
                "mode": "single",
                "parameters": {**self._parameters(config), "decay": decay},
                "regime_flag": regime_flag(decay, config.n_sites, config.box_length),
                "electron_shift_index": pair.electron_shift_index,
                "schmidt": entanglement.to_dict(),
                "spectral": {
                    "purity": report.spectral_purity,
                    "delta_p": report.delta_p,
                    "mean_momentum": report.spectrum.mean_momentum(),
                },
                "consistency": report.to_dict(),
                "warnings": list(report.warnings),
            },
        )

    def _scan(self, config: LatticeRunConfig, decays: list[float]) -> None:
        if config.n_sites > self.settings.lattice.max_sites:
            raise ValidationError(
                f"n_sites {config.n_sites} exceeds LATTICE_MAX_SITES",
                invariant="lattice_size",
            )
        rows = entanglement_vs_decay_scan(
            config.n_sites,
            config.box_length,
            decays,
            com_index=config.com_index,
            mass_ratio=config.mass_ratio,
            hbar=config.hbar,
            tol=config.tol,
            workers=config.workers,
            eigensolver=self.settings.eigensolver,
        )
        resolved = [r for r in rows if r.regime_flag == "resolved"]
        ordered = sorted(resolved, key=lambda r: r.decay)
        monotone = all(
            a.delta_p > b.delta_p for a, b in zip(ordered, ordered[1:], strict=False)
        )
        constant = scan_constant(rows) if resolved else None
        warnings = [
            f"decay {r.decay:g} is {r.regime_flag.replace('_', ' ')}"
            for r in rows
            if r.regime_flag != "resolved"
        ]

        self.write_table(config, lambda stream: write_scan_csv(stream, rows))
        self.write_summary(
            config,
            {
                "command": self.COMMAND,
                "mode": "scan",
                "parameters": self._parameters(config),
                "rows": len(rows),
                "resolved_rows": len(resolved),
                "delta_p_decreasing_in_regime": monotone,
                "delta_p_times_decay": constant,
                "warnings": warnings,
            },
        )

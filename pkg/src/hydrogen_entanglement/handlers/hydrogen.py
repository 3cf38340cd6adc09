"""Handler for the ``hydrogen`` subcommand: analytic 1s pipeline."""

from __future__ import annotations

import math

from hydrogen_entanglement.export import write_radial_csv
from hydrogen_entanglement.handlers.base import BaseCommandHandler
from hydrogen_entanglement.homogeneous import occupation_stddev
from hydrogen_entanglement.hydrogen import (
    HydrogenParams,
    delta_p,
    delta_p_quadrature,
    lab_frame_moments,
    radial_spectrum_export,
    trace_integral,
)
from hydrogen_entanglement.schemas.run import HydrogenRunConfig


class HydrogenHandler(BaseCommandHandler[HydrogenRunConfig]):
    """Radial momentum table plus closed-form and quadrature checks."""

    COMMAND = "hydrogen"

    def execute(self, config: HydrogenRunConfig) -> None:
        params = HydrogenParams.from_mass_ratio(
            config.mass_ratio,
            a0=config.a0,
            hbar=config.hbar,
            total_momentum=config.total_momentum,
        )
        table = radial_spectrum_export(
            params,
            config.k_max,
            config.n_bins,
            tail_warning_mass=self.settings.hydrogen.tail_warning_mass,
        )
        lab = lab_frame_moments(params)
        self.logger.info(
            "Hydrogen pipeline computed",
            trace=table.trace(),
            tail_mass=table.tail_mass,
            lab_delta_p=lab.delta_p,
        )

        self.write_table(config, lambda stream: write_radial_csv(stream, table))
        self.write_summary(
            config,
            {
                "command": self.COMMAND,
                "parameters": {
                    "a0": params.a0,
                    "hbar": params.hbar,
                    "mass_ratio": config.mass_ratio,
                    "total_momentum": list(params.total_momentum),
                    "k_max": config.k_max,
                    "n_bins": config.n_bins,
                },
                "delta_p": delta_p(params),
                "delta_p_quadrature": delta_p_quadrature(params),
                "delta_p_radial": occupation_stddev(table),
                "trace_check": table.trace(),
                "trace_quadrature": trace_integral(math.inf, params.a0),
                "tail_mass": table.tail_mass,
                "mean_momentum": lab.mean,
                "expected_mean_momentum": params.momentum_shift,
                "lab_delta_p": lab.delta_p,
                "lab_norm": lab.norm,
                "warnings": list(table.warnings),
            },
        )

"""Handler for the ``schmidt`` subcommand: JSON state in, Schmidt table out."""

from __future__ import annotations

from hydrogen_entanglement.bipartite import entanglement_report, schmidt
from hydrogen_entanglement.export import write_schmidt_csv
from hydrogen_entanglement.handlers.base import BaseCommandHandler
from hydrogen_entanglement.schemas.run import SchmidtRunConfig
from hydrogen_entanglement.schemas.state import load_state_json


class SchmidtHandler(BaseCommandHandler[SchmidtRunConfig]):
    """Decompose a pure bipartite state read from a JSON file."""

    COMMAND = "schmidt"

    def execute(self, config: SchmidtRunConfig) -> None:
        state = load_state_json(config.input, norm_tol=config.norm_tol)
        self.logger.info("Loaded state", dim_u=state.dim_u, dim_v=state.dim_v)

        decomposition = schmidt(
            state,
            config.tol,
            clamp_tol=self.settings.tolerances.clamp,
            eigensolver=self.settings.eigensolver,
        )
        report = entanglement_report(decomposition)

        self.write_table(config, lambda stream: write_schmidt_csv(stream, decomposition))
        self.write_summary(
            config,
            {
                "command": self.COMMAND,
                "dim_u": state.dim_u,
                "dim_v": state.dim_v,
                "tol": config.tol,
                "rank": report.schmidt_rank,
                "purity": report.purity,
                "entropy": report.entropy,
                "participation": report.participation_number,
                "max_lambda": report.max_lambda,
                "effective_rank": report.effective_rank,
                "warnings": list(state.warnings),
            },
        )

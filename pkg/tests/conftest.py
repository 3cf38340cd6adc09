"""Shared fixtures for unit and integration tests."""

from __future__ import annotations

import os
from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pytest
import structlog

from hydrogen_entanglement import configure_default_logging
from hydrogen_entanglement.bipartite import PureBipartiteState

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the JSON state fixtures."""
    return FIXTURES


@pytest.fixture
def bell_state() -> PureBipartiteState:
    """d = diag(1/sqrt 2, 1/sqrt 2): maximally entangled qubit pair."""
    return PureBipartiteState(np.diag([1.0, 1.0]) / np.sqrt(2.0))


@pytest.fixture
def product_state() -> PureBipartiteState:
    """Unentangled |u>|v> with complex factors of different sizes."""
    u = np.array([1.0, 2.0j, -0.5])
    v = np.array([0.3, -1.0, 0.5 + 0.5j, 2.0])
    return PureBipartiteState.product(u, v)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for reproducible random inputs."""
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Keep settings independent of the developer's environment and .env file."""
    for prefix in ("LOG_", "TOL_", "EIG_", "HYDROGEN_", "LATTICE_"):
        for key in list(os.environ):
            if key.startswith(prefix):
                monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)


@pytest.fixture(autouse=True)
def restore_logging_config() -> Iterator[None]:
    """Undo CLI logging setup so later tests don't log to a closed captured stream."""
    yield
    structlog.reset_defaults()
    configure_default_logging()

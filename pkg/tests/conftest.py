import logging
from pathlib import Path

import pytest

from presets.loader import load_params
from schemas.params import BoundaryKind, SuspensionParams


@pytest.fixture
def stress_free_params() -> SuspensionParams:
    return load_params("stress_free_top")


@pytest.fixture
def rigid_params() -> SuspensionParams:
    return load_params("rigid_top")


@pytest.fixture
def no_cells() -> SuspensionParams:
    """Uniform suspension: the problem reduces to classical Rayleigh-Benard convection."""
    return SuspensionParams(swim_speed=0.0, rayleigh_bio=0.0, rayleigh_thermal=0.0)


@pytest.fixture
def benard_rigid_rigid(no_cells: SuspensionParams) -> SuspensionParams:
    return no_cells.model_copy(update={"top_boundary": BoundaryKind.RIGID, "bottom_boundary": BoundaryKind.RIGID})


@pytest.fixture
def benard_rigid_free(no_cells: SuspensionParams) -> SuspensionParams:
    return no_cells.model_copy(update={"top_boundary": BoundaryKind.FREE, "bottom_boundary": BoundaryKind.RIGID})


@pytest.fixture
def benard_free_free(no_cells: SuspensionParams) -> SuspensionParams:
    return no_cells.model_copy(update={"top_boundary": BoundaryKind.FREE, "bottom_boundary": BoundaryKind.FREE})


@pytest.fixture
def logger() -> logging.Logger:
    return logging.getLogger("tests")


@pytest.fixture
def problem_file(tmp_path: Path):
    def write(text: str) -> Path:
        path = tmp_path / "problem.cfg"
        path.write_text(text, encoding="utf-8")
        return path

    return write

import csv
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from schemas.neutral import NeutralCurve
from schemas.profiles import BasicState
from schemas.stability import GrowthResult

SIGNIFICANT_DIGITS = 9


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.{SIGNIFICANT_DIGITS}g}"


def write_csv(path: Path, columns: dict[str, Sequence[Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns.keys())
        for row in zip(*columns.values()):
            writer.writerow(format_value(value) for value in row)
    return path


def basic_state_columns(state: BasicState) -> dict[str, Sequence[Any]]:
    return {name: list(values) for name, values in state.columns().items()}


def curve_columns(curve: NeutralCurve) -> dict[str, Sequence[Any]]:
    points = sorted(curve.points, key=lambda point: point.k)
    return {
        "k": [point.k for point in points],
        "R": [point.rayleigh for point in points],
        "Im_sigma": [point.im_sigma for point in points],
        "branch": [point.branch.value if point.branch else "gap" for point in points],
        "mode": [point.mode for point in points],
    }


def eigenfunction_columns(result: GrowthResult) -> dict[str, Sequence[Any]]:
    columns: dict[str, Sequence[Any]] = {"z": list(result.z)}
    for name, values in (("W", result.W), ("Phi", result.Phi), ("Theta", result.Theta), ("T", result.T)):
        columns[f"Re_{name}"] = list(values.real)
        columns[f"Im_{name}"] = list(values.imag)
    return columns

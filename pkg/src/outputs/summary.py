import json
from pathlib import Path
from typing import Any

from schemas.common import RunManifest


def write_json(path: Path, payload: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def write_manifest(directory: Path, manifest: RunManifest) -> Path:
    path = directory / "manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def write_residual_history(directory: Path, history: list[float], message: str) -> Path:
    return write_json(directory / "residual_history.json", {"message": message, "residuals": history})

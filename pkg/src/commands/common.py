import functools
import logging
import time
from collections.abc import Callable
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, TypeVar

import click

from config import VERSION, get_settings
from exceptions.base import BiostabError
from exceptions.solver import GrowthRateConvergenceError
from outputs.summary import write_manifest, write_residual_history
from presets.loader import load_params
from schemas.common import RunManifest
from schemas.params import BoundaryKind, SuspensionParams
from validators.params import validate

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

BOUNDARY_CHOICE = click.Choice([kind.value for kind in BoundaryKind])


def config_option(func: F) -> F:
    return click.option(
        "--config",
        "config",
        required=True,
        help="Problem file path or the name of a shipped preset.",
    )(func)


def out_option(func: F) -> F:
    return click.option(
        "--out",
        "out",
        type=click.Path(file_okay=False, path_type=Path),
        default=None,
        help="Output directory (default: BIOSTAB_OUTPUT_DIR).",
    )(func)


def top_option(func: F) -> F:
    return click.option("--top", type=BOUNDARY_CHOICE, default=None, help="Override the top boundary.")(func)


def parse_thetas(value: str | None) -> list[float]:
    if value is None:
        return []
    try:
        return [float(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise click.BadParameter(f"expected a comma-separated list of angles ({e})", param_hint="--theta") from e


def load_problem(config: str, top: str | None = None, **overrides: Any) -> SuspensionParams:
    params = load_params(config)
    update = {key: value for key, value in overrides.items() if value is not None}
    if top is not None:
        update["top_boundary"] = BoundaryKind(top)
    if update:
        params = validate(params.model_copy(update=update))
    return params


def output_dir(out: Path | None) -> Path:
    directory = out or Path(get_settings().OUTPUT_DIR)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


class RunRecorder:
    """Times a command and writes its manifest.json"""

    def __init__(self, command: str, params: SuspensionParams, directory: Path):
        self.command = command
        self.params = params
        self.directory = directory
        self.started_at = datetime.now(timezone.utc)
        self._start = time.perf_counter()

    def finish(self, sweep_parameter: str | None = None, sweep_values: list[float] | None = None, **extra: Any) -> Path:
        manifest = RunManifest(
            command=self.command,
            params=self.params,
            sweep_parameter=sweep_parameter,
            sweep_values=sweep_values or [],
            output_dir=str(self.directory),
            version=VERSION,
            started_at=self.started_at,
            elapsed_seconds=time.perf_counter() - self._start,
            extra=extra,
        )
        return write_manifest(self.directory, manifest)


def handles_errors(func: F) -> F:
    """Turns library errors into a message on stderr and the error's exit code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except GrowthRateConvergenceError as e:
            directory = output_dir(kwargs.get("out"))
            path = write_residual_history(directory, e.residual_history, e.detail)
            logger.error(e.detail)
            click.echo(f"Error: {e.detail}\nResidual history: {path}", err=True)
            raise click.exceptions.Exit(e.exit_code) from e
        except BiostabError as e:
            logger.error(e.detail)
            click.echo(f"Error: {e.detail}", err=True)
            raise click.exceptions.Exit(e.exit_code) from e

    return wrapper  # type: ignore[return-value]

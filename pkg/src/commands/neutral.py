import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click

from config import get_settings
from outputs.plots import plot_curves
from outputs.summary import write_json
from outputs.tables import curve_columns, write_csv
from schemas.params import SuspensionParams, SweptParameter
from sweeps.dto import CurveRun
from sweeps.runner import CurveTask, SweepRunner

from .common import (
    RunRecorder,
    config_option,
    handles_errors,
    load_problem,
    out_option,
    output_dir,
    parse_thetas,
    top_option,
)

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


def curve_options(func: F) -> F:
    options = [
        click.option(
            "--sweep",
            "swept",
            type=click.Choice([item.value for item in SweptParameter]),
            default=SweptParameter.RAYLEIGH_BIO.value,
            help="Rayleigh number solved for; the other one stays at its config value.",
        ),
        click.option("--k-min", type=click.FloatRange(min=0, min_open=True), default=0.5, show_default=True),
        click.option("--k-max", type=click.FloatRange(min=0, min_open=True), default=10.0, show_default=True),
        click.option("--k-step", type=click.FloatRange(min=0, min_open=True), default=0.1, show_default=True),
        click.option("--branch", type=click.IntRange(1, 3), default=1, help="Mode of the seed eigenfunction."),
        click.option("--stationary", is_flag=True, help="Assume exchange of stabilities (real sigma)."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def emit(runs: list[CurveRun], directory: Path) -> list[Path]:
    paths = []
    curves = {}
    for run in runs:
        if run.curve is None:
            continue
        curves[run.theta_i] = run.curve
        paths.append(write_csv(directory / f"neutral_curve_theta_{run.theta_i:g}.csv", curve_columns(run.curve)))
    paths.append(write_json(directory / "summary.json", [run.to_dict() for run in runs]))
    paths.append(plot_curves(directory / "neutral_curves.svg", curves))
    return paths


def run_lines(
    params: SuspensionParams,
    thetas: list[float],
    directory: Path,
    jobs: int,
    swept: str,
    k_min: float,
    k_max: float,
    k_step: float,
    branch: int,
    stationary: bool,
) -> list[CurveRun]:
    task = CurveTask(
        params=params,
        which=SweptParameter(swept),
        k_range=(k_min, k_max),
        k_step=k_step,
        mode=branch,
        stationary=stationary,
    )
    runner = SweepRunner(task, logger, jobs)
    runs = runner.run_all(thetas)

    for path in emit(runs, directory):
        click.echo(f"Wrote {path}")
    for row in runner.get_summary():
        click.echo(
            f"theta_i={row['theta_i']:g}: k_c={row['k_c']} R_c={row['R_c']} "
            f"lambda_c={row['lambda_c']} {row['branch']} mode={row['mode']} [{row['status']}]",
        )
    if not any(run.is_successful for run in runs):
        click.echo("Error: no neutral curve could be traced", err=True)
        raise click.exceptions.Exit(3)
    return runs


@click.command("neutral-curve")
@config_option
@out_option
@top_option
@click.option("--theta", type=float, default=None, help="Override the incidence angle (degrees).")
@curve_options
@handles_errors
def neutral_curve_command(
    config: str,
    out: Path | None,
    top: str | None,
    theta: float | None,
    **curve: Any,
) -> None:
    """Trace one neutral curve and locate its critical point."""
    params = load_problem(config, top, incidence_angle_deg=theta)
    directory = output_dir(out)
    recorder = RunRecorder("neutral-curve", params, directory)
    runs = run_lines(params, [params.incidence_angle_deg], directory, 1, **curve)
    recorder.finish(curve["swept"], [params.incidence_angle_deg], errors={str(r.theta_i): r.errors for r in runs})


@click.command("sweep")
@config_option
@out_option
@top_option
@click.option("--theta", "theta", required=True, help="Comma-separated incidence angles in degrees, e.g. 0,20,40.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes (default: BIOSTAB_JOBS).")
@curve_options
@handles_errors
def sweep_command(
    config: str,
    out: Path | None,
    top: str | None,
    theta: str,
    jobs: int | None,
    **curve: Any,
) -> None:
    """Neutral curves for several incidence angles, overlaid in one plot."""
    thetas = parse_thetas(theta)
    params = load_problem(config, top)
    directory = output_dir(out)
    recorder = RunRecorder("sweep", params, directory)
    runs = run_lines(params, thetas, directory, jobs or get_settings().JOBS, **curve)
    recorder.finish(curve["swept"], thetas, errors={str(r.theta_i): r.errors for r in runs})

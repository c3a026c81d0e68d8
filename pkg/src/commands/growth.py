from pathlib import Path

import click
import numpy as np

from exceptions.solver import DegenerateEigenfunctionError
from outputs.tables import eigenfunction_columns, write_csv
from schemas.stability import GrowthSeed, Normalization
from solvers.basic_state import solve_basic_state
from solvers.stability import assemble, classify, growth_rate, mode_number

from .common import RunRecorder, config_option, handles_errors, load_problem, out_option, output_dir, top_option


@click.command("growth")
@config_option
@out_option
@top_option
@click.option(
    "--k",
    "k",
    type=click.FloatRange(min=0, min_open=True),
    required=True,
    help="Horizontal wavenumber (positive).",
)
@click.option("--rb", type=float, default=None, help="Bioconvection Rayleigh number (default: from config).")
@click.option("--rt", type=float, default=None, help="Thermal Rayleigh number (default: from config).")
@click.option("--theta", type=float, default=None, help="Override the incidence angle (degrees).")
@click.option("--mode", type=click.IntRange(min=1), default=1, help="Cells stacked vertically in the seed.")
@click.option("--sigma", "sigma_guess", type=complex, default=0j, help="Growth-rate seed, e.g. -3+1j.")
@click.option("--stationary", is_flag=True, help="Solve with real sigma (exchange of stabilities).")
@click.option(
    "--normalization",
    type=click.Choice([item.value for item in Normalization]),
    default=Normalization.VELOCITY.value,
)
@click.option("--eigenfunctions", is_flag=True, help="Write the eigenfunctions as CSV.")
@handles_errors
def growth_command(
    config: str,
    out: Path | None,
    top: str | None,
    k: float,
    rb: float | None,
    rt: float | None,
    theta: float | None,
    mode: int,
    sigma_guess: complex,
    stationary: bool,
    normalization: str,
    eigenfunctions: bool,
) -> None:
    """Growth rate and eigenfunctions of one normal mode."""
    params = load_problem(config, top, incidence_angle_deg=theta, rayleigh_bio=rb, rayleigh_thermal=rt)
    directory = output_dir(out)
    recorder = RunRecorder("growth", params, directory)

    problem = assemble(solve_basic_state(params), k, params.rayleigh_bio, params.rayleigh_thermal)
    result = growth_rate(
        problem,
        GrowthSeed(sigma=sigma_guess, mode=mode),
        stationary=stationary,
        normalization=Normalization(normalization),
    )

    click.echo(f"Re(sigma) = {result.sigma.real:.9g}")
    click.echo(f"Im(sigma) = {result.sigma.imag:.9g}")
    click.echo(f"branch = {classify(result).value}")
    try:
        click.echo(f"mode = {mode_number(result.W, float(np.max(np.abs(result.states))))}")
    except DegenerateEigenfunctionError:
        click.echo("mode = undefined (W vanishes)")
    click.echo(f"iterations = {result.iterations}")
    click.echo(f"equation residual = {result.equation_residual:.2e} on {result.mesh_nodes} nodes")

    if eigenfunctions:
        path = write_csv(directory / "eigenfunctions.csv", eigenfunction_columns(result))
        click.echo(f"Wrote {path}")
    recorder.finish(k=k, sigma=[result.sigma.real, result.sigma.imag], iterations=result.iterations)

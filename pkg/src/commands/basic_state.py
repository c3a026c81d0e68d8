from pathlib import Path

import click

from outputs.tables import basic_state_columns, write_csv
from solvers.basic_state import conservation_error, solve_basic_state, sublayer_position

from .common import RunRecorder, config_option, handles_errors, load_problem, out_option, output_dir, top_option


@click.command("basic-state")
@config_option
@out_option
@top_option
@click.option("--theta", type=float, default=None, help="Override the incidence angle (degrees).")
@handles_errors
def basic_state_command(config: str, out: Path | None, top: str | None, theta: float | None) -> None:
    """Solve the equilibrium profiles and write them as CSV."""
    params = load_problem(config, top, incidence_angle_deg=theta)
    directory = output_dir(out)
    recorder = RunRecorder("basic-state", params, directory)

    state = solve_basic_state(params)
    sublayer = sublayer_position(state)
    path = write_csv(directory / "basic_state.csv", basic_state_columns(state))

    click.echo(f"max(n_s) = {sublayer.peak_concentration:.9g}")
    click.echo(f"sublayer position = {sublayer.position:.9g}" + (" (uniform)" if sublayer.uniform else ""))
    click.echo(f"G_s(0) = {state.G_s[0]:.9g}")
    click.echo(f"mass error = {conservation_error(state):.3e}")
    click.echo(f"Wrote {path}")
    recorder.finish(
        shooting_residual=state.shooting_residual,
        iterations=state.iterations,
        sublayer_position=sublayer.position,
    )

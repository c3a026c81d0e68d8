import math

import click

from physics.optics import geometry_for

from .common import config_option, handles_errors, load_problem, top_option


@click.command("validate")
@config_option
@top_option
@handles_errors
def validate_command(config: str, top: str | None) -> None:
    """Check a problem file against every parameter invariant."""
    params = load_problem(config, top)
    geometry = geometry_for(params)
    for name, value in params.model_dump(mode="json").items():
        click.echo(f"{name} = {value}")
    click.echo(
        f"theta_0 = {math.degrees(geometry.refraction_angle_rad):.6g} deg, "
        f"cos(theta_0) = {geometry.cos_refraction:.6g}, slant = {geometry.slant_factor:.6g}",
    )
    click.echo("OK")

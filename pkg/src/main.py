import logging

import click

from commands import (
    basic_state_command,
    growth_command,
    neutral_curve_command,
    selftest_command,
    sweep_command,
    validate_command,
)
from config import VERSION, get_settings

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"

settings = get_settings()


@click.group()
@click.version_option(VERSION, prog_name="biostab")
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True, help="Logging level.")
def cli(log_level: str) -> None:
    """Onset of thermal phototactic bioconvection under oblique collimated light."""
    logging.basicConfig(level=log_level.upper(), format=LOG_FORMAT, force=True)
    logging.getLogger("matplotlib").setLevel(logging.WARNING)


cli.add_command(validate_command)
cli.add_command(basic_state_command)
cli.add_command(growth_command)
cli.add_command(neutral_curve_command)
cli.add_command(sweep_command)
cli.add_command(selftest_command)

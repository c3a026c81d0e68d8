import click

from oracles.selftest import run_selftest


@click.command("selftest")
def selftest_command() -> None:
    """Run the built-in oracles and print a pass/fail table."""
    cases = run_selftest()
    width = max(len(case.name) for case in cases)
    click.echo(f"{'case':<{width}}  {'expected':<22}  {'observed':<22}  result")
    for case in cases:
        verdict = "PASS" if case.passed else "FAIL"
        click.echo(f"{case.name:<{width}}  {case.expected:<22}  {case.observed:<22}  {verdict}")

    failed = sum(1 for case in cases if not case.passed)
    click.echo(f"{len(cases) - failed}/{len(cases)} passed")
    if failed:
        raise click.exceptions.Exit(3)

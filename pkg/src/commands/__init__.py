from .basic_state import basic_state_command
from .growth import growth_command
from .neutral import neutral_curve_command, sweep_command
from .params import validate_command
from .selftest import selftest_command

__all__ = [
    "basic_state_command",
    "growth_command",
    "neutral_curve_command",
    "selftest_command",
    "sweep_command",
    "validate_command",
]

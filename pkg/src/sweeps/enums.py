from enum import Enum


class RunStatus(str, Enum):
    """Outcome of one incidence-angle line of a sweep"""

    SUCCESS = "success"
    PARTIAL = "partial"
    FAILED = "failed"

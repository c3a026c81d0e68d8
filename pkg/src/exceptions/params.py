from pathlib import Path

from .base import BadInput


class ConfigParseError(BadInput):
    def __init__(self, path: Path, problems: list[tuple[int, str]]):
        self.path = path
        self.problems = problems
        details = "; ".join(f"line {line}: {message}" for line, message in problems)
        super().__init__(f"Cannot parse {path}: {details}")


class TaxisDomainError(BadInput):
    def __init__(self, intensity: float):
        super().__init__(f"Phototaxis function is undefined for negative intensity G={intensity:g}")


class MeshMismatchError(BadInput):
    def __init__(self, expected: int, got: int):
        super().__init__(f"Profile has {got} samples but the mesh has {expected} points")


class EmptySweepError(BadInput):
    def __init__(self) -> None:
        super().__init__("Sweep list is empty; pass at least one incidence angle with --theta")


class ConfigNotFoundError(BadInput):
    def __init__(self, path: Path):
        self.path = path
        super().__init__(f"Config file not found: {path}")

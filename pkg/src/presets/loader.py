import logging
from pathlib import Path
from typing import Any

import pydantic
from dotenv.parser import Binding, parse_stream

from exceptions.params import ConfigNotFoundError, ConfigParseError
from schemas.params import SuspensionParams
from validators.params import validate

from . import PRESET_SUFFIX, PRESETS_DIR


def _binding_line(binding: Binding) -> int:
    """Line of the key itself; the parser's mark sits before any blank lines consumed with it."""
    text = binding.original.string
    leading = text[: len(text) - len(text.lstrip())]
    return binding.original.line + leading.count("\n")


def available_presets() -> list[str]:
    return sorted(path.stem for path in PRESETS_DIR.glob(f"*{PRESET_SUFFIX}"))


def resolve_config(name_or_path: str | Path) -> Path:
    """A file path, or the name of a shipped preset (with or without the suffix)."""
    path = Path(name_or_path)
    if path.is_file():
        return path

    preset = PRESETS_DIR / path.name
    if preset.suffix != PRESET_SUFFIX:
        preset = preset.with_name(preset.name + PRESET_SUFFIX)
    if preset.is_file():
        return preset
    raise ConfigNotFoundError(path)


class ProblemFileLoader:
    """Reads flat `key = value` problem files into validated SuspensionParams"""

    def __init__(self, logger: logging.Logger):
        self.logger = logger
        self.problems: list[tuple[int, str]] = []

    def _collect(self, path: Path) -> tuple[dict[str, Any], dict[str, int]]:
        values: dict[str, Any] = {}
        lines: dict[str, int] = {}
        fields = SuspensionParams.model_fields

        with open(path, encoding="utf-8") as f:
            for binding in parse_stream(f):
                line = _binding_line(binding)
                if binding.error:
                    self.problems.append((line, f"cannot parse {binding.original.string.strip()!r}"))
                    continue
                if binding.key is None:
                    continue
                if binding.key not in fields:
                    self.problems.append((line, f"{binding.key}: unknown key"))
                    continue
                if binding.value is None or not binding.value.strip():
                    self.problems.append((line, f"{binding.key}: missing value"))
                    continue
                if binding.key in values:
                    self.problems.append((line, f"{binding.key}: duplicate key"))
                    continue
                values[binding.key] = binding.value.strip()
                lines[binding.key] = line
        return values, lines

    def load(self, name_or_path: str | Path) -> SuspensionParams:
        path = resolve_config(name_or_path)
        self.problems = []
        self.logger.info(f"Loading problem file: {path}")

        values, lines = self._collect(path)
        params: SuspensionParams | None = None
        try:
            params = SuspensionParams(**values)
        except pydantic.ValidationError as e:
            for error in e.errors():
                key = str(error["loc"][0]) if error["loc"] else "?"
                self.problems.append((lines.get(key, 0), f"{key}: {error['msg']}"))

        if self.problems or params is None:
            self.problems.sort()
            self.logger.error(f"Errors in {path.name}: {self.problems}")
            raise ConfigParseError(path, self.problems)

        return validate(params)


def load_params(name_or_path: str | Path, logger: logging.Logger | None = None) -> SuspensionParams:
    return ProblemFileLoader(logger or logging.getLogger(__name__)).load(name_or_path)

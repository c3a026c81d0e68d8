from pathlib import Path

PRESETS_DIR = Path(__file__).parent
PRESET_SUFFIX = ".cfg"

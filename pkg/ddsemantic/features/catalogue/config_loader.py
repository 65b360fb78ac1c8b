"""
Run configuration text format (TOML)

    [system]          physical parameters, e.g. lambda = 2000
    [simulation]      dt, trials, seed, time_grid, block_size, mode, ...
    [[interventions]] parameter, range_min, range_max, grid_points, scale
    [temporal]        tau_grid
    [output]          directory, formats, interpolate_critical

Omitted sections and keys fall back to the default scenario.
"""

import re
import tomllib
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import tomli_w
from pydantic import ValidationError

from ddsemantic.core.exceptions import ConfigError
from ddsemantic.features.catalogue.schemas import RunConfig

_DECODE_POSITION = re.compile(r"line (\d+)")
_TABLE_ARRAY = re.compile(r"^\s*\[\[\s*([^\[\]]+?)\s*\]\]")
_TABLE = re.compile(r"^\s*\[\s*([^\[\]]+?)\s*\]")
_ASSIGNMENT = re.compile(r'^\s*"?([\w\-]+)"?\s*=')


def _dotted(name: str) -> Tuple[str, ...]:
    return tuple(part.strip().strip('"') for part in name.split("."))


def _line_of(text: str, key_path: Sequence) -> Optional[int]:
    """
    Line of the table header or assignment a validation location points at.

    Array tables are indexed in order of appearance, so ("interventions", 1,
    "range_min") lands in the second [[interventions]] block. Locations with
    no line of their own fall back to the enclosing table.
    """
    lines: Dict[Tuple, int] = {}
    section: Tuple = ()
    seen: Dict[Tuple[str, ...], int] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        if match := _TABLE_ARRAY.match(line):
            name = _dotted(match.group(1))
            section = path = (*name, seen.get(name, 0))
            seen[name] = seen.get(name, 0) + 1
        elif match := _TABLE.match(line):
            section = path = _dotted(match.group(1))
        elif match := _ASSIGNMENT.match(line):
            path = (*section, match.group(1))
        else:
            continue
        lines.setdefault(path, number)

    target = tuple(key_path)
    while target:
        if target in lines:
            return lines[target]
        target = target[:-1]
    return None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a run configuration; defaults fill omitted keys"""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        match = _DECODE_POSITION.search(str(exc))
        raise ConfigError(f"malformed configuration: {exc}", line=int(match.group(1)) if match else None) from exc

    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = error["loc"]
        key = ".".join(str(part) for part in location)
        if error["type"] == "extra_forbidden":
            message = f"unknown key '{location[-1]}'"
        else:
            message = error["msg"]
        raise ConfigError(message, key=key, line=_line_of(text, location)) from exc


def load_config(path: Optional[Path]) -> RunConfig:
    """Read a configuration file; no path means all defaults"""
    if path is None:
        return RunConfig()
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config(text)


def dump_config(config: RunConfig) -> str:
    """TOML text such that parse_config(dump_config(c)) == c"""
    data = config.model_dump(mode="json", by_alias=True, exclude_none=True)
    return tomli_w.dumps(data)

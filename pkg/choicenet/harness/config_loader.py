"""Load and validate TOML experiment configs."""

import logging
import re
from pathlib import Path
from typing import Optional, Sequence, Union

from pydantic import ValidationError

from ..exceptions import ConfigError, ContractViolation
from ..fields.choice_oracle import corruption_map
from ..fields.label_field import LabelField, field_from_description
from ..models.experiment_config import ExperimentConfig
from ..utils import tomllib

logger = logging.getLogger(__name__)

_TOML_POSITION = re.compile(r"line (\d+)")
_TABLE_HEADER = re.compile(r"^\s*\[([^\[\]]+)\]\s*(#.*)?$")
_KEY = re.compile(r"^\s*([A-Za-z0-9_-]+)\s*=")


def _find_key_line(text: str, path: Sequence[Union[str, int]]) -> Optional[int]:
    """
    Best-effort line number of a config key.

    The deepest named key of the path is looked up inside the table named by
    the first key; when it is absent (inline tables, missing keys) the search
    falls back to shallower names.
    """
    names = [str(part) for part in path if isinstance(part, str)]
    lines = text.splitlines()
    for depth in range(len(names), 0, -1):
        wanted = names[depth - 1]
        table = None
        for number, line in enumerate(lines, start=1):
            header = _TABLE_HEADER.match(line)
            if header:
                table = header.group(1).strip()
                if depth == 1 and table == wanted:
                    return number
                continue
            key = _KEY.match(line)
            if key and key.group(1) == wanted:
                if (depth == 1 and table is None) or (depth > 1 and table == names[0]):
                    return number
    return None


def parse_config_text(text: str, source: str = "<config>") -> ExperimentConfig:
    """
    Parse and validate config text.

    Raises:
        ConfigError: With the line of a TOML syntax error, or the field path
            (and its line when it can be located) of a schema error
    """
    if tomllib is None:
        raise ConfigError("TOML support requires Python 3.11+ or the tomli package")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        match = _TOML_POSITION.search(str(e))
        raise ConfigError(
            f"invalid TOML in {source}: {e}", line=int(match.group(1)) if match else None
        ) from e

    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = first["loc"]
        field_path = ".".join(str(part) for part in loc) or None
        raise ConfigError(
            f"invalid config {source}: {first['msg']}",
            line=_find_key_line(text, loc),
            field_path=field_path,
        ) from e

    build_truth(config, text)
    logger.info(f"Loaded config {source}: d={config.d}, epsilon={config.epsilon}, trials={config.trials}")
    return config


def build_truth(config: ExperimentConfig, text: str = "") -> LabelField:
    """
    Instantiate the configured label field and check the oracle against it.

    Raises:
        ConfigError: When the field or the corruption is invalid in dimension d
    """
    try:
        truth = field_from_description(config.field, config.d)
    except ContractViolation as e:
        raise ConfigError(str(e), line=_find_key_line(text, ("field", "base")), field_path="field") from e
    try:
        corruption_map(config.oracle, config.d)
    except ContractViolation as e:
        raise ConfigError(
            str(e), line=_find_key_line(text, ("oracle", "corruption")), field_path="oracle.corruption"
        ) from e
    return truth


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read a TOML config file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return parse_config_text(text, source=str(path))

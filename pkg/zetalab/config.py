import os
import logging
from dataclasses import dataclass, replace
from typing import Optional, Dict, Any
from dotenv import load_dotenv

from zetalab.exceptions import ConfigError

load_dotenv()

logger = logging.getLogger(__name__)


class Config:
    # Precision: requested decimal digits for every floating evaluation
    DIGITS = int(os.getenv('ZETALAB_DIGITS', '50'))
    MIN_DIGITS = 10

    # Output
    FORMAT = os.getenv('ZETALAB_FORMAT', 'json').lower()
    FORMATS = ('json', 'csv', 'text')

    # Parallel sweeps (process pool size, 1 = in-process)
    PARALLELISM = int(os.getenv('ZETALAB_PARALLELISM', '1'))

    # Logging configuration
    LOG_LEVEL = os.getenv('ZETALAB_LOG_LEVEL', 'WARNING').upper()
    LOG_FILE = os.getenv('ZETALAB_LOG_FILE')  # unset means console only
    MAX_LOG_SIZE = int(os.getenv('ZETALAB_MAX_LOG_SIZE', str(10 * 1024 * 1024)))
    LOG_BACKUPS = int(os.getenv('ZETALAB_LOG_BACKUPS', '5'))

    # Quadrature defaults
    SPLIT_POINT = 1
    SERIES_THRESHOLD = 0.1  # below this x the integrands come from Laurent series
    PANEL_WIDTH = 2
    GRID_POINTS = 5

    # Laurent series default truncation order
    SERIES_ORDER = 40


@dataclass(frozen=True)
class RunConfig:
    """Per-run settings resolved from Config, a config file and CLI flags"""
    digits: int = Config.DIGITS
    format: str = Config.FORMAT
    parallelism: int = Config.PARALLELISM

    def validated(self) -> 'RunConfig':
        if self.digits < Config.MIN_DIGITS:
            raise ConfigError(f"digits must be >= {Config.MIN_DIGITS} (got {self.digits})")
        if self.format not in Config.FORMATS:
            raise ConfigError(f"format must be one of {', '.join(Config.FORMATS)} (got {self.format})")
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be >= 1 (got {self.parallelism})")
        return self


_FILE_KEYS = {
    'digits': int,
    'format': str,
    'parallelism': int,
}


def parse_config_file(path: str) -> Dict[str, Any]:
    """
    Parse a plain-text config file of key=value lines

    Args:
        path: Path to the file

    Returns:
        Dict of recognised keys to converted values

    Raises:
        ConfigError: unreadable file, malformed line, unknown key or bad value
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.readlines()
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e

    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        key = key.lower()
        if key not in _FILE_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _FILE_KEYS[key](value.lower() if key == 'format' else value)
        except ValueError as e:
            raise ConfigError(f"{path}:{lineno}: invalid value for {key}: {value!r}") from e
    logger.debug(f"Loaded config file {path}: {sorted(values)}")
    return values


def load_run_config(path: Optional[str] = None, **overrides: Any) -> RunConfig:
    """
    Resolve the run configuration: defaults, then config file, then overrides

    Overrides whose value is None are ignored so that unset CLI flags do not
    mask the config file.
    """
    config = RunConfig()
    if path:
        config = replace(config, **parse_config_file(path))
    explicit = {key: value for key, value in overrides.items() if value is not None}
    unknown = set(explicit) - set(_FILE_KEYS)
    if unknown:
        raise ConfigError(f"Unknown configuration keys: {', '.join(sorted(unknown))}")
    return replace(config, **explicit).validated()

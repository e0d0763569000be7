import logging
import os
import sys
from typing import Optional

from .errors import ConfigError

LOGGER_NAME = 'slider'


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f'{name} must be an integer, got {raw!r}')


def _flag_env(name: str) -> bool:
    return os.getenv(name, '0').strip().lower() in ('1', 'true', 'yes', 'on')


class Settings:
    """
    Runtime settings for the sliding index tools.
    Configurable via environment variables:
    - SLIDER_WINDOW: default window capacity for `bench` (default: 1024)
    - SLIDER_PARANOID: '1' runs the full audit after every shift (default: 0)
    - SLIDER_RELATIVE: '1' prints window-relative positions (default: 0)
    - SLIDER_LOG_LEVEL: level name for the `slider` loggers (default: WARNING)
    - SLIDER_BENCH_SAMPLES: sampling points per bench run (default: 4)
    Command-line flags take precedence over the environment.
    """

    def __init__(self):
        self.window = _int_env('SLIDER_WINDOW', 1024)
        if self.window < 1:
            raise ConfigError('SLIDER_WINDOW must be >= 1')
        self.paranoid = _flag_env('SLIDER_PARANOID')
        self.relative = _flag_env('SLIDER_RELATIVE')
        self.log_level = os.getenv('SLIDER_LOG_LEVEL', 'WARNING').upper()
        self.bench_samples = _int_env('SLIDER_BENCH_SAMPLES', 4)
        if self.bench_samples < 1:
            raise ConfigError('SLIDER_BENCH_SAMPLES must be >= 1')


def get_settings() -> Settings:
    """Factory function to get settings from the current environment"""
    return Settings()


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """Attach a single stderr handler to the `slider` logger; stdout stays protocol-only."""
    logger = logging.getLogger(LOGGER_NAME)
    resolved = (level or get_settings().log_level).upper()
    if not isinstance(logging.getLevelName(resolved), int):
        raise ConfigError(f'unknown log level {resolved!r}')
    logger.setLevel(resolved)
    if not any(getattr(h, '_slider_handler', False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))
        handler._slider_handler = True
        logger.addHandler(handler)
    return logger

# -*- coding: utf-8 -*-
# File: gorenstein/config.py
import os
from fractions import Fraction

from gorenstein.errors import ConfigurationError


def _int_setting(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def _confidence_setting(name: str, default: str) -> Fraction:
    raw = os.getenv(name, default)
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(f"{name} must be a rational number, got {raw!r}")
    if not 0 < value < 1:
        raise ConfigurationError(f"{name} must lie strictly between 0 and 1, got {raw!r}")
    return value


# Logging configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("GORENSTEIN_LOG_FILE", "")

# Desk-scale capacity caps
MAX_VARS = _int_setting("GORENSTEIN_MAX_VARS", 6)
MAX_DEGREE = _int_setting("GORENSTEIN_MAX_DEGREE", 20)
SYMBOLIC_DET_CAP = _int_setting("GORENSTEIN_SYMBOLIC_DET_CAP", 14)
MAX_LINE_POINTS = _int_setting("GORENSTEIN_MAX_LINE_POINTS", 4096)

# Randomized decisions
PIT_CONFIDENCE = _confidence_setting("GORENSTEIN_PIT_CONFIDENCE", "1/1000000000")
RANDOM_CANDIDATES = _int_setting("GORENSTEIN_RANDOM_CANDIDATES", 4, minimum=0)
DEFAULT_SEED = _int_setting("GORENSTEIN_SEED", 0, minimum=0)

# Largest prime below 2^31
MODULAR_PRIME = _int_setting("GORENSTEIN_MODULAR_PRIME", 2147483629, minimum=3)

CACHE_SIZE = _int_setting("GORENSTEIN_CACHE_SIZE", 2048)

"""Moment-density estimators for length-biased and excess-life samples."""

from ._core import *  # noqa: F401,F403
from ._core import ConfigError, DomainError, NumericError, StateError

__version__ = "0.1.0"

"""Perpetual step-up/step-down CDS pricing under a spectrally negative Levy model."""

from ._core import *  # noqa: F401,F403
from ._core import LevyCdsError, run_cli

__all__ = [name for name in dir() if not name.startswith("_")]

"""Amplitude-modulated Molmer-Sorensen gate design for trapped-ion chains."""

import json
import os

from . import _core
from ._core import (
    ConfigError,
    ConvergenceError,
    InstabilityError,
    MsgateError,
    NoBracketError,
    ResonanceError,
    equilibrium_positions,
    evolve,
)

__version__ = _core.__version__.split()[-1]

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "InstabilityError",
    "MsgateError",
    "NoBracketError",
    "ResonanceError",
    "config_hash",
    "contour",
    "design",
    "equilibrium_positions",
    "error_budget",
    "evolve",
    "load_config",
    "modes",
    "oracle",
    "parity",
    "sweep_detuning",
]


def _text(config):
    """Accept a dict, a path to a JSON file, or JSON text."""
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, (str, os.PathLike)) and os.path.isfile(config):
        with open(config, encoding="utf-8") as f:
            return f.read()
    return str(config)


def load_config(config):
    """Validated config as a dict with defaults filled in."""
    return json.loads(_core.normalize_config(_text(config)))


def config_hash(config):
    return _core.config_hash(_text(config))


def modes(config):
    return _core.modes(_text(config))


def design(config, pulse=None, delta0_hz=None):
    return json.loads(_core.design(_text(config), pulse, delta0_hz))


def error_budget(config, domega_hz=0.0, pulse=None, delta0_hz=None):
    return _core.error_budget(_text(config), domega_hz, pulse, delta0_hz)


def sweep_detuning(config, **kwargs):
    return _core.sweep_detuning(_text(config), **kwargs)


def contour(config, **kwargs):
    return _core.contour(_text(config), **kwargs)


def parity(config, n_phi=64, domega_hz=0.0):
    return _core.parity(_text(config), n_phi, domega_hz)


def oracle(config, n_max=15, steps=200000, domega_hz=0.0):
    return _core.oracle(_text(config), n_max, steps, domega_hz)

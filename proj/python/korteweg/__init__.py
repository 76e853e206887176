"""Python interface to the Korteweg fluid solver."""

import json

from ._korteweg import (
    ConfigError,
    DomainError,
    KortewegError,
    besov_norm,
    div_k,
    dyadic_blocks,
    lifespan_bound,
    suite_names,
    verify,
)
from . import _korteweg

__all__ = [
    "ConfigError",
    "DomainError",
    "KortewegError",
    "besov_norm",
    "div_k",
    "dyadic_blocks",
    "lifespan",
    "lifespan_bound",
    "picard",
    "run",
    "suite_names",
    "verify",
]


def run(ini, overrides=()):
    """Integrate a scenario given as INI text. Returns (exit_code, summary dict)."""
    code, text = _korteweg.run_json(ini, list(overrides))
    return code, json.loads(text)


def lifespan(ini, overrides=()):
    """Besov norms of the configured data and the resulting existence-time bound."""
    return json.loads(_korteweg.lifespan_json(ini, list(overrides)))


def picard(ini, overrides=()):
    """Iteration scheme on the configured data. Returns (exit_code, report dict)."""
    code, text = _korteweg.picard_json(ini, list(overrides))
    return code, json.loads(text)

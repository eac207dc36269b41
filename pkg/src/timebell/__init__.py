"""Simulation toolkit for time-parameterized Bell/CHSH experiments."""

__version__ = "0.1.0"

from .quantum import (  # noqa: E402
    CORRELATION_SIGN,
    TSIRELSON,
    Hamiltonian,
    TimeSettings,
    chsh_value,
    correlation_simulated,
    optimal_settings,
)

__all__ = [
    "CORRELATION_SIGN",
    "TSIRELSON",
    "Hamiltonian",
    "TimeSettings",
    "chsh_value",
    "correlation_simulated",
    "optimal_settings",
]

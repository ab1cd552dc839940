"""
Initial conditions used by the solver and the reproduction presets.
"""
import numpy as np

from apps.spectral.services.grid import ModeSum, PeriodicGrid
from utils.exceptions import InvalidModelError


def gaussian(grid: PeriodicGrid, width: float = 1.0, center: float = 0.0) -> np.ndarray:
    return np.exp(-((grid.nodes - center) / width) ** 2)


def single_mode(grid: PeriodicGrid, k: float = 1.0, amplitude: complex = 1.0) -> ModeSum:
    """amplitude e^{ikx}; k must be a non-Nyquist wavenumber of the grid."""
    mode = ModeSum((k,), (amplitude,))
    if not mode.is_resolved_on(grid):
        raise InvalidModelError(f"wavenumber {k} is not a resolved mode of the grid", k=k, n=grid.n,
                                length=grid.length)
    return mode


def nls_soliton(grid: PeriodicGrid, alpha: float = 1.0) -> np.ndarray:
    """sqrt(2 alpha) exp(ix) sech(sqrt(alpha) x)."""
    if alpha <= 0:
        raise InvalidModelError(f"soliton parameter alpha must be positive, got {alpha}", alpha=alpha)
    x = grid.nodes
    return np.sqrt(2.0 * alpha) * np.exp(1j * x) / np.cosh(np.sqrt(alpha) * x)


def camassa_holm_pulse(grid: PeriodicGrid) -> np.ndarray:
    """
    (pi/2) e^x - 2 sinh(x) arctan(e^x) - 1.

    The function is even. With s = e^{-|x|} it reads (pi/2) s + (1 - s^2) arctan(s) / s - 1,
    which stays finite where sinh overflows.
    """
    s = np.exp(-np.abs(grid.nodes))
    ratio = np.ones_like(s)
    positive = s > 0
    ratio[positive] = np.arctan(s[positive]) / s[positive]
    return 0.5 * np.pi * s + (1.0 - s * s) * ratio - 1.0


INITIAL_CONDITIONS = {
    'gaussian': gaussian,
    'mode': single_mode,
    'soliton': nls_soliton,
    'ch-pulse': camassa_holm_pulse,
}


def initial_condition(name: str, grid: PeriodicGrid, **params):
    try:
        builder = INITIAL_CONDITIONS[name]
    except KeyError:
        raise InvalidModelError(
            f"unknown initial condition {name!r}; choose one of {sorted(INITIAL_CONDITIONS)}",
            initial=name) from None
    return builder(grid, **params)

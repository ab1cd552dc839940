import numpy as np

from apps.construction.services.systems import LinearModel
from apps.spectral.services.grid import ModeSum, PeriodicGrid
from apps.spectral.services.models import scalar_symbol


def evolution_factor(model: LinearModel, k, t: float) -> np.ndarray:
    """exp(-t (sum_j alpha_j (ik)^j + sigma0 (ik)^m))."""
    k = np.asarray(k, dtype=float)
    return np.exp(t * scalar_symbol(model, k))


def exact_linear_solution(model: LinearModel, u0: ModeSum, t: float) -> ModeSum:
    factor = evolution_factor(model, u0.wavenumbers, t)
    return ModeSum(u0.wavenumbers, tuple(factor * np.asarray(u0.amplitudes)))


def exact_on_grid(model: LinearModel, values, grid: PeriodicGrid, t: float) -> np.ndarray:
    """Exact evolution of grid samples, with the same Nyquist convention as the solver."""
    values = np.asarray(values)
    factor = np.exp(t * scalar_symbol(model, grid.wavenumbers, grid.odd_wavenumbers))
    evolved = np.fft.ifft(factor * np.fft.fft(values))
    return evolved.real if np.isrealobj(values) else evolved

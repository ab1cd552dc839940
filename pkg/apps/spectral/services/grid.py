"""
Periodic grids, spectral derivatives and exactly representable Fourier sums.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np

from utils.exceptions import HyperbolizationError, InvalidModelError

RESOLUTION_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class PeriodicGrid:
    """n equispaced nodes on [x_left, x_right), wavenumbers in FFT order."""
    x_left: float
    x_right: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.x_left) and np.isfinite(self.x_right) and self.x_right > self.x_left):
            raise InvalidModelError(
                f"grid needs x_left < x_right, got [{self.x_left}, {self.x_right}]")
        n = int(self.n)
        if n < 8 or n & (n - 1):
            raise InvalidModelError(f"grid size must be a power of two >= 8, got {self.n}", n=self.n)
        object.__setattr__(self, 'x_left', float(self.x_left))
        object.__setattr__(self, 'x_right', float(self.x_right))
        object.__setattr__(self, 'n', n)

    @property
    def length(self) -> float:
        return self.x_right - self.x_left

    @property
    def dx(self) -> float:
        return self.length / self.n

    @cached_property
    def nodes(self) -> np.ndarray:
        return self.x_left + self.dx * np.arange(self.n)

    @cached_property
    def mode_indices(self) -> np.ndarray:
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(int)

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        return 2.0 * np.pi * self.mode_indices / self.length

    @cached_property
    def odd_wavenumbers(self) -> np.ndarray:
        """Wavenumbers with the Nyquist mode zeroed, used for odd-order derivatives."""
        k = self.wavenumbers.copy()
        k[self.n // 2] = 0.0
        return k

    @property
    def k_max(self) -> float:
        return np.pi / self.dx

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        return np.abs(self.mode_indices) <= self.n // 3

    def refined(self, factor: int = 2) -> 'PeriodicGrid':
        return PeriodicGrid(self.x_left, self.x_right, self.n * factor)

    def as_dict(self) -> dict:
        return {'x_left': self.x_left, 'x_right': self.x_right, 'n': self.n}


def derivative_symbol(grid: PeriodicGrid, order: int) -> np.ndarray:
    """(ik)^order on the grid; the Nyquist mode is dropped for odd orders."""
    if order < 0:
        raise HyperbolizationError(f"derivative order must be >= 0, got {order}")
    k = grid.odd_wavenumbers if order % 2 else grid.wavenumbers
    return (1j * k) ** order


def spectral_derivative(values, grid: PeriodicGrid, order: int) -> np.ndarray:
    """d_x^order of band-limited samples; real input gives real output."""
    values = np.asarray(values)
    derivative = np.fft.ifft(derivative_symbol(grid, order) * np.fft.fft(values, axis=-1), axis=-1)
    if np.isrealobj(values):
        return derivative.real
    return derivative


def dealias(values_hat: np.ndarray, grid: PeriodicGrid) -> np.ndarray:
    """2/3 rule: keep modes with |j| <= n/3."""
    return values_hat * grid.dealias_mask


@dataclass(frozen=True)
class ModeSum:
    """Finite Fourier sum u(x) = sum_j a_j exp(i k_j x)."""
    wavenumbers: Tuple[float, ...]
    amplitudes: Tuple[complex, ...] = field(default=())

    def __post_init__(self):
        wavenumbers = tuple(float(k) for k in np.atleast_1d(self.wavenumbers))
        amplitudes = tuple(complex(a) for a in np.atleast_1d(self.amplitudes)) or (1 + 0j,) * len(wavenumbers)
        if len(amplitudes) != len(wavenumbers):
            raise InvalidModelError("ModeSum needs one amplitude per wavenumber",
                                    wavenumbers=len(wavenumbers), amplitudes=len(amplitudes))
        object.__setattr__(self, 'wavenumbers', wavenumbers)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def from_samples(cls, values, grid: PeriodicGrid) -> 'ModeSum':
        """Interpolating sum of grid samples; phases are referenced to x = 0."""
        coefficients = np.fft.fft(np.asarray(values, dtype=complex)) / grid.n
        coefficients = coefficients * np.exp(-1j * grid.wavenumbers * grid.x_left)
        return cls(tuple(grid.wavenumbers), tuple(coefficients))

    def evaluate(self, grid: PeriodicGrid) -> np.ndarray:
        k = np.asarray(self.wavenumbers)
        a = np.asarray(self.amplitudes)
        return np.exp(1j * np.outer(grid.nodes, k)) @ a

    def derivative(self, order: int) -> 'ModeSum':
        k = np.asarray(self.wavenumbers)
        return ModeSum(self.wavenumbers, tuple((1j * k) ** order * np.asarray(self.amplitudes)))

    def is_resolved_on(self, grid: PeriodicGrid) -> bool:
        """Every wavenumber is a non-Nyquist grid wavenumber."""
        resolved = grid.wavenumbers[np.abs(grid.mode_indices) < grid.n // 2]
        return all(np.min(np.abs(resolved - k)) <= RESOLUTION_TOLERANCE * max(1.0, abs(k))
                   for k in self.wavenumbers)

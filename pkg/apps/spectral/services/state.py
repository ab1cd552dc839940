"""
Solution state q_0..q_{m-1} sampled on a periodic grid.
"""
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from apps.spectral.services.grid import ModeSum, PeriodicGrid, spectral_derivative
from utils.exceptions import InvalidModelError

REALITY_TOLERANCE = 1e-9


@dataclass(eq=False)
class State:
    grid: PeriodicGrid
    components: np.ndarray
    is_real: bool = True
    time: float = 0.0

    def __post_init__(self):
        components = np.array(self.components, dtype=complex, ndmin=2)
        if components.ndim != 2 or components.shape[1] != self.grid.n:
            raise InvalidModelError(
                f"components must have shape (m, {self.grid.n}), got {components.shape}")
        self.components = components

    @property
    def m(self) -> int:
        return self.components.shape[0]

    @property
    def q0(self) -> np.ndarray:
        return self.components[0]

    def imaginary_ratio(self) -> float:
        """max |Im q| / max |q| over all components."""
        scale = float(np.max(np.abs(self.components)))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(self.components.imag))) / scale

    def is_reality_preserved(self, tolerance: float = REALITY_TOLERANCE) -> bool:
        return not self.is_real or self.imaginary_ratio() <= tolerance

    def values(self) -> np.ndarray:
        """Components as real arrays for real states, complex otherwise."""
        return self.components.real.copy() if self.is_real else self.components.copy()


def init_state(u0: Union[np.ndarray, ModeSum], grid: PeriodicGrid, m: int,
               is_real: Optional[bool] = None) -> State:
    """
    Consistent state q_j = d_x^j u0 for j < m.

    Fourier sums are differentiated and evaluated exactly; sampled fields
    are differentiated spectrally.
    """
    if m < 1:
        raise InvalidModelError(f"state needs at least one component, got m={m}", m=m)
    if isinstance(u0, ModeSum):
        if not u0.is_resolved_on(grid):
            raise InvalidModelError("initial Fourier sum is not resolved on the grid",
                                    wavenumbers=list(u0.wavenumbers), n=grid.n)
        components = [u0.derivative(order).evaluate(grid) for order in range(m)]
        return State(grid, np.array(components), is_real=bool(is_real))

    values = np.asarray(u0)
    if values.shape != (grid.n,):
        raise InvalidModelError(f"initial field must have {grid.n} samples, got shape {values.shape}")
    if is_real is None:
        is_real = bool(np.isrealobj(values))
    components = [spectral_derivative(values, grid, order) for order in range(m)]
    return State(grid, np.array(components), is_real=is_real)

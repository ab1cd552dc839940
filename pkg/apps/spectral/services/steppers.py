"""
One-step time integrators for y' = L y + N(y) on Fourier coefficients.

Coefficient arrays have shape (components, modes). L is block diagonal over
modes and stored as an (modes, components, components) stack.
"""
import abc
from typing import Callable, Dict, Optional, Union

import numpy as np

from utils.exceptions import HyperbolizationError

Rhs = Callable[[np.ndarray], np.ndarray]


class LinearSplit:
    """Right-hand side split into a per-mode linear operator and an explicit remainder."""

    def __init__(self, linear: np.ndarray, nonlinear: Optional[Rhs] = None):
        self.linear = np.asarray(linear, dtype=complex)
        self.nonlinear = nonlinear
        self._inverses: Dict[float, np.ndarray] = {}

    def implicit(self, y: np.ndarray) -> np.ndarray:
        return np.einsum('kab,bk->ak', self.linear, y)

    def explicit(self, y: np.ndarray) -> np.ndarray:
        if self.nonlinear is None:
            return np.zeros_like(y)
        return self.nonlinear(y)

    def __call__(self, y: np.ndarray) -> np.ndarray:
        total = self.implicit(y)
        if self.nonlinear is not None:
            total = total + self.nonlinear(y)
        return total

    def solve(self, b: np.ndarray, coefficient: float) -> np.ndarray:
        """(I - coefficient L)^{-1} b, mode by mode."""
        inverse = self._inverses.get(coefficient)
        if inverse is None:
            size = self.linear.shape[-1]
            inverse = np.linalg.inv(np.eye(size)[None, :, :] - coefficient * self.linear)
            if len(self._inverses) > 4:
                self._inverses.clear()
            self._inverses[coefficient] = inverse
        return np.einsum('kab,bk->ak', inverse, b)


class Stepper(abc.ABC):
    name = ''
    order = 0
    implicit = False

    @abc.abstractmethod
    def step(self, rhs, y: np.ndarray, dt: float) -> np.ndarray:
        raise NotImplementedError


class SSPRK33(Stepper):
    """Three-stage third-order strong-stability-preserving Runge-Kutta (Shu-Osher form)."""
    name = 'ssprk33'
    order = 3

    def step(self, rhs, y, dt):
        y1 = y + dt * rhs(y)
        y2 = 0.75 * y + 0.25 * (y1 + dt * rhs(y1))
        return y / 3.0 + 2.0 / 3.0 * (y2 + dt * rhs(y2))


class RK4(Stepper):
    name = 'rk4'
    order = 4

    def step(self, rhs, y, dt):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class IMEX(Stepper):
    """
    ARS(4,4,3) additive Runge-Kutta: L-stable SDIRK part with diagonal 1/2 for L,
    four-stage explicit part for N. Both tableaux are stiffly accurate, so the
    last stage is the new value.
    """
    name = 'imex'
    order = 3
    implicit = True

    GAMMA = 0.5
    EXPLICIT = (
        (),
        (1 / 2,),
        (11 / 18, 1 / 18),
        (5 / 6, -5 / 6, 1 / 2),
        (1 / 4, 7 / 4, 3 / 4, -7 / 4),
    )
    IMPLICIT = (
        (),
        (0.0,),
        (0.0, 1 / 6),
        (0.0, -1 / 2, 1 / 2),
        (0.0, 3 / 2, -3 / 2, 1 / 2),
    )

    def step(self, rhs, y, dt):
        if not isinstance(rhs, LinearSplit):
            raise HyperbolizationError("the IMEX stepper needs a LinearSplit right-hand side")
        explicit_terms = [rhs.explicit(y)]
        implicit_terms = [None]
        stage = y
        for row in range(1, len(self.EXPLICIT)):
            total = y.copy()
            for column, (a_e, a_i) in enumerate(zip(self.EXPLICIT[row], self.IMPLICIT[row])):
                if a_e:
                    total = total + dt * a_e * explicit_terms[column]
                if a_i:
                    total = total + dt * a_i * implicit_terms[column]
            stage = rhs.solve(total, self.GAMMA * dt)
            implicit_terms.append(rhs.implicit(stage))
            if row < len(self.EXPLICIT) - 1:
                explicit_terms.append(rhs.explicit(stage))
        return stage


STEPPERS = {stepper.name: stepper for stepper in (SSPRK33(), RK4(), IMEX())}


def get_stepper(stepper: Union[str, Stepper]) -> Stepper:
    if isinstance(stepper, Stepper):
        return stepper
    try:
        return STEPPERS[str(stepper).lower()]
    except KeyError:
        raise HyperbolizationError(
            f"unknown stepper {stepper!r}; choose one of {sorted(STEPPERS)}") from None


def step(stepper: Union[str, Stepper], rhs, y: np.ndarray, dt: float) -> np.ndarray:
    """Advances y by one step of size dt > 0."""
    if not dt > 0:
        raise HyperbolizationError(f"dt must be positive, got {dt!r}", dt=dt)
    return get_stepper(stepper).step(rhs, y, dt)

"""
Catalog of model equations and their hyperbolizations, discretized in Fourier space.

Every model is split as y' = L(k) y + N(y) on Fourier coefficients: L is the
per-mode linear operator, N collects the pointwise nonlinearities (formed on
the grid and transformed back, with the 2/3 rule when dealiasing is on).
The first component is always u (or q_0); hyperbolized models carry m
components q_j ~ d_x^j u.
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from apps.construction.services.systems import LinearModel, hyperbolize, semi_discrete_operator
from apps.spectral.services.grid import PeriodicGrid
from apps.spectral.services.state import State
from apps.spectral.services.steppers import LinearSplit
from utils.exceptions import InvalidModelError

logger = logging.getLogger(__name__)


class ModelKind(str, Enum):
    HEAT = 'heat'
    LINEAR_KDV = 'linear-kdv'
    KDV = 'kdv'
    NLS = 'nls'
    CAMASSA_HOLM = 'ch'
    KURAMOTO_SIVASHINSKY = 'ks'
    GENERAL_LINEAR = 'linear'


BASE_MODELS = {
    ModelKind.HEAT: LinearModel(2, -1),
    ModelKind.LINEAR_KDV: LinearModel(3, 1),
    ModelKind.KDV: LinearModel(3, 1),
    ModelKind.NLS: LinearModel(2, -1),
    # rows 1..2 of the Camassa-Holm relaxation; its q_0 row is built separately
    ModelKind.CAMASSA_HOLM: LinearModel(3, -1),
    ModelKind.KURAMOTO_SIVASHINSKY: LinearModel(4, 1, (0.0, 0.0, 1.0, 0.0)),
}

NONLINEAR_KINDS = frozenset({
    ModelKind.KDV, ModelKind.NLS, ModelKind.CAMASSA_HOLM, ModelKind.KURAMOTO_SIVASHINSKY,
})


@dataclass(frozen=True)
class ModelSpec:
    kind: ModelKind
    tau: Optional[float] = None
    kappa: float = 1.0
    linear_model: Optional[LinearModel] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, 'kind', ModelKind(self.kind))
        except ValueError:
            raise InvalidModelError(
                f"unknown model {self.kind!r}; choose one of {[kind.value for kind in ModelKind]}",
                model=self.kind) from None
        if self.tau is not None:
            if not (math.isfinite(self.tau) and self.tau > 0):
                raise InvalidModelError(f"tau must be a positive real, got {self.tau!r}", tau=self.tau)
            object.__setattr__(self, 'tau', float(self.tau))
        if not math.isfinite(self.kappa):
            raise InvalidModelError(f"kappa must be a finite real, got {self.kappa!r}", kappa=self.kappa)
        if self.kind is ModelKind.GENERAL_LINEAR and self.linear_model is None:
            raise InvalidModelError("the general linear model needs a LinearModel")

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def base_model(self) -> LinearModel:
        if self.kind is ModelKind.GENERAL_LINEAR:
            return self.linear_model
        return BASE_MODELS[self.kind]

    @property
    def is_nonlinear(self) -> bool:
        return self.kind in NONLINEAR_KINDS

    @property
    def is_real(self) -> bool:
        return self.kind is not ModelKind.NLS

    def components(self, hyperbolized: bool) -> int:
        return self.base_model.m if hyperbolized else 1

    def with_tau(self, tau: float) -> 'ModelSpec':
        return replace(self, tau=tau)

    def linear_operator(self, k, hyperbolized: bool, odd_k=None, tau: Optional[float] = None) -> np.ndarray:
        """
        Per-mode linear operator, shape (len(k), c, c).

        ``odd_k`` replaces k in odd-order derivatives (the grid passes wavenumbers
        with the Nyquist mode zeroed). ``tau`` overrides the spec's tau and may be
        any nonzero real.
        """
        k = np.atleast_1d(np.asarray(k, dtype=float))
        odd_k = k if odd_k is None else np.atleast_1d(np.asarray(odd_k, dtype=float))
        if not hyperbolized:
            return self._original_symbol(k, odd_k)[:, None, None]

        tau = self.tau if tau is None else float(tau)
        if not tau:
            raise InvalidModelError("hyperbolized model needs a nonzero tau", model=self.name)
        operator = semi_discrete_operator(hyperbolize(self.base_model, 1.0), odd_k)
        operator[:, 1:, :] /= tau
        if self.kind is ModelKind.NLS:
            # i d_t q_0 = i (...) and i tau d_t q_1 = d_x q_0 - q_1
            operator[:, 0, :] *= 1j
            operator[:, 1, :] *= -1j
        elif self.kind is ModelKind.CAMASSA_HOLM:
            # d_t q_0 = F + (d_x q_0 - q_1) / tau, with F in the nonlinear part
            operator[:, 0, :] = 0.0
            operator[:, 0, 0] = 1j * odd_k / tau
            operator[:, 0, 1] = -1.0 / tau
        return operator

    def _original_symbol(self, k: np.ndarray, odd_k: np.ndarray) -> np.ndarray:
        if self.kind is ModelKind.CAMASSA_HOLM:
            return np.zeros(len(k), dtype=complex)
        symbol = scalar_symbol(self.base_model, k, odd_k)
        if self.kind is ModelKind.NLS:
            return 1j * symbol
        return symbol


def scalar_symbol(model: LinearModel, k: np.ndarray, odd_k: Optional[np.ndarray] = None) -> np.ndarray:
    """-sigma0 (ik)^m - sum_j alpha_j (ik)^j, taking odd powers from odd_k."""
    odd_k = k if odd_k is None else odd_k

    def power(order):
        return (1j * (odd_k if order % 2 else k)) ** order

    total = -model.sigma0 * power(model.m)
    for order, coefficient in enumerate(model.alpha):
        if coefficient:
            total = total - coefficient * power(order)
    return total


def catalog_model(name: str, tau: Optional[float] = None, kappa: float = 1.0,
                  linear_model: Optional[LinearModel] = None) -> ModelSpec:
    return ModelSpec(kind=name, tau=tau, kappa=kappa, linear_model=linear_model)


@dataclass(eq=False)
class DiscreteModel:
    """A catalog model on a grid: linear operator stack plus nonlinear tendency."""
    spec: ModelSpec
    hyperbolized: bool
    grid: PeriodicGrid
    linear: np.ndarray
    dealias: bool

    @property
    def components(self) -> int:
        return self.linear.shape[-1]

    @property
    def is_real(self) -> bool:
        return self.spec.is_real

    @property
    def mask(self):
        return self.grid.dealias_mask if self.dealias else 1.0

    def nonlinear(self, y: np.ndarray) -> np.ndarray:
        return NONLINEAR_TERMS[self.spec.kind](self, y)

    def split(self) -> LinearSplit:
        return LinearSplit(self.linear, self.nonlinear if self.spec.is_nonlinear else None)

    def linear_rate(self) -> float:
        """Largest spectral radius of L(k) over the resolved modes."""
        if self.components == 1:
            return float(np.max(np.abs(self.linear[:, 0, 0])))
        return float(np.max(np.abs(np.linalg.eigvals(self.linear))))

    def nonlinear_rate(self, y: np.ndarray) -> float:
        if not self.spec.is_nonlinear:
            return 0.0
        return NONLINEAR_RATES[self.spec.kind](self, y)

    def physical(self, y: np.ndarray, component: int = 0, order: int = 0) -> np.ndarray:
        k = self.grid.odd_wavenumbers if order % 2 else self.grid.wavenumbers
        return np.fft.ifft((1j * k) ** order * y[component])


def discretize(spec: ModelSpec, grid: PeriodicGrid, hyperbolized: bool,
               dealias: Optional[bool] = None) -> DiscreteModel:
    if hyperbolized and spec.tau is None:
        raise InvalidModelError("hyperbolized runs need tau", model=spec.name)
    linear = spec.linear_operator(grid.wavenumbers, hyperbolized, odd_k=grid.odd_wavenumbers)
    dealias = spec.is_nonlinear if dealias is None else bool(dealias)
    return DiscreteModel(spec=spec, hyperbolized=hyperbolized, grid=grid, linear=linear, dealias=dealias)


def _no_nonlinearity(model: DiscreteModel, y: np.ndarray) -> np.ndarray:
    return np.zeros_like(y)


def _burgers_flux(model: DiscreteModel, y: np.ndarray) -> np.ndarray:
    """-d_x (q_0^2 / 2) in conservative form."""
    q0 = model.physical(y)
    out = np.zeros_like(y)
    out[0] = -0.5j * model.grid.odd_wavenumbers * model.mask * np.fft.fft(q0 * q0)
    return out


def _cubic_phase(model: DiscreteModel, y: np.ndarray) -> np.ndarray:
    """i kappa |q_0|^2 q_0."""
    q0 = model.physical(y)
    out = np.zeros_like(y)
    out[0] = 1j * model.spec.kappa * model.mask * np.fft.fft(np.abs(q0) ** 2 * q0)
    return out


def _camassa_holm(model: DiscreteModel, y: np.ndarray) -> np.ndarray:
    """(1 - d_x^2)^{-1} (-3 u u_x + 2 u_x u_xx + u u_xxx), or its relaxed q_0 row."""
    q0 = model.physical(y)
    q0x = model.physical(y, order=1)
    if model.hyperbolized:
        q2 = model.physical(y, component=2)
        q2x = model.physical(y, component=2, order=1)
        forcing = -3.0 * q0 * q0x + 2.0 * q2 * q0x + q0 * q2x
        scale = 1.0
    else:
        uxx = model.physical(y, order=2)
        uxxx = model.physical(y, order=3)
        forcing = -3.0 * q0 * q0x + 2.0 * q0x * uxx + q0 * uxxx
        scale = 1.0 / (1.0 + model.grid.wavenumbers ** 2)
    out = np.zeros_like(y)
    out[0] = scale * model.mask * np.fft.fft(forcing)
    return out


def _advective_rate(model: DiscreteModel, y: np.ndarray) -> float:
    return model.grid.k_max * float(np.max(np.abs(model.physical(y))))


def _cubic_rate(model: DiscreteModel, y: np.ndarray) -> float:
    return abs(model.spec.kappa) * float(np.max(np.abs(model.physical(y)))) ** 2


def _camassa_holm_rate(model: DiscreteModel, y: np.ndarray) -> float:
    amplitude = float(np.max(np.abs(model.physical(y))))
    slope = float(np.max(np.abs(model.physical(y, order=1))))
    if not model.hyperbolized:
        return model.grid.k_max * 4.0 * amplitude + 2.0 * slope
    curvature = float(np.max(np.abs(model.physical(y, component=2))))
    curvature_slope = float(np.max(np.abs(model.physical(y, component=2, order=1))))
    return model.grid.k_max * (4.0 * amplitude + 2.0 * curvature) + 3.0 * slope + curvature_slope


NONLINEAR_TERMS = {
    ModelKind.HEAT: _no_nonlinearity,
    ModelKind.LINEAR_KDV: _no_nonlinearity,
    ModelKind.GENERAL_LINEAR: _no_nonlinearity,
    ModelKind.KDV: _burgers_flux,
    ModelKind.KURAMOTO_SIVASHINSKY: _burgers_flux,
    ModelKind.NLS: _cubic_phase,
    ModelKind.CAMASSA_HOLM: _camassa_holm,
}

NONLINEAR_RATES: dict = {
    ModelKind.KDV: _advective_rate,
    ModelKind.KURAMOTO_SIVASHINSKY: _advective_rate,
    ModelKind.NLS: _cubic_rate,
    ModelKind.CAMASSA_HOLM: _camassa_holm_rate,
}


def rhs(model: ModelSpec, hyperbolized: bool, state: State, dealias: Optional[bool] = None) -> State:
    """Tendency d_t q of ``state`` under the original or hyperbolized model, on the grid."""
    discrete = discretize(model, state.grid, hyperbolized, dealias)
    if state.m != discrete.components:
        raise InvalidModelError(
            f"{model.name} ({'hyperbolized' if hyperbolized else 'original'}) has "
            f"{discrete.components} components, state has {state.m}",
            model=model.name, expected=discrete.components, got=state.m)
    y = np.fft.fft(state.components, axis=-1)
    tendency = discrete.split()(y)
    return State(state.grid, np.fft.ifft(tendency, axis=-1), is_real=state.is_real, time=state.time)

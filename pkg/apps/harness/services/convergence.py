"""
Hyperbolization error q_0 - u at a final time, and its behaviour as tau -> 0.

Three kinds of problems are supported:

- modal: a pure linear model and a finite Fourier sum, evolved exactly mode by
  mode and compared with the exact solution;
- linear on a grid: the hyperbolized system is solved numerically and compared
  with the exact evolution of the grid data;
- nonlinear: the reference is the original model solved on a grid twice as
  fine with a quarter of the time step.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from apps.construction.services.systems import hyperbolize
from apps.dispersion.services.modes import CONDITION_LIMIT, mode_evolution
from apps.spectral.services.exact import exact_linear_solution, exact_on_grid
from apps.spectral.services.grid import ModeSum, PeriodicGrid, spectral_derivative
from apps.spectral.services.models import ModelSpec, discretize
from apps.spectral.services.solver import SolveConfig, SolveResult, auto_time_step, solve
from apps.spectral.services.state import REALITY_TOLERANCE
from apps.spectral.services.steppers import get_stepper
from utils.conf import hyp_setting
from utils.exceptions import HyperbolizationError, InvalidModelError

logger = logging.getLogger(__name__)

NORMS = ('Linf', 'L2')
REFERENCE_REFINEMENT = 2
REFERENCE_STEP_DIVISOR = 4
ASYMPTOTIC_FRACTION = 0.5

InitialData = Union[ModeSum, Callable[[PeriodicGrid], Union[np.ndarray, ModeSum]]]


def error_norm(difference, norm: str = 'Linf', dx: Optional[float] = None) -> float:
    """
    Linf or L2 norm of grid values (dx given) or of Fourier amplitudes (dx None).

    On a periodic grid the trapezoidal rule is dx * sum |e|^2. For amplitudes the
    Linf value is the bound sum |a_k|, exact for a single mode, and L2 is the
    per-unit-length Parseval norm.
    """
    difference = np.abs(np.asarray(difference))
    if norm not in NORMS:
        raise InvalidModelError(f"unknown norm {norm!r}; choose one of {list(NORMS)}", norm=norm)
    if dx is None:
        return float(np.sum(difference)) if norm == 'Linf' else float(np.sqrt(np.sum(difference ** 2)))
    if norm == 'Linf':
        return float(np.max(difference))
    return float(np.sqrt(dx * np.sum(difference ** 2)))


@dataclass(frozen=True, eq=False)
class Problem:
    model: ModelSpec
    initial: InitialData
    T: float
    grid: Optional[PeriodicGrid] = None
    stepper: str = 'rk4'
    reference_stepper: Optional[str] = None
    snapshot_times: Tuple[float, ...] = ()
    dealias: Optional[bool] = None
    cfl: float = 0.4
    reality_tolerance: float = REALITY_TOLERANCE
    condition_limit: float = CONDITION_LIMIT

    def __post_init__(self):
        if self.grid is None:
            if not isinstance(self.initial, ModeSum):
                raise InvalidModelError("problems without a grid need a Fourier sum as initial data")
            if self.model.is_nonlinear or not self.model.base_model.is_pure:
                raise InvalidModelError("modal problems need a pure linear model", model=self.model.name)

    @property
    def times(self) -> Tuple[float, ...]:
        return tuple(self.snapshot_times) or (float(self.T),)

    @property
    def is_modal(self) -> bool:
        return self.grid is None

    @property
    def dx(self) -> Optional[float]:
        return None if self.grid is None else self.grid.dx

    def initial_on(self, grid: PeriodicGrid):
        if isinstance(self.initial, ModeSum):
            return self.initial
        return self.initial(grid)

    def _config(self, hyperbolized: bool, grid: PeriodicGrid, stepper: str, tau=None, dt='auto') -> SolveConfig:
        model = self.model.with_tau(tau) if tau is not None else self.model
        return SolveConfig(model=model, hyperbolized=hyperbolized, grid=grid, stepper=stepper, dt=dt,
                           t_final=self.times[-1], snapshot_times=self.times, dealias=self.dealias,
                           cfl=self.cfl, reality_tolerance=self.reality_tolerance)

    def reference_time_step(self) -> float:
        stepper = get_stepper(self.reference_stepper or self.stepper)
        coarse = discretize(self.model, self.grid, False, self.dealias)
        fine_grid = self.grid.refined(REFERENCE_REFINEMENT)
        fine = discretize(self.model, fine_grid, False, self.dealias)
        coarse_dt = auto_time_step(coarse, _coefficients(self.initial_on(self.grid), self.grid),
                                   stepper, self.cfl)
        fine_dt = auto_time_step(fine, _coefficients(self.initial_on(fine_grid), fine_grid),
                                 stepper, self.cfl)
        return min(coarse_dt / REFERENCE_STEP_DIVISOR, fine_dt)

    @cached_property
    def reference(self) -> List[np.ndarray]:
        """u_ref at every snapshot time, on the problem's nodes (or as mode amplitudes)."""
        if self.is_modal:
            base = self.model.base_model
            return [np.asarray(exact_linear_solution(base, self.initial, t).amplitudes) for t in self.times]
        if not self.model.is_nonlinear:
            values = self.initial_on(self.grid)
            if isinstance(values, ModeSum):
                values = values.evaluate(self.grid)
            return [exact_on_grid(self.model.base_model, values, self.grid, t) for t in self.times]

        fine_grid = self.grid.refined(REFERENCE_REFINEMENT)
        config = self._config(False, fine_grid, self.reference_stepper or self.stepper,
                              dt=self.reference_time_step())
        result = solve(config, self.initial_on(fine_grid))
        return [snapshot.values()[0][::REFERENCE_REFINEMENT] for snapshot in result.snapshots]

    def hyperbolized(self, tau: float) -> Tuple[List[np.ndarray], Optional[SolveResult]]:
        """q_0 at every snapshot time for one tau, plus the solver result when there is one."""
        if self.is_modal:
            system = hyperbolize(self.model.base_model, tau)
            values = [np.array([mode_evolution(system, k, a, t, condition_limit=self.condition_limit)[0]
                                for k, a in zip(self.initial.wavenumbers, self.initial.amplitudes)])
                      for t in self.times]
            return values, None
        result = solve(self._config(True, self.grid, self.stepper, tau=tau), self.initial_on(self.grid))
        return [snapshot.values()[0] for snapshot in result.snapshots], result

    def solution_norm(self, norm: str = 'Linf') -> float:
        return error_norm(self.reference[-1], norm, self.dx)


def _coefficients(values, grid: PeriodicGrid) -> np.ndarray:
    if isinstance(values, ModeSum):
        values = values.evaluate(grid)
    return np.fft.fft(np.asarray(values, dtype=complex))[None, :]


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    model: str
    tau_values: np.ndarray
    errors: np.ndarray
    fitted_order: float
    norm: str
    T: float
    solution_norm: float

    def rows(self):
        for tau, error in zip(self.tau_values, self.errors):
            yield {'tau': float(tau), 'error': float(error), 'norm': self.norm, 'T': self.T,
                   'model': self.model}


def hyperbolization_error(problem: Problem, tau: float, norm: str = 'Linf') -> float:
    """||q_0(., T) - u_ref(., T)|| for one relaxation time."""
    values, _ = problem.hyperbolized(tau)
    return error_norm(values[-1] - problem.reference[-1], norm, problem.dx)


def fit_order(tau_values: Sequence[float], errors: Sequence[float],
              solution_norm: Optional[float] = None) -> float:
    """
    Least-squares slope of log(error) against log(tau).

    The largest tau is left out when its error exceeds half the solution norm.
    """
    taus = np.asarray(tau_values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = errors > 0
    if solution_norm is not None and len(taus) > 2:
        largest = int(np.argmax(taus))
        if errors[largest] > ASYMPTOTIC_FRACTION * solution_norm:
            keep[largest] = False
    if np.count_nonzero(keep) < 2:
        return float('nan')
    slope, _ = np.polyfit(np.log(taus[keep]), np.log(errors[keep]), 1)
    return float(slope)


def _check_tau_ladder(tau_values: Sequence[float]) -> np.ndarray:
    taus = np.asarray(list(tau_values), dtype=float)
    if len(taus) < 3:
        raise InvalidModelError("a tau sweep needs at least 3 values", tau_values=taus.tolist())
    if np.any(taus <= 0) or np.any(np.diff(taus) >= 0):
        raise InvalidModelError("tau values must be positive and strictly descending",
                                tau_values=taus.tolist())
    return taus


def tau_sweep(problem: Problem, tau_values: Sequence[float], norm: str = 'Linf',
              threads: Optional[int] = None) -> ConvergenceReport:
    """Errors for a descending tau ladder, solved concurrently, plus the fitted order."""
    taus = _check_tau_ladder(tau_values)
    threads = threads or hyp_setting('THREADS')
    reference_norm = problem.solution_norm(norm)

    def member(tau):
        logger.debug("sweep %s: tau=%g", problem.model.name, tau)
        return hyperbolization_error(problem, tau, norm)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(taus))) as executor:
            errors = np.array(list(executor.map(member, taus)))
    else:
        errors = np.array([member(tau) for tau in taus])

    order = fit_order(taus, errors, reference_norm)
    logger.info("sweep %s T=%g: errors %s, fitted order %.3f",
                problem.model.name, problem.T, np.array2string(errors, precision=3), order)
    return ConvergenceReport(model=problem.model.name, tau_values=taus, errors=errors,
                             fitted_order=order, norm=norm, T=float(problem.T),
                             solution_norm=reference_norm)


def recommended_tau(u0, grid: PeriodicGrid, m: int) -> float:
    """max |d_x^m u| / max |d_x^2m u|: relaxation times below this keep the modified-equation term small."""
    numerator = float(np.max(np.abs(spectral_derivative(u0, grid, m))))
    denominator = float(np.max(np.abs(spectral_derivative(u0, grid, 2 * m))))
    if denominator == 0:
        raise HyperbolizationError("initial data has no resolved derivative of order 2m", m=m)
    return numerator / denominator

"""
Method-of-lines driver: integrates Fourier coefficients of a catalog model and
records the solution at the requested snapshot times.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from apps.spectral.services.grid import ModeSum, PeriodicGrid
from apps.spectral.services.models import DiscreteModel, ModelSpec, discretize
from apps.spectral.services.state import REALITY_TOLERANCE, State, init_state
from apps.spectral.services.steppers import Stepper, get_stepper
from utils.exceptions import InvalidModelError, SolverInstabilityError

logger = logging.getLogger(__name__)

AUTO = 'auto'
DEFAULT_CFL = 0.4


@dataclass(frozen=True)
class SolveConfig:
    model: ModelSpec
    hyperbolized: bool
    grid: PeriodicGrid
    stepper: str = 'rk4'
    dt: Union[float, str] = AUTO
    t_final: float = 1.0
    snapshot_times: Tuple[float, ...] = ()
    dealias: Optional[bool] = None
    cfl: float = DEFAULT_CFL
    reality_tolerance: float = REALITY_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, 'stepper', get_stepper(self.stepper).name)
        if not (math.isfinite(self.t_final) and self.t_final >= 0):
            raise InvalidModelError(f"t_final must be >= 0, got {self.t_final!r}", t_final=self.t_final)
        if self.dt != AUTO and not (isinstance(self.dt, (int, float)) and self.dt > 0):
            raise InvalidModelError(f"dt must be positive or '{AUTO}', got {self.dt!r}", dt=self.dt)
        times = tuple(float(t) for t in self.snapshot_times) or (float(self.t_final),)
        if list(times) != sorted(times) or times[0] < 0 or times[-1] > self.t_final:
            raise InvalidModelError("snapshot times must be sorted and lie in [0, t_final]",
                                    snapshot_times=list(times), t_final=self.t_final)
        if self.hyperbolized and self.model.tau is None:
            raise InvalidModelError("hyperbolized runs need tau", model=self.model.name)
        if not self.cfl > 0:
            raise InvalidModelError(f"cfl must be positive, got {self.cfl!r}", cfl=self.cfl)
        if not self.reality_tolerance > 0:
            raise InvalidModelError(f"reality_tolerance must be positive, got {self.reality_tolerance!r}",
                                    reality_tolerance=self.reality_tolerance)
        object.__setattr__(self, 'snapshot_times', times)

    @property
    def tau(self) -> Optional[float]:
        return self.model.tau if self.hyperbolized else None


@dataclass(eq=False)
class SolveResult:
    config: SolveConfig
    snapshots: List[State] = field(default_factory=list)
    dt: float = 0.0
    steps: int = 0
    wall_time: float = 0.0

    @property
    def final(self) -> State:
        return self.snapshots[-1]


def auto_time_step(model: DiscreteModel, y: np.ndarray, stepper: Stepper, cfl: float = DEFAULT_CFL) -> float:
    """
    cfl / (linear rate + nonlinear rate) for explicit steppers,
    cfl * min(dx, 1 / nonlinear rate) when the linear part is implicit.
    """
    nonlinear_rate = model.nonlinear_rate(y)
    if stepper.implicit:
        limit = model.grid.dx if nonlinear_rate == 0 else min(model.grid.dx, 1.0 / nonlinear_rate)
        return cfl * limit
    rate = model.linear_rate() + nonlinear_rate
    if rate == 0:
        return cfl * model.grid.dx
    return cfl / rate


def hermitian_part(y: np.ndarray) -> np.ndarray:
    """Projects Fourier coefficients onto those of a real field."""
    n = y.shape[-1]
    mirror = (-np.arange(n)) % n
    return 0.5 * (y + np.conj(y[..., mirror]))


def solve(config: SolveConfig, u0: Union[np.ndarray, ModeSum]) -> SolveResult:
    """Integrates from u0 and returns one State per snapshot time."""
    grid = config.grid
    model = discretize(config.model, grid, config.hyperbolized, config.dealias)
    stepper = get_stepper(config.stepper)
    initial = init_state(u0, grid, model.components)
    is_real = initial.is_real and model.is_real

    y = np.fft.fft(initial.components, axis=-1)
    if is_real:
        y = hermitian_part(y)
    dt = auto_time_step(model, y, stepper, config.cfl) if config.dt == AUTO else float(config.dt)
    split = model.split()

    logger.info("solve %s (%s) tau=%s n=%d stepper=%s dt=%.4e T=%g",
                config.model.name, 'hyperbolized' if config.hyperbolized else 'original',
                config.tau, grid.n, stepper.name, dt, config.t_final)
    started = time.perf_counter()
    result = SolveResult(config=config, dt=dt)
    t = 0.0
    for target in config.snapshot_times:
        span = target - t
        if span > 0:
            count = max(1, math.ceil(span / dt - 1e-9))
            h = span / count
            for index in range(count):
                y = stepper.step(split, y, h)
                if is_real:
                    y = hermitian_part(y)
                result.steps += 1
                if not np.all(np.isfinite(y)):
                    failed_at = t + (index + 1) * h
                    logger.error("non-finite values in %s at t=%.6g (tau=%s, dt=%.4e)",
                                 config.model.name, failed_at, config.tau, h)
                    raise SolverInstabilityError(
                        f"non-finite values at t={failed_at:.6g}", time=failed_at, tau=config.tau, dt=h)
        t = target
        snapshot = State(grid, np.fft.ifft(y, axis=-1), is_real=is_real, time=target)
        if not snapshot.is_reality_preserved(config.reality_tolerance):
            logger.error("real field lost reality at t=%.6g (ratio %.3e)", target, snapshot.imaginary_ratio())
            raise SolverInstabilityError(
                f"imaginary part above tolerance at t={target:.6g}", time=target, tau=config.tau, dt=dt,
                ratio=snapshot.imaginary_ratio())
        result.snapshots.append(snapshot)

    result.wall_time = time.perf_counter() - started
    logger.info("solve %s finished: %d steps in %.2fs", config.model.name, result.steps, result.wall_time)
    return result

"""
Dispersion relations of the linear relaxation systems.

Plane waves q = q_hat exp(i(kx - omega t)) solve D q_t + A q_x = B q iff
omega is an eigenvalue of Lambda (k A + i B). The eigenproblem is solved on the
similar matrix Lambda^{1/2} (k A + i B) Lambda^{1/2}, which is Hermitian for
stable odd-order systems, so real frequencies come back real to roundoff.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from apps.construction.services.permutations import SignedPermutation
from apps.construction.services.systems import HyperbolicSystem, LinearModel, assemble_system
from apps.dispersion.services.eigen import Spectrum, batched_eigenvalues, eigenvalues_dense
from apps.spectral.services.models import ModelSpec
from utils.exceptions import InvalidModelError

logger = logging.getLogger(__name__)

STABILITY_TOLERANCE = 1e-8
SPEED_TOLERANCE = 1e-8
SAMPLE_TAUS = (1e-3, 1e-1, 1.0)


def sample_wavenumbers(points: int = 100, low: float = -3.0, high: float = 3.0) -> np.ndarray:
    """Symmetric logarithmic grid: -logspace reversed followed by +logspace."""
    positive = np.logspace(low, high, points)
    return np.concatenate((-positive[::-1], positive))


@dataclass(frozen=True, eq=False)
class DispersionSweep:
    system: Optional[HyperbolicSystem]
    k_grid: np.ndarray
    branches: np.ndarray
    tolerance: float = STABILITY_TOLERANCE
    model: Optional[str] = None

    @property
    def max_imag(self) -> float:
        return float(np.max(self.branches.imag))

    @property
    def stable(self) -> bool:
        return is_stable_spectrum(self.branches, self.tolerance)


def is_stable_spectrum(values: np.ndarray, tolerance: float = STABILITY_TOLERANCE) -> bool:
    """Im omega <= tolerance * max(1, |omega|) for every value."""
    values = np.asarray(values)
    bound = tolerance * np.maximum(1.0, np.abs(values))
    return bool(np.all(values.imag <= bound))


def _balanced_pencil(system: HyperbolicSystem, wavenumbers: np.ndarray) -> np.ndarray:
    root = np.sqrt(system.inverse_relaxation)
    scale = np.outer(root, root)
    pencil = wavenumbers[:, None, None] * system.A[None, :, :] + 1j * system.B[None, :, :]
    return pencil * scale[None, :, :]


def balanced_dispersion_matrix(system: HyperbolicSystem, k: float) -> np.ndarray:
    """Lambda^{1/2} (k A + i B) Lambda^{1/2}; Hermitian for stable odd-order systems."""
    return _balanced_pencil(system, np.array([float(k)]))[0]


def dispersion_matrix(system: HyperbolicSystem, k: float) -> np.ndarray:
    """Lambda (k A + i B), unbalanced."""
    return (k * system.A + 1j * system.B) * system.inverse_relaxation[:, None]


def dispersion(system: HyperbolicSystem, k: float) -> Spectrum:
    """The m frequencies omega_i(k) of the relaxation system."""
    return eigenvalues_dense(balanced_dispersion_matrix(system, k))


def dispersion_sweep(system: HyperbolicSystem, k_grid: Iterable[float],
                     tolerance: float = STABILITY_TOLERANCE, threads: int = 1) -> DispersionSweep:
    """
    Frequencies over a wavenumber grid, one row per k, branches sorted by (Re, Im).

    With threads > 1 the grid is split into contiguous chunks solved concurrently.
    """
    k_grid = np.asarray(list(k_grid), dtype=float)
    pencils = _balanced_pencil(system, k_grid)
    if threads > 1 and len(k_grid) > threads:
        chunks = np.array_split(pencils, threads)
        with ThreadPoolExecutor(max_workers=threads) as executor:
            branches = np.concatenate(list(executor.map(batched_eigenvalues, chunks)))
    else:
        branches = batched_eigenvalues(pencils)
    sweep = DispersionSweep(system=system, k_grid=k_grid, branches=branches, tolerance=tolerance)
    logger.debug("dispersion sweep m=%d tau=%g over %d wavenumbers: max Im omega = %.3e",
                 system.m, system.tau, len(k_grid), sweep.max_imag)
    return sweep


def sampled_stability(model: LinearModel, P: SignedPermutation,
                      taus: Sequence[float] = SAMPLE_TAUS,
                      k_grid: Optional[np.ndarray] = None,
                      tolerance: float = STABILITY_TOLERANCE) -> bool:
    """Full-spectrum stability verdict of the relaxation with constraint permutation P."""
    k_grid = sample_wavenumbers() if k_grid is None else k_grid
    for tau in taus:
        if not dispersion_sweep(assemble_system(model, P, tau), k_grid, tolerance).stable:
            return False
    return True


def characteristic_speeds(system: HyperbolicSystem) -> np.ndarray:
    """Eigenvalues of Lambda A in ascending order; complex speeds mean the system is not hyperbolic."""
    root = np.sqrt(system.inverse_relaxation)
    spectrum = eigenvalues_dense(system.A * np.outer(root, root))
    speeds = spectrum.eigenvalues
    scale = max(1.0, float(np.max(np.abs(speeds))))
    if np.max(np.abs(speeds.imag)) > SPEED_TOLERANCE * scale:
        raise InvalidModelError(
            "complex characteristic speed: the relaxation system is not hyperbolic",
            m=system.m, tau=system.tau, max_imag=float(np.max(np.abs(speeds.imag))))
    return np.sort(speeds.real)


def catalog_dispersion(model: ModelSpec, k: float, tau: float) -> Spectrum:
    """omega = i eig(M(k)) for the hyperbolized form of a catalog model, linearized about zero."""
    if not tau:
        raise InvalidModelError("tau must be nonzero", tau=tau)
    operator = model.linear_operator(np.array([float(k)]), hyperbolized=True, tau=tau)[0]
    return eigenvalues_dense(1j * operator)


def catalog_dispersion_sweep(model: ModelSpec, k_grid: Iterable[float], tau: float,
                             tolerance: float = STABILITY_TOLERANCE) -> DispersionSweep:
    k_grid = np.asarray(list(k_grid), dtype=float)
    operators = model.linear_operator(k_grid, hyperbolized=True, tau=tau)
    branches = batched_eigenvalues(1j * operators)
    return DispersionSweep(system=None, k_grid=k_grid, branches=branches, tolerance=tolerance,
                           model=model.name)

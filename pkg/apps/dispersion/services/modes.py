"""
Exact evolution of a single Fourier mode under the linear relaxation system.
"""
import logging

import numpy as np
import scipy.linalg

from apps.construction.services.systems import HyperbolicSystem, relaxation_generator
from utils.exceptions import InvalidModelError, SeparationError

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e8
SEPARATION_RATIO = 0.5


def consistent_mode(m: int, k: float, u0_hat: complex) -> np.ndarray:
    """q_hat_j(0) = (ik)^j u0_hat."""
    return u0_hat * (1j * k) ** np.arange(m)


def mode_evolution(system: HyperbolicSystem, k: float, u0_hat: complex, t: float,
                   condition_limit: float = CONDITION_LIMIT) -> np.ndarray:
    """
    q_hat(t) = exp(t M(k)) q_hat(0) for consistent initial data.

    The exponential is taken of the balanced generator Lambda^{1/2} (B - ikA) Lambda^{1/2},
    through its eigendecomposition, or scipy's Pade scaling-and-squaring expm when
    the eigenvector matrix is worse conditioned than ``condition_limit``.
    """
    if not system.model.is_pure:
        raise InvalidModelError("mode evolution is defined for alpha = 0 only",
                                alpha=list(system.model.alpha))
    if not np.isfinite(t) or t < 0:
        raise InvalidModelError(f"t must be >= 0, got {t!r}", t=t)

    q0 = consistent_mode(system.m, k, complex(u0_hat))
    if t == 0:
        return q0

    root = np.sqrt(system.inverse_relaxation)
    generator = (system.B - 1j * k * system.A) * np.outer(root, root)
    scaled = q0 / root

    values, vectors = scipy.linalg.eig(generator)
    condition = np.linalg.cond(vectors)
    if not np.isfinite(condition) or condition > condition_limit:
        logger.debug("mode evolution k=%g tau=%g: eigenvector condition %.3e, using expm",
                     k, system.tau, condition)
        evolved = scipy.linalg.expm(t * generator) @ scaled
    else:
        coefficients = np.linalg.solve(vectors, scaled)
        evolved = vectors @ (np.exp(t * values) * coefficients)
    return root * evolved


def slow_eigenvalue(system: HyperbolicSystem, k: float) -> complex:
    """
    The eigenvalue of L_tau closest to zero, approximately -tau sigma0 (ik)^m.

    Ties in modulus are broken by the smaller |Im|.
    """
    generator = relaxation_generator(system, k)
    if k == 0:
        return 0j

    values = scipy.linalg.eigvals(generator)
    order = np.lexsort((np.abs(values.imag), np.abs(values)))
    values = values[order]
    slow, others = values[0], np.abs(values[1:])
    if not abs(slow) < SEPARATION_RATIO * np.min(others):
        raise SeparationError(
            f"slow eigenvalue not separated at k={k}, tau={system.tau}",
            k=k, tau=system.tau, slow=abs(slow), nearest=float(np.min(others)))
    return complex(slow)

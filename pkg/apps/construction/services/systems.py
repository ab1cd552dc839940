"""
Construction of the first-order hyperbolic relaxation of a scalar evolution PDE.

The model equation is

    u_t + sum_{j<m} alpha_j d_x^j u + sigma0 d_x^m u = 0

and its relaxation is written as D q_t + A q_x = B q with q_j ~ d_x^j u and
D = diag(1, tau, ..., tau). D is never formed: tau is kept as a scalar and
Lambda = D^{-1} is applied row by row.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from apps.construction.services.permutations import (
    SignedPermutation,
    has_real_spectrum,
)
from utils.exceptions import InvalidModelError, PermutationError

logger = logging.getLogger(__name__)


def required_sigma0(m: int) -> int:
    """Sign of the top derivative that keeps even-order models bounded, (-1)^(m/2)."""
    return 1 if (m // 2) % 2 == 0 else -1


def _validate_order_and_sign(m: int, sigma0: int) -> None:
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 2:
        raise InvalidModelError(f"m must be an integer >= 2, got {m!r}", m=m)
    if sigma0 not in (1, -1):
        raise InvalidModelError(f"sigma0 must be +1 or -1, got {sigma0!r}", sigma0=sigma0)
    if m % 2 == 0 and sigma0 != required_sigma0(m):
        raise InvalidModelError(
            f"not stable for even m with sigma0=-i^m: m={m} requires sigma0={required_sigma0(m)}",
            m=m, sigma0=sigma0,
        )


@dataclass(frozen=True)
class LinearModel:
    """u_t + sum alpha_j d_x^j u + sigma0 d_x^m u = 0, with solutions bounded for t > 0."""
    m: int
    sigma0: int
    alpha: Tuple[float, ...] = field(default=())

    def __post_init__(self):
        _validate_order_and_sign(self.m, self.sigma0)
        alpha = tuple(float(value) for value in self.alpha) or (0.0,) * self.m
        if len(alpha) != self.m:
            raise InvalidModelError(
                f"alpha must hold m={self.m} coefficients alpha_0..alpha_{self.m - 1}, got {len(alpha)}",
                alpha=list(alpha),
            )
        if not all(math.isfinite(value) for value in alpha):
            raise InvalidModelError("alpha coefficients must be finite", alpha=list(alpha))
        if alpha[0] < 0:
            raise InvalidModelError(
                f"alpha_0 must be >= 0 for bounded solutions, got {alpha[0]!r}", alpha=list(alpha))
        object.__setattr__(self, 'm', int(self.m))
        object.__setattr__(self, 'sigma0', int(self.sigma0))
        object.__setattr__(self, 'alpha', alpha)

    @property
    def is_pure(self) -> bool:
        """True for the single-term model u_t + sigma0 d_x^m u = 0."""
        return not any(self.alpha)

    def symbol(self, ik) -> np.ndarray:
        """Fourier symbol of the right-hand side: u_hat' = symbol * u_hat."""
        ik = np.asarray(ik, dtype=complex)
        total = -self.sigma0 * ik ** self.m
        for order, coefficient in enumerate(self.alpha):
            if coefficient:
                total = total - coefficient * ik ** order
        return total


@dataclass(frozen=True, eq=False)
class HyperbolicSystem:
    """Assembled relaxation system D q_t + A q_x = B q for one model and one tau."""
    model: LinearModel
    P: SignedPermutation
    tau: float
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        for name in ('A', 'B'):
            matrix = np.array(getattr(self, name), dtype=float)
            matrix.setflags(write=False)
            object.__setattr__(self, name, matrix)

    @property
    def m(self) -> int:
        return self.model.m

    @property
    def inverse_relaxation(self) -> np.ndarray:
        """Diagonal of Lambda = D^{-1}: 1 for q_0, 1/tau for the auxiliary rows."""
        scale = np.full(self.m, 1.0 / self.tau)
        scale[0] = 1.0
        return scale


def stable_permutation(m: int, sigma0: int) -> SignedPermutation:
    """
    The unique signed permutation giving a stable relaxation.

    Anti-diagonal of size m-1 with, in 1-based indices and j = m - i,
    p_{i,j} = sigma0 (-1)^(j-1) for j <= m/2 and sigma0 (-1)^(m-j) for j > m/2.
    """
    _validate_order_and_sign(m, sigma0)
    target, sign = [], []
    for i in range(1, m):
        j = m - i
        if 2 * j <= m:
            value = sigma0 * (-1) ** (j - 1)
        else:
            value = sigma0 * (-1) ** (m - j)
        target.append(j - 1)
        sign.append(value)
    return SignedPermutation(tuple(target), tuple(sign))


def advective_permutation(P: SignedPermutation, sigma0: int) -> SignedPermutation:
    """The matrix A = [[0, sigma0], [P, 0]] of the pure model, as a signed permutation of size m."""
    m = P.n + 1
    target = (m - 1,) + P.target
    sign = (sigma0,) + P.sign
    return SignedPermutation(target, sign)


def has_real_spectrum_A(P: SignedPermutation, sigma0: int) -> bool:
    """High-wavenumber condition: A has only real eigenvalues, i.e. A = A^T."""
    return has_real_spectrum(advective_permutation(P, sigma0))


def assemble_system(model: LinearModel, P: SignedPermutation, tau: float) -> HyperbolicSystem:
    """
    Builds A and B for the relaxation of ``model`` with constraint permutation ``P``.

    Row 0 is the q_0 equation: sigma0 in the last column, alpha_1..alpha_{m-1}
    as fluxes d_x q_{j-1} and -alpha_0 as a source. Rows 1..m-1 carry P twice:
    in A against q_0..q_{m-2} and in B against q_1..q_{m-1}, so that
    tau d_t q_{r+1} = sum_c P[r, c] (q_{c+1} - d_x q_c).
    """
    if P.n != model.m - 1:
        raise PermutationError(
            f"P has size {P.n} but the model of order m={model.m} needs size {model.m - 1}",
            m=model.m, size=P.n,
        )
    if not (isinstance(tau, (int, float, np.floating)) and math.isfinite(tau) and tau > 0):
        raise InvalidModelError(f"tau must be a positive real, got {tau!r}", tau=tau)

    m = model.m
    dense = P.dense()
    A = np.zeros((m, m))
    B = np.zeros((m, m))
    A[0, m - 1] = model.sigma0
    A[0, :m - 1] += np.asarray(model.alpha[1:])
    A[1:, :m - 1] = dense
    B[1:, 1:] = dense
    B[0, 0] = -model.alpha[0]

    logger.debug("assembled relaxation m=%d sigma0=%d tau=%g", m, model.sigma0, tau)
    return HyperbolicSystem(model=model, P=P, tau=float(tau), A=A, B=B)


def hyperbolize(model: LinearModel, tau: float) -> HyperbolicSystem:
    """Relaxation of ``model`` with the stable permutation."""
    return assemble_system(model, stable_permutation(model.m, model.sigma0), tau)


def semi_discrete_operator(system: HyperbolicSystem, wavenumbers: Sequence[float]) -> np.ndarray:
    """
    Per-mode generator M(k) = Lambda (B - i k A) with q_hat' = M(k) q_hat.

    Returns an array of shape (len(wavenumbers), m, m).
    """
    k = np.atleast_1d(np.asarray(wavenumbers, dtype=float))
    operator = system.B[None, :, :] - 1j * k[:, None, None] * system.A[None, :, :]
    return operator * system.inverse_relaxation[None, :, None]


def relaxation_generator(system: HyperbolicSystem, k: float) -> np.ndarray:
    """
    L_tau = -i tau Lambda (k A + i B) for the pure model, so that q_hat' = L_tau q_hat / tau.

    First row (0, ..., 0, -i k tau sigma0); rows 1.. are -i k P in the lower-left
    block plus P in the lower-right block.
    """
    if not system.model.is_pure:
        raise InvalidModelError(
            "the relaxation generator is defined for alpha = 0 only", alpha=list(system.model.alpha))
    return system.tau * semi_discrete_operator(system, [k])[0]

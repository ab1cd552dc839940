"""
Small dense eigenproblems behind every spectral check.

Matrices are reduced to upper Hessenberg form and handed to LAPACK's shifted
QR iteration through scipy.linalg. Eigenvalues are returned sorted by real
part, then imaginary part.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from utils.exceptions import EigenSolverError, HyperbolizationError

logger = logging.getLogger(__name__)

MAX_DENSE_SIZE = 64
RESIDUAL_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None

    @property
    def max_imag(self) -> float:
        return float(np.max(self.eigenvalues.imag))

    def __len__(self):
        return len(self.eigenvalues)


def spectral_order(values: np.ndarray) -> np.ndarray:
    """Indices sorting complex values by (real, imaginary) along the last axis."""
    values = np.asarray(values)
    if values.ndim == 1:
        return np.lexsort((values.imag, values.real))
    return np.array([np.lexsort((row.imag, row.real)) for row in values])


def eigenvalues_dense(M, vectors: bool = False) -> Spectrum:
    """
    All eigenvalues of a small dense complex matrix.

    Args:
        M: square matrix of size at most MAX_DENSE_SIZE.
        vectors: also return right eigenvectors (columns), residual-checked.

    Returns:
        Spectrum with eigenvalues in (Re, Im) order.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise HyperbolizationError(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    if n > MAX_DENSE_SIZE:
        raise HyperbolizationError(f"dense eigensolver limited to n <= {MAX_DENSE_SIZE}, got n={n}")
    if not np.all(np.isfinite(M)):
        raise EigenSolverError("matrix has non-finite entries", size=n)

    H, Q = scipy.linalg.hessenberg(M, calc_q=True)
    try:
        if vectors:
            values, hessenberg_vectors = scipy.linalg.eig(H)
        else:
            values = scipy.linalg.eigvals(H)
    except scipy.linalg.LinAlgError as exc:
        # LAPACK gives up after its own iteration budget (30 sweeps per eigenvalue)
        raise EigenSolverError(f"QR iteration did not converge: {exc}", size=n) from exc

    order = spectral_order(values)
    values = values[order]
    if not vectors:
        return Spectrum(values)

    eigenvectors = (Q @ hessenberg_vectors)[:, order]
    scale = max(np.linalg.norm(M, 2), np.finfo(float).tiny)
    residual = np.linalg.norm(M @ eigenvectors - eigenvectors * values[None, :], axis=0)
    if np.any(residual > RESIDUAL_TOLERANCE * scale * np.linalg.norm(eigenvectors, axis=0)):
        raise EigenSolverError("eigenpair residual above tolerance", size=n,
                               residual=float(np.max(residual)))
    return Spectrum(values, eigenvectors)


def batched_eigenvalues(stack: np.ndarray) -> np.ndarray:
    """Eigenvalues of a stack of small matrices, each row sorted like eigenvalues_dense."""
    try:
        values = np.linalg.eigvals(stack)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"QR iteration did not converge: {exc}",
                               size=stack.shape[-1]) from exc
    order = spectral_order(values)
    return np.take_along_axis(values, order, axis=-1)

"""Dense complex linear algebra primitives used throughout the package.

All matrices are numpy arrays of complex dtype. Tolerances are relative to
the Frobenius norm with a floor of 1, since every operator handled here has
entries of order one.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimMismatchError, NonSquareError, NotHermitianError

__all__ = [
    "HermEigen",
    "kron",
    "dagger",
    "herm_eig",
    "trace_norm",
    "spectral_norm",
    "partial_trace",
]

_HERM_TOL = 1e-10


class HermEigen(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    values: real eigenvalues sorted in descending order.
    vectors: unitary matrix whose column j is the eigenvector of values[j].
    """

    values: np.ndarray
    vectors: np.ndarray


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(a, b)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def _require_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {a.shape}")
    return a


def is_hermitian(a: np.ndarray, tol: float = _HERM_TOL) -> bool:
    """True if a is Hermitian within tol, relative to max(1, ||a||_F)."""
    a = _require_square(a)
    scale = max(1.0, np.linalg.norm(a))
    return np.linalg.norm(a - a.conj().T) <= tol * scale


def herm_eig(h: np.ndarray) -> HermEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    The input is symmetrized internally; asymmetry beyond 1e-10 (relative
    Frobenius, floored at 1) raises NotHermitianError.
    """
    h = _require_square(h)
    if not is_hermitian(h):
        raise NotHermitianError("matrix is not Hermitian within 1e-10")
    sym = 0.5 * (h + h.conj().T)
    values, vectors = np.linalg.eigh(sym)
    return HermEigen(values[::-1].copy(), vectors[:, ::-1].copy())


def trace_norm(a: np.ndarray) -> float:
    """Sum of singular values ||a||_1.

    For Hermitian input this reduces to the sum of absolute eigenvalues,
    which is the cheaper and more accurate path.
    """
    a = _require_square(a)
    if is_hermitian(a):
        return float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (a + a.conj().T)))))
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value of a."""
    return float(np.linalg.norm(np.asarray(a), 2))


def partial_trace(
    m: np.ndarray, factor_dims: tuple[int, int], traced_factor: int
) -> np.ndarray:
    """Partial trace of a matrix on a two-factor tensor-product space.

    factor_dims gives the dimensions (d1, d2) of the factors; traced_factor
    selects the factor to trace out, counted from 1.
    """
    m = _require_square(m)
    d1, d2 = factor_dims
    if d1 * d2 != m.shape[0]:
        raise DimMismatchError(
            f"factor dims {factor_dims} do not multiply to matrix dim {m.shape[0]}"
        )
    t = m.reshape(d1, d2, d1, d2)
    if traced_factor == 1:
        return np.trace(t, axis1=0, axis2=2)
    if traced_factor == 2:
        return np.trace(t, axis1=1, axis2=3)
    raise DimMismatchError(f"traced_factor must be 1 or 2, got {traced_factor}")

"""Dense complex linear-algebra kernels for matrices up to dimension 16.

Thin contract-enforcing wrappers around LAPACK (via numpy). Every caller in
this package goes through these functions, so the accuracy contracts are
stated once, here, as module constants:

* ``DET_TOL``        -- determinant agrees with cofactor expansion to
                        1e-12 * max(1, |det|)
* ``HERMITICITY_TOL``-- max-entry Hermiticity defect accepted by
                        :func:`eig_hermitian`
* ``EIG_TRACE_TOL``  -- eigenvalue-sum vs trace conservation (Hermitian)
* ``GENERAL_EIG_TOL``-- trace conservation and characteristic-polynomial
                        residual for general spectra
* ``SVD_CROSS_TOL``  -- product-of-singular-values vs |det| and
                        Frobenius-norm conservation

All functions are pure and thread-safe.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, HermiticityError

MAX_DIM = 16
DET_TOL = 1e-12
HERMITICITY_TOL = 1e-10
EIG_TRACE_TOL = 1e-10
GENERAL_EIG_TOL = 1e-8
SVD_CROSS_TOL = 1e-10


def as_matrix(m, square: bool = False) -> np.ndarray:
    """Validate and return ``m`` as a complex 2-D array.

    Rejects non-2-D input, dimensions above ``MAX_DIM``, non-finite entries,
    and (if ``square``) rectangular shapes.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got ndim={a.ndim}")
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        raise DimensionError("empty matrix")
    if rows > MAX_DIM or cols > MAX_DIM:
        raise DimensionError(f"dimension {a.shape} exceeds supported maximum {MAX_DIM}")
    if square and rows != cols:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains non-finite entries")
    return a


def determinant(m) -> complex:
    """Determinant of a square matrix (LU with partial pivoting)."""
    a = as_matrix(m, square=True)
    return complex(np.linalg.det(a))


def eig_hermitian(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    Raises :class:`HermiticityError` if max|m - m^dagger| exceeds
    ``HERMITICITY_TOL``.
    """
    a = as_matrix(m, square=True)
    defect = np.max(np.abs(a - a.conj().T))
    if defect > HERMITICITY_TOL:
        raise HermiticityError(f"Hermiticity defect {defect:.3e} exceeds {HERMITICITY_TOL}")
    return np.linalg.eigvalsh(a)


def eig_general(m) -> np.ndarray:
    """Eigenvalue multiset of a general square matrix.

    Returned sorted by (real, imag) so equal inputs give identical output;
    the contract is the residual bound ``GENERAL_EIG_TOL``, not any
    particular ordering of degenerate values.
    """
    a = as_matrix(m, square=True)
    vals = np.linalg.eigvals(a)
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


def singular_values(m) -> np.ndarray:
    """Singular values, descending and nonnegative. Any rectangular shape."""
    a = as_matrix(m)
    return np.linalg.svd(a, compute_uv=False)


def kron(a, b) -> np.ndarray:
    """Tensor (Kronecker) product; output dimensions multiply."""
    return np.kron(as_matrix(a), as_matrix(b))

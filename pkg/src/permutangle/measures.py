"""Scalar correlation and entanglement measures for small quantum states.

All measures are local-unitary invariant and clamp to [0, 1] only after
asserting the raw value lies within ``CLAMP_TOL`` of that interval; a value
further out indicates a bug upstream and raises instead of being hidden.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import matkernel
from .errors import DimensionError, DomainError
from .permutations import link_transform, partial_transpose, realign
from .qstate import DensityMatrix, PureState, RANK_EPS, reduce

CLAMP_TOL = 1e-9
#: Separability witness threshold: strictly above it implies entanglement.
WITNESS_THRESHOLD = (1.0 / 3.0) ** 0.75

# sigma_y (x) sigma_y, the two-qubit spin-flip kernel (real symmetric).
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def _clamp01(value: float, tol: float = CLAMP_TOL, what: str = "measure") -> float:
    value = float(value)
    if value < -tol or value > 1.0 + tol:
        raise ValueError(f"{what} value {value!r} outside [0, 1] beyond tolerance {tol}")
    return min(1.0, max(0.0, value))


def _require_two_qubits(rho: DensityMatrix, what: str) -> DensityMatrix:
    if rho.dims != (2, 2):
        raise DimensionError(f"{what} is defined for two qubits, got dims {rho.dims}")
    return rho


@dataclass(frozen=True)
class MeasureRecord:
    """Per-state measure tuple emitted by experiments.

    ``tau`` is present only when the record descends from a three-qubit pure
    parent; otherwise it is None (serialized as an empty CSV field).
    """

    rank: int
    c12: float
    n12: float
    r12: float
    tau: Optional[float]
    family: str


def r12(rho: DensityMatrix) -> float:
    """Determinant-based correlation measure of the realigned partial transpose.

    For equal local dimensions d the value is
    ``d * |det(realign(pt2(rho)))| ** (1/d^2)``, which equals d times the
    geometric mean of the link array's singular values. It vanishes on wide
    classes of separable states and reaches 1 only on maximally entangled
    ones.

    The fourth root makes the measure quartically ill-conditioned at
    det = 0: states whose exact value is 0 through a singular (but not
    structurally zero) link evaluate to O(eps^(1/4)) ~ 1e-4 in double
    precision.
    """
    if len(rho.dims) != 2:
        raise DimensionError(f"expected a bipartite state, got dims {rho.dims}")
    d1, d2 = rho.dims
    if d1 != d2:
        raise DimensionError(f"r12 requires equal local dimensions, got {rho.dims}")
    det = matkernel.determinant(link_transform(rho))
    value = d1 * abs(det) ** (1.0 / d1**2)
    return _clamp01(value, what="r12")


def r12_via_singular_values(rho: DensityMatrix) -> float:
    """r12 computed as d times the geometric mean of the link singular values.

    Independent route from :func:`r12` (SVD instead of LU determinant); the
    two agree to 1e-9 and both are exposed so the agreement stays testable.
    """
    if len(rho.dims) != 2 or rho.dims[0] != rho.dims[1]:
        raise DimensionError(f"r12 requires equal local dimensions, got {rho.dims}")
    d = rho.dims[0]
    sv = matkernel.singular_values(link_transform(rho))
    value = d * float(np.prod(sv ** (1.0 / d**2)))
    return _clamp01(value, what="r12")


def _wootters_lambdas(rho: DensityMatrix) -> np.ndarray:
    """Spin-flip singular values lambda_1 >= ... >= lambda_4.

    Computed from the spectral decomposition truncated at the numerical-rank
    threshold: with rho = sum_i p_i |v_i><v_i|, the lambdas are the singular
    values of the symmetric overlap matrix
    sqrt(p_i p_j) <v_i| sigma_y x sigma_y |v_j*>.  This avoids taking square
    roots of near-zero eigenvalues of rho*rho_tilde, which would amplify
    solver noise to ~1e-8 on rank-deficient states.
    """
    w, v = rho.spectral()
    r = max(1, int(np.count_nonzero(w > RANK_EPS)))
    w, v = w[:r], v[:, :r]
    sqrt_w = np.sqrt(w)
    overlap = (sqrt_w[:, None] * sqrt_w[None, :]) * (v.conj().T @ _SPIN_FLIP @ v.conj())
    lambdas = np.zeros(4)
    sv = np.linalg.svd(overlap, compute_uv=False)
    lambdas[: sv.size] = sv
    return lambdas


def concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence max{0, lambda_1 - lambda_2 - lambda_3 - lambda_4}.

    Equals 2|ad - bc| on pure states a|00> + b|01> + c|10> + d|11>.
    """
    _require_two_qubits(rho, "concurrence")
    lam = _wootters_lambdas(rho)
    return _clamp01(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]), what="concurrence")


def negativity(rho: DensityMatrix) -> float:
    """Two-qubit negativity max{0, -2 * min eigenvalue of the partial transpose}."""
    _require_two_qubits(rho, "negativity")
    evals = matkernel.eig_hermitian(partial_transpose(rho, 2))
    return _clamp01(max(0.0, -2.0 * float(evals[0])), what="negativity")


def pure_concurrence(psi: PureState) -> float:
    """2|ad - bc| for a two-qubit pure state (the pure-state closed form)."""
    if psi.dims != (2, 2):
        raise DimensionError(f"expected a two-qubit pure state, got dims {psi.dims}")
    a, b, c, d = psi.amplitudes
    return _clamp01(2.0 * abs(a * d - b * c), what="concurrence")


def three_tangle(psi: PureState, c12: Optional[float] = None) -> float:
    """Residual tripartite entanglement of a three-qubit pure state.

    tangle(1|23) - c12^2 - c13^2, with tangle(1|23) = 4*det(rho_1). The value
    is invariant under qubit permutations. Callers that already measured the
    (1, 2) reduction may pass its concurrence to skip recomputing it.
    """
    if psi.dims != (2, 2, 2):
        raise DimensionError(f"three_tangle needs a (2, 2, 2) pure state, got {psi.dims}")
    rho1 = reduce(psi, (1,))
    tangle_1_23 = 4.0 * float(np.real(matkernel.determinant(rho1.matrix)))
    if c12 is None:
        c12 = concurrence(reduce(psi, (1, 2)))
    c13 = concurrence(reduce(psi, (1, 3)))
    return _clamp01(tangle_1_23 - c12**2 - c13**2, what="three_tangle")


def tau_from_r_c(r12_value: float, c12_value: float) -> float:
    """Tangle of any rank-2 purification, fixed by (r12, c12): (r^4 - c^4) / c^2."""
    if c12_value <= 1e-12:
        raise DomainError("tau_from_r_c is undefined for vanishing c12")
    return (r12_value**4 - c12_value**4) / c12_value**2


def ccnr_norm(rho: DensityMatrix) -> float:
    """Trace norm of the realigned density matrix (no partial transpose).

    Values above 1 witness entanglement (computable cross norm / realignment
    criterion).
    """
    if len(rho.dims) != 2:
        raise DimensionError(f"expected a bipartite state, got dims {rho.dims}")
    sv = matkernel.singular_values(realign(rho.matrix, rho.dims))
    return float(np.sum(sv))


def linear_entropy(rho: DensityMatrix) -> float:
    """Two-qubit linear entropy (4/3)(1 - tr rho^2), normalized to [0, 1]."""
    _require_two_qubits(rho, "linear_entropy")
    return _clamp01((4.0 / 3.0) * (1.0 - rho.purity()), what="linear_entropy")


def witness_r12(rho: DensityMatrix) -> bool:
    """True iff r12 strictly exceeds the separability threshold (1/3)^(3/4)."""
    _require_two_qubits(rho, "witness_r12")
    return r12(rho) > WITNESS_THRESHOLD

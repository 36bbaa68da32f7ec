"""Named state families, their closed-form measures, and boundary curves.

Every constructor returns a validated :class:`PureState` or
:class:`DensityMatrix` matching the family's defining matrix or amplitude
vector entrywise. ``closed_form_measures`` returns the analytically known
values for that family as a dict keyed by measure name; keys vary per family
(cross-pair values like ``c13`` exist only for three-qubit families).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .errors import DimensionError, DomainError
from .measures import WITNESS_THRESHOLD, concurrence, negativity, r12, three_tangle
from .qstate import DensityMatrix, PureState, purify, reduce
from .qstate import _trusted_dm, _trusted_pure

PARAM_SUM_TOL = 1e-9
CANONICAL_NORM_TOL = 1e-10

_SQ2 = math.sqrt(2.0)

#: The four Bell vectors in the computational basis.
BELL_PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0]) / _SQ2
BELL_PHI_MINUS = np.array([1.0, 0.0, 0.0, -1.0]) / _SQ2
BELL_PSI_PLUS = np.array([0.0, 1.0, 1.0, 0.0]) / _SQ2
BELL_PSI_MINUS = np.array([0.0, 1.0, -1.0, 0.0]) / _SQ2

FAMILY_TAGS = (
    "bell_diagonal",
    "werner",
    "mems1",
    "mems2",
    "x_state",
    "w_class",
    "canonical3",
    "m3ts",
    "m3ts_general",
    "ansatz1",
    "ansatz2",
    "mems1_purification",
    "cq_state",
)


@dataclass(frozen=True)
class CanonicalParams:
    """Five amplitudes and one phase of the three-qubit normal form.

    lambda0 |000> + lambda1 e^{i theta} |100> + lambda2 |101>
    + lambda3 |110> + lambda4 |111>, with sum(lambda_i^2) = 1.
    """

    lambda0: float
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    theta: float = 0.0

    def __post_init__(self):
        lams = self.lambdas
        if any(l < 0.0 or l > 1.0 for l in lams):
            raise DomainError(f"canonical amplitudes must lie in [0, 1], got {lams}")
        norm2 = sum(l * l for l in lams)
        if abs(norm2 - 1.0) > CANONICAL_NORM_TOL:
            raise DomainError(f"canonical amplitudes must satisfy sum lambda^2 = 1, got {norm2!r}")
        if not 0.0 <= self.theta <= math.pi + 1e-12:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")

    @property
    def lambdas(self) -> tuple[float, ...]:
        return (self.lambda0, self.lambda1, self.lambda2, self.lambda3, self.lambda4)

    def state(self) -> PureState:
        amps = np.zeros(8, dtype=complex)
        amps[0] = self.lambda0
        amps[4] = self.lambda1 * np.exp(1j * self.theta)
        amps[5] = self.lambda2
        amps[6] = self.lambda3
        amps[7] = self.lambda4
        return _trusted_pure((2, 2, 2), amps / np.linalg.norm(amps))


@dataclass(frozen=True)
class FamilySpec:
    """A family tag plus its named parameters."""

    family: str
    params: Mapping[str, Union[float, complex]] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILY_TAGS:
            raise DomainError(f"unknown family {self.family!r}; known: {FAMILY_TAGS}")
        object.__setattr__(self, "params", dict(self.params))


def _as_spec(spec_or_family, params) -> FamilySpec:
    if isinstance(spec_or_family, FamilySpec):
        if params:
            raise TypeError("pass parameters either in a FamilySpec or as keywords, not both")
        return spec_or_family
    return FamilySpec(str(spec_or_family), params)


def _unit_interval(params, key, hi=1.0) -> float:
    value = float(params[key])
    if not -1e-12 <= value <= hi + 1e-12:
        raise DomainError(f"parameter {key}={value} outside [0, {hi}]")
    return min(hi, max(0.0, value))


def _bell_mixture(weights: Sequence[float]) -> np.ndarray:
    vecs = (BELL_PHI_PLUS, BELL_PSI_PLUS, BELL_PSI_MINUS, BELL_PHI_MINUS)
    rho = np.zeros((4, 4), dtype=complex)
    for w, v in zip(weights, vecs):
        rho += w * np.outer(v, v)
    return rho


def _bell_diagonal_weights(params) -> tuple[float, float, float, float]:
    ps = tuple(float(params[k]) for k in ("p1", "p2", "p3", "p4"))
    if any(p < -1e-12 for p in ps):
        raise DomainError(f"Bell-diagonal weights must be nonnegative, got {ps}")
    if abs(sum(ps) - 1.0) > PARAM_SUM_TOL:
        raise DomainError(f"Bell-diagonal weights must sum to 1, got sum {sum(ps)!r}")
    return tuple(max(0.0, p) for p in ps)


def _make_bell_diagonal(params) -> DensityMatrix:
    return _trusted_dm((2, 2), _bell_mixture(_bell_diagonal_weights(params)))


def _make_werner(params) -> DensityMatrix:
    p = _unit_interval(params, "p")
    bell = str(params.get("bell", "phi+"))
    if bell == "phi+":
        vec = BELL_PHI_PLUS
    elif bell == "psi-":
        vec = BELL_PSI_MINUS
    else:
        raise DomainError(f"werner fiducial must be 'phi+' or 'psi-', got {bell!r}")
    rho = (1.0 - p) * np.eye(4) / 4.0 + p * np.outer(vec, vec)
    return _trusted_dm((2, 2), rho.astype(complex))


def _make_mems1(params) -> DensityMatrix:
    # Accepted on all of [0, 1]; it is maximally entangled at fixed linear
    # entropy only for c >= 2/3, but the same matrix stays a valid rank-2
    # boundary state below that.
    c = _unit_interval(params, "c")
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[0, 3] = rho[3, 0] = rho[3, 3] = c / 2.0
    rho[1, 1] = 1.0 - c
    return _trusted_dm((2, 2), rho)


def _make_mems2(params) -> DensityMatrix:
    c = _unit_interval(params, "c", hi=2.0 / 3.0)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[1, 1] = rho[3, 3] = 1.0 / 3.0
    rho[0, 3] = rho[3, 0] = c / 2.0
    return _trusted_dm((2, 2), rho)


def _make_x_state(params) -> DensityMatrix:
    a, b, c, d = (float(params[k]) for k in ("a", "b", "c", "d"))
    w, z = complex(params.get("w", 0.0)), complex(params.get("z", 0.0))
    if min(a, b, c, d) < -1e-12:
        raise DomainError("x_state diagonal entries must be nonnegative")
    if abs(a + b + c + d - 1.0) > PARAM_SUM_TOL:
        raise DomainError(f"x_state diagonal must sum to 1, got {a + b + c + d!r}")
    if abs(w) > math.sqrt(max(a, 0.0) * max(d, 0.0)) + 1e-9:
        raise DomainError("x_state positivity requires sqrt(a*d) >= |w|")
    if abs(z) > math.sqrt(max(b, 0.0) * max(c, 0.0)) + 1e-9:
        raise DomainError("x_state positivity requires sqrt(b*c) >= |z|")
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = a, b, c, d
    rho[0, 3], rho[3, 0] = w, np.conj(w)
    rho[1, 2], rho[2, 1] = z, np.conj(z)
    return DensityMatrix((2, 2), rho)


def _canonical_from_params(params, forced: Mapping[str, float] | None = None) -> CanonicalParams:
    values = dict(params)
    if forced:
        values.update(forced)
    return CanonicalParams(
        float(values.get("lambda0", 0.0)),
        float(values.get("lambda1", 0.0)),
        float(values.get("lambda2", 0.0)),
        float(values.get("lambda3", 0.0)),
        float(values.get("lambda4", 0.0)),
        float(values.get("theta", 0.0)),
    )


def _make_canonical3(params) -> PureState:
    return _canonical_from_params(params).state()


def _make_w_class(params) -> PureState:
    if abs(float(params.get("lambda4", 0.0))) > 1e-12:
        raise DomainError("w_class states have lambda4 = 0")
    return _canonical_from_params(params, forced={"lambda4": 0.0}).state()


def _make_m3ts(params) -> PureState:
    c12 = _unit_interval(params, "c12")
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0 / _SQ2
    amps[6] = c12 / _SQ2
    amps[7] = math.sqrt(max(0.0, 1.0 - c12 * c12)) / _SQ2
    return PureState((2, 2, 2), amps)


def _make_m3ts_general(params) -> PureState:
    c12 = _unit_interval(params, "c12")
    c13 = _unit_interval(params, "c13")
    rest = 1.0 - c12 * c12 - c13 * c13
    if rest < -1e-12:
        raise DomainError(f"m3ts_general requires c12^2 + c13^2 <= 1, got {c12**2 + c13**2!r}")
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0 / _SQ2
    amps[5] = c13 / _SQ2
    amps[6] = c12 / _SQ2
    amps[7] = math.sqrt(max(0.0, rest)) / _SQ2
    return PureState((2, 2, 2), amps)


def _make_ansatz1(params) -> DensityMatrix:
    p = _unit_interval(params, "p")
    return _trusted_dm((2, 2), _bell_mixture((p, (1.0 - p) / 2.0, (1.0 - p) / 2.0, 0.0)))


def _ansatz2_weights(params) -> tuple[float, float, float]:
    alpha = float(params["alpha"])
    if "beta" in params:
        beta = float(params["beta"])
        gamma = 1.0 - alpha - beta
        if min(alpha, beta, gamma) < -1e-12:
            raise DomainError("ansatz2 weights (alpha, beta, 1-alpha-beta) must be nonnegative")
        return alpha, max(0.0, beta), max(0.0, gamma)
    if not -1e-12 <= alpha <= 1.0 / 3.0 + 1e-12:
        raise DomainError(f"optimized ansatz2 requires alpha in [0, 1/3], got {alpha}")
    alpha = min(1.0 / 3.0, max(0.0, alpha))
    root = math.sqrt((1.0 - alpha) * (1.0 - 3.0 * alpha))
    beta = 0.5 * (1.0 - alpha + root)
    gamma = 0.5 * (1.0 - alpha - root)
    return alpha, beta, gamma


def _make_ansatz2(params) -> DensityMatrix:
    alpha, beta, gamma = _ansatz2_weights(params)
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = alpha
    rho += beta * np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS)
    rho += gamma * np.outer(BELL_PHI_MINUS, BELL_PHI_MINUS)
    return _trusted_dm((2, 2), rho)


def _make_mems1_purification(params) -> PureState:
    c = _unit_interval(params, "c")
    amps = np.zeros(8, dtype=complex)
    amps[0] = math.sqrt(c / 2.0)
    amps[5] = math.sqrt(1.0 - c)
    amps[6] = math.sqrt(c / 2.0)
    return PureState((2, 2, 2), amps)


def _bloch_qubit(vec: Sequence[float]) -> np.ndarray:
    x, y, z = (float(v) for v in vec)
    if x * x + y * y + z * z > 1.0 + 1e-9:
        raise DomainError(f"Bloch vector {(x, y, z)} lies outside the unit ball")
    return 0.5 * np.array([[1.0 + z, x - 1j * y], [x + 1j * y, 1.0 - z]])


def _make_cq_state(params) -> DensityMatrix:
    p = _unit_interval(params, "p")
    rho_a = _bloch_qubit(params.get("a", (0.0, 0.0, 1.0)))
    rho_b = _bloch_qubit(params.get("b", (0.0, 0.0, -1.0)))
    rho = np.zeros((4, 4), dtype=complex)
    rho[:2, :2] = p * rho_a
    rho[2:, 2:] = (1.0 - p) * rho_b
    return _trusted_dm((2, 2), rho)


_BUILDERS: dict[str, Callable] = {
    "bell_diagonal": _make_bell_diagonal,
    "werner": _make_werner,
    "mems1": _make_mems1,
    "mems2": _make_mems2,
    "x_state": _make_x_state,
    "w_class": _make_w_class,
    "canonical3": _make_canonical3,
    "m3ts": _make_m3ts,
    "m3ts_general": _make_m3ts_general,
    "ansatz1": _make_ansatz1,
    "ansatz2": _make_ansatz2,
    "mems1_purification": _make_mems1_purification,
    "cq_state": _make_cq_state,
}


def make_state(spec_or_family, **params) -> Union[DensityMatrix, PureState]:
    """Construct the state of a named family.

    Accepts either a :class:`FamilySpec` or a family tag plus keyword
    parameters. Out-of-domain parameters raise :class:`DomainError` naming
    the violated constraint.
    """
    spec = _as_spec(spec_or_family, params)
    try:
        return _BUILDERS[spec.family](spec.params)
    except KeyError as missing:
        raise DomainError(f"family {spec.family!r} is missing parameter {missing}") from None


# --------------------------------------------------------------------------
# closed forms


def _closed_bell_diagonal(params) -> dict:
    p1, p2, p3, p4 = _bell_diagonal_weights(params)
    c = max(0.0, 2.0 * max(p1, p2, p3, p4) - 1.0)
    r = abs(8.0 * (p2 + p3 - 0.5) * (p2 + p4 - 0.5) * (p3 + p4 - 0.5)) ** 0.25
    return {"c12": c, "n12": c, "r12": r}


def _closed_werner(params) -> dict:
    p = _unit_interval(params, "p")
    c = max(0.0, (3.0 * p - 1.0) / 2.0)
    return {"c12": c, "n12": c, "r12": p**0.75}


def _closed_mems1(params) -> dict:
    c = _unit_interval(params, "c")
    n = math.sqrt((1.0 - c) ** 2 + c * c) - (1.0 - c)
    return {"c12": c, "r12": c, "n12": n, "tau": 0.0}


def _closed_mems2(params) -> dict:
    c = _unit_interval(params, "c", hi=2.0 / 3.0)
    return {"c12": c, "r12": math.sqrt(2.0 * c / 3.0)}


def _closed_x_state(params) -> dict:
    a, b, c, d = (float(params[k]) for k in ("a", "b", "c", "d"))
    w, z = complex(params.get("w", 0.0)), complex(params.get("z", 0.0))
    conc = 2.0 * max(
        0.0,
        abs(z) - math.sqrt(max(0.0, a * d)),
        abs(w) - math.sqrt(max(0.0, b * c)),
    )
    r = 2.0 * abs(a * d - b * c) ** 0.25 * abs(abs(z) ** 2 - abs(w) ** 2) ** 0.25
    return {"c12": conc, "r12": r}


def _closed_canonical(params) -> dict:
    cp = _canonical_from_params(params)
    l0, _, _, l3, l4 = cp.lambdas
    return {
        "c12": 2.0 * l0 * l3,
        "r12": 2.0 * l0 * math.sqrt(l3) * (l3**2 + l4**2) ** 0.25,
        "tau": 4.0 * (l0 * l4) ** 2,
    }


def _closed_w_class(params) -> dict:
    cp = _canonical_from_params(params, forced={"lambda4": 0.0})
    l0, _, l2, l3, _ = cp.lambdas
    return {
        "c12": 2.0 * l0 * l3,
        "r12": 2.0 * l0 * l3,
        "c13": 2.0 * l0 * l2,
        "r13": 2.0 * l0 * l2,
        "c23": 2.0 * l2 * l3,
        "r23": 2.0 * l2 * l3,
        "tau": 0.0,
    }


def _closed_m3ts(params) -> dict:
    c12 = _unit_interval(params, "c12")
    return {
        "c12": c12,
        "r12": math.sqrt(c12),
        "n12": c12,
        "tau": 1.0 - c12 * c12,
        "c13": 0.0,
        "c23": 0.0,
        "r13": 0.0,
        "r23": 0.0,
    }


def _closed_m3ts_general(params) -> dict:
    c12 = _unit_interval(params, "c12")
    c13 = _unit_interval(params, "c13")
    if c12 * c12 + c13 * c13 > 1.0 + 1e-12:
        raise DomainError("m3ts_general requires c12^2 + c13^2 <= 1")
    r12_val = math.sqrt(c12) * (1.0 - c13 * c13) ** 0.25
    r13_val = math.sqrt(c13) * (1.0 - c12 * c12) ** 0.25
    return {
        "c12": c12,
        "c13": c13,
        "c23": c12 * c13,
        "r12": r12_val,
        "r13": r13_val,
        "r23": r12_val * r13_val,
        "tau": max(0.0, 1.0 - c12 * c12 - c13 * c13),
    }


def _closed_ansatz1(params) -> dict:
    p = _unit_interval(params, "p")
    c = max(0.0, 2.0 * p - 1.0)
    return {"c12": c, "n12": c, "r12": math.sqrt(p) * abs(2.0 * p - 1.0) ** 0.25}


def _closed_ansatz2(params) -> dict:
    alpha, beta, gamma = _ansatz2_weights(params)
    r = math.sqrt(abs(beta**2 - gamma**2))
    n = math.sqrt(alpha**2 + (beta - gamma) ** 2) - alpha
    return {"r12": r, "n12": n}


def _closed_mems1_purification(params) -> dict:
    c = _unit_interval(params, "c")
    cross = math.sqrt(2.0 * c * (1.0 - c))
    return {
        "c12": c,
        "r12": c,
        "n12": math.sqrt((1.0 - c) ** 2 + c * c) - (1.0 - c),
        "c13": cross,
        "r13": cross,
        "c23": cross,
        "r23": cross,
        "tau": 0.0,
    }


def _closed_cq_state(params) -> dict:
    return {"r12": 0.0}


_CLOSED_FORMS: dict[str, Callable] = {
    "bell_diagonal": _closed_bell_diagonal,
    "werner": _closed_werner,
    "mems1": _closed_mems1,
    "mems2": _closed_mems2,
    "x_state": _closed_x_state,
    "w_class": _closed_w_class,
    "canonical3": _closed_canonical,
    "m3ts": _closed_m3ts,
    "m3ts_general": _closed_m3ts_general,
    "ansatz1": _closed_ansatz1,
    "ansatz2": _closed_ansatz2,
    "mems1_purification": _closed_mems1_purification,
    "cq_state": _closed_cq_state,
}


def closed_form_measures(spec_or_family, **params) -> dict[str, float]:
    """Analytically known measure values for a family, keyed by name.

    Keys are a subset of {c12, n12, r12, tau, c13, r13, c23, r23}; only
    values with a closed form for that family are present.
    """
    spec = _as_spec(spec_or_family, params)
    try:
        return _CLOSED_FORMS[spec.family](spec.params)
    except KeyError as missing:
        raise DomainError(f"family {spec.family!r} is missing parameter {missing}") from None


def numeric_measures(spec_or_family, **params) -> dict[str, float]:
    """The same measures computed numerically from the constructed state.

    For three-qubit pure families this includes all pairwise values and the
    tangle; for two-qubit families it is {c12, n12, r12}.
    """
    spec = _as_spec(spec_or_family, params)
    state = make_state(spec)
    if isinstance(state, PureState):
        if state.dims != (2, 2, 2):
            raise DimensionError(f"unexpected pure-state dims {state.dims}")
        rho12 = reduce(state, (1, 2))
        rho13 = reduce(state, (1, 3))
        rho23 = reduce(state, (2, 3))
        return {
            "c12": concurrence(rho12),
            "n12": negativity(rho12),
            "r12": r12(rho12),
            "c13": concurrence(rho13),
            "r13": r12(rho13),
            "c23": concurrence(rho23),
            "r23": r12(rho23),
            "tau": three_tangle(state),
        }
    out = {
        "c12": concurrence(state),
        "n12": negativity(state),
        "r12": r12(state),
    }
    # rank <= 2 states purify to three qubits, so their tangle is measurable
    rank = state.rank()
    if rank == 2:
        out["tau"] = three_tangle(purify(state))
    elif rank == 1:
        out["tau"] = 0.0
    return out


# --------------------------------------------------------------------------
# boundary curves

CURVE_TAGS = (
    "cr_rank2_upper",
    "cr_rank2_lower",
    "cr_rank3",
    "cr_rank4",
    "nr_rank2_upper",
    "nr_rank2_lower",
    "nr_rank3",
    "nr_rank4",
)

_KNEE = WITNESS_THRESHOLD  # (1/3)^(3/4): where the rank-3/4 bounds leave zero


def cr_rank3_r_bound(c: float) -> float:
    """Largest r12 of a rank-3 state at concurrence c > 0."""
    return c**0.25 * math.sqrt((1.0 + c) / 2.0)


def nr_rank3_r_bound(n: float) -> float:
    """Largest r12 of a rank-3 state at negativity n > 0."""
    return n**0.25 * ((2.0 + n) / 3.0) ** 0.75


def rank4_r_bound(v: float) -> float:
    """Largest r12 of any two-qubit state at concurrence (or negativity) v."""
    return ((2.0 * v + 1.0) / 3.0) ** 0.75


def nr_rank2_n_lower(r: float) -> float:
    """Smallest negativity of a rank<=2 state at r12 = r."""
    return math.sqrt((1.0 - r) ** 2 + r * r) - (1.0 - r)


def _invert_increasing(f: Callable[[float], float], y: float) -> float:
    """Solve f(x) = y for increasing f on [0, 1] by bisection."""
    lo, hi = 0.0, 1.0
    if y <= f(lo):
        return lo
    if y >= f(hi):
        return hi
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if f(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _cr_rank3(x: float) -> float:
    if x <= _KNEE:
        return 0.0
    return _invert_increasing(cr_rank3_r_bound, x)


def _nr_rank3(x: float) -> float:
    if x <= _KNEE:
        return 0.0
    return _invert_increasing(nr_rank3_r_bound, x)


def _rank4_curve(x: float) -> float:
    return max(0.0, (3.0 * x ** (4.0 / 3.0) - 1.0) / 2.0)


_CURVES: dict[str, tuple[Callable[[float], float], tuple[float, float]]] = {
    "cr_rank2_upper": (lambda x: x, (0.0, 1.0)),
    "cr_rank2_lower": (lambda x: x * x, (0.0, 1.0)),
    "cr_rank3": (_cr_rank3, (0.0, 1.0)),
    "cr_rank4": (_rank4_curve, (_KNEE, 1.0)),
    "nr_rank2_upper": (lambda x: x, (0.0, 1.0)),
    "nr_rank2_lower": (nr_rank2_n_lower, (0.0, 1.0)),
    "nr_rank3": (_nr_rank3, (0.0, 1.0)),
    "nr_rank4": (_rank4_curve, (_KNEE, 1.0)),
}


def curve_domain(curve: str) -> tuple[float, float]:
    """Abscissa domain of a boundary curve."""
    if curve not in _CURVES:
        raise DomainError(f"unknown curve {curve!r}; known: {CURVE_TAGS}")
    return _CURVES[curve][1]


def curve_grid(curve: str, points: int) -> np.ndarray:
    """Evenly spaced abscissae covering the curve's domain."""
    lo, hi = curve_domain(curve)
    if points < 2:
        raise DomainError("need at least 2 grid points")
    return np.linspace(lo, hi, points)


def boundary_curve(curve: str, grid: Sequence[float]) -> list[tuple[float, float]]:
    """Evaluate an analytic boundary curve on the given abscissae.

    Abscissae are the r12 values; ordinates are c12 or n12 depending on the
    curve family. Out-of-domain abscissae raise :class:`DomainError`.
    """
    fn, (lo, hi) = _CURVES[curve] if curve in _CURVES else (None, (0, 0))
    if fn is None:
        raise DomainError(f"unknown curve {curve!r}; known: {CURVE_TAGS}")
    out = []
    for x in grid:
        x = float(x)
        if x < lo - 1e-12 or x > hi + 1e-12:
            raise DomainError(f"abscissa {x} outside domain [{lo}, {hi}] of {curve}")
        out.append((x, fn(min(hi, max(lo, x)))))
    return out


# --------------------------------------------------------------------------
# in-domain parameter sampling (used by tests and the acceptance suite)


def sample_params(family: str, rng: np.random.Generator) -> dict:
    """Draw uniformly random in-domain parameters for a family."""
    if family == "bell_diagonal":
        p = rng.dirichlet(np.ones(4))
        return {"p1": p[0], "p2": p[1], "p3": p[2], "p4": p[3]}
    if family == "werner":
        return {"p": rng.uniform(0.0, 1.0)}
    if family in ("mems1", "mems1_purification"):
        return {"c": rng.uniform(0.0, 1.0)}
    if family == "mems2":
        return {"c": rng.uniform(0.0, 2.0 / 3.0)}
    if family == "x_state":
        a, b, c, d = rng.dirichlet(np.ones(4))
        w = rng.uniform(0.0, 1.0) * math.sqrt(a * d) * np.exp(2j * np.pi * rng.uniform())
        z = rng.uniform(0.0, 1.0) * math.sqrt(b * c) * np.exp(2j * np.pi * rng.uniform())
        return {"a": a, "b": b, "c": c, "d": d, "w": w, "z": z}
    if family in ("canonical3", "w_class"):
        k = 5 if family == "canonical3" else 4
        lam = np.abs(rng.standard_normal(k))
        lam /= np.linalg.norm(lam)
        names = ["lambda0", "lambda1", "lambda2", "lambda3", "lambda4"][:k]
        out = {name: float(v) for name, v in zip(names, lam)}
        out["theta"] = rng.uniform(0.0, np.pi)
        return out
    if family == "m3ts":
        return {"c12": rng.uniform(0.0, 1.0)}
    if family == "m3ts_general":
        while True:
            c12, c13 = rng.uniform(0.0, 1.0, size=2)
            if c12 * c12 + c13 * c13 <= 1.0:
                return {"c12": c12, "c13": c13}
    if family == "ansatz1":
        return {"p": rng.uniform(0.0, 1.0)}
    if family == "ansatz2":
        alpha, beta, _ = rng.dirichlet(np.ones(3))
        return {"alpha": alpha, "beta": beta}
    if family == "cq_state":
        def bloch():
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            return tuple(v * rng.uniform() ** (1.0 / 3.0))

        return {"p": rng.uniform(0.0, 1.0), "a": bloch(), "b": bloch()}
    raise DomainError(f"unknown family {family!r}")

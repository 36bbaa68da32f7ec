"""Reproduction campaigns: scatter datasets, perturbation sweeps, region checks.

Sampling is data-parallel over sample indices: sample ``i`` of a campaign is
a pure function of ``(seed, i)`` via its own random substream, work is split
into fixed-size chunks, and results are reassembled in index order. Output
is therefore byte-identical regardless of worker count or scheduling. The
``PERMUTANGLE_THREADS`` environment variable caps the worker pool (default:
hardware parallelism).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import families
from .errors import DimensionError, DomainError
from .measures import MeasureRecord, concurrence, negativity, r12, three_tangle
from .qstate import (
    DensityMatrix,
    PureState,
    haar_random_pure,
    mix,
    perturb_pure,
    random_fixed_eigvecs,
    reduce,
    substream,
)

CHUNK_SIZE = 512
VIOLATION_TOL = 1e-9
IDENTITY_TOL = 1e-8

SCATTER_DIMS = ((2, 2), (2, 2, 2), (2, 2, 3), (2, 2, 4))
PERTURBATION_KINDS = ("ansatz1_fig4", "werner_fig5", "mems1_fig8")

_CSV_HEADER = "index,rank,c12,n12,r12,tau,family"


@dataclass(frozen=True)
class CampaignConfig:
    """What was run; serialized into figure metadata."""

    kind: str
    n: int
    seed: int
    dims: Optional[tuple[int, ...]] = None
    epsilon: Optional[float] = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "seed": self.seed}
        if self.dims is not None:
            out["dims"] = list(self.dims)
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
        return out


@dataclass(frozen=True)
class ViolationReport:
    """Outcome of checking records against an analytic region.

    ``worst_margin`` is signed: the largest excess beyond the region over all
    records (negative values mean everything sat strictly inside).
    ``violations == 0`` iff ``worst_margin <= tolerance``.
    """

    region: str
    tolerance: float
    total: int
    violations: int
    worst_margin: float
    offenders: tuple[tuple[int, float], ...] = ()

    def to_dict(self) -> dict:
        return {
            "region": self.region,
            "tolerance": self.tolerance,
            "total": self.total,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "offenders": [list(o) for o in self.offenders],
        }


# --------------------------------------------------------------------------
# record construction


def build_record(
    rho: DensityMatrix, parent: Optional[PureState], family: str
) -> MeasureRecord:
    """Measure a two-qubit state; tau only when a (2,2,2) pure parent exists."""
    c12 = concurrence(rho)
    tau = None
    if parent is not None and parent.dims == (2, 2, 2):
        tau = three_tangle(parent, c12=c12)
    return MeasureRecord(
        rank=rho.rank(),
        c12=c12,
        n12=negativity(rho),
        r12=r12(rho),
        tau=tau,
        family=family,
    )


def _worker_count(workers: Optional[int]) -> int:
    if workers is None:
        env = os.environ.get("PERMUTANGLE_THREADS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


def _run_indexed(
    sample_fn: Callable[[int], MeasureRecord], n: int, workers: Optional[int]
) -> list[MeasureRecord]:
    """Evaluate sample_fn(0..n-1) in fixed chunks; order-independent assembly."""
    if n < 1:
        raise DomainError(f"sample count must be >= 1, got {n}")
    starts = range(0, n, CHUNK_SIZE)

    def chunk(start: int) -> list[MeasureRecord]:
        return [sample_fn(i) for i in range(start, min(start + CHUNK_SIZE, n))]

    count = _worker_count(workers)
    if count == 1 or n <= CHUNK_SIZE:
        parts = [chunk(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=count) as pool:
            parts = list(pool.map(chunk, starts))
    return [rec for part in parts for rec in part]


def scatter(
    dims: Sequence[int], n: int, seed: int, workers: Optional[int] = None
) -> list[MeasureRecord]:
    """Haar-random states reduced to qubits (1, 2), measured one record each.

    dims (2, 2) samples two-qubit pure states directly (rank-1 records);
    (2, 2, k) samples tripartite pure states whose reduction has rank <= k.
    """
    dims = tuple(int(d) for d in dims)
    if dims not in SCATTER_DIMS:
        raise DimensionError(f"unsupported scatter dims {dims}; supported: {SCATTER_DIMS}")
    family = "haar_" + "x".join(str(d) for d in dims)

    def one(index: int) -> MeasureRecord:
        rng = substream(seed, index)
        psi = haar_random_pure(dims, rng)
        if len(dims) == 2:
            return build_record(psi.density_matrix(), None, family)
        rho = reduce(psi, (1, 2))
        parent = psi if dims == (2, 2, 2) else None
        return build_record(rho, parent, family)

    return _run_indexed(one, n, workers)


_ANSATZ1_EIGVECS = np.column_stack(
    [families.BELL_PSI_PLUS, families.BELL_PSI_MINUS, families.BELL_PHI_PLUS]
)


def _perturbed_ansatz1(index: int, seed: int, eps: float) -> MeasureRecord:
    rng = substream(seed, index)
    p = rng.uniform(0.0, 1.0)
    base = families.make_state("ansatz1", p=p)
    noise = random_fixed_eigvecs(_ANSATZ1_EIGVECS, rng, dims=(2, 2))
    return build_record(mix(base, noise, eps), None, "ansatz1_fig4")


def _perturbed_werner(index: int, seed: int, eps: float) -> MeasureRecord:
    rng = substream(seed, index)
    p = rng.uniform(0.0, 1.0)
    base = families.make_state("werner", p=p, bell="psi-")
    noise = reduce(haar_random_pure((2, 2, 4), rng), (1, 2))
    return build_record(mix(base, noise, eps), None, "werner_fig5")


def _perturbed_mems1(index: int, seed: int, eps: float) -> MeasureRecord:
    rng = substream(seed, index)
    c = rng.uniform(0.0, 1.0)
    psi = families.make_state("mems1_purification", c=c)
    phi = perturb_pure(psi, haar_random_pure((2, 2, 2), rng), eps)
    return build_record(reduce(phi, (1, 2)), phi, "mems1_fig8")


_PERTURBATIONS = {
    "ansatz1_fig4": _perturbed_ansatz1,
    "werner_fig5": _perturbed_werner,
    "mems1_fig8": _perturbed_mems1,
}


def perturbation_campaign(
    kind: str, n: int, seed: int, epsilon: float = 0.51, workers: Optional[int] = None
) -> list[MeasureRecord]:
    """Randomly perturbed boundary-family states, one record per sample.

    * ``ansatz1_fig4``: rank-3 Bell mixture plus a random state with the same
      Bell eigenvectors, base weight ~ U[0, 1].
    * ``werner_fig5``: rank-4 Werner state (psi- fiducial) plus the two-qubit
      reduction of a Haar (2, 2, 4) pure state.
    * ``mems1_fig8``: pure-state perturbation of the rank-2 boundary
      purification; records carry the tangle of the perturbed parent.
    """
    if kind not in _PERTURBATIONS:
        raise DomainError(f"unknown perturbation kind {kind!r}; known: {PERTURBATION_KINDS}")
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    fn = _PERTURBATIONS[kind]
    return _run_indexed(lambda i: fn(i, seed, epsilon), n, workers)


def _separable_sample(index: int, seed: int) -> MeasureRecord:
    rng = substream(seed, index)
    kind = index % 4
    if kind == 0:
        terms = int(rng.integers(1, 4))
        weights = rng.dirichlet(np.ones(terms))
        rho = np.zeros((4, 4), dtype=complex)
        for w in weights:
            u = haar_random_pure((2,), rng).amplitudes
            v = haar_random_pure((2,), rng).amplitudes
            rho += w * np.kron(np.outer(u, u.conj()), np.outer(v, v.conj()))
        return build_record(DensityMatrix((2, 2), rho), None, "product_mix")
    if kind == 1:
        def bloch():
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            return tuple(v * rng.uniform() ** (1.0 / 3.0))

        state = families.make_state("cq_state", p=rng.uniform(0.0, 1.0), a=bloch(), b=bloch())
        return build_record(state, None, "cq_state")
    if kind == 2:
        state = families.make_state("werner", p=rng.uniform(0.0, 1.0 / 3.0))
        return build_record(state, None, "werner_separable")
    while True:
        p = rng.dirichlet(np.ones(4))
        if p.max() <= 0.5:
            break
    state = families.make_state("bell_diagonal", p1=p[0], p2=p[1], p3=p[2], p4=p[3])
    return build_record(state, None, "bell_diagonal_separable")


def separable_campaign(n: int, seed: int, workers: Optional[int] = None) -> list[MeasureRecord]:
    """Constructed-separable states for the witness check.

    Cycles through product mixtures with at most 3 terms, classical-quantum
    states, separable Werner states (p <= 1/3), and Bell-diagonal states with
    spectrum inside [0, 1/2].
    """
    return _run_indexed(lambda i: _separable_sample(i, seed), n, workers)


# --------------------------------------------------------------------------
# region verification


def _m_prop1(rec: MeasureRecord, tol: float) -> float:
    return max(-rec.r12, rec.r12 - 1.0)


def _m_cr_rank2(rec: MeasureRecord, tol: float) -> float:
    return max(rec.c12 - rec.r12, rec.r12 - math.sqrt(rec.c12))


def _m_cr_rank2_lower(rec: MeasureRecord, tol: float) -> float:
    return rec.r12 - math.sqrt(rec.c12)


def _m_cr_rank3(rec: MeasureRecord, tol: float) -> float:
    if rec.c12 > tol:
        return max(rec.c12 - rec.r12, rec.r12 - families.cr_rank3_r_bound(rec.c12))
    return rec.r12 - families._KNEE


def _m_cr_rank4(rec: MeasureRecord, tol: float) -> float:
    return max(rec.c12 - rec.r12, rec.r12 - families.rank4_r_bound(rec.c12))


def _m_r_geq_c(rec: MeasureRecord, tol: float) -> float:
    return rec.c12 - rec.r12


def _m_nr_rank2(rec: MeasureRecord, tol: float) -> float:
    return max(families.nr_rank2_n_lower(rec.r12) - rec.n12, rec.n12 - rec.r12)


def _m_nr_rank2_lower(rec: MeasureRecord, tol: float) -> float:
    return families.nr_rank2_n_lower(rec.r12) - rec.n12


def _m_nr_rank3(rec: MeasureRecord, tol: float) -> float:
    if rec.n12 > tol:
        return max(rec.n12 - rec.r12, rec.r12 - families.nr_rank3_r_bound(rec.n12))
    return rec.r12 - families._KNEE


def _m_nr_rank4(rec: MeasureRecord, tol: float) -> float:
    return max(rec.n12 - rec.r12, rec.r12 - families.rank4_r_bound(rec.n12))


def _m_witness(rec: MeasureRecord, tol: float) -> float:
    return rec.r12 - families._KNEE


def _m_rc_tau(rec: MeasureRecord, tol: float) -> float:
    return abs(rec.r12**4 - rec.c12**2 * (rec.c12**2 + rec.tau))


def _m_m3ts_max(rec: MeasureRecord, tol: float) -> float:
    return rec.tau - (1.0 - rec.c12**2)


#: region tag -> (margin function, default tolerance, needs tau)
_REGIONS: dict[str, tuple[Callable[[MeasureRecord, float], float], float, bool]] = {
    "prop1": (_m_prop1, VIOLATION_TOL, False),
    "cr_rank2": (_m_cr_rank2, VIOLATION_TOL, False),
    "cr_rank2_lower": (_m_cr_rank2_lower, VIOLATION_TOL, False),
    "cr_rank3": (_m_cr_rank3, VIOLATION_TOL, False),
    "cr_rank4": (_m_cr_rank4, VIOLATION_TOL, False),
    "r_geq_c": (_m_r_geq_c, VIOLATION_TOL, False),
    "nr_rank2": (_m_nr_rank2, VIOLATION_TOL, False),
    "nr_rank2_lower": (_m_nr_rank2_lower, VIOLATION_TOL, False),
    "nr_rank3": (_m_nr_rank3, VIOLATION_TOL, False),
    "nr_rank4": (_m_nr_rank4, VIOLATION_TOL, False),
    "witness_separable": (_m_witness, VIOLATION_TOL, False),
    "rc_tau_identity": (_m_rc_tau, IDENTITY_TOL, True),
    "m3ts_max_tau": (_m_m3ts_max, IDENTITY_TOL, True),
}

REGION_TAGS = tuple(_REGIONS)


def verify(
    records: Iterable[MeasureRecord],
    region: str,
    tol: Optional[float] = None,
    max_offenders: int = 10,
) -> ViolationReport:
    """Count records outside an analytic region beyond tolerance.

    Returns the signed worst margin along with up to ``max_offenders``
    (index, margin) pairs for the worst offenders.
    """
    if region not in _REGIONS:
        raise DomainError(f"unknown region {region!r}; known: {REGION_TAGS}")
    margin_fn, default_tol, needs_tau = _REGIONS[region]
    tol = default_tol if tol is None else float(tol)
    worst = -math.inf
    total = 0
    offenders: list[tuple[int, float]] = []
    for idx, rec in enumerate(records):
        if needs_tau and rec.tau is None:
            raise ValueError(f"region {region!r} needs the tau field, record {idx} lacks it")
        margin = margin_fn(rec, tol)
        total += 1
        worst = max(worst, margin)
        if margin > tol:
            offenders.append((idx, margin))
    if total == 0:
        raise ValueError("no records to verify")
    offenders.sort(key=lambda pair: -pair[1])
    return ViolationReport(
        region=region,
        tolerance=tol,
        total=total,
        violations=len(offenders),
        worst_margin=worst,
        offenders=tuple(offenders[:max_offenders]),
    )


# --------------------------------------------------------------------------
# serialization (17 significant digits so datasets round-trip exactly)


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def records_csv_bytes(records: Iterable[MeasureRecord]) -> bytes:
    lines = [_CSV_HEADER]
    for idx, rec in enumerate(records):
        lines.append(
            f"{idx},{rec.rank},{_fmt(rec.c12)},{_fmt(rec.n12)},{_fmt(rec.r12)},"
            f"{_fmt(rec.tau)},{rec.family}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_records_csv(records: Iterable[MeasureRecord], path) -> Path:
    path = Path(path)
    path.write_bytes(records_csv_bytes(records))
    return path


def read_records_csv(source) -> list[MeasureRecord]:
    """Parse a records CSV produced by :func:`write_records_csv`."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _CSV_HEADER:
        raise ValueError(f"bad records CSV header: {lines[0] if lines else '<empty>'!r}")
    records = []
    for ln in lines[1:]:
        _, rank, c12, n12, r12_s, tau, family = ln.split(",")
        records.append(
            MeasureRecord(
                rank=int(rank),
                c12=float(c12),
                n12=float(n12),
                r12=float(r12_s),
                tau=float(tau) if tau else None,
                family=family,
            )
        )
    return records


def records_to_json(records: Iterable[MeasureRecord]) -> str:
    payload = [
        {
            "index": idx,
            "rank": rec.rank,
            "c12": rec.c12,
            "n12": rec.n12,
            "r12": rec.r12,
            "tau": rec.tau,
            "family": rec.family,
        }
        for idx, rec in enumerate(records)
    ]
    return json.dumps(payload, indent=2)


def records_from_json(text: str) -> list[MeasureRecord]:
    return [
        MeasureRecord(
            rank=row["rank"],
            c12=row["c12"],
            n12=row["n12"],
            r12=row["r12"],
            tau=row["tau"],
            family=row["family"],
        )
        for row in json.loads(text)
    ]


# --------------------------------------------------------------------------
# figure datasets

CURVE_POINTS = 512


@dataclass(frozen=True)
class _FigureSpec:
    scatter: Optional[tuple] = None  # ("haar", dims) | ("haar2", d1, d2) | ("perturb", kind)
    n: int = 10_000
    epsilon: Optional[float] = None
    curves: tuple[str, ...] = ()
    special_curves: tuple[str, ...] = ()
    regions: tuple[tuple[str, Optional[str]], ...] = ()  # (region, family filter)


_FIGURES: dict[int, _FigureSpec] = {
    1: _FigureSpec(
        scatter=("haar", (2, 2, 2)),
        n=10_000,
        curves=("cr_rank2_upper", "cr_rank2_lower"),
        regions=(("cr_rank2", None), ("rc_tau_identity", None)),
    ),
    2: _FigureSpec(
        scatter=("haar", (2, 2, 2)),
        n=10_000,
        special_curves=("m3ts_tau",),
        regions=(("m3ts_max_tau", None),),
    ),
    3: _FigureSpec(
        scatter=("haar_pair", (2, 2, 3), (2, 2, 4)),
        n=10_000,
        curves=("cr_rank2_upper", "cr_rank2_lower", "cr_rank3", "cr_rank4"),
        regions=(("cr_rank3", "haar_2x2x3"), ("cr_rank4", None)),
    ),
    4: _FigureSpec(
        scatter=("perturb", "ansatz1_fig4"),
        n=20_000,
        epsilon=0.51,
        curves=("cr_rank2_upper", "cr_rank3"),
        regions=(("cr_rank3", None),),
    ),
    5: _FigureSpec(
        scatter=("perturb", "werner_fig5"),
        n=20_000,
        epsilon=0.51,
        curves=("cr_rank2_upper", "cr_rank4"),
        regions=(("cr_rank4", None),),
    ),
    6: _FigureSpec(curves=("cr_rank2_upper", "cr_rank2_lower", "cr_rank3", "cr_rank4")),
    7: _FigureSpec(
        scatter=("haar", (2, 2, 2)),
        n=20_000,
        curves=("nr_rank2_upper", "nr_rank2_lower"),
        regions=(("nr_rank2", None),),
    ),
    8: _FigureSpec(
        scatter=("perturb", "mems1_fig8"),
        n=10_000,
        epsilon=0.51,
        curves=("nr_rank2_upper", "nr_rank2_lower"),
        regions=(("nr_rank2", None),),
    ),
    9: _FigureSpec(
        scatter=("haar", (2, 2, 3)),
        n=20_000,
        curves=("nr_rank2_upper", "nr_rank2_lower", "nr_rank3"),
        regions=(("nr_rank3", None),),
    ),
    10: _FigureSpec(
        scatter=("haar", (2, 2, 4)),
        n=20_000,
        curves=("nr_rank2_upper", "nr_rank2_lower", "nr_rank4"),
        regions=(("nr_rank4", None),),
    ),
    11: _FigureSpec(curves=("nr_rank2_upper", "nr_rank2_lower", "nr_rank3", "nr_rank4")),
}


def _curve_csv_bytes(tag: str, points: int) -> bytes:
    if tag == "m3ts_tau":
        xs = np.linspace(0.0, 1.0, points)
        rows = [(x, 1.0 - x * x) for x in xs]
        header = "c12,tau"
    else:
        xs = families.curve_grid(tag, points)
        rows = families.boundary_curve(tag, xs)
        header = "r12,c12" if tag.startswith("cr_") else "r12,n12"
    lines = [header] + [f"{_fmt(x)},{_fmt(y)}" for x, y in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


def figure_dataset(
    fig_id: int,
    out_dir,
    n: Optional[int] = None,
    seed: int = 0,
    workers: Optional[int] = None,
) -> dict[str, Path]:
    """Write the scatter, curve, and metadata files for one figure.

    Layout: ``fig<k>_scatter.csv`` (when the figure has a scatter),
    ``fig<k>_curve_<tag>.csv`` on a 512-point grid, and ``fig<k>_meta.json``
    recording the configuration and region-violation summaries.
    """
    if fig_id not in _FIGURES:
        raise DomainError(f"unknown figure id {fig_id}; known: 1..11")
    fig = _FIGURES[fig_id]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}

    records: list[MeasureRecord] = []
    config: dict = {"figure": fig_id, "seed": seed, "curve_points": CURVE_POINTS}
    if fig.scatter is not None:
        count = int(n) if n else fig.n
        mode = fig.scatter[0]
        if mode == "haar":
            records = scatter(fig.scatter[1], count, seed, workers=workers)
            config.update(CampaignConfig("scatter", count, seed, dims=fig.scatter[1]).to_dict())
        elif mode == "haar_pair":
            records = scatter(fig.scatter[1], count, seed, workers=workers) + scatter(
                fig.scatter[2], count, seed + 1, workers=workers
            )
            config.update({"kind": "scatter_pair", "n": count, "seed": seed,
                           "dims": [list(fig.scatter[1]), list(fig.scatter[2])]})
        else:
            kind = fig.scatter[1]
            records = perturbation_campaign(kind, count, seed, fig.epsilon, workers=workers)
            config.update(
                CampaignConfig(kind, count, seed, epsilon=fig.epsilon).to_dict()
            )
            config["base_parameter"] = "uniform over the family domain, per sample"
        path = out_dir / f"fig{fig_id}_scatter.csv"
        path.write_bytes(records_csv_bytes(records))
        written["scatter"] = path

    for tag in fig.curves + fig.special_curves:
        path = out_dir / f"fig{fig_id}_curve_{tag}.csv"
        path.write_bytes(_curve_csv_bytes(tag, CURVE_POINTS))
        written[f"curve_{tag}"] = path

    reports = []
    for region, family_filter in fig.regions:
        subset = records if family_filter is None else [
            r for r in records if r.family == family_filter
        ]
        report = verify(subset, region).to_dict()
        if family_filter is not None:
            report["family_filter"] = family_filter
        reports.append(report)

    meta = {"config": config, "files": sorted(p.name for p in written.values()),
            "regions": reports}
    meta_path = out_dir / f"fig{fig_id}_meta.json"
    meta_path.write_bytes(json.dumps(meta, indent=2, sort_keys=True).encode("utf-8"))
    written["meta"] = meta_path
    return written

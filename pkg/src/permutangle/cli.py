"""Command-line front end: family measures, sampling campaigns, curves, figures.

Subcommands
-----------
measure   print closed-form and numeric measures of a named family state
sample    Haar scatter campaign -> records CSV/JSON
curve     analytic boundary curve -> CSV
perturb   perturbed boundary-family campaign -> records CSV/JSON
figure    full dataset bundle (scatter + curves + metadata) for one figure
verify    check a records file against an analytic region

Exit codes: 0 success, 1 region violations found by ``verify``, 2 bad usage.
``--seed`` is mandatory for ``sample``/``perturb``: reproducibility is the
product, so there is no wall-clock default.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiments, families
from .errors import DomainError

_PARAM_HELP = (
    "comma-separated k=v pairs, e.g. p=0.5 or a=0.3,b=0.2,... ; complex values "
    "as 0.1+0.2j, vectors as colon-separated triples, e.g. a=0:0:1"
)


def _parse_value(text: str):
    if ":" in text:
        return tuple(float(part) for part in text.split(":"))
    for cast in (int, float, complex):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def _parse_params(text: str) -> dict:
    params = {}
    if not text:
        return params
    for item in text.split(","):
        if "=" not in item:
            raise DomainError(f"bad parameter {item!r}; expected k=v")
        key, value = item.split("=", 1)
        params[key.strip()] = _parse_value(value.strip())
    return params


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"bad dims {text!r}; expected e.g. 2,2,3") from None


def _emit(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _cmd_measure(args) -> int:
    params = _parse_params(args.params or "")
    closed = families.closed_form_measures(args.family, **params)
    numeric = families.numeric_measures(args.family, **params)
    keys = sorted(set(closed) | set(numeric))
    if args.format == "json":
        payload = {
            "family": args.family,
            "params": {k: str(v) for k, v in params.items()},
            "closed_form": closed,
            "numeric": numeric,
            "abs_diff": {k: abs(closed[k] - numeric[k]) for k in closed if k in numeric},
        }
        _emit((json.dumps(payload, indent=2, sort_keys=True) + "\n").encode(), args.out)
    else:
        lines = ["quantity,closed_form,numeric,abs_diff"]
        for key in keys:
            c = _fmt(closed[key]) if key in closed else ""
            n = _fmt(numeric[key]) if key in numeric else ""
            d = _fmt(abs(closed[key] - numeric[key])) if key in closed and key in numeric else ""
            lines.append(f"{key},{c},{n},{d}")
        _emit(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def _emit_records(records, args) -> None:
    if args.format == "json":
        _emit((experiments.records_to_json(records) + "\n").encode(), args.out)
    else:
        _emit(experiments.records_csv_bytes(records), args.out)


def _cmd_sample(args) -> int:
    records = experiments.scatter(_parse_dims(args.dims), args.n, args.seed, workers=args.workers)
    _emit_records(records, args)
    return 0


def _cmd_curve(args) -> int:
    xs = families.curve_grid(args.id, args.points)
    rows = families.boundary_curve(args.id, xs)
    header = "r12,c12" if args.id.startswith("cr_") else "r12,n12"
    lines = [header] + [f"{_fmt(x)},{_fmt(y)}" for x, y in rows]
    _emit(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def _cmd_perturb(args) -> int:
    records = experiments.perturbation_campaign(
        args.kind, args.n, args.seed, epsilon=args.eps, workers=args.workers
    )
    _emit_records(records, args)
    return 0


def _cmd_figure(args) -> int:
    written = experiments.figure_dataset(
        args.id, args.out, n=args.n, seed=args.seed, workers=args.workers
    )
    for name in sorted(written):
        sys.stdout.write(f"{name}: {written[name]}\n")
    return 0


def _cmd_verify(args) -> int:
    records = experiments.read_records_csv(args.input)
    report = experiments.verify(records, args.region, tol=args.tol)
    sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return 0 if report.violations == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permutangle",
        description="Permutation-based correlation measures for small quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="closed-form vs numeric measures of a family state")
    p.add_argument("--family", required=True, choices=families.FAMILY_TAGS)
    p.add_argument("--params", default="", help=_PARAM_HELP)
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default: csv)")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.set_defaults(fn=_cmd_measure)

    p = sub.add_parser("sample", help="Haar scatter campaign")
    p.add_argument("--dims", required=True, help="factor dimensions, e.g. 2,2,3")
    p.add_argument("--n", type=int, required=True, help="sample count")
    p.add_argument("--seed", type=int, required=True,
                   help="campaign seed (mandatory; no wall-clock default)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default: csv)")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (default: PERMUTANGLE_THREADS or hardware)")
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("curve", help="analytic boundary curve")
    p.add_argument("--id", required=True, choices=families.CURVE_TAGS)
    p.add_argument("--points", type=int, default=512, help="grid size (default: 512)")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.set_defaults(fn=_cmd_curve)

    p = sub.add_parser("perturb", help="perturbed boundary-family campaign")
    p.add_argument("--kind", required=True, choices=experiments.PERTURBATION_KINDS)
    p.add_argument("--eps", type=float, default=0.51,
                   help="perturbation strength (default: 0.51)")
    p.add_argument("--n", type=int, required=True, help="sample count")
    p.add_argument("--seed", type=int, required=True,
                   help="campaign seed (mandatory; no wall-clock default)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default: csv)")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (default: PERMUTANGLE_THREADS or hardware)")
    p.set_defaults(fn=_cmd_perturb)

    p = sub.add_parser("figure", help="dataset bundle for one figure")
    p.add_argument("--id", type=int, required=True, choices=range(1, 12),
                   metavar="{1..11}")
    p.add_argument("--out", default="figures", help="output directory (default: figures)")
    p.add_argument("--n", type=int, default=None,
                   help="scatter sample count (default: per-figure standard size)")
    p.add_argument("--seed", type=int, default=0, help="campaign seed (default: 0)")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (default: PERMUTANGLE_THREADS or hardware)")
    p.set_defaults(fn=_cmd_figure)

    p = sub.add_parser("verify", help="check a records CSV against a region")
    p.add_argument("--region", required=True, choices=experiments.REGION_TAGS)
    p.add_argument("--input", required=True, help="records CSV to check")
    p.add_argument("--tol", type=float, default=None,
                   help="violation tolerance (default: the region's standard)")
    p.set_defaults(fn=_cmd_verify)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (DomainError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

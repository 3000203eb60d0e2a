"""Command-line interface: generate, reduce, remove, bench, verify.

Exit codes: 0 success, 1 usage error, 2 parse/validation error, 3 verification
mismatch. BD_THREADS caps the worker count for bench sweeps; output row order
is deterministic regardless of completion order.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

from .complex import (
    Filtration,
    FiltrationError,
    build_coface_index,
    format_filtration,
    parse_filtration,
    simplex,
    validate_filtration,
)
from .generate import (
    GenSpec,
    MODEL_ALIASES,
    generate,
    parse_point_cloud,
    split_seed,
)
from .matrix import boundary_matrix, parse_phat
from .reduce import ReductionStats, barcode_csv, extract_barcode, sba_reduce, stats_csv
from .update import mur_remove, removal_report_csv
from .verify import check_rank_criterion, check_removal, fuzz_removals, summary_csv

__all__ = [
    "BenchRow",
    "main",
    "entry",
    "cmd_generate",
    "cmd_reduce",
    "cmd_remove",
    "cmd_bench",
    "cmd_verify",
]

_T = TypeVar("_T")


class UsageError(Exception):
    """Bad flags or flag combinations; maps to exit code 1."""


class VerificationMismatch(Exception):
    """An oracle comparison failed; maps to exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


@dataclass
class BenchRow:
    """One bench measurement (or a per-(model,size) average over samples)."""

    model: str
    n: int
    m: int
    sample: str
    total_additions: float
    max_usage: float
    avg_usage: float
    pct_never_used: float
    pct_used_zero_flag: float
    pct_used_no_zero_flag: float
    seed: int


def _worker_count() -> int:
    raw = os.environ.get("BD_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_ordered(fn: Callable[[_T], object], items: Sequence[_T]) -> list:
    workers = _worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_filtration(path: str, fmt: str) -> Filtration:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "phat":
        D = parse_phat(text)
        # A PHAT matrix has no vertex ids or values; positions stand in for both.
        return _filtration_from_matrix(D)
    f = parse_filtration(text)
    problem = validate_filtration(f)
    if problem is not None:
        raise FiltrationError(problem)
    return f


def _filtration_from_matrix(D) -> Filtration:
    simplices = []
    for j, (dim, col) in enumerate(zip(D.dims, D.columns)):
        if dim == 0:
            simplices.append((j,))
            continue
        verts: set[int] = set()
        for r in sorted(col):
            verts |= set(simplices[r])
        if len(verts) != dim + 1:
            raise FiltrationError(f"column {j}: facets do not assemble a {dim}-simplex")
        simplices.append(tuple(sorted(verts)))
    f = Filtration(simplices, [float(j) for j in range(len(simplices))])
    problem = validate_filtration(f)
    if problem is not None:
        raise FiltrationError(problem)
    return f


def build_parser() -> _Parser:
    parser = _Parser(prog="bardec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a seeded filtration file")
    g.add_argument("--model", required=True, choices=sorted(MODEL_ALIASES))
    g.add_argument("--n", type=int)
    g.add_argument("--dim", type=int, default=3, help="ambient dimension for vr point clouds")
    g.add_argument("--max-dim", type=int, default=2)
    g.add_argument("--max-radius", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--points", help="point cloud CSV (vr only)")
    g.add_argument("--values", help="vertex values file, one per line (lowerstar only)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("reduce", help="reduce a filtration and emit barcode + stats CSVs")
    r.add_argument("input")
    r.add_argument("--format", choices=["native", "phat"], default="native")
    r.add_argument("--barcode", help="barcode CSV path (default stdout)")
    r.add_argument("--stats", help="stats CSV path (default stdout)")
    r.set_defaults(func=cmd_reduce)

    rm = sub.add_parser("remove", help="remove a simplex star in place and emit results")
    rm.add_argument("input")
    rm.add_argument("--format", choices=["native", "phat"], default="native")
    rm.add_argument("--simplex", help='vertex ids, e.g. "0 1"')
    rm.add_argument("--index", type=int, help="filtration position")
    rm.add_argument("--algorithm", choices=["smur", "esmur"], default="esmur")
    rm.add_argument("--verify", action="store_true", help="compare against the oracle")
    rm.add_argument("--barcode", help="barcode CSV path (default stdout)")
    rm.add_argument("--report", help="removal report CSV path (default stdout)")
    rm.set_defaults(func=cmd_remove)

    b = sub.add_parser("bench", help="seeded reduction sweeps over generated families")
    b.add_argument("--models", required=True, help="comma-separated: er,shuffled,vr,lowerstar")
    b.add_argument("--sizes", required=True, help="comma-separated vertex/point counts")
    b.add_argument("--samples", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--dim", type=int, default=3, help="ambient dimension for vr")
    b.add_argument("--out")
    b.add_argument("--plot", help="write a log-log scatter SVG (needs matplotlib)")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="fuzz removals against the from-scratch oracle")
    v.add_argument("--model", required=True, choices=sorted(MODEL_ALIASES))
    v.add_argument("--n", type=int)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--dim", type=int, default=3)
    v.add_argument("--max-radius", type=float)
    v.add_argument("--exhaustive-rank", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    return parser


def cmd_generate(args: argparse.Namespace) -> int:
    model = MODEL_ALIASES[args.model]
    points = None
    if args.points is not None:
        if model != "vr":
            raise UsageError(f"--points only applies to the vr model, not {args.model}")
        with open(args.points, "r", encoding="utf-8") as fh:
            points = parse_point_cloud(fh.read())
    vertex_values = None
    if args.values is not None:
        if model != "lower_star":
            raise UsageError("--values only applies to the lowerstar model")
        with open(args.values, "r", encoding="utf-8") as fh:
            vertex_values = [float(line) for line in fh.read().split()]
    if points is None and args.n is None:
        raise UsageError("--n is required without --points")
    spec = GenSpec(
        model=model,
        n=args.n,
        points=points,
        max_dim=args.max_dim,
        max_radius=args.max_radius,
        seed=args.seed,
        vertex_values=vertex_values,
        ambient_dim=args.dim,
    )
    f = generate(spec)
    _write_out(format_filtration(f), args.out)
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    f = _read_filtration(args.input, args.format)
    dec, stats = sba_reduce(boundary_matrix(f), f.values)
    bc = extract_barcode(dec)
    _write_out(barcode_csv(bc, dec.values), args.barcode)
    _write_out(stats_csv(stats, dec.dims), args.stats)
    return 0


def _resolve_position(f: Filtration, args: argparse.Namespace) -> int:
    if (args.simplex is None) == (args.index is None):
        raise UsageError("exactly one of --simplex or --index is required")
    if args.index is not None:
        if not 0 <= args.index < len(f):
            raise FiltrationError(f"position {args.index} out of range (m={len(f)})")
        return args.index
    try:
        target = simplex(int(t) for t in args.simplex.split())
    except ValueError:
        raise FiltrationError(f"bad --simplex {args.simplex!r}") from None
    for j, s in enumerate(f.simplices):
        if s == target:
            return j
    raise FiltrationError(f"simplex {target} not found")


def cmd_remove(args: argparse.Namespace) -> int:
    f = _read_filtration(args.input, args.format)
    sigma = _resolve_position(f, args)
    idx = build_coface_index(f)
    dec, _ = sba_reduce(boundary_matrix(f), f.values)
    report = mur_remove(dec, f, idx, sigma, mode=args.algorithm)
    bc = extract_barcode(dec)
    _write_out(barcode_csv(bc, dec.values), args.barcode)
    _write_out(removal_report_csv(report), args.report)
    if args.verify:
        result = check_removal(f, sigma, mode=args.algorithm)
        if not result.match:
            raise VerificationMismatch(
                f"update disagrees with oracle: {result.mismatches[:5]}"
            )
    return 0


def _bench_one(task: tuple[str, int, int, int, int]) -> BenchRow:
    model, n, dim, sample, sub_seed = task
    spec = GenSpec(model=model, n=n, seed=sub_seed, ambient_dim=dim)
    f = generate(spec)
    _, stats = sba_reduce(boundary_matrix(f), f.values)
    m = len(f)
    # Trend columns use the direct counter (times each column was the added
    # column): its max stays far below the total while the transitive count
    # tracks it, and only the direct reading keeps avg = total/m.
    never = sum(1 for u in stats.added_count if u == 0)
    used_zero = sum(1 for u, z in zip(stats.added_count, stats.zero_flag) if u > 0 and z)
    used_no_zero = sum(1 for u, z in zip(stats.added_count, stats.zero_flag) if u > 0 and not z)
    return BenchRow(
        model=model,
        n=n,
        m=m,
        sample=str(sample),
        total_additions=stats.total_additions,
        max_usage=stats.max_added,
        avg_usage=stats.avg_added,
        pct_never_used=100.0 * never / m,
        pct_used_zero_flag=100.0 * used_zero / m,
        pct_used_no_zero_flag=100.0 * used_no_zero / m,
        seed=sub_seed,
    )


def _average_rows(rows: list[BenchRow], master_seed: int) -> list[BenchRow]:
    out = []
    by_key: dict[tuple[str, int], list[BenchRow]] = {}
    for row in rows:
        by_key.setdefault((row.model, row.n), []).append(row)
    for (model, n), group in by_key.items():
        k = len(group)
        out.append(
            BenchRow(
                model=model,
                n=n,
                m=round(sum(r.m for r in group) / k),
                sample="avg",
                total_additions=sum(r.total_additions for r in group) / k,
                max_usage=sum(r.max_usage for r in group) / k,
                avg_usage=sum(r.avg_usage for r in group) / k,
                pct_never_used=sum(r.pct_never_used for r in group) / k,
                pct_used_zero_flag=sum(r.pct_used_zero_flag for r in group) / k,
                pct_used_no_zero_flag=sum(r.pct_used_no_zero_flag for r in group) / k,
                seed=master_seed,
            )
        )
    return out


def bench_rows_csv(rows: Iterable[BenchRow], seed: int) -> str:
    buf = io.StringIO()
    buf.write(f"# bardec bench seed={seed}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "model",
            "n",
            "m",
            "sample",
            "total_additions",
            "max_usage",
            "avg_usage",
            "pct_never_used",
            "pct_used_zero_flag",
            "pct_used_no_zero_flag",
            "seed",
        ]
    )
    for r in rows:
        writer.writerow(
            [
                r.model,
                r.n,
                r.m,
                r.sample,
                repr(float(r.total_additions)),
                repr(float(r.max_usage)),
                repr(float(r.avg_usage)),
                f"{r.pct_never_used:.4f}",
                f"{r.pct_used_zero_flag:.4f}",
                f"{r.pct_used_no_zero_flag:.4f}",
                r.seed,
            ]
        )
    return buf.getvalue()


def log_regression_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len(pts) < 2:
        return 0.0
    n = len(pts)
    mx = sum(p[0] for p in pts) / n
    my = sum(p[1] for p in pts) / n
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    if sxx == 0:
        return 0.0
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    return sxy / sxx


def _write_plot(rows: list[BenchRow], path: str) -> None:
    try:
        import matplotlib
    except ImportError:
        raise UsageError("--plot needs matplotlib (install the 'plot' extra)") from None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    models = sorted({r.model for r in rows})
    for model in models:
        pts = [(r.m, r.total_additions, r.max_usage, r.avg_usage) for r in rows if r.model == model and r.sample == "avg"]
        pts.sort()
        ms = [p[0] for p in pts]
        for label, idx_ in (("total", 1), ("max", 2), ("avg", 3)):
            ys = [p[idx_] for p in pts]
            if any(y <= 0 for y in ys):
                continue
            exp = log_regression_exponent(ms, ys)
            ax.plot(ms, ys, marker="o", label=f"{model} {label} (exp {exp:.2f})")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("m (simplices)")
    ax.set_ylabel("column additions / usage")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_bench(args: argparse.Namespace) -> int:
    models = []
    for tok in (m.strip() for m in args.models.split(",")):
        if not tok:
            continue
        if tok not in MODEL_ALIASES:
            raise UsageError(f"unknown model {tok!r}")
        models.append(MODEL_ALIASES[tok])
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    tasks = []
    counter = 0
    for model in models:
        for n in sizes:
            for sample in range(args.samples):
                tasks.append((model, n, args.dim, sample, split_seed(args.seed, counter)))
                counter += 1
    rows: list[BenchRow] = _map_ordered(_bench_one, tasks)
    rows.extend(_average_rows(rows, args.seed))
    _write_out(bench_rows_csv(rows, args.seed), args.out)
    if args.plot:
        _write_plot(rows, args.plot)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    model = MODEL_ALIASES[args.model]
    if args.n is None:
        raise UsageError("--n is required")
    spec = GenSpec(
        model=model,
        n=args.n,
        seed=0,
        ambient_dim=args.dim,
        max_radius=args.max_radius,
    )
    summary = fuzz_removals(spec, args.trials, args.seed)
    header = f"# bardec verify model={model} n={args.n} seed={args.seed}\n"
    _write_out(header + summary_csv(summary), args.out)
    if args.exhaustive_rank:
        for t in range(args.trials):
            sub_seed = split_seed(args.seed, t)
            trial = GenSpec(model=model, n=args.n, seed=sub_seed, ambient_dim=args.dim,
                            max_radius=args.max_radius)
            f = generate(trial)
            if len(f) > 12:
                continue
            dec, _ = sba_reduce(boundary_matrix(f), f.values)
            live = sorted(dec.live)
            if not check_rank_criterion([dec.dcols[j] for j in live], [dec.R[j] for j in live]):
                raise VerificationMismatch(f"rank criterion failed on trial {t}")
    if not summary.all_pass:
        raise VerificationMismatch("; ".join(summary.failure_notes[:5]))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (FiltrationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationMismatch as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

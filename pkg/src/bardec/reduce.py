"""Left-to-right Z2 column reduction maintaining the full R = DV decomposition.

The reduced matrix R is obtained from the boundary matrix D by adding earlier
columns into later ones until all nonzero columns have distinct pivots; V
records every addition, so R = D·V with V invertible. Column/row ids are the
original filtration positions and stay stable through later column deletions.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Collection, Sequence

from .matrix import BoundaryMatrix

__all__ = [
    "Decomposition",
    "ReductionStats",
    "Barcode",
    "sba_reduce",
    "record_addition",
    "finalize_flags",
    "extract_barcode",
    "lower_left_rank",
    "barcode_csv",
    "stats_csv",
]


@dataclass
class ReductionStats:
    """Per-column addition counters and final zero-column flags.

    Two per-column counts coexist because they answer different questions.
    usage_count[k] is transitive: it also grows when a column whose chain
    carries k is added somewhere, so it measures how widely k's content has
    spread. added_count[k] counts only the additions where k itself was the
    added column, so it sums to total_additions and measures reduction work;
    the bench trend columns report this one.
    """

    usage_count: list[int]
    zero_flag: list[bool]
    added_count: list[int] = field(default_factory=list)
    total_additions: int = 0

    @property
    def max_usage(self) -> int:
        return max(self.usage_count, default=0)

    @property
    def avg_usage(self) -> float:
        if not self.usage_count:
            return 0.0
        return sum(self.usage_count) / len(self.usage_count)

    @property
    def avg_usage_used(self) -> float:
        used = [u for u in self.usage_count if u > 0]
        if not used:
            return 0.0
        return sum(used) / len(used)

    @property
    def max_added(self) -> int:
        return max(self.added_count, default=0)

    @property
    def avg_added(self) -> float:
        if not self.added_count:
            return 0.0
        return sum(self.added_count) / len(self.added_count)


@dataclass
class Decomposition:
    """Mutable R = DV state over the live columns.

    R[j]/V[j] are sets of row ids, or None once column j is deleted. pivot_map
    maps a pivot row to the unique live column owning it. R_rows/V_rows index
    each row to the live columns where it is nonzero; they make support-set
    queries and row-deletion guards O(result) instead of O(m).
    """

    R: list[set[int] | None]
    V: list[set[int] | None]
    pivot_map: dict[int, int]
    live: set[int]
    dims: list[int]
    values: list[float]
    dcols: list[frozenset[int]] = field(repr=False)
    R_rows: dict[int, set[int]] = field(repr=False)
    V_rows: dict[int, set[int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.R)

    def clone(self) -> "Decomposition":
        """Independent deep copy of the mutable state (shares the frozen D columns)."""
        return Decomposition(
            R=[set(c) if c is not None else None for c in self.R],
            V=[set(c) if c is not None else None for c in self.V],
            pivot_map=dict(self.pivot_map),
            live=set(self.live),
            dims=list(self.dims),
            values=list(self.values),
            dcols=self.dcols,
            R_rows={r: set(cols) for r, cols in self.R_rows.items()},
            V_rows={r: set(cols) for r, cols in self.V_rows.items()},
        )


@dataclass
class Barcode:
    """Finite bars (dim, birth, death) and essential bars (dim, birth), by position."""

    pairs: list[tuple[int, int, int]]
    essentials: list[tuple[int, int]]


def record_addition(stats: ReductionStats, src: int, V: Sequence[Collection[int] | None]) -> ReductionStats:
    """Account one addition of column src.

    Transitive usage: every column currently carried in V[src] is used by this
    addition, not just src itself. Direct count: src alone was the added column.
    """
    src_chain = V[src]
    assert src_chain is not None
    usage = stats.usage_count
    for k in src_chain:
        usage[k] += 1
    stats.added_count[src] += 1
    stats.total_additions += 1
    return stats


def sba_reduce(D: BoundaryMatrix, values: Sequence[float] | None = None) -> tuple[Decomposition, ReductionStats]:
    """Reduce D left to right, returning the decomposition and addition stats."""
    m = len(D)
    R: list[set[int] | None] = [set(c) for c in D.columns]
    V: list[set[int] | None] = [{j} for j in range(m)]
    pivot_map: dict[int, int] = {}
    stats = ReductionStats(usage_count=[0] * m, zero_flag=[False] * m, added_count=[0] * m)
    for j in range(m):
        col = R[j]
        while col:
            p = max(col)
            owner = pivot_map.get(p)
            if owner is None:
                pivot_map[p] = j
                break
            col ^= R[owner]
            V[j] ^= V[owner]
            record_addition(stats, owner, V)
    R_rows: dict[int, set[int]] = {i: set() for i in range(m)}
    V_rows: dict[int, set[int]] = {i: set() for i in range(m)}
    for j in range(m):
        for r in R[j]:
            R_rows[r].add(j)
        for r in V[j]:
            V_rows[r].add(j)
    dec = Decomposition(
        R=R,
        V=V,
        pivot_map=pivot_map,
        live=set(range(m)),
        dims=list(D.dims),
        values=[float(v) for v in values] if values is not None else [float(j) for j in range(m)],
        dcols=list(D.columns),
        R_rows=R_rows,
        V_rows=V_rows,
    )
    finalize_flags(dec, stats)
    return dec, stats


def finalize_flags(dec: Decomposition, stats: ReductionStats) -> ReductionStats:
    """zero_flag[t] := t appears in the chain of some other live zero column."""
    stats.zero_flag = [False] * len(dec.R)
    for j in dec.live:
        if dec.R[j]:
            continue
        chain = dec.V[j]
        assert chain is not None
        for t in chain:
            if t != j:
                stats.zero_flag[t] = True
    return stats


def extract_barcode(dec: Decomposition) -> Barcode:
    """Pivot pairs become finite bars; unpaired zero columns become essential bars."""
    pairs: list[tuple[int, int, int]] = []
    essentials: list[tuple[int, int]] = []
    for j in sorted(dec.live):
        col = dec.R[j]
        if col is None:
            raise ValueError(f"live column {j} has no content")
        if col:
            i = max(col)
            pairs.append((dec.dims[i], i, j))
        elif j not in dec.pivot_map:
            essentials.append((dec.dims[j], j))
    return Barcode(pairs=pairs, essentials=essentials)


def lower_left_rank(M: BoundaryMatrix | Sequence[Collection[int]], row_cut: int, col_cut: int) -> int:
    """Z2 rank of the submatrix of rows >= row_cut within the first col_cut columns."""
    cols = M.columns if isinstance(M, BoundaryMatrix) else M
    if not 0 <= col_cut <= len(cols):
        raise ValueError(f"column cut {col_cut} out of range")
    basis: dict[int, int] = {}
    rank = 0
    for col in cols[:col_cut]:
        x = 0
        for r in col:
            if r >= row_cut:
                x |= 1 << r
        while x:
            h = x.bit_length() - 1
            other = basis.get(h)
            if other is None:
                basis[h] = x
                rank += 1
                break
            x ^= other
    return rank


def barcode_csv(bc: Barcode, values: Sequence[float]) -> str:
    """CSV rows `dim,birth_index,death_index,birth_value,death_value`.

    Essential bars carry death_index -1 and an empty death_value.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dim", "birth_index", "death_index", "birth_value", "death_value"])
    rows = [(d, b, j) for d, b, j in bc.pairs] + [(d, b, -1) for d, b in bc.essentials]
    for d, b, j in sorted(rows, key=lambda r: (r[0], r[1], r[2])):
        death_value = repr(values[j]) if j >= 0 else ""
        writer.writerow([d, b, j, repr(values[b]), death_value])
    return buf.getvalue()


def stats_csv(stats: ReductionStats, dims: Sequence[int]) -> str:
    """Per-column usage/flags plus a summary block with the aggregate counters."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "dim", "usage_count", "zero_flag"])
    for j, (u, z) in enumerate(zip(stats.usage_count, stats.zero_flag)):
        writer.writerow([j, dims[j], u, "T" if z else "F"])
    writer.writerow(["total_additions", "max_usage", "avg_usage", "avg_usage_used"])
    writer.writerow(
        [stats.total_additions, stats.max_usage, repr(stats.avg_usage), repr(stats.avg_usage_used)]
    )
    return buf.getvalue()

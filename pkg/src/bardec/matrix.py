"""Z2 column arithmetic and boundary matrices in sparse row-id form.

A column is a collection of the row ids where the column is 1. Public helpers
are value-semantic (they return fresh sorted tuples); the reduction engine uses
mutable sets internally with the same O(nnz) addition cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterable, Sequence

from .complex import Filtration, FiltrationError, facets

__all__ = [
    "Z2Column",
    "BoundaryMatrix",
    "add_column",
    "pivot",
    "boundary_matrix",
    "matrix_product_check",
    "parse_phat",
    "format_phat",
]

Z2Column = tuple[int, ...]


def add_column(src: Iterable[int], dst: Iterable[int]) -> Z2Column:
    """Z2 sum (symmetric difference) of two columns as a sorted tuple."""
    return tuple(sorted(set(src) ^ set(dst)))


def pivot(col: Collection[int]) -> int | None:
    """Largest row id of the column, None for the zero column."""
    return max(col) if col else None


@dataclass
class BoundaryMatrix:
    """One column per filtration position; column j holds the facets of j."""

    columns: list[frozenset[int]]
    dims: list[int]

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.dims):
            raise ValueError("columns and dims must have equal length")
        self.columns = [frozenset(c) for c in self.columns]

    def __len__(self) -> int:
        return len(self.columns)


def boundary_matrix(f: Filtration) -> BoundaryMatrix:
    position = {s: j for j, s in enumerate(f.simplices)}
    columns = [frozenset(position[fac] for fac in facets(s)) for s in f.simplices]
    return BoundaryMatrix(columns=columns, dims=f.dims)


def matrix_product_check(
    D: BoundaryMatrix | Sequence[Collection[int]],
    V: Sequence[Collection[int] | None],
    R: Sequence[Collection[int] | None],
    live: Iterable[int] | None = None,
) -> bool:
    """True iff R[j] equals the Z2 product D·V[j] for every (live) column j."""
    dcols = D.columns if isinstance(D, BoundaryMatrix) else D
    indices = range(len(V)) if live is None else live
    for j in indices:
        vj, rj = V[j], R[j]
        if vj is None or rj is None:
            return False
        acc: set[int] = set()
        for k in vj:
            acc ^= dcols[k]
        if acc != set(rj):
            return False
    return True


def format_phat(D: BoundaryMatrix) -> str:
    """PHAT ascii: per column, its dimension then its ascending row ids."""
    lines = []
    for dim, col in zip(D.dims, D.columns):
        entries = " ".join(str(r) for r in sorted(col))
        lines.append(f"{dim} {entries}".rstrip())
    return "\n".join(lines) + ("\n" if lines else "")


def parse_phat(text: str) -> BoundaryMatrix:
    columns: list[frozenset[int]] = []
    dims: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            fields = [int(t) for t in line.split()]
        except ValueError:
            raise FiltrationError(f"line {lineno}: non-integer entry") from None
        dim, rows = fields[0], fields[1:]
        if dim < 0:
            raise FiltrationError(f"line {lineno}: negative dimension")
        if any(a >= b for a, b in zip(rows, rows[1:])):
            raise FiltrationError(f"line {lineno}: row ids not strictly ascending")
        here = len(columns)
        if any(r >= here or r < 0 for r in rows):
            raise FiltrationError(f"line {lineno}: row id out of range")
        columns.append(frozenset(rows))
        dims.append(dim)
    return BoundaryMatrix(columns=columns, dims=dims)

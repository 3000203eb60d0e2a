"""Simplicial filtrations: ordered simplices with entrance values, coface indexing, stars.

A simplex is a tuple of strictly ascending vertex ids. A filtration is a total
order on simplices in which every face precedes its cofaces and the key
(value, dim, vertices) is non-decreasing. Positions in that order are the row
and column ids used by every other module; they are stable and never renumbered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Simplex = tuple[int, ...]

__all__ = [
    "Simplex",
    "FiltrationError",
    "simplex",
    "sdim",
    "facets",
    "Filtration",
    "CofaceIndex",
    "validate_filtration",
    "build_coface_index",
    "star",
    "parse_filtration",
    "format_filtration",
]


class FiltrationError(ValueError):
    """Malformed simplex/filtration input or a violated ordering constraint."""


def simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical simplex: sorted tuple of distinct vertex ids."""
    verts = tuple(sorted(vertices))
    if not verts:
        raise FiltrationError("empty simplex")
    for a, b in zip(verts, verts[1:]):
        if a == b:
            raise FiltrationError(f"duplicate vertex in simplex {verts}")
    return verts


def sdim(s: Simplex) -> int:
    return len(s) - 1


def facets(s: Simplex) -> list[Simplex]:
    """Codimension-1 faces, empty for vertices."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


@dataclass
class Filtration:
    """Simplices in filtration order with their entrance values."""

    simplices: list[Simplex]
    values: list[float]

    def __post_init__(self) -> None:
        if len(self.simplices) != len(self.values):
            raise FiltrationError("simplices and values must have equal length")
        self.simplices = [tuple(s) for s in self.simplices]
        self.values = [float(v) for v in self.values]

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[tuple[Simplex, float]]:
        return iter(zip(self.simplices, self.values))

    @property
    def dims(self) -> list[int]:
        return [len(s) - 1 for s in self.simplices]


@dataclass
class CofaceIndex:
    """Position lookup plus cofacet adjacency, immutable after construction."""

    position: dict[Simplex, int]
    cofacets: list[list[int]] = field(repr=False)


def validate_filtration(f: Filtration) -> str | None:
    """None if valid, else a message naming the first offending position."""
    seen: dict[Simplex, int] = {}
    prev_key: tuple[float, int, Simplex] | None = None
    for j, (s, v) in enumerate(f):
        if not s:
            return f"position {j}: empty simplex"
        if any(a >= b for a, b in zip(s, s[1:])):
            return f"position {j}: vertices not strictly ascending in {s}"
        if s in seen:
            return f"position {j}: duplicate of simplex {s} at position {seen[s]}"
        for fac in facets(s):
            if fac not in seen:
                return f"position {j}: facet {fac} of {s} has not entered yet"
        key = (v, len(s) - 1, s)
        if prev_key is not None and key < prev_key:
            return f"position {j}: (value, dim, lex) key decreases at {s}"
        seen[s] = j
        prev_key = key
    return None


def build_coface_index(f: Filtration) -> CofaceIndex:
    position = {s: j for j, s in enumerate(f.simplices)}
    cofacets: list[list[int]] = [[] for _ in f.simplices]
    for j, s in enumerate(f.simplices):
        for fac in facets(s):
            cofacets[position[fac]].append(j)
    return CofaceIndex(position=position, cofacets=cofacets)


def star(
    f: Filtration,
    idx: CofaceIndex,
    sigma: int,
    live: set[int] | None = None,
) -> list[int]:
    """Positions of sigma and all its cofaces, restricted to `live` if given.

    Ordered by descending dimension, ties by descending position: the exact
    processing order the removal update requires.
    """
    if sigma < 0 or sigma >= len(f):
        raise FiltrationError(f"position {sigma} out of range")
    found = {sigma}
    queue = [sigma]
    while queue:
        cur = queue.pop()
        for cof in idx.cofacets[cur]:
            if cof not in found:
                found.add(cof)
                queue.append(cof)
    if live is not None:
        found &= live
    dims = f.dims
    return sorted(found, key=lambda j: (-dims[j], -j))


def parse_filtration(text: str) -> Filtration:
    """Native format: one `value v0 v1 ... vk` per line, `#` comments allowed."""
    simplices: list[Simplex] = []
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise FiltrationError(f"line {lineno}: expected `value v0 v1 ...`")
        try:
            value = float(tokens[0])
        except ValueError:
            raise FiltrationError(f"line {lineno}: bad value {tokens[0]!r}") from None
        try:
            verts = [int(t) for t in tokens[1:]]
        except ValueError:
            raise FiltrationError(f"line {lineno}: bad vertex id") from None
        try:
            simplices.append(simplex(verts))
        except FiltrationError as exc:
            raise FiltrationError(f"line {lineno}: {exc}") from None
        values.append(value)
    return Filtration(simplices, values)


def format_filtration(f: Filtration) -> str:
    lines = [f"{v!r} {' '.join(str(u) for u in s)}" for s, v in f]
    return "\n".join(lines) + ("\n" if lines else "")

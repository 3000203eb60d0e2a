"""Seeded construction of the filtration families used by tests and benchmarks.

All randomness flows through Python's `random.Random` (Mersenne Twister, stable
across platforms) seeded with 64-bit integers; independent sub-streams are
derived with the splitmix64 finalizer. Identical GenSpec -> identical bytes.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .complex import Filtration, FiltrationError, Simplex

__all__ = [
    "PointCloud",
    "GenSpec",
    "split_seed",
    "random_point_cloud",
    "vietoris_rips",
    "erdos_renyi_filtration",
    "shuffled_filtration",
    "lower_star_filtration",
    "random_tree",
    "generate",
    "parse_point_cloud",
    "format_point_cloud",
    "MODEL_ALIASES",
]

_MASK64 = (1 << 64) - 1


def split_seed(seed: int, k: int) -> int:
    """k-th sub-seed of seed via the splitmix64 finalizer (documented in README)."""
    z = (seed + (k + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass
class PointCloud:
    """Points in R^d, all with the same dimension."""

    points: list[tuple[float, ...]]

    def __post_init__(self) -> None:
        self.points = [tuple(float(c) for c in p) for p in self.points]
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            raise ValueError("all points must have the same dimension")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0


MODEL_ALIASES = {
    "vr": "vr",
    "vietoris_rips": "vr",
    "er": "erdos_renyi",
    "erdos_renyi": "erdos_renyi",
    "shuffled": "shuffled",
    "lowerstar": "lower_star",
    "lower_star": "lower_star",
}


@dataclass
class GenSpec:
    """Recipe for one generated filtration."""

    model: str
    n: int | None = None
    points: PointCloud | None = None
    max_dim: int = 2
    max_radius: float | None = None
    seed: int = 0
    vertex_values: Sequence[float] | None = None
    ambient_dim: int = 3

    def __post_init__(self) -> None:
        if self.model not in MODEL_ALIASES:
            raise ValueError(f"unknown model {self.model!r}")
        self.model = MODEL_ALIASES[self.model]
        if self.max_dim < 0:
            raise ValueError("max_dim must be >= 0")


def random_point_cloud(n: int, d: int, seed: int) -> PointCloud:
    """n i.i.d. uniform points in the unit cube [0,1]^d."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    rng = random.Random(seed)
    return PointCloud([tuple(rng.random() for _ in range(d)) for _ in range(n)])


def vietoris_rips(pc: PointCloud, max_dim: int = 2, max_radius: float | None = None) -> Filtration:
    """Simplices whose diameter is at most 2*max_radius, valued by diameter.

    A pair of radius-r balls intersects exactly when the endpoints are at
    distance <= 2r, so the radius parameter translates to a diameter threshold;
    entrance values are diameters. Unbounded when max_radius is None.
    """
    if not pc.points:
        raise ValueError("empty point cloud")
    pts = pc.points
    n = len(pts)
    threshold = None if max_radius is None else 2.0 * max_radius
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dist[i][j] = dist[j][i] = math.dist(pts[i], pts[j])
    entries: list[tuple[float, Simplex]] = [(0.0, (i,)) for i in range(n)]
    for k in range(2, max_dim + 2):
        for combo in itertools.combinations(range(n), k):
            diam = max(dist[a][b] for a, b in itertools.combinations(combo, 2))
            if threshold is None or diam <= threshold:
                entries.append((diam, combo))
    entries.sort(key=lambda e: (e[0], len(e[1]), e[1]))
    return Filtration([s for _, s in entries], [v for v, _ in entries])


def erdos_renyi_filtration(n: int, seed: int) -> Filtration:
    """All C(n,2) edges in seeded uniform order; triangles complete immediately.

    Values are positions: a vertex or edge is valued by its own position, and a
    triangle by the position of the edge that completed it (lex order among
    triangles completed by the same edge).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    edges = list(itertools.combinations(range(n), 2))
    rng.shuffle(edges)
    simplices: list[Simplex] = [(i,) for i in range(n)]
    values: list[float] = [float(i) for i in range(n)]
    present: set[Simplex] = set()
    for edge in edges:
        pos = len(simplices)
        simplices.append(edge)
        values.append(float(pos))
        present.add(edge)
        a, b = edge
        completed = []
        for w in range(n):
            if w == a or w == b:
                continue
            tri = tuple(sorted((a, b, w)))
            e1 = (tri[0], tri[1])
            e2 = (tri[0], tri[2])
            e3 = (tri[1], tri[2])
            if e1 in present and e2 in present and e3 in present:
                completed.append(tri)
        for tri in sorted(completed):
            simplices.append(tri)
            values.append(float(pos))
    return Filtration(simplices, values)


def shuffled_filtration(n: int, seed: int) -> Filtration:
    """All edges in seeded order, then all triangles in seeded order; values are positions."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    edges = list(itertools.combinations(range(n), 2))
    rng.shuffle(edges)
    triangles = list(itertools.combinations(range(n), 3))
    rng.shuffle(triangles)
    simplices: list[Simplex] = [(i,) for i in range(n)] + edges + triangles
    values = [float(i) for i in range(len(simplices))]
    return Filtration(simplices, values)


def lower_star_filtration(
    k: Filtration | Sequence[Simplex],
    vertex_values: Mapping[int, float] | Sequence[float],
) -> Filtration:
    """Order the complex by max vertex value, ties by (dim, lex)."""
    simplices = list(k.simplices) if isinstance(k, Filtration) else [tuple(s) for s in k]
    def value_of(v: int) -> float:
        try:
            return float(vertex_values[v])
        except (KeyError, IndexError):
            raise FiltrationError(f"missing value for vertex {v}") from None
    entries = [(max(value_of(v) for v in s), s) for s in simplices]
    entries.sort(key=lambda e: (e[0], len(e[1]), e[1]))
    return Filtration([s for _, s in entries], [v for v, _ in entries])


def random_tree(n: int, seed: int) -> list[Simplex]:
    """Random recursive tree: vertex v >= 1 attaches to a uniform earlier vertex."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    simplices: list[Simplex] = [(i,) for i in range(n)]
    for v in range(1, n):
        parent = rng.randrange(v)
        simplices.append((parent, v))
    return simplices


def generate(spec: GenSpec) -> Filtration:
    """Build the filtration a GenSpec describes."""
    if spec.model == "vr":
        pc = spec.points
        if pc is None:
            if spec.n is None:
                raise ValueError("vr needs points or n")
            pc = random_point_cloud(spec.n, spec.ambient_dim, split_seed(spec.seed, 0))
        return vietoris_rips(pc, spec.max_dim, spec.max_radius)
    if spec.model == "erdos_renyi":
        if spec.n is None:
            raise ValueError("erdos_renyi needs n")
        return erdos_renyi_filtration(spec.n, spec.seed)
    if spec.model == "shuffled":
        if spec.n is None:
            raise ValueError("shuffled needs n")
        return shuffled_filtration(spec.n, spec.seed)
    if spec.n is None:
        raise ValueError("lower_star needs n")
    complex_simplices = random_tree(spec.n, split_seed(spec.seed, 0))
    values = spec.vertex_values
    if values is None:
        rng = random.Random(split_seed(spec.seed, 1))
        values = [rng.random() for _ in range(spec.n)]
    return lower_star_filtration(complex_simplices, values)


def parse_point_cloud(text: str) -> PointCloud:
    """CSV, one point per row, decimal coordinates."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            points.append(tuple(float(t) for t in line.replace(",", " ").split()))
        except ValueError:
            raise ValueError(f"line {lineno}: bad coordinate") from None
    return PointCloud(points)


def format_point_cloud(pc: PointCloud) -> str:
    lines = [",".join(repr(c) for c in p) for p in pc.points]
    return "\n".join(lines) + ("\n" if lines else "")

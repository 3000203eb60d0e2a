"""Hand-built filtrations and frozen expected values shared across the tests.

Every expected structure here was derived by hand (column-by-column Z2
reduction on paper) before the library existed, so the tests pin behaviour
rather than echo it. Positions index the filtration order; values are the
entrance values assigned below.
"""

from __future__ import annotations

from collections import Counter

from bardec import Filtration, simplex

Bar = tuple[int, frozenset[int], frozenset[int] | None]


def build(entries: list[tuple[float, list[int]]]) -> Filtration:
    """Filtration from (value, vertex list) pairs in order."""
    return Filtration(
        [simplex(v) for _, v in entries],
        [val for val, _ in entries],
    )


# --- triangle boundary: three vertices, three edges, no 2-cell -------------
#
# Positions: 0,1,2 vertices; 3={0,1}, 4={0,2}, 5={1,2}. Values 1..6.
# Reducing column 5: {1,2}+{0,2}={0,1}, +{0,1}=0, so V[5]={3,4,5} and the
# two additions use columns 4 then 3 exactly once each.

TRIANGLE_BOUNDARY = build(
    [
        (1.0, [0]),
        (2.0, [1]),
        (3.0, [2]),
        (4.0, [0, 1]),
        (5.0, [0, 2]),
        (6.0, [1, 2]),
    ]
)

TRIANGLE_R = [set(), set(), set(), {0, 1}, {0, 2}, set()]
TRIANGLE_V = [{0}, {1}, {2}, {3}, {4}, {3, 4, 5}]
TRIANGLE_PIVOTS = {1: 3, 2: 4}
TRIANGLE_USAGE = [0, 0, 0, 1, 1, 0]
TRIANGLE_FLAGS = [False, False, False, True, True, False]
TRIANGLE_TOTAL_ADDITIONS = 2
# (dim, birth position, death position | None)
TRIANGLE_BARS = [(0, 0, None), (0, 1, 3), (0, 2, 4), (1, 5, None)]


# --- four-cycles: same reduced R, three different V ------------------------
#
# Vertices 0..3 (values 0..3), edges a={0,1}, b={1,2}, c={2,3} (values 4..6),
# then a closing edge d (value 7) that differs per variant:
#   C1: d={0,2}   reduces via b then a,        V[7]={4,5,7}
#   C2: d={1,3}   reduces via c then b,        V[7]={5,6,7}
#   C3: d={0,3}   reduces via c, b, a,         V[7]={4,5,6,7}
# All three end with R[7]=0 and identical R and pivot_map, so only V
# remembers which cycle representative was accumulated.

FOUR_CYCLE_CLOSERS = {"C1": [0, 2], "C2": [1, 3], "C3": [0, 3]}

FOUR_CYCLE_V7 = {"C1": {4, 5, 7}, "C2": {5, 6, 7}, "C3": {4, 5, 6, 7}}
FOUR_CYCLE_PIVOTS = {1: 4, 2: 5, 3: 6}
FOUR_CYCLE_EDGE_USAGE = {"C1": [1, 1, 0, 0], "C2": [0, 1, 1, 0], "C3": [1, 1, 1, 0]}
FOUR_CYCLE_EDGE_FLAGS = {
    "C1": [True, True, False, False],
    "C2": [False, True, True, False],
    "C3": [True, True, True, False],
}


def four_cycle(variant: str) -> Filtration:
    closer = FOUR_CYCLE_CLOSERS[variant]
    entries: list[tuple[float, list[int]]] = [(float(i), [i]) for i in range(4)]
    entries += [(4.0, [0, 1]), (5.0, [1, 2]), (6.0, [2, 3]), (7.0, closer)]
    return build(entries)


# --- path graph -------------------------------------------------------------


def path(n: int) -> Filtration:
    """n vertices then the n-1 edges {i,i+1}, valued by position."""
    entries: list[tuple[float, list[int]]] = [(float(i), [i]) for i in range(n)]
    entries += [(float(n + i), [i, i + 1]) for i in range(n - 1)]
    return build(entries)


# --- five-spoke wheel -------------------------------------------------------
#
# Hub 0, rim 1..5. Spokes {0,1}..{0,4} at 6..9, rim edge {4,5} at 10, last
# spoke {0,5} at 11, remaining rim edges 12..15, then the five filling
# triangles 16..20. Values are positions. The disk is contractible: one
# dim-0 essential and five finite bars in each of dims 0 and 1.
#
# Removing rim edge {4,5} (position 10) drags triangle {0,4,5} (16) along.
# Hand-traced delta: the bars (0, {5}, {4,5}) and (1, {0,5}, {0,4,5})
# disappear and (0, {5}, {0,5}) appears, because {0,5} stops being a cycle
# and becomes the new killer of vertex 5. Everything else is untouched.

WHEEL_ENTRIES: list[list[int]] = [
    [0], [1], [2], [3], [4], [5],
    [0, 1], [0, 2], [0, 3], [0, 4],
    [4, 5],
    [0, 5],
    [1, 2], [2, 3], [3, 4], [1, 5],
    [0, 4, 5], [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 1, 5],
]

WHEEL_RIM_EDGE = 10
WHEEL_HUB = 0

WHEEL_RIM_REMOVED: Counter[Bar] = Counter(
    {
        (0, frozenset({5}), frozenset({4, 5})): 1,
        (1, frozenset({0, 5}), frozenset({0, 4, 5})): 1,
    }
)
WHEEL_RIM_ADDED: Counter[Bar] = Counter({(0, frozenset({5}), frozenset({0, 5})): 1})


def wheel() -> Filtration:
    return build([(float(i), v) for i, v in enumerate(WHEEL_ENTRIES)])


# --- triangle fan along a shared edge ---------------------------------------
#
# Vertices u=0, v=1, w_i=2..n+1; the shared edge {0,1}; per wedge the two
# edges {0,w_i}, {1,w_i}; then the n triangles {0,1,w_i}. Contractible.
# Removing the shared edge removes all n triangles with it and leaves the n
# paths 0-w_i-1 joining 0 to 1, so n-1 independent cycles appear.


def fan(n: int) -> Filtration:
    entries: list[tuple[float, list[int]]] = [(0.0, [0]), (1.0, [1])]
    entries += [(float(2 + i), [2 + i]) for i in range(n)]
    pos = float(2 + n)
    entries.append((pos, [0, 1]))
    for i in range(n):
        w = 2 + i
        entries.append((pos + 1 + 2 * i, [0, w]))
        entries.append((pos + 2 + 2 * i, [1, w]))
    base = pos + 1 + 2 * n
    for i in range(n):
        entries.append((base + i, [0, 1, 2 + i]))
    return build(entries)


def fan_shared_edge(n: int) -> int:
    """Position of the shared edge {0,1} in fan(n)."""
    return n + 2


# --- hollow tetrahedron -----------------------------------------------------
#
# All faces of {0,1,2,3} except the solid 3-cell: one dim-2 essential.
# Removing edge {2,3} (position 9) drags triangles {0,2,3} and {1,2,3}
# along; the two remaining triangles no longer close a 2-cycle.

HOLLOW_TETRA = build(
    [(float(i), v) for i, v in enumerate(
        [
            [0], [1], [2], [3],
            [0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3],
            [0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3],
        ]
    )]
)

HOLLOW_TETRA_EDGE = 9  # {2,3}; its star is {9, 12, 13}


# --- small complexes for exhaustive removal sweeps --------------------------


def _er3() -> Filtration:
    from bardec import GenSpec, generate

    return generate(GenSpec(model="er", n=3, seed=2))


def _shuffled3() -> Filtration:
    from bardec import GenSpec, generate

    return generate(GenSpec(model="shuffled", n=3, seed=5))


def small_complexes() -> dict[str, Filtration]:
    """Complexes small enough for the exhaustive rank sweep (at most 12 columns)."""
    return {
        "triangle-boundary": TRIANGLE_BOUNDARY,
        "path-3": path(3),
        "single-vertex": build([(0.0, [0])]),
        "one-edge": build([(0.0, [0]), (1.0, [1]), (2.0, [0, 1])]),
        "filled-triangle": build(
            [
                (1.0, [0]), (2.0, [1]), (3.0, [2]),
                (4.0, [0, 1]), (5.0, [0, 2]), (6.0, [1, 2]),
                (7.0, [0, 1, 2]),
            ]
        ),
        "claw": build(
            [
                (0.0, [0]), (1.0, [1]), (2.0, [2]), (3.0, [3]),
                (4.0, [0, 1]), (5.0, [0, 2]), (6.0, [0, 3]),
            ]
        ),
        "two-components": build(
            [
                (0.0, [0]), (1.0, [1]), (2.0, [2]), (3.0, [3]),
                (4.0, [0, 1]), (5.0, [2, 3]),
            ]
        ),
        "triangle-plus-vertex": build(
            [
                (1.0, [0]), (2.0, [1]), (3.0, [2]), (3.5, [3]),
                (4.0, [0, 1]), (5.0, [0, 2]), (6.0, [1, 2]),
            ]
        ),
        "er-3": _er3(),
        "shuffled-3": _shuffled3(),
    }

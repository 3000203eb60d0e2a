"""From-scratch oracle and the invariant suite that makes every update claim falsifiable.

Bars are always compared by (dim, birth vertex set, death vertex set or None):
the in-place update keeps stable positions while the oracle renumbers, so
positional comparison would be meaningless.
"""

from __future__ import annotations

import csv
import io
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Collection, Sequence

from .complex import Filtration, Simplex, build_coface_index, star, validate_filtration
from .generate import GenSpec, generate, split_seed
from .matrix import BoundaryMatrix, boundary_matrix, matrix_product_check
from .reduce import Barcode, Decomposition, ReductionStats, extract_barcode, lower_left_rank, sba_reduce
from .update import mur_remove

__all__ = [
    "OracleResult",
    "ModeStats",
    "FuzzSummary",
    "Bar",
    "bar_multiset",
    "residual_filtration",
    "oracle_barcode",
    "oracle_reduction",
    "check_removal",
    "check_rank_criterion",
    "v_full_rank",
    "is_reduced",
    "maximal_positions",
    "classify_maximal_delta",
    "fuzz_removals",
    "summary_csv",
]

Bar = tuple[int, frozenset[int], frozenset[int] | None]


@dataclass
class OracleResult:
    """Outcome of one update-vs-oracle comparison."""

    match: bool
    mismatches: list[tuple[str, Bar]]
    our_additions: int
    oracle_additions: int


def bar_multiset(simplices: Sequence[Simplex], bc: Barcode) -> Counter[Bar]:
    """Barcode as a multiset of (dim, birth vertices, death vertices | None)."""
    bars: Counter[Bar] = Counter()
    for d, b, j in bc.pairs:
        bars[(d, frozenset(simplices[b]), frozenset(simplices[j]))] += 1
    for d, b in bc.essentials:
        bars[(d, frozenset(simplices[b]), None)] += 1
    return bars


def residual_filtration(f: Filtration, removed: Collection[int]) -> Filtration:
    gone = set(removed)
    keep = [j for j in range(len(f)) if j not in gone]
    return Filtration([f.simplices[j] for j in keep], [f.values[j] for j in keep])


def oracle_reduction(
    f: Filtration, remove: int | None = None
) -> tuple[Filtration, Decomposition, ReductionStats]:
    """Rebuild the filtration (minus a star), re-validate, reduce from scratch."""
    if remove is None:
        residual = f
    else:
        idx = build_coface_index(f)
        residual = residual_filtration(f, star(f, idx, remove))
    problem = validate_filtration(residual)
    if problem is not None:
        raise RuntimeError(f"residual filtration invalid: {problem}")
    dec, stats = sba_reduce(boundary_matrix(residual), residual.values)
    return residual, dec, stats


def oracle_barcode(f: Filtration, remove: int | None = None) -> Barcode:
    _, dec, _ = oracle_reduction(f, remove)
    return extract_barcode(dec)


def is_reduced(dec: Decomposition) -> bool:
    """Distinct pivots over live nonzero columns, pivot_map their exact inverse."""
    seen: dict[int, int] = {}
    for j in dec.live:
        col = dec.R[j]
        if col is None:
            return False
        if col:
            p = max(col)
            if p in seen or dec.pivot_map.get(p) != j:
                return False
            seen[p] = j
    return len(seen) == len(dec.pivot_map)


def v_full_rank(dec: Decomposition) -> bool:
    """The live V block is invertible.

    Update operations keep V upper triangular with a unit diagonal, which
    implies this; the check is deliberately independent of that property so it
    still catches a triangularity bug instead of assuming it away.
    """
    basis: dict[int, int] = {}
    rank = 0
    for j in sorted(dec.live):
        chain = dec.V[j]
        if chain is None:
            return False
        x = 0
        for r in chain:
            x |= 1 << r
        while x:
            h = x.bit_length() - 1
            other = basis.get(h)
            if other is None:
                basis[h] = x
                rank += 1
                break
            x ^= other
        else:
            return False
    return rank == len(dec.live)


def check_removal(f: Filtration, sigma: int, mode: str = "esmur") -> OracleResult:
    """Run mur_remove on a fresh decomposition and compare against the oracle.

    Also requires the product identity and reducedness to hold after the
    removal; violations are reported as mismatches, not exceptions.
    """
    idx = build_coface_index(f)
    dec, _ = sba_reduce(boundary_matrix(f), f.values)
    report = mur_remove(dec, f, idx, sigma, mode=mode)
    mismatches: list[tuple[str, Bar]] = []
    if not matrix_product_check(dec.dcols, dec.V, dec.R, live=dec.live):
        mismatches.append(("product-check-failed", (0, frozenset(), None)))
    if not is_reduced(dec):
        mismatches.append(("not-reduced", (0, frozenset(), None)))
    ours = bar_multiset(f.simplices, extract_barcode(dec))
    residual, oracle_dec, oracle_stats = oracle_reduction(f, sigma)
    oracle = bar_multiset(residual.simplices, extract_barcode(oracle_dec))
    for bar, count in (ours - oracle).items():
        mismatches.extend([("ours-only", bar)] * count)
    for bar, count in (oracle - ours).items():
        mismatches.extend([("oracle-only", bar)] * count)
    return OracleResult(
        match=not mismatches,
        mismatches=mismatches,
        our_additions=report.additions_R + report.additions_V,
        oracle_additions=2 * oracle_stats.total_additions,
    )


def check_rank_criterion(
    D: BoundaryMatrix | Sequence[Collection[int]],
    R: BoundaryMatrix | Sequence[Collection[int]],
    bound: int = 12,
) -> bool:
    """Exhaustively compare lower-left submatrix ranks of D and R.

    Column additions from the left preserve every rank of the form
    (rows >= cut) x (columns < cut), so D and its reduction must agree on all
    of them; capped because the sweep is O(m^2) rank computations.
    """
    dcols = list(D.columns if isinstance(D, BoundaryMatrix) else D)
    rcols = list(R.columns if isinstance(R, BoundaryMatrix) else R)
    if len(dcols) != len(rcols):
        raise ValueError("D and R must have the same number of columns")
    m = len(dcols)
    if m > bound:
        raise ValueError(f"{m} columns exceeds the exhaustive bound {bound}")
    max_row = -1
    for col in dcols + rcols:
        for r in col:
            max_row = max(max_row, r)
    for row_cut in range(max_row + 2):
        for col_cut in range(m + 1):
            if lower_left_rank(dcols, row_cut, col_cut) != lower_left_rank(rcols, row_cut, col_cut):
                return False
    return True


def maximal_positions(f: Filtration, live: Collection[int] | None = None) -> list[int]:
    """Positions with no (live) coface: exactly the single-member stars."""
    idx = build_coface_index(f)
    alive = set(range(len(f))) if live is None else set(live)
    out = []
    for j in sorted(alive):
        if all(c not in alive for c in idx.cofacets[j]):
            out.append(j)
    return out


def classify_maximal_delta(
    before: Counter[Bar],
    after: Counter[Bar],
    tau_dim: int,
    tau_verts: frozenset[int],
) -> list[str]:
    """Which of the three maximal-removal cases the barcode delta matches.

    Case "positive": the essential bar born at tau disappears and nothing else
    changes. Case "negative-else": only dim tau-1 changes; births are
    preserved, the finite-death multiset loses exactly tau, and exactly one
    bar trades its finite death for an essential one. Case "negative-swap":
    additionally one essential of dim tau is consumed — it disappears, its
    birth simplex replaces tau in the dim tau-1 finite-death multiset, and no
    new essential appears.
    """
    removed = before - after
    added = after - before
    b = tau_dim - 1
    matches = []

    if removed == Counter({(tau_dim, tau_verts, None): 1}) and not added:
        matches.append("positive")

    def dim_births(bars: Counter[Bar], dim: int) -> Counter[frozenset[int]]:
        out: Counter[frozenset[int]] = Counter()
        for (d, bv, _dv), c in bars.items():
            if d == dim:
                out[bv] += c
        return out

    def dim_finite_deaths(bars: Counter[Bar], dim: int) -> Counter[frozenset[int]]:
        out: Counter[frozenset[int]] = Counter()
        for (d, _bv, dv), c in bars.items():
            if d == dim and dv is not None:
                out[dv] += c
        return out

    def dim_essentials(bars: Counter[Bar], dim: int) -> Counter[frozenset[int]]:
        out: Counter[frozenset[int]] = Counter()
        for (d, bv, dv), c in bars.items():
            if d == dim and dv is None:
                out[bv] += c
        return out

    delta_dims = {d for (d, _bv, _dv) in (removed + added)}

    # negative-else: all changes confined to dim b, one death (tau) lost, one
    # bar goes essential, births preserved.
    if delta_dims and delta_dims <= {b}:
        births_ok = dim_births(removed, b) == dim_births(added, b)
        ess_removed = dim_essentials(removed, b)
        ess_added = dim_essentials(added, b)
        deaths_removed = dim_finite_deaths(removed, b)
        deaths_added = dim_finite_deaths(added, b)
        if (
            births_ok
            and not ess_removed
            and sum(ess_added.values()) == 1
            and deaths_removed == deaths_added + Counter({tau_verts: 1})
        ):
            matches.append("negative-else")

    # negative-swap: one essential of dim tau consumed, its birth replaces tau
    # among the dim-b deaths, no essential appears.
    if delta_dims and delta_dims <= {b, tau_dim}:
        ess_d_removed = dim_essentials(removed, tau_dim)
        ess_d_added = dim_essentials(added, tau_dim)
        d_finite_removed = dim_finite_deaths(removed, tau_dim)
        d_finite_added = dim_finite_deaths(added, tau_dim)
        d_births_removed = dim_births(removed, tau_dim)
        if (
            sum(ess_d_removed.values()) == 1
            and not ess_d_added
            and not d_finite_removed
            and not d_finite_added
            and d_births_removed == ess_d_removed
        ):
            (z_verts,) = ess_d_removed.keys()
            if z_verts == tau_verts:
                return matches  # the consumed essential is a different simplex by construction
            births_ok = dim_births(removed, b) == dim_births(added, b)
            ess_b_ok = not dim_essentials(removed, b) and not dim_essentials(added, b)
            deaths_removed = dim_finite_deaths(removed, b)
            deaths_added = dim_finite_deaths(added, b)
            if (
                births_ok
                and ess_b_ok
                and deaths_removed + Counter({z_verts: 1}) == deaths_added + Counter({tau_verts: 1})
            ):
                matches.append("negative-swap")

    return matches


@dataclass
class ModeStats:
    """Fuzz aggregates for one update mode."""

    mode: str
    passes: int = 0
    failures: int = 0
    branch_counts: Counter[str] = field(default_factory=Counter)
    max_additions: int = 0
    total_additions_R: int = 0
    bound_violations: int = 0


@dataclass
class FuzzSummary:
    """Aggregate of a fuzz_removals run; one ModeStats per update mode."""

    trials: int
    modes: list[ModeStats]
    esmur_not_worse: int = 0
    failure_notes: list[str] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(ms.failures == 0 for ms in self.modes)


def fuzz_removals(spec: GenSpec, trials: int, seed: int) -> FuzzSummary:
    """Generate, pick a uniform random simplex, remove in both modes, compare to oracle."""
    smur = ModeStats("smur")
    esmur = ModeStats("esmur")
    summary = FuzzSummary(trials=trials, modes=[smur, esmur])
    for t in range(trials):
        sub_seed = split_seed(seed, t)
        trial_spec = GenSpec(
            model=spec.model,
            n=spec.n,
            points=spec.points,
            max_dim=spec.max_dim,
            max_radius=spec.max_radius,
            seed=sub_seed,
            vertex_values=spec.vertex_values,
            ambient_dim=spec.ambient_dim,
        )
        f = generate(trial_spec)
        idx = build_coface_index(f)
        rng = random.Random(split_seed(sub_seed, 1_000_003))
        sigma = rng.randrange(len(f))
        base, _ = sba_reduce(boundary_matrix(f), f.values)
        residual, oracle_dec, _ = oracle_reduction(f, sigma)
        oracle = bar_multiset(residual.simplices, extract_barcode(oracle_dec))
        per_mode_R: dict[str, int] = {}
        for ms in (smur, esmur):
            dec = base.clone()
            report = mur_remove(dec, f, idx, sigma, mode=ms.mode)
            ok = (
                matrix_product_check(dec.dcols, dec.V, dec.R, live=dec.live)
                and is_reduced(dec)
                and bar_multiset(f.simplices, extract_barcode(dec)) == oracle
            )
            if ok:
                ms.passes += 1
            else:
                ms.failures += 1
                summary.failure_notes.append(
                    f"trial {t} ({trial_spec.model} seed {sub_seed}) sigma {sigma} mode {ms.mode}"
                )
            for e in report.entries:
                ms.branch_counts[e.branch] += 1
                if ms.mode == "esmur" and e.additions_R + e.additions_V > 2 * (e.support_size + 1):
                    ms.bound_violations += 1
            total = report.additions_R + report.additions_V
            ms.max_additions = max(ms.max_additions, total)
            ms.total_additions_R += report.additions_R
            per_mode_R[ms.mode] = report.additions_R
        if per_mode_R["esmur"] <= per_mode_R["smur"]:
            summary.esmur_not_worse += 1
    return summary


def summary_csv(summary: FuzzSummary) -> str:
    """One row per mode: trials,passes,failures,mode,branch counts,max additions."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "trials",
            "passes",
            "failures",
            "mode",
            "branch_zero",
            "branch_swap",
            "branch_else",
            "branch_trivial",
            "max_additions",
        ]
    )
    for ms in summary.modes:
        writer.writerow(
            [
                summary.trials,
                ms.passes,
                ms.failures,
                ms.mode,
                ms.branch_counts.get("zero-column", 0),
                ms.branch_counts.get("swap", 0),
                ms.branch_counts.get("else", 0),
                ms.branch_counts.get("trivial", 0),
                ms.max_additions,
            ]
        )
    return buf.getvalue()

"""In-place decomposition updates for removing a simplex together with its star.

mur_remove walks the star in descending dimension (ties by descending
position) and, for each member t, repairs the decomposition so column t can be
dropped, then deletes row t. Negative columns (nonzero R) are repaired by
smur_fix or esmur_fix; positive ones by remove_positive_column. Processing
order guarantees the delete_row preconditions: every cofacet of t is already
gone, so row t of the live R is zero, and the fixes clear row t of V.

All operations mutate the Decomposition; positions never renumber, and V stays
upper triangular throughout, which is what forces the pairing to agree with a
from-scratch reduction of the remaining filtration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import csv
import io
from typing import Iterable, Sequence

from .complex import CofaceIndex, Filtration, star
from .reduce import Decomposition

__all__ = [
    "DecompositionError",
    "RemovalEntry",
    "RemovalReport",
    "support_set",
    "mur_remove",
    "smur_fix",
    "esmur_fix",
    "remove_positive_column",
    "delete_row",
    "removal_report_csv",
]


class DecompositionError(RuntimeError):
    """A decomposition invariant or operation precondition was violated."""


@dataclass
class RemovalEntry:
    """What one star member's fix did: branch taken and operation counts."""

    position: int
    dim: int
    branch: str  # zero-column | swap | else | trivial
    additions_R: int = 0
    additions_V: int = 0
    swaps: int = 0
    support_size: int = 0


@dataclass
class RemovalReport:
    """Aggregate of one mur_remove call, one entry per removed star member."""

    removed: list[int]
    entries: list[RemovalEntry] = field(default_factory=list)

    @property
    def additions_R(self) -> int:
        return sum(e.additions_R for e in self.entries)

    @property
    def additions_V(self) -> int:
        return sum(e.additions_V for e in self.entries)

    @property
    def swaps(self) -> int:
        return sum(e.swaps for e in self.entries)


def support_set(dec: Decomposition, tau: int) -> list[int]:
    """Live columns (other than tau itself) whose V chain contains tau, ascending."""
    return sorted(j for j in dec.V_rows[tau] if j != tau)


def _xor_r(dec: Decomposition, dst: int, src_rows: Iterable[int]) -> None:
    col = dec.R[dst]
    assert col is not None
    rows = dec.R_rows
    for r in src_rows:
        if r in col:
            col.discard(r)
            rows[r].discard(dst)
        else:
            col.add(r)
            rows[r].add(dst)


def _xor_v(dec: Decomposition, dst: int, src_rows: Iterable[int]) -> None:
    col = dec.V[dst]
    assert col is not None
    rows = dec.V_rows
    for r in src_rows:
        if r in col:
            col.discard(r)
            rows[r].discard(dst)
        else:
            col.add(r)
            rows[r].add(dst)


def _detach_column(dec: Decomposition, tau: int) -> None:
    """Drop column tau's content from R, V, the row indexes, and the pivot map."""
    rcol, vcol = dec.R[tau], dec.V[tau]
    assert rcol is not None and vcol is not None
    if rcol:
        p = max(rcol)
        if dec.pivot_map.get(p) == tau:
            del dec.pivot_map[p]
    for r in rcol:
        dec.R_rows[r].discard(tau)
    for r in vcol:
        dec.V_rows[r].discard(tau)
    dec.R[tau] = None
    dec.V[tau] = None


def _pop_pivots(dec: Decomposition, cols: Iterable[int]) -> None:
    for j in cols:
        col = dec.R[j]
        assert col is not None
        if col:
            p = max(col)
            if dec.pivot_map.get(p) == j:
                del dec.pivot_map[p]


def _sweep(dec: Decomposition, cols: Sequence[int], entry: RemovalEntry) -> None:
    """Re-seat the pivots of the (already modified) columns, left to right.

    Collisions may only point at columns earlier than the one being seated;
    anything else means the decomposition left the states reachable by this
    update and is reported as a hard error rather than papered over.
    """
    for j in sorted(cols):
        col = dec.R[j]
        assert col is not None
        while col:
            p = max(col)
            owner = dec.pivot_map.get(p)
            if owner is None:
                dec.pivot_map[p] = j
                break
            if owner >= j:
                raise DecompositionError(
                    f"pivot {p} contested by column {owner} not earlier than {j}"
                )
            src_r, src_v = dec.R[owner], dec.V[owner]
            assert src_r is not None and src_v is not None
            _xor_r(dec, j, set(src_r))
            _xor_v(dec, j, set(src_v))
            entry.additions_R += 1
            entry.additions_V += 1


def smur_fix(dec: Decomposition, tau: int) -> RemovalEntry:
    """Clear row tau out of V by adding column tau to its support, then re-reduce.

    Every support column receives both R[tau] and V[tau]; the additions leave
    all their pivots equal, so a restricted left-to-right sweep re-seats them.
    """
    rcol = dec.R[tau]
    if tau not in dec.live or rcol is None:
        raise DecompositionError(f"column {tau} is not live")
    if not rcol:
        raise DecompositionError(f"column {tau} is zero; not a smur case")
    support = support_set(dec, tau)
    entry = RemovalEntry(tau, dec.dims[tau], "else", support_size=len(support))
    r_tau = set(rcol)
    v_tau = set(dec.V[tau] or ())
    _detach_column(dec, tau)
    _pop_pivots(dec, support)
    for rho in support:
        _xor_r(dec, rho, r_tau)
        _xor_v(dec, rho, v_tau)
        entry.additions_R += 1
        entry.additions_V += 1
    _sweep(dec, support, entry)
    return entry


def _seat_pivot(dec: Decomposition, j: int) -> None:
    """Record column j as the owner of its pivot row, which must be free."""
    col = dec.R[j]
    assert col is not None and col
    p = max(col)
    owner = dec.pivot_map.get(p)
    if owner is not None:
        raise DecompositionError(f"pivot {p} contested by columns {owner} and {j}")
    dec.pivot_map[p] = j


def esmur_fix(dec: Decomposition, tau: int) -> RemovalEntry:
    """Clear row tau out of V with one addition per support column.

    Adding column tau to every support column and re-reducing (the smur path)
    always nets out to one addition per support column, applied here directly
    from saved copies so the re-reduction never runs. A support column whose
    pivot lies below tau's keeps it and simply absorbs R[tau]/V[tau]. The
    rest carry pivots above tau's and form a displacement chain: the earliest
    absorbs column tau and gives up its own old content, which travels
    rightward; a column whose pivot is above the traveling chain's keeps its
    pivot and lets the chain ride along, while a column whose pivot is below
    it (zero columns included) takes the chain's pivot and displaces its own
    old content instead. Once a zero column's chain - a cycle through tau -
    is displaced, the remaining chain columns need only a V addition of that
    cycle, since its R part is empty.

    Every addition moves a chain rightward, so V stays upper triangular and
    the pairing stays pinned to that of a from-scratch reduction; the cost is
    at most one R and one V addition per support column.
    """
    rcol = dec.R[tau]
    if tau not in dec.live or rcol is None:
        raise DecompositionError(f"column {tau} is not live")
    if not rcol:
        raise DecompositionError(f"column {tau} is zero; not an esmur case")
    support = support_set(dec, tau)
    r_tau = set(rcol)
    v_tau = set(dec.V[tau] or ())
    p = max(r_tau)
    chain: list[int] = []
    direct: list[int] = []
    for rho in support:
        col = dec.R[rho]
        (chain if not col or max(col) < p else direct).append(rho)
    branch = "swap" if chain and not dec.R[chain[0]] else "else"
    entry = RemovalEntry(tau, dec.dims[tau], branch, support_size=len(support))
    _detach_column(dec, tau)
    if not support:
        return entry
    _pop_pivots(dec, support)
    for rho in direct:
        _xor_r(dec, rho, r_tau)
        _xor_v(dec, rho, v_tau)
        entry.additions_R += 1
        entry.additions_V += 1
        _seat_pivot(dec, rho)
    if not chain:
        return entry
    rho1 = chain[0]
    disp_r = set(dec.R[rho1] or ())
    disp_v = set(dec.V[rho1] or ())
    _xor_r(dec, rho1, r_tau)
    _xor_v(dec, rho1, v_tau)
    entry.additions_R += 1
    entry.additions_V += 1
    _seat_pivot(dec, rho1)
    for rho in chain[1:]:
        if not disp_r:
            _xor_v(dec, rho, disp_v)
            entry.additions_V += 1
            col = dec.R[rho]
            if col:
                _seat_pivot(dec, rho)
            continue
        col = dec.R[rho]
        assert col is not None
        if not col or max(disp_r) > max(col):
            next_r, next_v = set(col), set(dec.V[rho] or ())
            _xor_r(dec, rho, disp_r)
            _xor_v(dec, rho, disp_v)
            disp_r, disp_v = next_r, next_v
        else:
            _xor_r(dec, rho, disp_r)
            _xor_v(dec, rho, disp_v)
        entry.additions_R += 1
        entry.additions_V += 1
        _seat_pivot(dec, rho)
    return entry


def remove_positive_column(dec: Decomposition, tau: int) -> RemovalEntry:
    """Drop a zero column, first clearing row tau out of V (R is unaffected)."""
    rcol = dec.R[tau]
    if tau not in dec.live or rcol is None:
        raise DecompositionError(f"column {tau} is not live")
    if rcol:
        raise DecompositionError(f"column {tau} is nonzero; use a fix operation")
    support = support_set(dec, tau)
    branch = "zero-column" if support else "trivial"
    entry = RemovalEntry(tau, dec.dims[tau], branch, support_size=len(support))
    v_tau = set(dec.V[tau] or ())
    _detach_column(dec, tau)
    for rho in support:
        _xor_v(dec, rho, v_tau)
        entry.additions_V += 1
    return entry


def delete_row(dec: Decomposition, tau: int) -> None:
    """Retire row tau. Hard errors if anything live still references it."""
    if tau not in dec.live:
        raise DecompositionError(f"row {tau} is not live")
    if dec.R[tau] is not None:
        raise DecompositionError(f"column {tau} must be removed before its row")
    if dec.R_rows[tau]:
        raise DecompositionError(
            f"row {tau} of R is nonzero in columns {sorted(dec.R_rows[tau])}; "
            "cofaces must be removed first"
        )
    if dec.V_rows[tau]:
        raise DecompositionError(
            f"row {tau} of V is nonzero in columns {sorted(dec.V_rows[tau])}"
        )
    if tau in dec.pivot_map:
        raise DecompositionError(f"row {tau} still owns a pivot pair")
    dec.live.discard(tau)


def mur_remove(
    dec: Decomposition,
    f: Filtration,
    idx: CofaceIndex,
    sigma: int,
    mode: str = "esmur",
) -> RemovalReport:
    """Remove simplex sigma and its whole star from the decomposition."""
    if mode not in ("smur", "esmur"):
        raise ValueError(f"unknown mode {mode!r}")
    if sigma not in dec.live:
        raise DecompositionError(f"position {sigma} is not live")
    members = star(f, idx, sigma, live=dec.live)
    report = RemovalReport(removed=list(members))
    for tau in members:
        col = dec.R[tau]
        assert col is not None
        if col:
            fix = smur_fix if mode == "smur" else esmur_fix
            entry = fix(dec, tau)
        else:
            entry = remove_positive_column(dec, tau)
        report.entries.append(entry)
        delete_row(dec, tau)
    return report


def removal_report_csv(report: RemovalReport) -> str:
    """CSV rows `position,dim,branch,additions_R,additions_V,swaps`, one per member."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["position", "dim", "branch", "additions_R", "additions_V", "swaps"])
    for e in report.entries:
        writer.writerow([e.position, e.dim, e.branch, e.additions_R, e.additions_V, e.swaps])
    return buf.getvalue()

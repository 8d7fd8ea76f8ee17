"""Exact location set covering engine.

A CoverageMatrix holds, for one covering radius, which sites reach which
demands, as Python-int bit vectors in both orientations. The solver
pipeline is: domination-rule reduction, a greedy cover for the upper
bound, a disjoint-rows lower bound, then depth-first branch-and-bound
on demand/site choices. All tie-breaking is by lowest index, so results
are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleRow, RadiusDecrease
from .geometry import DistanceMatrix


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_from_bools(vec) -> int:
    return int.from_bytes(np.packbits(vec, bitorder="little").tobytes(), "little")


class CoverageMatrix:
    """Coverage at a given radius; grows monotonically via extend_coverage.

    ``cover_by_site[j]`` has bit i set iff site j covers demand i at the
    current radius; ``cover_of_demand[i]`` is the transposed view. The
    radius lives in comparison space (squared value for real distances,
    plain integer for ceiled ones). Not safe to share while extending.
    """

    def __init__(self, dm: DistanceMatrix, radius):
        self.dm = dm
        self.n = dm.m
        self.m = dm.m
        self.radius = radius
        flat = dm.key.ravel()
        self._order = np.argsort(flat, kind="stable")
        self._sorted_keys = flat[self._order]
        self._ptr = int(np.searchsorted(self._sorted_keys, radius, side="right"))
        covered = dm.key <= radius
        self.cover_by_site = [_mask_from_bools(covered[:, j]) for j in range(self.m)]
        self.cover_of_demand = [_mask_from_bools(covered[i, :]) for i in range(self.n)]

    @property
    def all_demands(self) -> int:
        return (1 << self.n) - 1

    @property
    def all_sites(self) -> int:
        return (1 << self.m) - 1


def coverage_matrix(dm: DistanceMatrix, radius) -> CoverageMatrix:
    """Build coverage from scratch: a_ij = 1 iff d_ij <= radius."""
    return CoverageMatrix(dm, radius)


def extend_coverage(cm: CoverageMatrix, new_radius) -> CoverageMatrix:
    """Grow the radius in place, flipping only the newly covered cells.

    Bits never clear; total work across a full ladder sweep is one pass
    over the sorted cells of the matrix.
    """
    if new_radius < cm.radius:
        raise RadiusDecrease(f"cannot shrink radius {cm.radius!r} -> {new_radius!r}")
    new_ptr = int(np.searchsorted(cm._sorted_keys, new_radius, side="right"))
    m = cm.m
    for c in cm._order[cm._ptr : new_ptr]:
        i, j = divmod(int(c), m)
        cm.cover_by_site[j] |= 1 << i
        cm.cover_of_demand[i] |= 1 << j
    cm._ptr = new_ptr
    cm.radius = new_radius
    return cm


@dataclass(frozen=True)
class CoverSolution:
    """A feasible cover; ``proof`` is the matching lower bound when the
    cardinality was proven optimal (None for heuristic covers)."""

    facilities: tuple[int, ...]
    cardinality: int
    proof: int | None = None


@dataclass
class ReducedInstance:
    """Domination-reduced problem plus the map back to original indices.

    ``site_masks``/``demand_masks`` are re-packed over positions in the
    surviving ``demands``/``sites`` lists. Solving the reduction and
    adding ``forced`` reproduces the original optimum.
    """

    forced: list[int]
    demands: list[int]
    sites: list[int]
    site_masks: list[int] = field(default_factory=list)
    demand_masks: list[int] = field(default_factory=list)


def reduce(cm: CoverageMatrix) -> ReducedInstance:
    """Apply essential-site, row and column domination rules to fixpoint.

    Essential: a demand covered by exactly one site forces that site in.
    Row: a demand whose covering-site set contains another demand's is
    redundant. Column: a site whose coverage is contained in another
    site's is never needed. Equal sets keep the lowest index.
    """
    active_d = cm.all_demands
    active_s = cm.all_sites
    forced: list[int] = []
    changed = True
    while changed:
        changed = False

        essential: list[int] = []
        for i in _iter_bits(active_d):
            row = cm.cover_of_demand[i] & active_s
            if row == 0:
                raise InfeasibleRow(f"demand {i} has no covering site")
            if row & (row - 1) == 0:
                essential.append(row.bit_length() - 1)
        for j in dict.fromkeys(essential):
            forced.append(j)
            active_d &= ~cm.cover_by_site[j]
            active_s &= ~(1 << j)
            changed = True

        rows = [(i, cm.cover_of_demand[i] & active_s) for i in _iter_bits(active_d)]
        for a, (ia, ra) in enumerate(rows):
            for ib, rb in rows:
                if ia == ib or ra & rb != rb:
                    continue
                if ra != rb or ia > ib:
                    active_d &= ~(1 << ia)
                    rows[a] = (ia, -1)  # mark dead so it cannot dominate others
                    changed = True
                    break
        rows = None

        cols = [(j, cm.cover_by_site[j] & active_d) for j in _iter_bits(active_s)]
        for a, (ja, ca) in enumerate(cols):
            for jb, cb in cols:
                if ja == jb or cb == -1 or ca & cb != ca:
                    continue
                if ca != cb or ja > jb:
                    active_s &= ~(1 << ja)
                    cols[a] = (ja, -1)
                    changed = True
                    break

    demands = list(_iter_bits(active_d))
    sites = list(_iter_bits(active_s))
    red = ReducedInstance(forced=sorted(forced), demands=demands, sites=sites)
    dpos = {i: k for k, i in enumerate(demands)}
    for j in sites:
        mask = 0
        for i in _iter_bits(cm.cover_by_site[j] & active_d):
            mask |= 1 << dpos[i]
        red.site_masks.append(mask)
    spos = {j: k for k, j in enumerate(sites)}
    for i in demands:
        mask = 0
        for j in _iter_bits(cm.cover_of_demand[i] & active_s):
            mask |= 1 << spos[j]
        red.demand_masks.append(mask)
    return red


def _greedy_masks(site_masks: list[int], universe: int) -> list[int]:
    """Greedy cover on raw masks; ties go to the lowest index."""
    uncovered = universe
    picked: list[int] = []
    while uncovered:
        best_j = -1
        best_gain = 0
        for j, mask in enumerate(site_masks):
            gain = (mask & uncovered).bit_count()
            if gain > best_gain:
                best_gain, best_j = gain, j
        picked.append(best_j)
        uncovered &= ~site_masks[best_j]
    return picked


def greedy_cover(cm: CoverageMatrix) -> CoverSolution:
    """Feasible cover by repeated max-new-coverage picks; an upper bound."""
    picked = _greedy_masks(cm.cover_by_site, cm.all_demands)
    return CoverSolution(facilities=tuple(sorted(picked)), cardinality=len(picked))


def _disjoint_bound(row_masks: list[int]) -> int:
    """Count demands with pairwise-disjoint covering-site sets.

    Rows are taken in ascending degree order; any cover needs one site
    per selected row, so the count bounds every cover from below.
    """
    rows = sorted(row_masks, key=lambda r: r.bit_count())
    used = 0
    count = 0
    for row in rows:
        if row & used == 0:
            count += 1
            used |= row
    return count


def disjoint_rows_bound(cm: CoverageMatrix) -> int:
    return _disjoint_bound(cm.cover_of_demand)


def solve_lscp(cm: CoverageMatrix, ub_hint: int | None = None) -> CoverSolution:
    """Provably optimal cover via reduce + branch-and-bound.

    ``ub_hint``, when given, must be the cardinality of some cover that
    is feasible at this radius (e.g. the optimum at a smaller radius).
    It is used as a value-only cutoff: the search still keeps enough
    slack to recover a certificate of the hinted size, so the returned
    facility set always covers everything and matches ``cardinality``.

    Branching picks the uncovered demand with the fewest available
    covering sites; children try those sites in descending order of new
    coverage and exclude earlier siblings, which keeps the subtrees
    disjoint. Nodes prune on the disjoint-rows bound. Deterministic for
    a fixed matrix.
    """
    red = reduce(cm)
    base = len(red.forced)
    if not red.demands:
        facs = tuple(red.forced)
        return CoverSolution(facilities=facs, cardinality=base, proof=base)

    site_masks = red.site_masks
    demand_masks = red.demand_masks
    universe = (1 << len(red.demands)) - 1
    avail_all = (1 << len(red.sites)) - 1

    best_sel = _greedy_masks(site_masks, universe)
    best_val = len(best_sel)
    limit = best_val
    if ub_hint is not None:
        limit = min(limit, max(ub_hint - base, 0) + 1)

    chosen: list[int] = []

    def lb(uncovered: int, avail: int) -> int:
        return _disjoint_bound([demand_masks[i] & avail for i in _iter_bits(uncovered)])

    def dfs(uncovered: int, avail: int):
        nonlocal best_sel, best_val
        pushed = 0
        try:
            while True:
                if uncovered == 0:
                    if len(chosen) < best_val:
                        best_val = len(chosen)
                        best_sel = chosen.copy()
                    return
                unit = -1
                for i in _iter_bits(uncovered):
                    row = demand_masks[i] & avail
                    if row == 0:
                        return
                    if row & (row - 1) == 0:
                        unit = row.bit_length() - 1
                        break
                if unit < 0:
                    break
                chosen.append(unit)
                pushed += 1
                uncovered &= ~site_masks[unit]
                avail &= ~(1 << unit)

            threshold = min(best_val, limit)
            if len(chosen) + lb(uncovered, avail) >= threshold:
                return

            pick = -1
            pick_deg = 1 << 62
            for i in _iter_bits(uncovered):
                deg = (demand_masks[i] & avail).bit_count()
                if deg < pick_deg:
                    pick_deg, pick = deg, i
            cands = list(_iter_bits(demand_masks[pick] & avail))
            cands.sort(key=lambda j: -(site_masks[j] & uncovered).bit_count())

            removed = 0
            for j in cands:
                bit = 1 << j
                chosen.append(j)
                dfs(uncovered & ~site_masks[j], avail & ~removed & ~bit)
                chosen.pop()
                removed |= bit
                if len(chosen) + 1 >= min(best_val, limit):
                    return
        finally:
            for _ in range(pushed):
                chosen.pop()

    dfs(universe, avail_all)

    facilities = sorted(red.forced + [red.sites[pos] for pos in best_sel])
    value = base + best_val
    return CoverSolution(facilities=tuple(facilities), cardinality=value, proof=value)

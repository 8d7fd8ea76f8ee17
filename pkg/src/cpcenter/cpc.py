"""Complete p-center drivers.

The full trade-off curve z_1..z_m is assembled from three exact paths:
closed forms for p in {1, m-1, m}, brute-force enumeration over site
subsets for small p, and a ladder sweep that re-solves the set covering
problem at successive unique distances until the required facility
count drops below each p. All paths work in comparison space (squared
real distances or ceiled integers); conversion to coordinate units
happens once per record when the curve is assembled.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .curve import CurveRecord, TradeoffCurve, make_record
from .errors import (
    ArgumentOutOfRange,
    BudgetExceeded,
    InstanceTooSmall,
    ModeMismatch,
    UnsupportedP,
)
from .geometry import (
    INTEGER,
    DistanceLadder,
    DistanceMatrix,
    unique_distance_ladder,
)
from .setcover import coverage_matrix, extend_coverage, solve_lscp

DEFAULT_ENUM_BUDGET = 10**10


def _solve_p1_key(dm: DistanceMatrix):
    """Best single site: min over sites of their worst demand distance."""
    worst = dm.key.max(axis=0)
    j = int(np.argmin(worst))
    return worst[j].item(), j


def solve_p1(dm: DistanceMatrix):
    """(z_1, facility index); ties resolved to the lowest site index."""
    key, j = _solve_p1_key(dm)
    return dm.radius_from_key(key), j


def _closest_pair(dm: DistanceMatrix):
    """Smallest off-diagonal entry and its (i, j), lexicographic on ties."""
    iu, ju = np.triu_indices(dm.m, k=1)
    vals = dm.key[iu, ju]
    a = int(np.argmin(vals))
    return vals[a].item(), (int(iu[a]), int(ju[a]))


def trivial_tail(dm: DistanceMatrix):
    """(z_m, z_{m-1}): zero, and the cost of merging the closest pair.

    With all points distinct the merge costs D^1, the smallest nonzero
    ladder value; coincident points make it free.
    """
    if dm.m < 2:
        raise InstanceTooSmall("z_{m-1} needs at least two points")
    d1, _ = _closest_pair(dm)
    return dm.radius_from_key(0), dm.radius_from_key(d1)


def binomial(m: int, p: int) -> int:
    """Subset count C(m, p); the enumeration cost of one p value."""
    if m < 0 or p < 0 or p > m:
        raise ArgumentOutOfRange(f"binomial({m}, {p}) undefined")
    return math.comb(m, p)


def _scan_p2(key, m, j_lo, j_hi):
    best = None
    for j1 in range(j_lo, min(j_hi, m - 1)):
        vals = np.minimum(key[:, j1 : j1 + 1], key[:, j1 + 1 :]).max(axis=0)
        r = int(np.argmin(vals))
        cand = (vals[r].item(), (j1, j1 + 1 + r))
        if best is None or cand < best:
            best = cand
    return best


def _scan_p3(key, m, j_lo, j_hi):
    best = None
    for j1 in range(j_lo, min(j_hi, m - 2)):
        c1 = key[:, j1]
        for j2 in range(j1 + 1, m - 1):
            base = np.minimum(c1, key[:, j2])
            vals = np.minimum(base[:, None], key[:, j2 + 1 :]).max(axis=0)
            r = int(np.argmin(vals))
            cand = (vals[r].item(), (j1, j2, j2 + 1 + r))
            if best is None or cand < best:
                best = cand
    return best


def _scan_p4(key, m, j_lo, j_hi):
    best = None
    for j1 in range(j_lo, min(j_hi, m - 3)):
        c1 = key[:, j1]
        for j2 in range(j1 + 1, m - 2):
            b12 = np.minimum(c1, key[:, j2])
            for j3 in range(j2 + 1, m - 1):
                base = np.minimum(b12, key[:, j3])
                vals = np.minimum(base[:, None], key[:, j3 + 1 :]).max(axis=0)
                r = int(np.argmin(vals))
                cand = (vals[r].item(), (j1, j2, j3, j3 + 1 + r))
                if best is None or cand < best:
                    best = cand
    return best


_SCANS = {2: _scan_p2, 3: _scan_p3, 4: _scan_p4}


def enumerate_center(dm: DistanceMatrix, p: int, *, budget: int = DEFAULT_ENUM_BUDGET,
                     threads: int | None = None):
    """Exact z_p by checking every p-subset of sites, p in {2, 3, 4}.

    The value of a subset is the worst demand's distance to its nearest
    chosen site. Work is split over the outermost site index; partial
    winners merge by (value, subset) so the result does not depend on
    worker scheduling. Ties give the lexicographically smallest subset.
    Returns (z_p in coordinate units, facility tuple).
    """
    if p not in _SCANS:
        raise UnsupportedP(f"enumeration supports p in 2..4, got {p}")
    if p > dm.m:
        raise UnsupportedP(f"p={p} exceeds instance size m={dm.m}")
    if binomial(dm.m, p) > budget:
        raise BudgetExceeded(f"C({dm.m}, {p}) = {binomial(dm.m, p)} exceeds budget {budget}")

    key = dm.key
    m = dm.m
    scan = _SCANS[p]
    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    workers = min(workers, m)
    if workers <= 1:
        best = scan(key, m, 0, m)
    else:
        bounds = np.linspace(0, m, workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda w: scan(key, m, bounds[w], bounds[w + 1]), range(workers)))
        best = min((c for c in parts if c is not None), default=None)
    if best is None:
        raise UnsupportedP(f"no {p}-subset exists for m={m}")
    return dm.radius_from_key(best[0]), best[1]


def _sweep(dm: DistanceMatrix, ladder: DistanceLadder, stop_p: int, on_progress=None):
    """Ladder sweep: assign z_p for p = m-2 down to stop_p.

    Walks the unique distances upward; at each rung the set covering
    optimum c says how many facilities that radius needs. Every still
    open p >= c gets this rung's distance: p facilities could not cover
    at any earlier rung (the optimum there exceeded p) and c <= p
    facilities do here. The previous rung's optimum rides along as the
    solver's upper-bound hint; its cover stays feasible as the radius
    grows. Returns ({p: (key, facilities)}, lscp_call_count).
    """
    m = dm.m
    p = m - 2
    assignments: dict[int, tuple] = {}
    if p < stop_p:
        return assignments, 0

    if ladder.K == 0:
        sol = solve_lscp(coverage_matrix(dm, ladder.values[0].item()))
        for q in range(p, stop_p - 1, -1):
            assignments[q] = (ladder.values[0].item(), sol.facilities)
        return assignments, 1

    cm = coverage_matrix(dm, ladder.values[1].item())
    hint = m - 1
    iterations = 0
    for k in range(1, ladder.K + 1):
        if p < stop_p:
            break
        extend_coverage(cm, ladder.values[k].item())
        sol = solve_lscp(cm, ub_hint=hint)
        iterations += 1
        hint = sol.cardinality
        while sol.cardinality <= p and p >= stop_p:
            assignments[p] = (ladder.values[k].item(), sol.facilities)
            p -= 1
        if on_progress is not None:
            on_progress(k, p)
    return assignments, iterations


def _assemble(dm: DistanceMatrix, stop_p: int, enum_ps, threads, budget) -> TradeoffCurve:
    ladder = unique_distance_ladder(dm)
    m = dm.m
    items: dict[int, tuple] = {}
    zero = ladder.values[0].item()

    items[m] = (zero, tuple(range(m)), "trivial")
    if m >= 3:
        d1, (a, b) = _closest_pair(dm)
        merged = tuple(i for i in range(m) if i != b)
        items[m - 1] = (d1, merged, "trivial")

    for q in enum_ps:
        if q not in items and q <= m - 2:
            _, fac = enumerate_center(dm, q, budget=budget, threads=threads)
            # re-derive the comparison-space value from the subset; squaring
            # the returned radius would not round-trip bitwise
            key = dm.key[:, list(fac)].min(axis=1).max().item()
            items[q] = (key, fac, "enumeration")

    assigned, iterations = _sweep(dm, ladder, stop_p)
    for q, (key, fac) in assigned.items():
        if q not in items:
            items[q] = (key, fac, "lscp")

    if 1 not in items:
        key1, j1 = _solve_p1_key(dm)
        items[1] = (key1, (j1,), "trivial")

    records = tuple(
        make_record(q, items[q][0], items[q][1], items[q][2], dm.mode)
        for q in range(1, m + 1)
    )
    return TradeoffCurve(instance=dm.name, mode=dm.mode, records=records, iterations=iterations)


def solve_cpc_lscp(dm: DistanceMatrix) -> TradeoffCurve:
    """Full curve from trivial anchors plus the ladder sweep down to p = 2."""
    return _assemble(dm, stop_p=2, enum_ps=(), threads=None, budget=DEFAULT_ENUM_BUDGET)


def solve_cpc_lscp_e(dm: DistanceMatrix, enum_max: int = 3, *, threads: int | None = None,
                     budget: int = DEFAULT_ENUM_BUDGET) -> TradeoffCurve:
    """Hybrid curve: enumeration for p = 2..enum_max, sweep for the rest.

    Produces the same z values as solve_cpc_lscp; the sweep stops at
    p = enum_max + 1, so it never has to walk the ladder past
    z_{enum_max+1}, which is where the iteration savings come from.
    """
    if not 2 <= enum_max <= 4:
        raise ArgumentOutOfRange(f"enum_max must be 2..4, got {enum_max}")
    if dm.m < enum_max:
        raise InstanceTooSmall(f"enum_max={enum_max} exceeds instance size m={dm.m}")
    enum_ps = range(2, enum_max + 1)
    return _assemble(dm, stop_p=enum_max + 1, enum_ps=enum_ps, threads=threads, budget=budget)


def solve_single_p(dm: DistanceMatrix, p: int, *, enum_max: int = 3,
                   threads: int | None = None) -> CurveRecord:
    """One curve record by the cheapest exact path for this p."""
    m = dm.m
    if not 1 <= p <= m:
        raise ArgumentOutOfRange(f"p must be 1..{m}, got {p}")
    ladder = unique_distance_ladder(dm)
    if p == m:
        return make_record(p, ladder.values[0].item(), tuple(range(m)), "trivial", dm.mode)
    if p == m - 1 and m >= 2:
        d1, (a, b) = _closest_pair(dm)
        return make_record(p, d1, tuple(i for i in range(m) if i != b), "trivial", dm.mode)
    if p == 1:
        key1, j1 = _solve_p1_key(dm)
        return make_record(p, key1, (j1,), "trivial", dm.mode)
    if 2 <= p <= enum_max:
        zp, fac = enumerate_center(dm, p, threads=threads)
        key = dm.key[:, list(fac)].min(axis=1).max().item()
        return make_record(p, key, fac, "enumeration", dm.mode)
    assigned, _ = _sweep(dm, ladder, stop_p=p)
    key, fac = assigned[p]
    return make_record(p, key, fac, "lscp", dm.mode)


def integer_sandwich(curve_int: TradeoffCurve) -> list[tuple[int, int]]:
    """Per-p (lower, upper) brackets for the real-distance optimum.

    A curve solved on round-up integer distances is feasible for the
    real problem, so each z is an upper bound; subtracting one (floored
    at zero) gives the matching integral lower bound.
    """
    if curve_int.mode != INTEGER:
        raise ModeMismatch(f"expected an integer-mode curve, got {curve_int.mode!r}")
    return [(max(int(r.z) - 1, 0), int(r.z)) for r in curve_int.records]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]


def verify_curve(curve: TradeoffCurve, dm: DistanceMatrix) -> VerificationReport:
    """Independent audit of a finished curve against its instance.

    Checks monotonicity, ladder membership, the two trivial anchors,
    and for every record with facilities both feasibility (the set
    covers at z_p) and local tightness (it fails at the next smaller
    ladder value). Failures are reported, never raised.
    """
    ladder = unique_distance_ladder(dm)
    checks = []

    bad = [r.p for prev, r in zip(curve.records, curve.records[1:]) if r.key > prev.key]
    checks.append(CheckResult("monotonicity", not bad,
                              f"z increases at p={bad}" if bad else ""))

    off = []
    for r in curve.records:
        try:
            ladder.rank_of(r.key)
        except KeyError:
            off.append(r.p)
    checks.append(CheckResult("ladder-membership", not off,
                              f"z not a ladder value at p={off}" if off else ""))

    zm_ok = curve.record(curve.m).key == 0
    detail = "" if zm_ok else f"z_m = {curve.record(curve.m).z!r}, expected 0"
    if curve.m >= 2:
        d1, _ = _closest_pair(dm)
        if curve.record(curve.m - 1).key != d1:
            zm_ok = False
            detail += f" z_(m-1) = {curve.record(curve.m - 1).z!r}, expected ladder D1"
    checks.append(CheckResult("anchors", zm_ok, detail.strip()))

    infeasible, loose = [], []
    for r in curve.records:
        if r.facilities is None:
            continue
        cols = dm.key[:, list(r.facilities)]
        if not (cols <= r.key).any(axis=1).all():
            infeasible.append(r.p)
            continue
        try:
            rank = ladder.rank_of(r.key)
        except KeyError:
            continue
        if rank > 0:
            prev = ladder.values[rank - 1].item()
            if (cols <= prev).any(axis=1).all():
                loose.append(r.p)
    checks.append(CheckResult("certificate-feasibility", not infeasible,
                              f"facilities do not cover at p={infeasible}" if infeasible else ""))
    checks.append(CheckResult("local-tightness", not loose,
                              f"facilities also cover one rung lower at p={loose}" if loose else ""))

    return VerificationReport(checks=tuple(checks))

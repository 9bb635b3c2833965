"""Exact polynomial-time solvers for one-dimensional elections.

At a fixed radius r, "voter v is served within r" means its closed interval
[v - r, v + r] contains a committee member, so every decision question becomes
an interval hitting-set question over the sorted candidate line. The three
solvers binary-search the shared radius set for the least feasible radius:

* optimal replacement: a left-to-right greedy repair of the unhit intervals;
* fault-tolerance score: a committee is f-fault tolerant at radius r exactly
  when, for every candidate index range, it places at least as many members in
  the range as the range's *demand* -- the largest family of voter intervals
  confined to the range that some <= f candidate deletions can make pairwise
  disjoint on survivors (each surviving candidate in at most one family
  member). Demands come from a dynamic program over intervals in sorted order.
* optimal committee: the minimum set meeting all range demands is built by a
  left-to-right greedy scan and compared against k.

Interval boundaries are closed, and membership tests compare distances, never
rebuilt endpoints, so feasibility at a radius drawn from the distance set is
bit-exact with the brute-force oracles.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    Committee,
    DimensionError,
    Election,
    INFEASIBLE,
    SolveReport,
    as_failed,
    as_members,
    candidate_distance_set,
)

_NEG = float("-inf")


@dataclass(frozen=True)
class IntervalInstance:
    """The hitting-set view of a 1D election at one radius.

    Intervals are listed in voter-position order (equal lengths, so that is
    simultaneously left-endpoint and right-endpoint order). Candidates are
    sorted stably by (position, original index); ``hit_ranges[i]`` is the
    contiguous span of sorted-candidate ranks inside interval i, or None when
    the interval contains no candidate.
    """

    radius: float
    intervals: tuple
    centers: tuple
    interval_voters: tuple
    candidate_positions: tuple
    candidate_order: tuple
    hit_ranges: tuple

    @property
    def hit_lists(self) -> tuple:
        """Per-interval tuples of original candidate indices, in rank order."""
        out = []
        for span in self.hit_ranges:
            if span is None:
                out.append(())
            else:
                lo, hi = span
                out.append(tuple(self.candidate_order[lo : hi + 1]))
        return tuple(out)

    def ranks_of(self, original_indices) -> tuple[int, ...]:
        lookup = {orig: rank for rank, orig in enumerate(self.candidate_order)}
        return tuple(sorted(lookup[i] for i in original_indices))


def build_interval_instance(e: Election, radius: float) -> IntervalInstance:
    """Closed voter intervals of half-width ``radius`` over sorted candidates."""
    if e.dim != 1:
        raise DimensionError("requires 1D election")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    order = sorted(range(e.m), key=lambda c: (e.candidates[c][0], c))
    positions = tuple(e.candidates[c][0] for c in order)
    voter_order = sorted(range(e.n), key=lambda v: (e.voters[v][0], v))
    intervals = []
    centers = []
    spans = []
    for v in voter_order:
        center = e.voters[v][0]
        centers.append(center)
        intervals.append((center - radius, center + radius))
        inside = [rank for rank, p in enumerate(positions) if abs(p - center) <= radius]
        spans.append((inside[0], inside[-1]) if inside else None)
    return IntervalInstance(
        radius=radius,
        intervals=tuple(intervals),
        centers=tuple(centers),
        interval_voters=tuple(voter_order),
        candidate_positions=positions,
        candidate_order=tuple(order),
        hit_ranges=tuple(spans),
    )


def orp_1d_decision(inst: IntervalInstance, committee, failing) -> Optional[tuple[int, ...]]:
    """Greedy repair at one radius; returns R (original indices) or None.

    Intervals already hit by a surviving member are dropped, failed candidates
    leave the pool, and each leftmost unhit interval takes the rightmost
    surviving candidate it contains. Feasible when everything gets hit with at
    most |T intersect J| additions.
    """
    members = set(as_members(committee))
    failed = set(as_failed(failing))
    survivors = members - failed
    budget = len(members) - len(survivors)
    order = inst.candidate_order
    positions = inst.candidate_positions
    r = inst.radius
    m = len(order)
    surviving_member = [order[rank] in survivors for rank in range(m)]
    member_prefix = [0]
    for rank in range(m):
        member_prefix.append(member_prefix[-1] + (1 if surviving_member[rank] else 0))

    chosen: list[int] = []
    last_pos: Optional[float] = None
    for idx, span in enumerate(inst.hit_ranges):
        center = inst.centers[idx]
        if span is not None:
            lo, hi = span
            if member_prefix[hi + 1] - member_prefix[lo] > 0:
                continue
        if last_pos is not None and abs(center - last_pos) <= r:
            continue
        if span is None:
            return None
        lo, hi = span
        pick = None
        for rank in range(hi, lo - 1, -1):
            if order[rank] not in failed:
                pick = rank
                break
        if pick is None:
            return None
        chosen.append(order[pick])
        last_pos = positions[pick]
        if len(chosen) > budget:
            return None
    return tuple(sorted(chosen))


def _least_feasible_radius(distances, predicate):
    """Index of the least radius satisfying a monotone predicate, or None."""
    lo, hi = 0, len(distances) - 1
    if not predicate(distances[hi]):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if predicate(distances[mid]):
            hi = mid
        else:
            lo = mid + 1
    return lo


def orp_1d(e: Election, committee, failing) -> SolveReport:
    """Optimal replacement on a line: binary search + greedy decision."""
    t0 = time.perf_counter()
    if e.dim != 1:
        raise DimensionError("requires 1D election")
    members = as_members(committee)
    failed = as_failed(failing)
    distances = candidate_distance_set(e)
    idx = _least_feasible_radius(
        distances, lambda r: orp_1d_decision(build_interval_instance(e, r), members, failed) is not None
    )
    if idx is None:
        return SolveReport(committee=None, score=INFEASIBLE, wall_time=time.perf_counter() - t0)
    radius = distances[idx]
    repl = orp_1d_decision(build_interval_instance(e, radius), members, failed)
    failed_set = set(failed)
    repaired = tuple(sorted(c for c in members if c not in failed_set) + list(repl))
    return SolveReport(
        committee=Committee(repaired, max(1, len(members))),
        score=radius,
        replacement=repl,
        wall_time=time.perf_counter() - t0,
    )


@dataclass(frozen=True, eq=False)
class DeltaTable:
    """Per-range demands delta[(i, j)] for all candidate rank ranges i <= j.

    ``demand[(i, j)]`` is the largest family of intervals confined to ranks
    [i, j] that at most f candidate deletions can make pairwise disjoint on
    the survivors; any f-fault-tolerant committee must put at least that many
    members into the range. A range is flagged None (infeasible) when one of
    its confined intervals holds f or fewer candidates: deleting them all
    leaves the interval unservable, so no committee is f-tolerant at this
    radius.
    """

    f: int
    m: int
    demand: dict

    def get(self, i: int, j: int):
        return self.demand[(i, j)]

    def infeasible(self) -> bool:
        return any(v is None for v in self.demand.values())


def _span_overlap(a, b) -> int:
    lo = max(a[0], b[0])
    hi = min(a[1], b[1])
    return hi - lo + 1 if hi >= lo else 0


def build_delta_table(inst: IntervalInstance, f: int) -> DeltaTable:
    """Fill every range demand with the sorted-interval dynamic program.

    For one range, walk its confined intervals left to right; dp[a][b] is the
    best family size among the first a intervals using deletion budget b. A
    family extending to interval a from previously chosen interval a' pays for
    the candidates the two share (equal-length intervals make earlier overlaps
    nested inside that one), so

        dp[a][b] = max(dp[a-1][b],
                       max over a' < a of 1 + dp[a'][b - |shared(a, a')|])

    with dp[0][b] = 0 and negative budgets unreachable. The demand is
    dp[t][f]. Every range value is cross-validated against the brute-force
    oracle in the test suite; a mismatch is surfaced, never patched over.
    """
    if f < 0:
        raise ValueError("f must be nonnegative")
    m = len(inst.candidate_order)
    spans = inst.hit_ranges
    n = len(spans)
    demand: dict = {}
    for i in range(m):
        for j in range(i, m):
            members = [
                spans[a]
                for a in range(n)
                if spans[a] is None or (spans[a][0] >= i and spans[a][1] <= j)
            ]
            if any(sp is None or sp[1] - sp[0] + 1 <= f for sp in members):
                demand[(i, j)] = None
                continue
            t = len(members)
            dp = [[0] * (f + 1)]
            for a in range(1, t + 1):
                row = []
                span_a = members[a - 1]
                for b in range(f + 1):
                    best = max(dp[a - 1][b], 1)
                    for ap in range(1, a):
                        cost = _span_overlap(span_a, members[ap - 1])
                        if b - cost >= 0:
                            cand = 1 + dp[ap][b - cost]
                            if cand > best:
                                best = cand
                    row.append(best)
                dp.append(row)
            demand[(i, j)] = dp[t][f] if t else 0
    return DeltaTable(f=f, m=m, demand=demand)


def fts_1d_decision(inst: IntervalInstance, committee, table: DeltaTable) -> bool:
    """True when the committee meets every range demand (f-tolerant at r)."""
    if table.infeasible():
        return False
    m = table.m
    member_ranks = set(inst.ranks_of(set(as_members(committee))))
    prefix = [0]
    for rank in range(m):
        prefix.append(prefix[-1] + (1 if rank in member_ranks else 0))
    for i in range(m):
        for j in range(i, m):
            if prefix[j + 1] - prefix[i] < table.get(i, j):
                return False
    return True


def fts_1d(e: Election, committee, f: int) -> SolveReport:
    """Fault-tolerance score on a line via the range-demand decision."""
    t0 = time.perf_counter()
    if e.dim != 1:
        raise DimensionError("requires 1D election")
    members = as_members(committee)
    distances = candidate_distance_set(e)

    def feasible(r: float) -> bool:
        inst = build_interval_instance(e, r)
        return fts_1d_decision(inst, members, build_delta_table(inst, f))

    idx = _least_feasible_radius(distances, feasible)
    committee_out = Committee(members, max(1, len(members)))
    if idx is None:
        return SolveReport(committee=committee_out, score=INFEASIBLE, wall_time=time.perf_counter() - t0)
    return SolveReport(committee=committee_out, score=distances[idx], wall_time=time.perf_counter() - t0)


def oftc_1d_greedy_hitting_set(inst: IntervalInstance, table: DeltaTable) -> Optional[tuple[int, ...]]:
    """Minimum set meeting every range demand, or None when impossible.

    Scans candidate ranks left to right and takes rank kappa exactly when some
    range [i, j] spanning kappa still demands more members than the current
    picks plus all remaining slots kappa..j could supply without it. The
    result meets every demand and no smaller set does (exchange argument);
    minimality is re-verified against subset enumeration in the tests.
    """
    if table.infeasible():
        return None
    m = table.m
    for (i, j), need in table.demand.items():
        if need > j - i + 1:
            return None
    chosen: list[int] = []
    for kappa in range(m):
        prefix = [0]
        taken = set(chosen)
        for rank in range(m):
            prefix.append(prefix[-1] + (1 if rank in taken else 0))
        hit = False
        for i in range(kappa + 1):
            if hit:
                break
            for j in range(kappa, m):
                need = table.get(i, j)
                have = prefix[j + 1] - prefix[i]
                if need >= have + (j - kappa + 1):
                    hit = True
                    break
        if hit:
            chosen.append(kappa)
    return tuple(sorted(inst.candidate_order[rank] for rank in chosen))


def oftc_1d(e: Election, k: int, f: int) -> SolveReport:
    """Optimal fault-tolerant committee on a line.

    Binary search for the least radius whose minimum demand-meeting set fits
    in k; that set is returned and the radius is its fault-tolerance score.
    """
    t0 = time.perf_counter()
    if e.dim != 1:
        raise DimensionError("requires 1D election")
    if k < 1:
        raise ValueError("k must be positive")
    distances = candidate_distance_set(e)

    def solve(r: float) -> Optional[tuple[int, ...]]:
        inst = build_interval_instance(e, r)
        return oftc_1d_greedy_hitting_set(inst, build_delta_table(inst, f))

    def feasible(r: float) -> bool:
        found = solve(r)
        return found is not None and len(found) <= k

    idx = _least_feasible_radius(distances, feasible)
    if idx is None:
        return SolveReport(committee=None, score=INFEASIBLE, wall_time=time.perf_counter() - t0)
    radius = distances[idx]
    members = solve(radius)
    return SolveReport(
        committee=Committee(members, k), score=radius, wall_time=time.perf_counter() - t0
    )

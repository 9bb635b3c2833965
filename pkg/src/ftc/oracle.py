"""Brute-force reference solvers.

Everything in this module is a direct unrolling of a problem definition:
enumerate all replacement sets, all failing sets, or all committees, and take
the best or worst. These routines are the ground truth that the polynomial
algorithms and the approximation bounds are tested against, so they stay
deliberately free of pruning tricks. A loop-count guard refuses instances that
would enumerate more than :data:`GUARD_LIMIT` states.

The only concession to speed is a per-election table of min-max scores for
*every* candidate subset (a 2^m array), so the inner loops do table lookups
instead of recomputing max-of-min from scratch. The table itself is filled by
the definition.

Tie-breaking everywhere: among equal scores, the lexicographically smallest
index tuple wins, so outputs are deterministic.
"""

from __future__ import annotations

import math
import time
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .model import (
    Committee,
    Election,
    EnumerationGuardError,
    FailingSet,
    INFEASIBLE,
    Score,
    SolveReport,
    as_failed,
    as_members,
)

GUARD_LIMIT = 10**8

_INF = math.inf


def _guard(count: float) -> None:
    if count > GUARD_LIMIT:
        raise EnumerationGuardError("instance too large for oracle")


@lru_cache(maxsize=256)
def _subset_scores(e: Election) -> tuple:
    """Min-max score of every candidate subset, indexed by bitmask.

    Entry 0 (the empty committee) is ``inf``; callers translate that to the
    INFEASIBLE sentinel at the API boundary.
    """
    m = e.m
    _guard((1 << m) * e.n)
    worst = [0.0] * (1 << m)
    for v in range(e.n):
        row = e._dist[v]
        best = [_INF] * (1 << m)
        for mask in range(1, 1 << m):
            low = mask & -mask
            rest = best[mask ^ low]
            d = row[low.bit_length() - 1]
            best[mask] = d if d < rest else rest
        for mask in range(1 << m):
            if best[mask] > worst[mask]:
                worst[mask] = best[mask]
    return tuple(worst)


def _mask(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _replacement_search(
    e: Election, base_mask: int, banned_mask: int, budget: int
) -> tuple[float, tuple[int, ...]]:
    """Best repair: min over R in the surviving pool, |R| <= budget.

    Returns ``(score, R)`` with score possibly ``inf``. R excludes candidates
    already present in ``base_mask`` (re-adding a surviving member is a no-op).
    """
    scores = _subset_scores(e)
    pool = [c for c in range(e.m) if not ((banned_mask | base_mask) >> c) & 1]
    budget = min(budget, len(pool))
    _guard(sum(math.comb(len(pool), s) for s in range(budget + 1)))
    best_score = scores[base_mask]
    best_r: tuple[int, ...] = ()
    for size in range(1, budget + 1):
        for comb in combinations(pool, size):
            score = scores[base_mask | _mask(comb)]
            if score < best_score or (score == best_score and comb < best_r):
                best_score, best_r = score, comb
    return best_score, best_r


def replacement_score(e: Election, members: Sequence[int], failed: Sequence[int]) -> Score:
    """Score of the optimally repaired committee after ``failed`` defaults."""
    members = as_members(members)
    failed_set = set(as_failed(failed))
    base = [c for c in members if c not in failed_set]
    budget = len(members) - len(base)
    score, _ = _replacement_search(e, _mask(base), _mask(failed_set), budget)
    return INFEASIBLE if score == _INF else score


def orp_exact(e: Election, committee, failing) -> SolveReport:
    """Optimal replacement by exhaustive enumeration.

    Tries every replacement set R drawn from the surviving candidates with
    |R| <= |T intersect J| and returns the one minimizing the min-max score of
    the repaired committee.
    """
    t0 = time.perf_counter()
    members = as_members(committee)
    failed = as_failed(failing)
    failed_set = set(failed)
    base = tuple(c for c in members if c not in failed_set)
    budget = len(members) - len(base)
    score, repl = _replacement_search(e, _mask(base), _mask(failed), budget)
    repaired = tuple(sorted(base + repl))
    return SolveReport(
        committee=Committee(repaired, max(1, len(members))),
        score=INFEASIBLE if score == _INF else score,
        replacement=repl,
        wall_time=time.perf_counter() - t0,
    )


def _sigma_f_search(
    e: Election, members: tuple[int, ...], f: int
) -> tuple[float, tuple[int, ...], tuple[int, ...]]:
    """Worst-case repaired score over all failing sets of size at most f.

    Any subset of the full candidate pool may fail, not just committee
    members. Returns ``(score, worst_J, best_R_for_worst_J)``.
    """
    scores = _subset_scores(e)
    m = e.m
    member_mask = _mask(members)
    worst = -1.0
    worst_j: tuple[int, ...] = ()
    worst_r: tuple[int, ...] = ()
    for size in range(0, min(f, m) + 1):
        for j in combinations(range(m), size):
            j_mask = _mask(j)
            base_mask = member_mask & ~j_mask
            budget = len(members) - bin(base_mask).count("1")
            score, repl = _replacement_search(e, base_mask, j_mask, budget)
            if score > worst or (score == worst and j < worst_j):
                worst, worst_j, worst_r = score, j, repl
    return worst, worst_j, worst_r


def fts_exact(e: Election, committee, f: int) -> SolveReport:
    """Fault-tolerance score by enumerating every failing set of size <= f."""
    t0 = time.perf_counter()
    members = as_members(committee)
    if f < 0:
        raise ValueError("f must be nonnegative")
    _guard(
        sum(math.comb(e.m, s) for s in range(min(f, e.m) + 1))
        * sum(math.comb(e.m, s) for s in range(min(f, e.m) + 1))
    )
    score, worst_j, worst_r = _sigma_f_search(e, members, f)
    return SolveReport(
        committee=Committee(members, max(1, len(members))),
        score=INFEASIBLE if score == _INF else score,
        replacement=worst_r,
        worst_failing_set=FailingSet(worst_j, f),
        wall_time=time.perf_counter() - t0,
    )


def oftc_exact(e: Election, k: int, f: int) -> SolveReport:
    """Optimal fault-tolerant committee by enumerating every committee.

    All committees of size at most k are scored with :func:`fts_exact`'s
    machinery; the minimizer wins, ties going to the lexicographically
    smallest member tuple.
    """
    t0 = time.perf_counter()
    if k < 1:
        raise ValueError("k must be positive")
    if f < 0:
        raise ValueError("f must be nonnegative")
    m = e.m
    n_committees = sum(math.comb(m, s) for s in range(1, min(k, m) + 1))
    n_failings = sum(math.comb(m, s) for s in range(min(f, m) + 1))
    _guard(n_committees * n_failings * n_failings)
    best: Score = INFEASIBLE
    best_members: Optional[tuple[int, ...]] = None
    for size in range(1, min(k, m) + 1):
        for members in combinations(range(m), size):
            score, _, _ = _sigma_f_search(e, members, f)
            value: Score = INFEASIBLE if score == _INF else score
            if best_members is None or value < best or (value == best and members < best_members):
                best, best_members = value, members
    _, worst_j, worst_r = _sigma_f_search(e, best_members, f)
    return SolveReport(
        committee=Committee(best_members, k),
        score=best,
        replacement=worst_r,
        worst_failing_set=FailingSet(worst_j, f),
        wall_time=time.perf_counter() - t0,
    )


def min_hitting_set_1d(
    points: Sequence[float], intervals: Sequence[tuple]
) -> Optional[tuple[float, ...]]:
    """Minimum subset of points hitting every closed interval, or None.

    The classic sweep: walk intervals in order of right endpoint and, whenever
    the current interval is unhit, take the rightmost point inside it.
    """
    pts = sorted(points)
    chosen: list[float] = []
    for lo, hi in sorted(intervals, key=lambda iv: (iv[1], iv[0])):
        if chosen and lo <= chosen[-1] <= hi:
            continue
        idx = _rightmost_at_most(pts, hi)
        if idx < 0 or pts[idx] < lo:
            return None
        chosen.append(pts[idx])
    return tuple(chosen)


def _rightmost_at_most(pts: list[float], bound: float) -> int:
    lo, hi = 0, len(pts) - 1
    out = -1
    while lo <= hi:
        mid = (lo + hi) // 2
        if pts[mid] <= bound:
            out = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return out


def max_disjoint_intervals_1d(
    points: Sequence[float],
    intervals: Sequence[tuple],
    failures_allowed: int,
) -> tuple[int, tuple[int, ...]]:
    """Largest interval family that is pairwise disjoint on surviving points.

    Maximizes, over failure sets X of at most ``failures_allowed`` point
    *indices*, the size of a subfamily in which every surviving point lies in
    at most one member. Enumeration is over all subfamilies: a subfamily works
    for some X with |X| <= budget exactly when the set of points covered by
    two or more of its members has size <= budget, and that doubly-covered set
    is the cheapest witness. An interval covering no surviving point is a free
    member (each surviving point still lies in at most one interval), which is
    the convention the range table's recurrence follows.

    Returns ``(size, X)`` with X a sorted tuple of failing point indices.
    """
    n_int = len(intervals)
    _guard((1 << n_int) * max(1, n_int))
    hit_masks = []
    for lo, hi in intervals:
        mask = 0
        for idx, p in enumerate(points):
            if lo <= p <= hi:
                mask |= 1 << idx
        hit_masks.append(mask)
    best_size = 0
    best_x = 0
    for family in range(1 << n_int):
        seen = 0
        multi = 0
        rest = family
        while rest:
            low = rest & -rest
            hm = hit_masks[low.bit_length() - 1]
            multi |= seen & hm
            seen |= hm
            rest ^= low
        if bin(multi).count("1") <= failures_allowed:
            size = bin(family).count("1")
            if size > best_size:
                best_size, best_x = size, multi
    return best_size, _bits(best_x)

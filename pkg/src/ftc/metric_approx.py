"""Constant-factor approximations valid in any metric space and dimension.

Four solvers live here:

* :func:`orp_approx3` -- greedy replacement: repeatedly serve the farthest
  voter with its nearest available candidate; a 3-approximation.
* :func:`fts_approx3` -- a closed-form 3-approximation of the fault-tolerance
  score built from each voter's (f+1)-th nearest candidate.
* :func:`oftc_approx3_bounded_f` -- an approximate decision procedure swept
  over all realized radii; a 3-approximation when f is small enough for
  failing-set enumeration.
* :func:`oftc_approx5` -- the farthest-next greedy; a 5-approximation without
  any restriction on f.

Ties in every argmax/argmin break toward the lowest index so that identical
inputs always yield identical committees.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .model import (
    Committee,
    Election,
    INFEASIBLE,
    Score,
    SolveReport,
    as_failed,
    as_members,
    candidate_distance_set,
    committee_score,
    kth_nearest_distance,
    members_score,
)
from .oracle import _sigma_f_search, _subset_scores, _mask, replacement_score


class RadiusTooSmallError(RuntimeError):
    """The decision radius is below the full-pool fault-tolerance score."""


@dataclass(frozen=True)
class WitnessRecord:
    """Which voter forced each committee member into an approximate decision.

    Pairwise witness distances exceeding twice the decision radius certify
    that the committee is no larger than any committee achieving that radius.
    """

    pairs: tuple

    def witnesses(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.pairs)

    def min_separation(self, e: Election) -> float:
        voters = self.witnesses()
        if len(voters) < 2:
            return float("inf")
        return min(
            e.voter_distance(a, b) for a, b in combinations(voters, 2)
        )


def _farthest_voter(e: Election, members) -> int:
    """Voter maximizing distance to the committee; empty committee means all
    voters are infinitely far and the lowest index wins."""
    if not members:
        return 0
    best_v, best_d = 0, -1.0
    for v in range(e.n):
        row = e._dist[v]
        d = min(row[c] for c in members)
        if d > best_d:
            best_v, best_d = v, d
    return best_v


def _nearest_candidate(e: Election, voter: int, allowed) -> Optional[int]:
    best_c, best_d = None, None
    row = e._dist[voter]
    for c in allowed:
        d = row[c]
        if best_d is None or d < best_d:
            best_c, best_d = c, d
    return best_c


def orp_approx3(e: Election, committee, failing) -> SolveReport:
    """Greedy replacement: farthest voter first, nearest candidate added.

    Runs |T intersect J| rounds starting from the surviving members. The
    repaired committee's score is at most three times the optimal replacement
    score. If the candidate pool runs dry, as many replacements as exist are
    added.
    """
    t0 = time.perf_counter()
    members = as_members(committee)
    failed = set(as_failed(failing))
    current = sorted(c for c in members if c not in failed)
    rounds = len(members) - len(current)
    added: list[int] = []
    for _ in range(rounds):
        vhat = _farthest_voter(e, current)
        pool = [c for c in range(e.m) if c not in failed and c not in current]
        chat = _nearest_candidate(e, vhat, pool)
        if chat is None:
            break
        current.append(chat)
        current.sort()
        added.append(chat)
    return SolveReport(
        committee=Committee(tuple(current), max(1, len(members))),
        score=members_score(e, current),
        replacement=tuple(sorted(added)),
        wall_time=time.perf_counter() - t0,
    )


def fts_approx3(e: Election, committee, f: int) -> Score:
    """Sandwich estimate of the fault-tolerance score.

    Returns d' + 2 * score(T), where d' is the largest over voters of the
    distance to the (f+1)-th nearest candidate. The true fault-tolerance
    score sigma_f(T) satisfies sigma_f(T) <= returned value <= 3 sigma_f(T).
    """
    if f < 0:
        raise ValueError("f must be nonnegative")
    if f >= e.m:
        return INFEASIBLE
    members = as_members(committee)
    d_prime = max(kth_nearest_distance(e, v, f + 1) for v in range(e.n))
    return d_prime + 2.0 * committee_score(e, members)


def _first_violating_failing_set(
    e: Election, members: tuple[int, ...], f: int, threshold: float
) -> Optional[tuple[int, ...]]:
    """First failing set (sizes ascending, lexicographic) whose optimally
    repaired score exceeds the threshold; None when the committee passes."""
    for size in range(0, min(f, e.m) + 1):
        for j in combinations(range(e.m), size):
            score = replacement_score(e, members, j)
            if score > threshold:
                return j
    return None


def oftc_decision_approx3(
    e: Election, k: int, f: int, sigma: float
) -> tuple[Committee, WitnessRecord]:
    """Approximate decision: build a committee with sigma_f at most 3*sigma.

    While some failing set J of size at most f cannot be repaired within
    3*sigma, drop J from the committee and, for every voter farther than
    3*sigma, add the nearest surviving candidate within sigma of it, recording
    the voter as that candidate's witness. Requires sigma at least the
    fault-tolerance score of the full candidate pool; otherwise some voter has
    no candidate within sigma and :class:`RadiusTooSmallError` is raised. The
    committee-size bound k plays no role in construction -- the caller checks
    the returned size.

    A repeated committee state proves the loop can never terminate (every
    choice is deterministic), which can only happen below the feasibility
    radius; it is reported the same way as a too-small sigma.
    """
    if f < 0:
        raise ValueError("f must be nonnegative")
    current: set[int] = set()
    wit: dict[int, int] = {}
    seen_states: set[frozenset] = set()
    while True:
        state = frozenset(current)
        if state in seen_states:
            raise RadiusTooSmallError("decision loop revisited a committee state")
        seen_states.add(state)
        violating = _first_violating_failing_set(e, tuple(sorted(current)), f, 3.0 * sigma)
        if violating is None:
            break
        jset = set(violating)
        current -= jset
        while True:
            uncovered = None
            for v in range(e.n):
                row = e._dist[v]
                d = min((row[c] for c in current), default=float("inf"))
                if d > 3.0 * sigma:
                    uncovered = v
                    break
            if uncovered is None:
                break
            pool = [c for c in range(e.m) if c not in jset]
            chat = _nearest_candidate(e, uncovered, pool)
            if chat is None or e._dist[uncovered][chat] > sigma:
                raise RadiusTooSmallError(
                    "no candidate within sigma of a voter: sigma below the "
                    "full-pool fault-tolerance score"
                )
            current.add(chat)
            wit[chat] = uncovered
    members = tuple(sorted(current))
    record = WitnessRecord(pairs=tuple((c, wit[c]) for c in members))
    return Committee(members, max(1, len(members), k)), record


def _full_pool_fault_score(e: Election, f: int) -> Score:
    """Fault-tolerance score of the committee holding every candidate.

    Replacements add nothing when everything is already in the committee, so
    this is the worst surviving-pool score over failing sets of size <= f.
    """
    scores = _subset_scores(e)
    full = _mask(range(e.m))
    worst = -1.0
    for size in range(0, min(f, e.m) + 1):
        for j in combinations(range(e.m), size):
            score = scores[full & ~_mask(j)]
            if score > worst:
                worst = score
    return INFEASIBLE if worst == float("inf") else worst


def oftc_approx3_bounded_f(
    e: Election, k: int, f: int, collect_runs: Optional[list] = None
) -> SolveReport:
    """3-approximate fault-tolerant committee for small fault budgets.

    Runs the approximate decision at every realized distance at least the
    full-pool fault-tolerance score, keeps the committees that fit in k, and
    returns the one with the best exact fault-tolerance score. When
    ``collect_runs`` is a list, every completed decision run appends
    ``(sigma, committee, witness_record)`` for outside inspection.
    """
    t0 = time.perf_counter()
    if k < 1:
        raise ValueError("k must be positive")
    floor = _full_pool_fault_score(e, f)
    if floor is INFEASIBLE:
        return SolveReport(committee=None, score=INFEASIBLE, wall_time=time.perf_counter() - t0)
    best: Score = INFEASIBLE
    best_committee: Optional[Committee] = None
    for sigma in candidate_distance_set(e):
        if sigma < floor:
            continue
        try:
            cand, record = oftc_decision_approx3(e, k, f, sigma)
        except RadiusTooSmallError:
            continue
        if collect_runs is not None:
            collect_runs.append((sigma, cand, record))
        if len(cand.members) > k:
            continue
        achieved, _, _ = _sigma_f_search(e, cand.members, f)
        value: Score = INFEASIBLE if achieved == float("inf") else achieved
        if best_committee is None or value < best:
            best, best_committee = value, cand
    if best_committee is None:
        return SolveReport(committee=None, score=INFEASIBLE, wall_time=time.perf_counter() - t0)
    return SolveReport(
        committee=Committee(best_committee.members, k),
        score=best,
        wall_time=time.perf_counter() - t0,
    )


def oftc_approx5(e: Election, k: int, f: int) -> SolveReport:
    """Farthest-next greedy committee; 5-approximate for any fault budget.

    Each round picks the not-yet-picked voter farthest from the committee
    (all voters tie at infinity for the empty committee, so the lowest index
    opens) and adds that voter's nearest candidate. Stops at k members, when
    the nearest candidate is already in, or when voters run out. The reported
    score is the no-fault min-max score of the returned committee; the
    fault-tolerance guarantee (at most five times the optimum) is a bound
    checked against the oracle in the tests, not a computed value.
    """
    t0 = time.perf_counter()
    if k < 1:
        raise ValueError("k must be positive")
    members: list[int] = []
    picked: set[int] = set()
    while len(members) < k and len(picked) < e.n:
        best_v, best_d = None, None
        for v in range(e.n):
            if v in picked:
                continue
            row = e._dist[v]
            d = min((row[c] for c in members), default=float("inf"))
            if best_d is None or d > best_d:
                best_v, best_d = v, d
        picked.add(best_v)
        chat = _nearest_candidate(e, best_v, range(e.m))
        if chat in members:
            break
        members.append(chat)
    members_sorted = tuple(sorted(members))
    return SolveReport(
        committee=Committee(members_sorted, k),
        score=members_score(e, members_sorted),
        wall_time=time.perf_counter() - t0,
    )

"""Core election model: points, metrics, committees, and min-max scoring.

An election pairs a set of voter points with a set of candidate points under a
distance function. A committee is scored by the min-max rule: every voter is
represented by its nearest committee member, and the committee is judged by its
worst-represented voter (the k-center / k-supplier objective). The
fault-tolerant variants elsewhere in this package ask how that score degrades
when candidates fail and have to be replaced.

Conventions that the rest of the package relies on:

* Voters and candidates are identified by index, never by coordinates, so
  coincident points remain distinct entities.
* All pairwise voter-candidate distances are computed once, at construction,
  and every algorithm reads the same cached matrix. Scores returned anywhere
  are therefore *selections* from that matrix (max of min of entries), which
  makes cross-solver score comparisons exact, with no arithmetic drift.
* Infeasible outcomes are reported with the :data:`INFEASIBLE` sentinel, which
  compares greater than every real number (comparisons stay total, unlike NaN).
* All types are immutable after construction; operations are pure functions
  and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

NORM_METRICS = ("l2", "l1", "linf")

#: Radii closer than this are treated as the same radius when building the
#: global distance set; binary searches over radii stay deterministic.
DISTANCE_DEDUP_TOL = 1e-9


class EmptyCommitteeError(ValueError):
    """Scoring was requested for an empty committee."""


class NotEnoughCandidatesError(ValueError):
    """A k-th nearest candidate was requested with k exceeding the pool size."""


class DimensionError(ValueError):
    """A solver received an election of an unsupported dimension."""


class EnumerationGuardError(RuntimeError):
    """A brute-force enumeration would exceed the safety budget."""


class _Infeasible:
    """Sentinel score for infeasible outcomes.

    Greater than every real number, equal only to itself. ``min``/``max`` and
    sorting work on mixed lists of floats and this sentinel.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFEASIBLE"

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True


INFEASIBLE = _Infeasible()

Score = Union[float, _Infeasible]


def is_feasible(score: Score) -> bool:
    return score is not INFEASIBLE


def _as_point(p) -> tuple[float, ...]:
    if isinstance(p, (int, float)):
        p = (p,)
    return tuple(float(x) for x in p)


def _norm_distance(p: Sequence[float], q: Sequence[float], metric: str) -> float:
    if metric == "l2":
        return math.dist(p, q)
    if metric == "l1":
        return sum(abs(a - b) for a, b in zip(p, q))
    if metric == "linf":
        return max(abs(a - b) for a, b in zip(p, q))
    raise ValueError(f"unknown metric {metric!r}")


def point_distance(p, q, metric: str = "l2") -> float:
    """Distance between two raw coordinate points under a norm metric."""
    return _norm_distance(_as_point(p), _as_point(q), metric)


@dataclass(frozen=True)
class Election:
    """Voter points, candidate points, and the distance between them.

    ``metric`` is one of the norm names in :data:`NORM_METRICS` or an explicit
    n-by-m matrix of nonnegative distances (as nested sequences). With an
    explicit matrix every operation agrees with the matrix bit-exactly; the
    coordinates are then only carried along for bookkeeping.
    """

    voters: tuple
    candidates: tuple
    dim: Optional[int] = None
    metric: Union[str, tuple] = "l2"
    _dist: tuple = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        voters = tuple(_as_point(p) for p in self.voters)
        candidates = tuple(_as_point(p) for p in self.candidates)
        if not voters or not candidates:
            raise ValueError("an election needs at least one voter and one candidate")
        dim = self.dim if self.dim is not None else len(voters[0])
        if dim < 1:
            raise ValueError("dim must be a positive integer")
        for p in voters + candidates:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have {dim} coordinates")
            if not all(math.isfinite(x) for x in p):
                raise ValueError(f"point {p} has a non-finite coordinate")
        metric = self.metric
        if isinstance(metric, str):
            if metric not in NORM_METRICS:
                raise ValueError(f"metric must be one of {NORM_METRICS} or an explicit matrix")
            dist = tuple(
                tuple(_norm_distance(v, c, metric) for c in candidates) for v in voters
            )
        else:
            metric = tuple(tuple(float(x) for x in row) for row in metric)
            if len(metric) != len(voters) or any(len(row) != len(candidates) for row in metric):
                raise ValueError("explicit distance matrix must have shape n x m")
            for row in metric:
                for x in row:
                    if not (math.isfinite(x) and x >= 0.0):
                        raise ValueError("explicit distances must be finite and nonnegative")
            dist = metric
        object.__setattr__(self, "voters", voters)
        object.__setattr__(self, "candidates", candidates)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "_dist", dist)

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.candidates)

    def distance(self, voter: int, candidate: int) -> float:
        """Voter-to-candidate distance (a cached matrix entry)."""
        return self._dist[voter][candidate]

    def distance_row(self, voter: int) -> tuple[float, ...]:
        return self._dist[voter]

    def voter_distance(self, v1: int, v2: int) -> float:
        """Voter-to-voter distance; undefined for explicit-matrix elections."""
        if not isinstance(self.metric, str):
            raise ValueError("voter-to-voter distances need a coordinate metric")
        return _norm_distance(self.voters[v1], self.voters[v2], self.metric)

    def restrict_voters(self, voter_indices: Iterable[int]) -> "Election":
        """A new election over a voter subset (candidates unchanged)."""
        keep = sorted(set(int(i) for i in voter_indices))
        if not keep:
            raise ValueError("cannot restrict to an empty voter set")
        _check_range(keep, self.n, "voter")
        voters = tuple(self.voters[i] for i in keep)
        if isinstance(self.metric, str):
            return Election(voters, self.candidates, self.dim, self.metric)
        matrix = tuple(self.metric[i] for i in keep)
        return Election(voters, self.candidates, self.dim, matrix)


def _check_range(indices: Iterable[int], size: int, kind: str) -> None:
    for i in indices:
        if not 0 <= i < size:
            raise ValueError(f"{kind} index {i} out of range [0, {size})")


def _canonical_indices(indices) -> tuple[int, ...]:
    return tuple(sorted(set(int(i) for i in indices)))


@dataclass(frozen=True)
class Committee:
    """A duplicate-free, sorted set of candidate indices with a size bound."""

    members: tuple
    k: Optional[int] = None

    def __post_init__(self):
        members = _canonical_indices(self.members)
        k = self.k if self.k is not None else max(1, len(members))
        if k < 1:
            raise ValueError("committee size bound k must be positive")
        if len(members) > k:
            raise ValueError(f"committee has {len(members)} members, bound is {k}")
        if members and members[0] < 0:
            raise ValueError("candidate indices must be nonnegative")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "k", k)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class FailingSet:
    """A duplicate-free, sorted set of failed candidate indices with a budget."""

    failed: tuple
    f: Optional[int] = None

    def __post_init__(self):
        failed = _canonical_indices(self.failed)
        f = self.f if self.f is not None else len(failed)
        if f < 0:
            raise ValueError("fault budget f must be nonnegative")
        if len(failed) > f:
            raise ValueError(f"failing set has {len(failed)} members, budget is {f}")
        if failed and failed[0] < 0:
            raise ValueError("candidate indices must be nonnegative")
        object.__setattr__(self, "failed", failed)
        object.__setattr__(self, "f", f)

    def __len__(self) -> int:
        return len(self.failed)


def as_members(committee) -> tuple[int, ...]:
    """Canonical member tuple from a Committee or a bare index iterable."""
    if isinstance(committee, Committee):
        return committee.members
    return _canonical_indices(committee)


def as_failed(failing) -> tuple[int, ...]:
    if isinstance(failing, FailingSet):
        return failing.failed
    return _canonical_indices(failing)


@dataclass(frozen=True)
class SolveReport:
    """What a solver hands back: committee, score, and certificates.

    ``score`` is either the :data:`INFEASIBLE` sentinel or a realized
    voter-candidate distance of the instance. ``replacement`` carries the
    repair set for replacement problems, ``worst_failing_set`` the fault
    pattern realizing a worst case, and ``restricted_voters`` the voter subset
    a bicriterion guarantee applies to. ``wall_time`` (seconds) is excluded
    from equality so reports compare on content.
    """

    committee: Optional[Committee]
    score: Score
    replacement: Optional[tuple] = None
    worst_failing_set: Optional[FailingSet] = None
    restricted_voters: Optional[tuple] = None
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "committee": list(self.committee.members) if self.committee is not None else None,
            "score": None if self.score is INFEASIBLE else self.score,
            "infeasible": self.score is INFEASIBLE,
            "replacement": list(self.replacement) if self.replacement is not None else None,
            "worst_failing_set": list(self.worst_failing_set.failed)
            if self.worst_failing_set is not None
            else None,
            "restricted_voters": list(self.restricted_voters)
            if self.restricted_voters is not None
            else None,
            "millis": self.wall_time * 1e3,
        }


def voter_score(e: Election, voter: int, committee) -> float:
    """Distance from one voter to its nearest committee member."""
    members = as_members(committee)
    if not members:
        raise EmptyCommitteeError("empty committee")
    _check_range(members, e.m, "candidate")
    row = e._dist[voter]
    return min(row[c] for c in members)


def committee_score(e: Election, committee) -> float:
    """Min-max score: the worst voter's distance to its nearest member."""
    members = as_members(committee)
    if not members:
        raise EmptyCommitteeError("empty committee")
    _check_range(members, e.m, "candidate")
    return max(min(row[c] for c in members) for row in e._dist)


def members_score(e: Election, members: Sequence[int]) -> Score:
    """Like :func:`committee_score` but tolerant of an empty member tuple."""
    if not members:
        return INFEASIBLE
    return max(min(row[c] for c in members) for row in e._dist)


def kth_nearest_distance(e: Election, voter: int, k: int) -> float:
    """The k-th smallest voter-candidate distance (sorted multiset indexing)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > e.m:
        raise NotEnoughCandidatesError("not enough candidates")
    return sorted(e._dist[voter])[k - 1]


def candidate_distance_set(e: Election) -> tuple[float, ...]:
    """All voter-candidate distances, ascending, deduplicated within tolerance.

    Every exact radius search in this package binary-searches this list, and
    every feasible score any solver returns is an element of it.
    """
    values = sorted(d for row in e._dist for d in row)
    out = [values[0]]
    for d in values[1:]:
        if d - out[-1] > DISTANCE_DEDUP_TOL:
            out.append(d)
    return tuple(out)

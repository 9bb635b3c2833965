"""Bicriterion grid scheme for fault-tolerant committees in the plane.

The solver answers a scaled decision question -- is there a committee of size
k whose fault-tolerance score is about 1 for most voters? -- and sweeps it
over every realized radius. For one radius the plane is cut into h-by-h boxes
by a shifted integer grid; the shift among the h^2 translates that strands the
fewest voters near box walls is kept, voters deep inside boxes are partitioned
by box, and candidates are partitioned by box outright. Each box is solved
independently: its candidates collapse into 1/h-size cells, committees are
enumerated as per-cell counts, and each one is scored by :func:`approx_score`,
which treats a cell as failing wholly or not at all and is accurate to 2/h.
Per-box committees union into the answer; boundary voters are the accuracy
loss the bicriterion contract allows.

Everything here assumes two-dimensional coordinates under a norm metric
(cell diameters and cross-box separations are geometric facts; an explicit
distance matrix carries no geometry).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .model import (
    Committee,
    DimensionError,
    Election,
    EnumerationGuardError,
    INFEASIBLE,
    Score,
    SolveReport,
    _norm_distance,
    candidate_distance_set,
)

#: Refuse per-box enumeration beyond this many nonempty cells / cell maps.
MAX_NONEMPTY_CELLS = 12
MAX_CELL_MAPS = 10**7


def grid_parameter(eps: float) -> int:
    """Smallest box side h (floored at 5) honoring the accuracy target.

    Three constraints: the advertised boundary-loss fraction (4h-4)/h^2, the
    per-box score slack 6/h, and the provable worst-case boundary-loss
    fraction (8h-16)/h^2 for the width-2 margin actually used -- all at most
    eps. The last one is what guarantees the discarded-voter bound for every
    instance size; see the margin counting note in :func:`choose_shift`.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    h = 5
    while not (
        (4 * h - 4) / h**2 <= eps
        and 6.0 / h <= eps
        and (8 * h - 16) / h**2 <= eps
    ):
        h += 1
    return h


@dataclass(frozen=True)
class GridBox:
    """One nonempty grid box: its corner, inner voters, and all candidates."""

    corner: tuple
    voters: tuple
    candidates: tuple


@dataclass(frozen=True)
class GridDecomposition:
    """A chosen grid shift and the per-box partition it induces.

    ``boxes`` holds every nonempty box of the chosen shift class with its
    non-boundary voters (those at least 2 from every box wall) and its
    candidates (boxes partition the candidate set). ``conflicting_voters``
    are the boundary voters the decomposition gives up on.
    """

    h: int
    shift: tuple
    boxes: tuple
    conflicting_voters: tuple

    @property
    def nonempty_boxes(self) -> tuple:
        return tuple(box.corner for box in self.boxes)

    def covered_voters(self) -> tuple[int, ...]:
        out: list[int] = []
        for box in self.boxes:
            out.extend(box.voters)
        return tuple(sorted(out))


@dataclass(frozen=True)
class CellMap:
    """How many committee members to take from each nonempty cell of a box."""

    cells: tuple
    chi: tuple

    def size(self) -> int:
        return sum(self.chi)


def _box_corner(p: float, shift: int, h: int) -> int:
    corner = shift + h * math.floor((p - shift) / h)
    # floor on the scaled quotient can land one box off at exact multiples
    while p < corner:
        corner -= h
    while p >= corner + h:
        corner += h
    return corner


def choose_shift(e: Election, h: int) -> GridDecomposition:
    """Pick the grid translate stranding the fewest voters near box walls.

    A voter conflicts with a shift when it sits within 2 of a wall of its box
    (box membership is half-open, so every voter has exactly one box per
    shift). A voter is safely inside for at least (h-4) of the h offsets per
    axis, so the best of the h^2 shifts conflicts with at most
    (8h-16)/h^2 of the voters; ties go to the lexicographically least shift.
    """
    if e.dim != 2:
        raise DimensionError("requires 2D election")
    if h < 5:
        raise ValueError("grid parameter h must be at least 5")
    best_shift = None
    best_conflicts: Optional[list] = None
    for x in range(h):
        for y in range(h):
            conflicts = []
            for vi, (px, py) in enumerate(e.voters):
                i = _box_corner(px, x, h)
                j = _box_corner(py, y, h)
                if not (2 <= px - i <= h - 2 and 2 <= py - j <= h - 2):
                    conflicts.append(vi)
            if best_conflicts is None or len(conflicts) < len(best_conflicts):
                best_shift, best_conflicts = (x, y), conflicts
    x, y = best_shift
    conflicting = set(best_conflicts)
    boxes: dict = {}
    for vi, (px, py) in enumerate(e.voters):
        corner = (_box_corner(px, x, h), _box_corner(py, y, h))
        entry = boxes.setdefault(corner, ([], []))
        if vi not in conflicting:
            entry[0].append(vi)
    for ci, (px, py) in enumerate(e.candidates):
        corner = (_box_corner(px, x, h), _box_corner(py, y, h))
        entry = boxes.setdefault(corner, ([], []))
        entry[1].append(ci)
    box_tuple = tuple(
        GridBox(corner=corner, voters=tuple(sorted(vs)), candidates=tuple(sorted(cs)))
        for corner, (vs, cs) in sorted(boxes.items())
    )
    return GridDecomposition(
        h=h, shift=(x, y), boxes=box_tuple, conflicting_voters=tuple(sorted(conflicting))
    )


def _cells_of(candidate_points, h: int) -> dict:
    """Group box-local candidate indices by their 1/h-size cell."""
    cells: dict = {}
    top = h * h - 1
    for idx, (px, py) in enumerate(candidate_points):
        a = min(max(int(math.floor(px * h)), 0), top)
        b = min(max(int(math.floor(py * h)), 0), top)
        cells.setdefault((a, b), []).append(idx)
    return {key: tuple(v) for key, v in cells.items()}


def _points_score(voter_points, candidate_points, members, metric: str) -> float:
    if not voter_points:
        return 0.0
    if not members:
        return math.inf
    worst = 0.0
    for v in voter_points:
        d = min(_norm_distance(v, candidate_points[c], metric) for c in members)
        if d > worst:
            worst = d
    return worst


def approx_score(
    members,
    voters,
    candidates,
    cells,
    f: int,
    *,
    metric: str = "l2",
    unclipped: bool = False,
) -> Score:
    """Cell-granular fault-tolerance score, accurate to 2/h.

    Adversary moves are whole-cell failures whose total candidate count stays
    within f (partial failures are neutral: the freed repair slot re-picks a
    surviving cellmate at negligible cost). Repairs pick at most one
    lowest-index representative per surviving cell, at most as many as the
    committee members lost. The value is the worst failure's best repair
    score. ``unclipped=True`` drops the candidate-count cap on failures (an
    inspection mode; it can only overstate the score and is never used by the
    solvers).
    """
    member_tuple = tuple(members)
    cell_items = sorted(cells.items())
    n_cells = len(cell_items)
    worst: float = -1.0
    for mask in range(1 << n_cells):
        failed_cands: set[int] = set()
        weight = 0
        rest = mask
        while rest:
            low = rest & -rest
            _, cands = cell_items[low.bit_length() - 1]
            weight += len(cands)
            failed_cands.update(cands)
            rest ^= low
        if not unclipped and weight > f:
            continue
        base = [c for c in member_tuple if c not in failed_cands]
        budget = len(member_tuple) - len(base)
        reps = [
            min(cands)
            for pos, (_, cands) in enumerate(cell_items)
            if not (mask >> pos) & 1
        ]
        best = _points_score(voters, candidates, base, metric)
        for size in range(1, min(budget, len(reps)) + 1):
            for extra in combinations(reps, size):
                score = _points_score(voters, candidates, base + list(extra), metric)
                if score < best:
                    best = score
        if best > worst:
            worst = best
    return INFEASIBLE if worst == math.inf else worst


def solve_box(voters, candidates, f: int, h: int, *, metric: str = "l2") -> Optional[tuple]:
    """Smallest per-cell committee for one box, or None when none qualifies.

    Coordinates are box-local (inside [0, h) x [0, h)). Candidates collapse
    into 1/h-size cells; cell maps assign each nonempty cell a member count up
    to min(cell occupancy, h^4), members materialize as the lowest-index
    candidates of each cell, and the smallest committee whose cell-granular
    score stays within 1 + 4/h wins (ties to the lexicographically least
    member tuple). Its true fault-tolerance score is then within 1 + 6/h.
    """
    if not voters:
        return ()
    cells = _cells_of(candidates, h)
    if len(cells) > MAX_NONEMPTY_CELLS:
        raise EnumerationGuardError("box has too many nonempty cells")
    cell_items = sorted(cells.items())
    caps = [min(len(cands), h**4) for _, cands in cell_items]
    n_maps = 1
    for cap in caps:
        n_maps *= cap + 1
        if n_maps > MAX_CELL_MAPS:
            raise EnumerationGuardError("box cell-map enumeration too large")
    threshold = 1.0 + 4.0 / h

    full = tuple(range(len(candidates)))
    if not cell_items or approx_score(full, voters, candidates, cells, f, metric=metric) > threshold:
        # no committee can do better than everything at once
        return None

    best: Optional[tuple] = None
    for chi in product(*(range(cap + 1) for cap in caps)):
        cell_map = CellMap(cells=tuple(key for key, _ in cell_items), chi=chi)
        size = cell_map.size()
        if best is not None and size > len(best):
            continue
        members: list[int] = []
        for count, (_, cands) in zip(chi, cell_items):
            members.extend(cands[:count])
        members_tuple = tuple(sorted(members))
        if best is not None and (size, members_tuple) >= (len(best), best):
            continue
        score = approx_score(members_tuple, voters, candidates, cells, f, metric=metric)
        if score <= threshold:
            best = members_tuple
    return best


def _zero_radius_committee(e: Election, k: int, f: int) -> Optional[tuple]:
    """Exact handler for radius 0, where grid scaling is undefined.

    Feasible only when every voter position carries more than f coincident
    candidates; one (lowest-index) candidate per distinct voter position then
    survives any f faults with in-place repairs.
    """
    chosen: dict = {}
    for v in range(e.n):
        row = e._dist[v]
        coincident = [c for c in range(e.m) if row[c] == 0.0]
        if len(coincident) <= f:
            return None
        chosen.setdefault(e.voters[v], coincident[0])
    members = tuple(sorted(set(chosen.values())))
    return members if len(members) <= k else None


def oftc_eptas(
    e: Election, k: int, f: int, eps: float, diagnostics: Optional[dict] = None
) -> SolveReport:
    """Bicriterion committee: near-optimal score on most voters.

    Sweeps radii in ascending order; at each, rescales the instance so the
    target score is 1, decomposes by the best grid shift, solves every box,
    and accepts as soon as the union committee fits in k. The returned report
    carries the committee, the accepted radius as its score, and the voter
    subset the guarantee covers: at least a (1 - eps) fraction of voters, with
    fault-tolerance score on them at most (1 + eps) times the best achievable
    over the whole voter set.

    When ``diagnostics`` is a dict it receives the grid parameter, the
    per-radius conflict counts, and the accepted decomposition with per-box
    committees and their cell-granular scores.
    """
    t0 = time.perf_counter()
    if e.dim != 2:
        raise DimensionError("requires 2D election")
    if not isinstance(e.metric, str):
        raise ValueError("the grid scheme needs a coordinate metric")
    if k < 1:
        raise ValueError("k must be positive")
    if f < 0:
        raise ValueError("f must be nonnegative")
    h = grid_parameter(eps)
    if diagnostics is not None:
        diagnostics["h"] = h
        diagnostics["conflict_history"] = []
    for radius in candidate_distance_set(e):
        if radius <= 0.0:
            members = _zero_radius_committee(e, k, f)
            if members is not None:
                return SolveReport(
                    committee=Committee(members, k),
                    score=0.0,
                    restricted_voters=tuple(range(e.n)),
                    wall_time=time.perf_counter() - t0,
                )
            continue
        scaled = Election(
            tuple((x / radius, y / radius) for x, y in e.voters),
            tuple((x / radius, y / radius) for x, y in e.candidates),
            2,
            e.metric,
        )
        decomp = choose_shift(scaled, h)
        if diagnostics is not None:
            diagnostics["conflict_history"].append((radius, len(decomp.conflicting_voters)))
        committee: list[int] = []
        covered: list[int] = []
        box_results = []
        feasible = True
        for box in decomp.boxes:
            ox, oy = box.corner
            local_voters = [
                (scaled.voters[v][0] - ox, scaled.voters[v][1] - oy) for v in box.voters
            ]
            local_cands = [
                (scaled.candidates[c][0] - ox, scaled.candidates[c][1] - oy)
                for c in box.candidates
            ]
            selected = solve_box(local_voters, local_cands, f, h, metric=e.metric)
            if selected is None:
                feasible = False
                break
            committee.extend(box.candidates[i] for i in selected)
            covered.extend(box.voters)
            if diagnostics is not None:
                tilde = approx_score(
                    selected, local_voters, local_cands, _cells_of(local_cands, h), f,
                    metric=e.metric,
                )
                box_results.append((box, selected, tilde))
        if feasible and len(committee) <= k:
            if diagnostics is not None:
                diagnostics["radius"] = radius
                diagnostics["decomposition"] = decomp
                diagnostics["box_results"] = box_results
                diagnostics["scaled_election"] = scaled
            return SolveReport(
                committee=Committee(tuple(sorted(committee)), k),
                score=radius,
                restricted_voters=tuple(sorted(covered)),
                wall_time=time.perf_counter() - t0,
            )
    return SolveReport(committee=None, score=INFEASIBLE, wall_time=time.perf_counter() - t0)

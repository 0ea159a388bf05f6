"""Trajectory-selection planners.

Every planner returns one trajectory per robot (a basis of the partition
matroid).  Value ties are broken by canonical ground order (robot id, then
menu position), smallest first, so planning is reproducible bit for bit.

``plan_resilient`` hedges against worst-case removal of up to ``alpha``
selected trajectories in two phases: a bait phase that reserves the
``alpha`` individually most valuable, mutually independent trajectories
(the ones an optimal attacker goes for), then a greedy phase that fills the
remaining robots by marginal gain measured against the greedy picks alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adversary import attack_optimal
from .errors import EnumerationCapExceeded
from .matroid import DEFAULT_ENUMERATION_CAP, PartitionMatroid
from .objectives import CountingOracle, as_evaluator


@dataclass(frozen=True)
class AlgorithmTrace:
    """Which elements each phase admitted and scanned, in order."""

    bait: tuple
    greedy_fill: tuple
    scanned_bait: tuple
    scanned_fill: tuple


@dataclass(frozen=True)
class PlanResult:
    """Outcome of one planning call.

    ``oracle_calls`` counts objective evaluations made by this call only.
    ``maxmin_value`` is filled by the exhaustive planner (the worst-case
    surviving value of the returned basis) and None otherwise.
    """

    selected: frozenset
    trace: AlgorithmTrace | None
    oracle_calls: int
    maxmin_value: float | None = None


def _check_alpha(matroid: PartitionMatroid, alpha: int) -> None:
    if not isinstance(alpha, (int, np.integer)):
        raise ValueError(f"alpha must be an integer, got {alpha!r}")
    if alpha < 0 or alpha > matroid.num_robots:
        raise ValueError(
            f"alpha must be in [0, {matroid.num_robots}], got {alpha}"
        )


class _CallCounter:
    """Counts evaluations routed through one planning call."""

    def __init__(self, objective):
        self._evaluate = as_evaluator(objective)
        self.calls = 0

    def __call__(self, members: frozenset) -> float:
        self.calls += 1
        return self._evaluate(members)


def _greedy_fill(matroid, f, bait: frozenset):
    """Greedy phase: scan T \\ bait by marginal gain against the fill alone.

    Returns (fill, scanned).  Marginals are measured on the fill set only,
    not on bait + fill; an element is admitted when bait + fill + element
    stays independent.  Candidate values are cached while the fill is
    unchanged, which leaves the selection sequence identical to recomputing
    every round.
    """
    remaining = [tid for tid in matroid.ground_set if tid not in bait]
    used_robots = {matroid.robot_of(tid) for tid in bait}
    fill: list[str] = []
    scanned: list[str] = []
    current = frozenset()
    pending: dict[str, float | None] = {tid: None for tid in remaining}
    while pending:
        for tid, value in pending.items():
            if value is None:
                pending[tid] = f(current | {tid})
        best = None
        best_value = -math.inf
        for tid in remaining:
            value = pending.get(tid)
            if value is not None and value > best_value:
                best, best_value = tid, value
        del pending[best]
        scanned.append(best)
        if matroid.robot_of(best) not in used_robots:
            fill.append(best)
            used_robots.add(matroid.robot_of(best))
            current = current | {best}
            for tid in pending:
                pending[tid] = None
    return tuple(fill), tuple(scanned)


def plan_resilient(matroid: PartitionMatroid, objective, alpha: int) -> PlanResult:
    """Two-phase selection that withstands up to ``alpha`` removals.

    Phase 1 scans the whole ground set in descending singleton value
    (singletons are evaluated once and cached) and admits an element while
    the bait set stays independent and no larger than ``alpha``.  Phase 2
    greedily fills the remaining robots; its marginal gains deliberately
    ignore the bait, which is what makes the bait expendable.

    ``alpha`` may be any value in [0, number of robots]; at the upper end
    every selection can be wiped out and the guarantee is vacuous.
    """
    _check_alpha(matroid, alpha)
    f = _CallCounter(objective)

    singleton = {tid: f(frozenset({tid})) for tid in matroid.ground_set}
    bait: list[str] = []
    used_robots: set[str] = set()
    scan_order = sorted(
        matroid.ground_set, key=lambda tid: (-singleton[tid], matroid.ground_index(tid))
    )
    for tid in scan_order:
        robot = matroid.robot_of(tid)
        if len(bait) < alpha and robot not in used_robots:
            bait.append(tid)
            used_robots.add(robot)

    fill, scanned_fill = _greedy_fill(matroid, f, frozenset(bait))
    selected = frozenset(bait) | set(fill)
    if not matroid.is_basis(selected):
        raise AssertionError("planner failed to assemble a basis")
    trace = AlgorithmTrace(
        bait=tuple(bait),
        greedy_fill=fill,
        scanned_bait=tuple(scan_order),
        scanned_fill=scanned_fill,
    )
    return PlanResult(selected=selected, trace=trace, oracle_calls=f.calls)


def plan_greedy(matroid: PartitionMatroid, objective) -> PlanResult:
    """Standard matroid greedy: largest marginal gain until a basis."""
    f = _CallCounter(objective)
    fill, scanned = _greedy_fill(matroid, f, frozenset())
    trace = AlgorithmTrace(
        bait=(),
        greedy_fill=fill,
        scanned_bait=(),
        scanned_fill=scanned,
    )
    return PlanResult(selected=frozenset(fill), trace=trace, oracle_calls=f.calls)


def plan_random(matroid: PartitionMatroid, rng_seed) -> PlanResult:
    """One uniform menu choice per robot; no objective evaluations."""
    rng = np.random.default_rng(rng_seed)
    selected = frozenset(
        matroid.blocks[robot][int(rng.integers(len(matroid.blocks[robot])))]
        for robot in matroid.robots
    )
    return PlanResult(selected=selected, trace=None, oracle_calls=0)


def plan_bruteforce_maxmin(
    matroid: PartitionMatroid,
    objective,
    alpha: int,
    attack=attack_optimal,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> PlanResult:
    """Exhaustive max-min reference: best basis under worst-case removal.

    Enumerates every basis, scores each by its optimally attacked value and
    keeps the lexicographically first maximizer.  The product of basis count
    and attack subsets per basis must stay within ``cap``.
    """
    _check_alpha(matroid, alpha)
    n = matroid.num_robots
    work = matroid.basis_count() * math.comb(n, min(alpha, n))
    if work > cap:
        raise EnumerationCapExceeded(
            f"max-min enumeration needs {work} attacked evaluations, cap is {cap}"
        )
    f = _CallCounter(objective)
    best_set = None
    best_value = -math.inf
    for basis in matroid.enumerate_bases(cap=cap):
        worst = attack(f, basis, alpha)
        if worst.surviving_value > best_value:
            best_set, best_value = basis, worst.surviving_value
    return PlanResult(
        selected=best_set,
        trace=None,
        oracle_calls=f.calls,
        maxmin_value=float(best_value),
    )


PLANNER_NAMES = ("resilient", "greedy", "random", "brute-force")


def get_planner(name: str):
    """Uniform ``(matroid, objective, alpha, rng) -> PlanResult`` adapter."""
    if name == "resilient":
        return lambda matroid, objective, alpha, rng: plan_resilient(matroid, objective, alpha)
    if name == "greedy":
        return lambda matroid, objective, alpha, rng: plan_greedy(matroid, objective)
    if name == "random":
        return lambda matroid, objective, alpha, rng: plan_random(matroid, rng)
    if name == "brute-force":
        return lambda matroid, objective, alpha, rng: plan_bruteforce_maxmin(
            matroid, objective, alpha
        )
    raise ValueError(f"unknown planner {name!r}; expected one of {PLANNER_NAMES}")

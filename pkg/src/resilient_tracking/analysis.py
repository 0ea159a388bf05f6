"""Guarantee analysis: constrained curvature, cardinality factor, bound check.

The suboptimality guarantee for the resilient planner is

    f(S \\ A*) >= max(1 - nu, h(n, alpha)) / 2 * f*

where nu is the constrained curvature of the objective over the bases of
the matroid, n the number of robots, h(n, alpha) = max(1/(1+alpha),
1/(n-alpha)) and f* the exhaustive max-min optimum.  ``nu`` measures how
far the objective is from additive over feasible selections: 0 means
additive (strongest guarantee), 1 means some selected element is fully
redundant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adversary import attack_optimal
from .errors import DegenerateObjective
from .matroid import DEFAULT_ENUMERATION_CAP, PartitionMatroid
from .objectives import as_evaluator
from .planners import plan_bruteforce_maxmin, plan_resilient

BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class CurvatureReport:
    """Constrained curvature value and the witness that attains it.

    ``mode`` is "exact" (minimum over every basis) or "sampled-lower-bound"
    (minimum over sampled bases only; a subset minimum can only be too
    large, so the reported value can only understate the true curvature).
    Elements whose singleton value is zero are excluded from the inner
    minimum and listed in ``skipped_zero_elements``.
    """

    value: float
    witness_set: frozenset
    witness_element: str
    mode: str
    skipped_zero_elements: tuple[str, ...]


def constrained_curvature(
    matroid: PartitionMatroid,
    objective,
    mode: str = "exact",
    sample_budget: int = 1000,
    rng_seed: int = 0,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> CurvatureReport:
    """Curvature nu = 1 - min over bases S, s in S of (f(S)-f(S-s)) / f(s).

    Exact mode enumerates every basis (subject to the enumeration cap);
    sampled mode draws ``sample_budget`` bases uniformly per robot menu and
    reports a lower bound on the true value.  Raises
    :class:`DegenerateObjective` when no nonzero singleton exists.
    """
    if mode not in ("exact", "sampled"):
        raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")
    f = as_evaluator(objective)
    singleton = {tid: f(frozenset({tid})) for tid in matroid.ground_set}
    skipped = tuple(
        tid for tid in matroid.ground_set if singleton[tid] == 0
    )
    if len(skipped) == len(matroid.ground_set):
        raise DegenerateObjective("every singleton value is zero")

    if mode == "exact":
        bases = matroid.enumerate_bases(cap=cap)
        reported_mode = "exact"
    else:
        rng = np.random.default_rng(rng_seed)
        menus = [matroid.blocks[r] for r in matroid.robots]
        bases = (
            frozenset(menu[int(rng.integers(len(menu)))] for menu in menus)
            for _ in range(sample_budget)
        )
        reported_mode = "sampled-lower-bound"

    best_ratio = math.inf
    witness_set = None
    witness_element = None
    for basis in bases:
        full = f(basis)
        for tid in matroid.sorted_members(basis):
            if singleton[tid] == 0:
                continue
            ratio = (full - f(basis - {tid})) / singleton[tid]
            if ratio < best_ratio:
                best_ratio = ratio
                witness_set = basis
                witness_element = tid
    if witness_set is None:
        raise DegenerateObjective("no usable basis member among the sampled bases")
    return CurvatureReport(
        value=1.0 - best_ratio,
        witness_set=witness_set,
        witness_element=witness_element,
        mode=reported_mode,
        skipped_zero_elements=skipped,
    )


def h_bound(n: int, alpha: int) -> float:
    """Cardinality factor h(n, alpha) = max(1/(1+alpha), 1/(n-alpha)).

    Defined for n >= 1 and 0 <= alpha <= n-1 (at alpha = n the second term
    divides by zero and the guarantee is vacuous anyway).
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if alpha < 0 or alpha > n - 1:
        raise ValueError(f"alpha must be in [0, {n - 1}], got {alpha}")
    return max(1.0 / (1 + alpha), 1.0 / (n - alpha))


@dataclass(frozen=True)
class BoundReport:
    """Everything the guarantee check measured, plus the verdict.

    ``degenerate`` flags f* = 0, where the bound holds trivially and the
    curvature and cardinality factor are not computed.
    """

    num_robots: int
    alpha: int
    selected: frozenset
    worst_removed: frozenset
    surviving_value: float
    optimal_value: float
    curvature: float | None
    cardinality_factor: float | None
    guarantee: float
    satisfied: bool
    degenerate: bool


def check_performance_bound(
    matroid: PartitionMatroid,
    objective,
    alpha: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    slack: float = BOUND_SLACK,
) -> BoundReport:
    """Run the resilient planner and verify its guarantee on one instance.

    Plans, attacks the plan optimally, computes the exhaustive max-min
    optimum f*, the exact curvature and the cardinality factor, and checks
    the surviving value against max(1-nu, h)/2 * f* with additive slack.
    With alpha = number of robots (everything removable) or f* = 0 the
    report is flagged degenerate and the check reduces to nonnegativity.
    """
    n = matroid.num_robots
    plan = plan_resilient(matroid, objective, alpha)
    worst = attack_optimal(objective, plan.selected, alpha, cap=cap)
    reference = plan_bruteforce_maxmin(matroid, objective, alpha, cap=cap)
    optimal_value = reference.maxmin_value

    if optimal_value == 0 or alpha == n:
        return BoundReport(
            num_robots=n,
            alpha=alpha,
            selected=plan.selected,
            worst_removed=worst.removed,
            surviving_value=worst.surviving_value,
            optimal_value=optimal_value,
            curvature=None,
            cardinality_factor=None,
            guarantee=0.0,
            satisfied=worst.surviving_value >= -slack,
            degenerate=True,
        )

    curvature = constrained_curvature(matroid, objective, mode="exact", cap=cap)
    factor = h_bound(n, alpha)
    guarantee = 0.5 * max(1.0 - curvature.value, factor) * optimal_value
    return BoundReport(
        num_robots=n,
        alpha=alpha,
        selected=plan.selected,
        worst_removed=worst.removed,
        surviving_value=worst.surviving_value,
        optimal_value=optimal_value,
        curvature=curvature.value,
        cardinality_factor=factor,
        guarantee=guarantee,
        satisfied=worst.surviving_value >= guarantee - slack,
        degenerate=False,
    )

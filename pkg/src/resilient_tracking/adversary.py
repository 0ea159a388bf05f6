"""Attack models: remove up to alpha selected trajectories.

An attack removes trajectories from a selection; the attacked value is the
objective on the survivors.  ``attack_optimal`` is the exact worst case,
``attack_greedy`` a myopic approximation, ``attack_random`` a baseline.
Ties break lexicographically on sorted trajectory ids (for the exhaustive
search: sizes ascending, then combination order), first winner kept.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import EnumerationCapExceeded, UndefinedAttackRate
from .objectives import as_evaluator

DEFAULT_ATTACK_CAP = 10**6


@dataclass(frozen=True)
class AttackResult:
    """Removed trajectories and the objective value of the survivors."""

    removed: frozenset
    surviving_value: float


def attack_optimal(
    objective,
    members,
    alpha: int,
    restrict_cardinality: bool = True,
    cap: int = DEFAULT_ATTACK_CAP,
) -> AttackResult:
    """Exact minimizer of the surviving value over removal sets.

    With ``restrict_cardinality`` (the default) only removals of exactly
    min(alpha, |S|) elements are searched; for monotone objectives removing
    fewer never hurts more, so the optimum is unchanged.  Pass False to
    search every size from 0 to alpha (the literal definition; kept as a
    cross-check for the restriction).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    f = as_evaluator(objective)
    selected = frozenset(members)
    ordered = sorted(selected)
    k = min(alpha, len(ordered))
    sizes = range(k, k + 1) if restrict_cardinality else range(0, k + 1)
    total = sum(math.comb(len(ordered), size) for size in sizes)
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} removal sets exceed the enumeration cap of {cap}"
        )
    best_removed = None
    best_value = math.inf
    for size in sizes:
        for combo in itertools.combinations(ordered, size):
            value = f(selected.difference(combo))
            if value < best_value:
                best_removed, best_value = frozenset(combo), value
    return AttackResult(removed=best_removed, surviving_value=float(best_value))


def attack_greedy(objective, members, alpha: int) -> AttackResult:
    """Myopic attack: repeatedly remove the single most damaging element."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    f = as_evaluator(objective)
    survivors = frozenset(members)
    removed = set()
    value = None
    for _ in range(min(alpha, len(survivors))):
        best = None
        best_value = math.inf
        for tid in sorted(survivors):
            candidate = f(survivors - {tid})
            if candidate < best_value:
                best, best_value = tid, candidate
        survivors = survivors - {best}
        removed.add(best)
        value = best_value
    if value is None:
        value = f(survivors)
    return AttackResult(removed=frozenset(removed), surviving_value=float(value))


def attack_random(objective, members, alpha: int, rng_seed) -> AttackResult:
    """Uniformly random removal of min(alpha, |S|) distinct elements."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    f = as_evaluator(objective)
    selected = frozenset(members)
    rng = np.random.default_rng(rng_seed)
    ordered = sorted(selected)
    k = min(alpha, len(ordered))
    removed = frozenset()
    if k:
        picks = rng.choice(len(ordered), size=k, replace=False)
        removed = frozenset(ordered[int(i)] for i in picks)
    return AttackResult(removed=removed, surviving_value=float(f(selected - removed)))


def attack_none(objective, members) -> AttackResult:
    """No removal; surviving value is the full value."""
    f = as_evaluator(objective)
    return AttackResult(removed=frozenset(), surviving_value=float(f(frozenset(members))))


def attack_rate(objective, members, removed) -> float:
    """Relative loss (f(S) - f(S \\ A)) / f(S) for a realized removal A.

    Raises :class:`UndefinedAttackRate` when f(S) is zero.
    """
    f = as_evaluator(objective)
    selected = frozenset(members)
    removed = frozenset(removed)
    if not removed <= selected:
        raise ValueError("removed set must be a subset of the selection")
    full = f(selected)
    if full == 0:
        raise UndefinedAttackRate("attack rate undefined: unattacked value is zero")
    return (full - f(selected - removed)) / full


ATTACKER_NAMES = ("optimal", "greedy", "random", "none")


def get_attacker(name: str):
    """Uniform ``(objective, members, alpha, rng) -> AttackResult`` adapter."""
    if name == "optimal":
        return lambda objective, members, alpha, rng: attack_optimal(objective, members, alpha)
    if name == "greedy":
        return lambda objective, members, alpha, rng: attack_greedy(objective, members, alpha)
    if name == "random":
        return lambda objective, members, alpha, rng: attack_random(
            objective, members, alpha, rng
        )
    if name == "none":
        return lambda objective, members, alpha, rng: attack_none(objective, members)
    raise ValueError(f"unknown attacker {name!r}; expected one of {ATTACKER_NAMES}")

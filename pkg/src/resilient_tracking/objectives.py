"""Tracking objectives over sets of trajectories, plus property checkers.

Two set functions are provided, both normalized (f(empty) = 0), monotone
nondecreasing and submodular:

- coverage_count: number of targets inside the union of the selected
  trajectories' coverage rectangles (closed rectangles, integer valued).
- expected_detections: sum over targets of the probability that the target
  lies in the union, under independent axis-aligned Gaussian position
  beliefs.  Per-rectangle mass is the product of two 1D normal CDF
  differences; the union mass is computed exactly by inclusion-exclusion
  over rectangle intersections, pruning empty ones.

``check_monotone`` and ``check_submodular`` are seeded sampling drivers that
hunt for violations of the two properties over the whole power set of the
ground set; they return the violations found (empty list = clean run).
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import MissingCoverageRect, ObjectiveSetTooLarge
from .geometry import Point2, Rect

# Absolute slack for the monotonicity / submodularity checks.
PROPERTY_TOLERANCE = 1e-9

DEFAULT_MAX_SET_SIZE = 20

_SQRT2 = math.sqrt(2.0)


def normal_cdf(z):
    """Standard normal CDF via the complementary error function.

    Accepts scalars or numpy arrays; absolute error is far below 1e-12 over
    the |z| <= 8 range the rectangle masses ever see.
    """
    return 0.5 * erfc(-z / _SQRT2)


def as_evaluator(objective):
    """Normalize an objective-like value to a ``set -> float`` callable.

    Accepts either a bare callable or any object with an ``evaluate``
    method (e.g. the objective classes below, or a CountingOracle).
    """
    evaluate = getattr(objective, "evaluate", None)
    if callable(evaluate):
        return evaluate
    if callable(objective):
        return objective
    raise TypeError(f"objective {objective!r} is neither callable nor has .evaluate")


class CountingOracle:
    """Wraps an objective and counts evaluations.

    ``eval_count`` increments by exactly one per ``evaluate`` call.  The
    counter is not synchronized; run one planning call at a time per oracle.
    """

    def __init__(self, objective):
        self._evaluate = as_evaluator(objective)
        self.eval_count = 0

    def evaluate(self, members: Iterable[str]) -> float:
        self.eval_count += 1
        return self._evaluate(frozenset(members))

    __call__ = evaluate


class CoverageCount:
    """Number of targets covered by the union of selected rectangles.

    Deterministic and integer valued; precomputes one coverage bitmask per
    trajectory so evaluation is O(|S|) regardless of the target count.
    """

    def __init__(self, targets: Sequence[Point2], rects: Mapping[str, Rect]):
        self.targets = tuple(targets)
        self._masks: dict[str, int] = {}
        for tid, rect in rects.items():
            mask = 0
            for j, p in enumerate(self.targets):
                if rect.contains(p):
                    mask |= 1 << j
            self._masks[tid] = mask

    def evaluate(self, members: Iterable[str]) -> int:
        union = 0
        for tid in members:
            try:
                union |= self._masks[tid]
            except KeyError:
                raise MissingCoverageRect(
                    f"no coverage rectangle for trajectory {tid!r}"
                ) from None
        return union.bit_count()

    __call__ = evaluate


@dataclass(frozen=True)
class GaussianTargetBelief:
    """Axis-aligned Gaussian position belief for one target."""

    target_id: str
    mean: Point2
    std_x: float
    std_y: float

    def __post_init__(self):
        if not (self.std_x > 0 and math.isfinite(self.std_x)):
            raise ValueError(f"std_x must be positive, got {self.std_x}")
        if not (self.std_y > 0 and math.isfinite(self.std_y)):
            raise ValueError(f"std_y must be positive, got {self.std_y}")


class ExpectedDetections:
    """Expected number of targets inside the union of selected rectangles.

    For each belief the union mass is computed by inclusion-exclusion over
    the selected rectangles (exact; empty intersections prune the subtree).
    Evaluations are memoized per trajectory set, which keeps exhaustive
    planners cheap; the memo never changes observable values because the
    function is deterministic for fixed beliefs and rectangles.

    ``max_set_size`` bounds the inclusion-exclusion term count; larger sets
    raise :class:`ObjectiveSetTooLarge`.
    """

    def __init__(
        self,
        beliefs: Sequence[GaussianTargetBelief],
        rects: Mapping[str, Rect],
        max_set_size: int = DEFAULT_MAX_SET_SIZE,
    ):
        self.beliefs = tuple(beliefs)
        self.max_set_size = max_set_size
        self._rects = dict(rects)
        self._mu_x = np.array([b.mean.x for b in self.beliefs])
        self._mu_y = np.array([b.mean.y for b in self.beliefs])
        self._sd_x = np.array([b.std_x for b in self.beliefs])
        self._sd_y = np.array([b.std_y for b in self.beliefs])
        self._cache: dict[frozenset, float] = {}

    def _mass(self, rect: Rect) -> np.ndarray:
        """P(target_j in rect) for every belief j."""
        px = normal_cdf((rect.x_max - self._mu_x) / self._sd_x) - normal_cdf(
            (rect.x_min - self._mu_x) / self._sd_x
        )
        py = normal_cdf((rect.y_max - self._mu_y) / self._sd_y) - normal_cdf(
            (rect.y_min - self._mu_y) / self._sd_y
        )
        return px * py

    def evaluate(self, members: Iterable[str]) -> float:
        selected = frozenset(members)
        hit = self._cache.get(selected)
        if hit is not None:
            return hit
        if len(selected) > self.max_set_size:
            raise ObjectiveSetTooLarge(
                f"{len(selected)} rectangles exceed the exact union limit of "
                f"{self.max_set_size}"
            )
        rects = []
        for tid in sorted(selected):
            try:
                rects.append(self._rects[tid])
            except KeyError:
                raise MissingCoverageRect(
                    f"no coverage rectangle for trajectory {tid!r}"
                ) from None
        if not self.beliefs or not rects:
            value = 0.0
        else:
            acc = np.zeros(len(self.beliefs))
            self._accumulate(rects, 0, None, 1.0, acc)
            value = float(acc.sum())
        self._cache[selected] = value
        return value

    __call__ = evaluate

    def _accumulate(self, rects, start, region, sign, acc):
        # inclusion-exclusion over nonempty rectangle intersections
        for i in range(start, len(rects)):
            inter = rects[i] if region is None else region.intersection(rects[i])
            if inter is None:
                continue
            acc += sign * self._mass(inter)
            self._accumulate(rects, i + 1, inter, -sign, acc)


def coverage_count(
    targets: Sequence[Point2], rects: Mapping[str, Rect], members: Iterable[str]
) -> int:
    """Functional form of :class:`CoverageCount`."""
    return CoverageCount(targets, rects).evaluate(members)


def expected_detections(
    beliefs: Sequence[GaussianTargetBelief],
    rects: Mapping[str, Rect],
    members: Iterable[str],
    max_set_size: int = DEFAULT_MAX_SET_SIZE,
) -> float:
    """Functional form of :class:`ExpectedDetections`."""
    return ExpectedDetections(beliefs, rects, max_set_size).evaluate(members)


@dataclass(frozen=True)
class PropertyViolation:
    """One counterexample found by a property checker."""

    kind: str  # "monotone" or "submodular"
    smaller: frozenset
    larger: frozenset
    element: str | None
    lhs: float
    rhs: float


def _nested_pair(rng, ground):
    """A strictly nested pair (S, S') with S a proper subset of S'."""
    n = len(ground)
    outer_size = int(rng.integers(1, n + 1))
    outer_idx = rng.choice(n, size=outer_size, replace=False)
    inner_size = int(rng.integers(0, outer_size))
    inner_idx = rng.choice(outer_idx, size=inner_size, replace=False)
    outer = frozenset(ground[i] for i in outer_idx)
    inner = frozenset(ground[i] for i in inner_idx)
    return inner, outer


def check_monotone(objective, matroid, trials: int, rng_seed: int) -> list[PropertyViolation]:
    """Sample strictly nested pairs S < S' and flag any f(S) > f(S').

    A clean run returns []; for a deliberately decreasing function every
    trial is a violation because the pairs are strictly nested.
    """
    f = as_evaluator(objective)
    ground = list(matroid.ground_set)
    rng = np.random.default_rng(rng_seed)
    violations = []
    for _ in range(trials):
        inner, outer = _nested_pair(rng, ground)
        lo, hi = f(inner), f(outer)
        if lo > hi + PROPERTY_TOLERANCE:
            violations.append(
                PropertyViolation("monotone", inner, outer, None, float(lo), float(hi))
            )
    return violations


def check_submodular(objective, matroid, trials: int, rng_seed: int) -> list[PropertyViolation]:
    """Sample S < S' and s outside S'; flag any diminishing-returns failure.

    Checks f(S + s) - f(S) >= f(S' + s) - f(S') within tolerance.
    """
    f = as_evaluator(objective)
    ground = list(matroid.ground_set)
    if len(ground) < 2:
        raise ValueError("submodularity sampling needs at least two elements")
    rng = np.random.default_rng(rng_seed)
    violations = []
    for _ in range(trials):
        extra_pos = int(rng.integers(len(ground)))
        extra = ground[extra_pos]
        rest = ground[:extra_pos] + ground[extra_pos + 1 :]
        inner, outer = _nested_pair(rng, rest)
        gain_small = f(inner | {extra}) - f(inner)
        gain_large = f(outer | {extra}) - f(outer)
        if gain_small < gain_large - PROPERTY_TOLERANCE:
            violations.append(
                PropertyViolation(
                    "submodular", inner, outer, extra, float(gain_small), float(gain_large)
                )
            )
    return violations

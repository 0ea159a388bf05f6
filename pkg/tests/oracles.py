"""Hand-rolled reference oracles used to cross-check the library.

Everything here prefers the most literal possible enumeration over speed and
shares no code paths with the package under test beyond the objective
callables it is handed.  Blocks are plain {robot: [trajectory, ...]} dicts.
"""

import itertools
import math


def all_bases(blocks):
    """Every one-per-robot selection, robots in sorted id order."""
    menus = [blocks[robot] for robot in sorted(blocks)]
    return [frozenset(combo) for combo in itertools.product(*menus)]


def attack_bruteforce(f, members, alpha):
    """Worst removal over every subset of size 0..alpha (literal definition)."""
    members = frozenset(members)
    ordered = sorted(members)
    best_value = math.inf
    best_removed = None
    for size in range(0, min(alpha, len(ordered)) + 1):
        for combo in itertools.combinations(ordered, size):
            value = f(members - frozenset(combo))
            if value < best_value:
                best_value = value
                best_removed = frozenset(combo)
    return best_value, best_removed


def maxmin_bruteforce(blocks, f, alpha):
    """max over bases of min over removals; nested exhaustive loops."""
    best_value = -math.inf
    best_basis = None
    for basis in all_bases(blocks):
        worst, _ = attack_bruteforce(f, basis, alpha)
        if worst > best_value:
            best_value = worst
            best_basis = basis
    return best_value, best_basis


def curvature_bruteforce(blocks, f):
    """1 - min over bases S and members s of (f(S) - f(S - s)) / f({s}).

    Members whose singleton value is zero are skipped.  Returns None when
    nothing is usable (the degenerate case).
    """
    best_ratio = math.inf
    for basis in all_bases(blocks):
        full = f(basis)
        for member in basis:
            single = f(frozenset([member]))
            if single == 0:
                continue
            ratio = (full - f(basis - {member})) / single
            if ratio < best_ratio:
                best_ratio = ratio
    if best_ratio is math.inf:
        return None
    return 1.0 - best_ratio


def point_in_rect(x, y, rect):
    return rect.x_min <= x <= rect.x_max and rect.y_min <= y <= rect.y_max


def mc_union_mass(rng, mean_x, mean_y, std_x, std_y, rects, samples):
    """Monte Carlo estimate of P(point in union) with its standard error."""
    xs = rng.normal(mean_x, std_x, size=samples)
    ys = rng.normal(mean_y, std_y, size=samples)
    inside = 0
    for x, y in zip(xs, ys):
        if any(point_in_rect(x, y, rect) for rect in rects):
            inside += 1
    p_hat = inside / samples
    se = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return p_hat, se


def riccati_posteriors(p0, q, r, steps):
    """Posterior variance sequence of the scalar filter, recursed directly."""
    out = []
    p = p0
    for _ in range(steps):
        prior = p + q
        p = prior * r / (prior + r) if prior + r > 0 else 0.0
        out.append(p)
    return out


def riccati_fixed_point(q, r):
    """Positive root of p**2 + q*p - q*r = 0 (steady-state posterior)."""
    return (-q + math.sqrt(q * q + 4.0 * q * r)) / 2.0

"""Partition matroid over per-robot trajectory menus.

The ground set is the disjoint union of per-robot blocks.  A set of
trajectory ids is independent when it uses at most one trajectory per robot
and is a basis when it uses exactly one per robot.  Robots are ordered by
their (sortable) ids and trajectories by menu position; that canonical
element order drives deterministic tie-breaking and basis enumeration
everywhere in the package.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence

from .errors import EnumerationCapExceeded

DEFAULT_ENUMERATION_CAP = 10**6


class PartitionMatroid:
    """Independence structure "at most one trajectory per robot".

    Parameters
    ----------
    blocks:
        Mapping from robot id to that robot's trajectory menu (a non-empty
        sequence of unique trajectory ids).  Blocks must be disjoint.
    """

    def __init__(self, blocks: Mapping[str, Sequence[str]]):
        if not blocks:
            raise ValueError("at least one robot block is required")
        robots = tuple(sorted(blocks))
        cleaned: dict[str, tuple[str, ...]] = {}
        robot_of: dict[str, str] = {}
        for robot in robots:
            menu = tuple(blocks[robot])
            if not menu:
                raise ValueError(f"robot {robot!r} has an empty trajectory menu")
            if len(set(menu)) != len(menu):
                raise ValueError(f"robot {robot!r} menu repeats a trajectory id")
            for tid in menu:
                if tid in robot_of:
                    raise ValueError(f"trajectory {tid!r} appears in two blocks")
                robot_of[tid] = robot
            cleaned[robot] = menu
        self.blocks = cleaned
        self.robots = robots
        self.ground_set: tuple[str, ...] = tuple(
            tid for robot in robots for tid in cleaned[robot]
        )
        self._robot_of = robot_of
        self._index = {tid: i for i, tid in enumerate(self.ground_set)}

    @property
    def num_robots(self) -> int:
        return len(self.robots)

    def robot_of(self, trajectory_id: str) -> str:
        try:
            return self._robot_of[trajectory_id]
        except KeyError:
            raise ValueError(f"unknown trajectory id {trajectory_id!r}") from None

    def ground_index(self, trajectory_id: str) -> int:
        """Canonical rank of a trajectory: robots in id order, then menu order."""
        try:
            return self._index[trajectory_id]
        except KeyError:
            raise ValueError(f"unknown trajectory id {trajectory_id!r}") from None

    def sorted_members(self, members: Iterable[str]) -> list[str]:
        """Members sorted by canonical ground order."""
        return sorted(members, key=self.ground_index)

    def is_independent(self, members: Iterable[str]) -> bool:
        """True when ``members`` uses at most one trajectory per robot."""
        seen = set()
        for tid in members:
            robot = self.robot_of(tid)
            if robot in seen:
                return False
            seen.add(robot)
        return True

    def is_basis(self, members: Iterable[str]) -> bool:
        """True when ``members`` uses exactly one trajectory per robot."""
        members = set(members)
        return len(members) == self.num_robots and self.is_independent(members)

    def basis_count(self) -> int:
        return math.prod(len(self.blocks[r]) for r in self.robots)

    def enumerate_bases(self, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[frozenset]:
        """Yield every basis, lexicographically by (robot order, menu order).

        Raises :class:`EnumerationCapExceeded` up front when the basis count
        is beyond ``cap``.
        """
        total = self.basis_count()
        if total > cap:
            raise EnumerationCapExceeded(
                f"{total} bases exceed the enumeration cap of {cap}"
            )
        menus = [self.blocks[r] for r in self.robots]

        def generate() -> Iterator[frozenset]:
            for combo in itertools.product(*menus):
                yield frozenset(combo)

        return generate()

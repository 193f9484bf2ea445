"""Fractional hitting sets and the slack-to-full lifting combinators.

A *slack* builder only has to serve a constant fraction of the pairs it is
given.  :func:`lift_preserver` and :func:`lift_oracle` call it repeatedly on
the uncovered remainder until at most one pair is left, which goes to a
per-pair base builder.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import ContractViolation, InputError, RoutingError
from .graph import DiGraph, Subgraph

Pair = tuple[int, int]


@dataclass(frozen=True)
class SetFamily:
    universe_size: int
    sets: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, universe_size: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls(universe_size, tuple(tuple(s) for s in sets))


@dataclass(frozen=True)
class HitResult:
    chosen: tuple[int, ...]
    hit_mask: tuple[bool, ...]

    @property
    def hit_count(self) -> int:
        return sum(self.hit_mask)


def hitting_rounds(universe_size: int, k: int) -> int:
    return -(-4 * universe_size // k)


def fractional_hitting_set(fam: SetFamily, k: int) -> HitResult:
    """Greedy max-coverage for ``ceil(4n/k)`` rounds.

    Each set is truncated to its first ``k`` elements before counting; the
    returned mask is evaluated on the untruncated sets.  Ties go to the
    lowest vertex id.  When every set has at least ``k`` elements at most a
    tenth of them stay unhit.
    """
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    n = fam.universe_size
    truncated: list[tuple[int, ...]] = []
    for i, s in enumerate(fam.sets):
        distinct = tuple(dict.fromkeys(s))
        if len(distinct) < k:
            raise InputError(f"set {i} has {len(distinct)} < k={k} elements")
        for x in distinct:
            if not 0 <= x < n:
                raise InputError(f"set {i} contains {x}, outside universe of size {n}")
        truncated.append(distinct[:k])

    count = [0] * n
    member_of: list[list[int]] = [[] for _ in range(n)]
    for i, s in enumerate(truncated):
        for x in s:
            count[x] += 1
            member_of[x].append(i)
    alive = [True] * len(truncated)
    remaining = len(truncated)
    chosen: list[int] = []
    for _ in range(hitting_rounds(n, k)):
        if remaining == 0:
            break
        best = max(range(n), key=lambda v: (count[v], -v))
        chosen.append(best)
        for i in member_of[best]:
            if alive[i]:
                alive[i] = False
                remaining -= 1
                for x in truncated[i]:
                    count[x] -= 1
    picked = set(chosen)
    mask = tuple(not picked.isdisjoint(s) for s in fam.sets)
    return HitResult(tuple(chosen), mask)


# ---------------------------------------------------------------- lifting

SlackBuilder = Callable[[DiGraph, list[Pair]], tuple[Any, Iterable[Pair]]]


def max_slack_levels(num_pairs: int) -> int:
    if num_pairs <= 1:
        return 2
    return math.ceil(math.log(num_pairs, 2.5)) + 2


def _dedupe(pairs: Iterable[Pair]) -> list[Pair]:
    return list(dict.fromkeys((int(s), int(t)) for s, t in pairs))


def _run_levels(
    slack_builder: SlackBuilder,
    g: DiGraph,
    pairs: list[Pair],
) -> tuple[list[tuple[Any, tuple[Pair, ...]]], list[Pair]]:
    levels: list[tuple[Any, tuple[Pair, ...]]] = []
    remaining = pairs
    cap = max_slack_levels(len(pairs))
    while len(remaining) > 1:
        if len(levels) >= cap:
            raise ContractViolation(f"slack recursion exceeded {cap} levels")
        structure, covered = slack_builder(g, remaining)
        covered_set = set(covered)
        served = tuple(p for p in remaining if p in covered_set)
        if not served:
            raise ContractViolation(f"slack builder covered none of {len(remaining)} pairs")
        levels.append((structure, served))
        remaining = [p for p in remaining if p not in covered_set]
    return levels, remaining


def lift_preserver(
    slack_builder: SlackBuilder,
    base_builder: Callable[[DiGraph, Pair], Subgraph],
    g: DiGraph,
    pairs: Iterable[Pair],
) -> Subgraph:
    """Union of slack levels plus a base preserver for the last leftover pair."""
    pairs = _dedupe(pairs)
    levels, remaining = _run_levels(slack_builder, g, pairs)
    kept: set[int] = set()
    for sub, _ in levels:
        kept |= sub.kept
    for p in remaining:
        kept |= base_builder(g, p).kept
    return Subgraph(g, frozenset(kept))


@dataclass
class LiftedStructure:
    """Query structures per level plus the pointer table routing each pair."""

    levels: list[Any]
    served: list[tuple[Pair, ...]]
    pair_index: dict[Pair, int] = field(default_factory=dict)

    def level_for(self, pair: Hashable) -> Any:
        try:
            return self.levels[self.pair_index[pair]]
        except KeyError:
            raise RoutingError(f"pair {pair} is not served by this structure") from None

    def words(self) -> int:
        return 2 * len(self.pair_index) + sum(lv.words() for lv in self.levels)


def lift_oracle(
    slack_builder: SlackBuilder,
    base_builder: Callable[[DiGraph, Pair], Any],
    g: DiGraph,
    pairs: Iterable[Pair],
) -> LiftedStructure:
    """Like :func:`lift_preserver` but keeps the levels apart and indexes pairs."""
    pairs = _dedupe(pairs)
    levels, remaining = _run_levels(slack_builder, g, pairs)
    out = LiftedStructure([], [])
    for structure, served in levels:
        for p in served:
            out.pair_index[p] = len(out.levels)
        out.levels.append(structure)
        out.served.append(served)
    for p in remaining:
        out.pair_index[p] = len(out.levels)
        out.levels.append(base_builder(g, p))
        out.served.append((p,))
    return out


def ceil_fraction(num: int, den: int, total: int) -> int:
    """``ceil(num * total / den)`` in exact integer arithmetic."""
    return -(-num * total // den)


def coverage_ok(covered: Sequence[Pair], total: int) -> bool:
    return len(covered) >= ceil_fraction(3, 5, total)

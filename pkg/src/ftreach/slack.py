"""Segment hitting shared by the dual oracle and the dual preserver.

For every pair the first and last ``seg_len`` vertices of both strands form
four segments.  Segments with a full ``seg_len`` vertices go into a set
family, a fractional hitting set is picked for it, and a pair is *covered* when every
one of its full segments is hit.  Short segments never need a hit: any
route through them stays inside the segment.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .framework import HitResult, Pair, SetFamily, fractional_hitting_set
from .graph import DiGraph, reaches
from .skeleton import PairSkeleton, build_pair_skeleton


def segments(sk: PairSkeleton, seg_len: int) -> tuple[tuple[int, ...], ...]:
    """Prefix and suffix of strand 1, then of strand 2."""
    return (sk.strand1[:seg_len], sk.strand1[-seg_len:], sk.strand2[:seg_len], sk.strand2[-seg_len:])


def build_skeletons(g: DiGraph, pairs: Sequence[Pair]) -> dict[Pair, PairSkeleton | None]:
    """One skeleton per pair, ``None`` for pairs that are not reachable."""
    out: dict[Pair, PairSkeleton | None] = {}
    for s, t in pairs:
        out[(s, t)] = build_pair_skeleton(g, s, t) if reaches(g, s, t) else None
    return out


@dataclass
class SlackSelection:
    seg_len: int
    skeletons: dict[Pair, PairSkeleton | None]
    family: SetFamily
    owners: list[Pair]
    hit: HitResult
    covered: list[Pair]
    hubs: dict[Pair, tuple[int, ...]]

    @property
    def hitting_set(self) -> tuple[int, ...]:
        return self.hit.chosen


def select_covered(
    g: DiGraph,
    pairs: Sequence[Pair],
    seg_len: int,
    skeletons: dict[Pair, PairSkeleton | None] | None = None,
) -> SlackSelection:
    if skeletons is None:
        skeletons = build_skeletons(g, pairs)
    sets: list[tuple[int, ...]] = []
    owners: list[Pair] = []
    for p in pairs:
        sk = skeletons[p]
        if sk is None:
            continue
        for seg in segments(sk, seg_len):
            if len(seg) >= seg_len:
                sets.append(seg)
                owners.append(p)
    family = SetFamily.of(g.n, sets)
    hit = fractional_hitting_set(family, seg_len)
    missed = {owners[i] for i, ok in enumerate(hit.hit_mask) if not ok}
    chosen = set(hit.chosen)
    covered = [p for p in pairs if p not in missed]
    hubs: dict[Pair, tuple[int, ...]] = {}
    for p in covered:
        sk = skeletons[p]
        if sk is None:
            continue
        picks = []
        for seg in segments(sk, seg_len):
            if len(seg) >= seg_len:
                picks.append(next(v for v in seg if v in chosen))
        hubs[p] = tuple(dict.fromkeys(picks))
    return SlackSelection(seg_len, skeletons, family, owners, hit, covered, hubs)

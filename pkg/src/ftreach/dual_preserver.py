"""Sparse subgraph preserving pairwise reachability under two edge failures.

A slack level hits the strand segments like the dual oracle does, keeps
full single-source structures around the hitting set, the segments
themselves and the coupling paths that end in a last segment.  Vertices that
too many of those coupling paths run through are promoted to extra hubs,
which caps the in-degree contributed by the remaining paths.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError
from .framework import Pair, lift_preserver
from .graph import DiGraph, Subgraph
from .providers import FROM_ROOT, TO_ROOT, Providers
from .skeleton import PairSkeleton
from .slack import build_skeletons, select_covered


def preserver_segment_length(n: int, num_pairs: int) -> int:
    """Smallest ``seg_len >= 1`` with ``seg_len**3 * num_pairs >= n**2``."""
    if num_pairs < 1:
        raise InputError("need at least one pair")
    seg_len = max(1, int(round((n * n / num_pairs) ** (1 / 3))) - 1)
    while seg_len**3 * num_pairs < n * n:
        seg_len += 1
    while seg_len > 1 and (seg_len - 1) ** 3 * num_pairs >= n * n:
        seg_len -= 1
    return seg_len


def _segment_edges(strand_edges: tuple[int, ...], seg_len: int) -> set[int]:
    m = len(strand_edges)
    head = strand_edges[: max(seg_len - 1, 0)]
    tail = strand_edges[max(m - (seg_len - 1), 0):] if seg_len > 1 else ()
    return set(head) | set(tail)


@dataclass
class DualPreserverBuild:
    num_pairs: int
    seg_len: int
    hitting_set: tuple[int, ...]
    covered: list[Pair]
    pool_size: int
    threshold: int
    extra_hubs: list[int]
    max_freq_after: int
    parts: dict[str, frozenset[int]] = field(default_factory=dict)
    result: Subgraph | None = None

    def bounds_hold(self) -> bool:
        return len(self.extra_hubs) <= self.threshold and self.max_freq_after < self.threshold


def _threshold(seg_len: int, q: int) -> int:
    x = seg_len * q
    return 0 if x <= 0 else math.isqrt(x - 1) + 1


def dual_preserver_slack_details(
    g: DiGraph,
    pairs: Sequence[Pair],
    providers: Providers | None = None,
    skeletons: dict[Pair, PairSkeleton | None] | None = None,
) -> DualPreserverBuild:
    if not pairs:
        raise InputError("pairs must be non-empty")
    providers = providers or Providers()
    seg_len = preserver_segment_length(g.n, len(pairs))
    sel = select_covered(g, pairs, seg_len, skeletons)
    chosen = sel.hitting_set

    def hub_edges(vs: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for v in vs:
            out |= providers.ftrs(g, v, 2, FROM_ROOT).sub.kept
            out |= providers.ftrs(g, v, 2, TO_ROOT).sub.kept
        return out

    hub_part = hub_edges(chosen)
    segment_part: set[int] = set()
    pool: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for p in sel.covered:
        sk = sel.skeletons[p]
        if sk is None:
            continue
        segment_part |= _segment_edges(sk.strand_edges1, seg_len)
        segment_part |= _segment_edges(sk.strand_edges2, seg_len)
        last = set(sk.strand1[-seg_len:]) | set(sk.strand2[-seg_len:])
        for (v, _i), rec in sk.essential_paths():
            if v in last and rec.edges:
                pool.append((rec.vertices, rec.edges))

    threshold = _threshold(seg_len, len(sel.covered))
    freq: Counter[int] = Counter()
    for verts, _ in pool:
        freq.update(set(verts))
    alive = [True] * len(pool)
    extra: list[int] = []
    while True:
        heavy = [v for v, c in freq.items() if c >= threshold and c > 0]
        if not heavy:
            break
        w = min(heavy)
        extra.append(w)
        for idx, (verts, _) in enumerate(pool):
            if alive[idx] and w in verts:
                alive[idx] = False
                freq.subtract(set(verts))
        freq = +freq
    extra_part = hub_edges(extra)
    coupling_part: set[int] = set()
    for idx, (_, edges) in enumerate(pool):
        if alive[idx]:
            coupling_part.update(edges)
    parts = {
        "hubs": frozenset(hub_part),
        "segments": frozenset(segment_part),
        "extra_hubs": frozenset(extra_part),
        "coupling": frozenset(coupling_part),
    }
    result = Subgraph(g, frozenset().union(*parts.values()))
    peak = max(freq.values(), default=0)
    return DualPreserverBuild(
        len(pairs), seg_len, chosen, sel.covered, len(pool), threshold, extra, peak, parts, result
    )


def build_dual_preserver_slack(
    g: DiGraph, pairs: Sequence[Pair], providers: Providers | None = None
) -> tuple[Subgraph, list[Pair]]:
    b = dual_preserver_slack_details(g, pairs, providers)
    return b.result, b.covered


def build_dual_preserver(
    g: DiGraph,
    pairs: Iterable[Sequence[int]],
    providers: Providers | None = None,
    trace: list[DualPreserverBuild] | None = None,
) -> Subgraph:
    """Subgraph of ``g`` preserving every pair under any two edge failures.

    When ``trace`` is given, the details of every slack level are appended.
    """
    providers = providers or Providers()
    plist = [(int(s), int(t)) for s, t in pairs]
    for s, t in plist:
        g.check_vertex(s)
        g.check_vertex(t)
    skeletons = build_skeletons(g, list(dict.fromkeys(plist)))

    def slack(graph: DiGraph, remaining: list[Pair]):
        b = dual_preserver_slack_details(graph, remaining, providers, skeletons)
        if trace is not None:
            trace.append(b)
        return b.result, b.covered

    def base(graph: DiGraph, p: Pair) -> Subgraph:
        sk = skeletons[p]
        return Subgraph(graph, frozenset()) if sk is None else sk.subgraph()

    return lift_preserver(slack, base, g, plist)

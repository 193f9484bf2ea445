"""Randomized pairwise reachability preserver for ``k`` edge failures.

A random vertex sample with full single-source structures handles every
replacement route longer than ``ell``.  Short routes are added explicitly:
for each pair the failure sets that keep the pair within distance ``ell``
are enumerated by branching on the edges of one fixed shortest path, and
the disjoint path pair of every such set is kept when short.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractViolation, InputError, PreconditionError
from .framework import Pair
from .graph import DiGraph, StrandPair, Subgraph, bfs_path, strands
from .providers import FROM_ROOT, TO_ROOT, Providers


@dataclass(frozen=True)
class KFtrsParams:
    k: int
    ell: int | None = None
    sample_c: float = 4.0
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise InputError(f"k must be at least 1, got {self.k}")
        if self.ell is not None and self.ell < 1:
            raise InputError(f"ell must be at least 1, got {self.ell}")
        if self.sample_c < 0:
            raise InputError(f"sample constant must be non-negative, got {self.sample_c}")

    def length_threshold(self, n: int, num_pairs: int) -> int:
        if self.ell is not None:
            return self.ell
        if n <= 1 or num_pairs == 0:
            return 1
        base = self.k * 2**self.k * n * n / num_pairs * math.log(n)
        return max(1, math.ceil(base ** (1 / (self.k + 1))))

    def sample_size(self, n: int, ell: int) -> int:
        if n <= 1:
            return n
        return min(n, math.ceil(self.sample_c * self.k * (n / ell) * math.log(n)))


@dataclass(frozen=True)
class FailureFamily:
    r: int
    sets: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.sets)


def _strand_pair_after(g: DiGraph, banned: frozenset[int], s: int, t: int) -> StrandPair:
    return strands(g, s, t, banned)


def disjoint_paths_after(
    g: DiGraph, f: Iterable[Sequence[int]], s: int, t: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two s-t paths of ``g - f`` that share only its s-t cut edges (as vertex tuples)."""
    banned = g.edge_ids(f)
    if bfs_path(g, s, t, banned) is None:
        raise PreconditionError(f"{t} is not reachable from {s} after the failures")
    sp = _strand_pair_after(g, banned, s, t)
    return sp.p1, sp.p2


def failure_levels(g: DiGraph, pair: Pair, k: int, ell: int) -> list[FailureFamily]:
    """Levels ``0..k-1`` of failure sets keeping the pair within distance ``ell``.

    Level ``r+1`` branches on the edges of the lowest-edge-id shortest path
    of ``g - F`` for every ``F`` on level ``r``.
    """
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    s, t = pair
    levels: list[FailureFamily] = []
    first = bfs_path(g, s, t)
    current: dict[tuple[int, ...], list[int]] = {}
    if first is not None and len(first) <= ell:
        current[()] = first
    for r in range(k):
        levels.append(FailureFamily(r, tuple(current)))
        if r == k - 1:
            break
        nxt: dict[tuple[int, ...], list[int]] = {}
        for f, path in current.items():
            for e in path:
                key = tuple(sorted(f + (e,)))
                if key in nxt:
                    continue
                p = bfs_path(g, s, t, frozenset(key))
                if p is not None and len(p) <= ell:
                    nxt[key] = p
        current = nxt
    last = levels[-1]
    if len(last) > ell ** (k - 1):
        raise ContractViolation(f"level {k - 1} holds {len(last)} > ell^(k-1) sets")
    return levels


def _short_pair_edges(g: DiGraph, pair: Pair, f: tuple[int, ...], ell: int) -> set[int]:
    sp = _strand_pair_after(g, frozenset(f), *pair)
    out: set[int] = set()
    for edges in (sp.e1, sp.e2):
        if len(edges) <= ell:
            out.update(edges)
    return out


def enumerate_short_failure_sets(g: DiGraph, pair: Pair, k: int, ell: int) -> FailureFamily:
    """Top level failure sets whose disjoint path pair has a member of length <= ``ell``."""
    top = failure_levels(g, pair, k, ell)[-1]
    keep = []
    for f in top.sets:
        sp = _strand_pair_after(g, frozenset(f), *pair)
        if min(len(sp.e1), len(sp.e2)) <= ell:
            keep.append(f)
    return FailureFamily(top.r, tuple(keep))


def build_k_ftrs(
    g: DiGraph,
    pairs: Iterable[Sequence[int]],
    params: KFtrsParams,
    providers: Providers | None = None,
    trace: dict | None = None,
) -> Subgraph:
    """Subgraph preserving every pair under any ``params.k`` failures, w.h.p.

    Exact whenever the sample is all of ``V`` or ``ell >= n``.  When
    ``trace`` is given it receives the sample and the level sizes.
    """
    providers = providers or Providers()
    plist = list(dict.fromkeys((int(s), int(t)) for s, t in pairs))
    for s, t in plist:
        g.check_vertex(s)
        g.check_vertex(t)
    k = params.k
    ell = params.length_threshold(g.n, len(plist))
    size = params.sample_size(g.n, ell)
    sample = sorted(random.Random(params.seed).sample(range(g.n), size))

    kept: set[int] = set()
    for w in sample:
        kept |= providers.ftrs(g, w, k, FROM_ROOT).sub.kept
        kept |= providers.ftrs(g, w, k, TO_ROOT).sub.kept
    level_sizes: dict[Pair, list[int]] = {}
    for p in plist:
        levels = failure_levels(g, p, k, ell)
        level_sizes[p] = [len(lv) for lv in levels]
        for lv in levels:
            for f in lv.sets:
                kept.update(bfs_path(g, p[0], p[1], frozenset(f)))
                kept |= _short_pair_edges(g, p, f, ell)
    if trace is not None:
        trace.update(ell=ell, sample=sample, level_sizes=level_sizes)
    return Subgraph(g, frozenset(kept))

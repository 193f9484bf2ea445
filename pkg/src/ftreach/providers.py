"""Single-source / single-sink fault-tolerant reachability providers.

The sparse constructions from the literature are pluggable behind
:class:`Providers`; the bundled ``baseline`` prunes the input graph greedily
and ``whole-graph`` keeps it untouched.  Both are correct for every failure
set of the requested size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError
from .graph import DiGraph, Subgraph, bfs_path, reach_set

FROM_ROOT = "from-root"
TO_ROOT = "to-root"
DIRECTIONS = (FROM_ROOT, TO_ROOT)

DEFAULT_BUDGET = 10**10


@dataclass(frozen=True)
class SsFtrs:
    root: int
    direction: str
    k: int
    sub: Subgraph
    pruned: bool


def _oriented(g: DiGraph, direction: str) -> DiGraph:
    if direction == FROM_ROOT:
        return g
    if direction == TO_ROOT:
        return g.reverse()
    raise InputError(f"unknown direction {direction!r}")


def _separating_sets(
    h: DiGraph, root: int, target: int, banned: frozenset[int], k: int
) -> Iterable[frozenset[int]]:
    """Every set of at most ``k`` extra edges cutting ``target`` off ``root``.

    Branches on the edges of one shortest path at each level, so every cut
    of size <= k contains one of the yielded sets.
    """
    stack = [frozenset()]
    seen = set()
    while stack:
        f = stack.pop()
        path = bfs_path(h, root, target, banned | f)
        if path is None:
            yield f
            continue
        if len(f) == k:
            continue
        for e in path:
            nf = f | {e}
            if nf not in seen:
                seen.add(nf)
                stack.append(nf)


def estimated_work(n: int, m: int, k: int) -> int:
    return n * math.comb(m, k) * (n + m)


def ss_ftrs_baseline(
    g: DiGraph,
    root: int,
    k: int,
    direction: str = FROM_ROOT,
    budget: int = DEFAULT_BUDGET,
) -> SsFtrs:
    """Irredundant subgraph preserving root reachability under ``k`` failures.

    Edges are tried for removal in descending id order.  Dropping ``(a, b)``
    from a valid ``H`` is safe iff no failure set ``F`` of ``H`` with
    ``|F| <= k`` keeps ``a`` reachable while cutting ``b`` off in
    ``H - F - (a, b)``; the branching enumeration in
    :func:`_separating_sets` covers every such ``F`` exactly.
    """
    g.check_vertex(root)
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    h_dir = _oriented(g, direction)
    if estimated_work(g.n, g.m, k) > budget:
        return SsFtrs(root, direction, k, Subgraph(g, frozenset(range(g.m))), False)
    dropped: set[int] = set()
    for e in range(g.m - 1, -1, -1):
        a, b = h_dir.edges[e]
        trial = frozenset(dropped | {e})
        needed = False
        for cut in _separating_sets(h_dir, root, b, trial, k):
            if reach_set(h_dir, root, trial | cut)[a]:
                needed = True
                break
        if not needed:
            dropped.add(e)
    kept = frozenset(range(g.m)) - dropped
    return SsFtrs(root, direction, k, Subgraph(g, kept), True)


def ss_ftrs_whole(g: DiGraph, root: int, k: int, direction: str = FROM_ROOT) -> SsFtrs:
    g.check_vertex(root)
    _oriented(g, direction)
    return SsFtrs(root, direction, k, Subgraph(g, frozenset(range(g.m))), False)


class SsFtro:
    """Dual-failure reachability oracle rooted at one vertex.

    Stores its own copy of the kept edges; ``query(v, F)`` answers
    root -> v (``from-root``) or v -> root (``to-root``) in the parent graph
    minus ``F``.
    """

    def __init__(self, root: int, direction: str, sub_graph: DiGraph, k: int = 2):
        self.root = root
        self.direction = direction
        self.k = k
        self.graph = sub_graph
        self._oriented = _oriented(sub_graph, direction)

    def query(self, v: int, f: Iterable[Sequence[int]] = ()) -> bool:
        failures = [tuple(x) for x in f]
        if len(failures) > self.k:
            raise InputError(f"at most {self.k} failures supported, got {len(failures)}")
        self.graph.check_vertex(v)
        banned = set()
        for a, b in failures:
            if self.graph.has_edge(a, b):
                banned.add(self.graph.edge_id(a, b))
        return bool(reach_set(self._oriented, self.root, banned)[v])

    def query_ids(self, v: int, banned: frozenset[int]) -> bool:
        """Query with failures already given as ids of ``self.graph``."""
        return bool(reach_set(self._oriented, self.root, banned)[v])

    def words(self) -> int:
        return 3 + 2 * self.graph.m

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "direction": self.direction,
            "k": self.k,
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
        }

    @classmethod
    def from_dict(cls, d: dict) -> SsFtro:
        return cls(d["root"], d["direction"], DiGraph(d["n"], d["edges"]), d["k"])


def ss_ftro_baseline(
    g: DiGraph, root: int, direction: str = FROM_ROOT, budget: int = DEFAULT_BUDGET
) -> SsFtro:
    return SsFtro(root, direction, ss_ftrs_baseline(g, root, 2, direction, budget).sub.as_digraph())


@dataclass
class Providers:
    """Named provider with a per-graph cache of built structures."""

    name: str = "baseline"
    budget: int = DEFAULT_BUDGET
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.name not in ("baseline", "whole-graph"):
            raise InputError(f"unknown provider {self.name!r}")

    def ftrs(self, g: DiGraph, root: int, k: int, direction: str) -> SsFtrs:
        key = ("ftrs", id(g), root, k, direction)
        hit = self._cache.get(key)
        if hit is None or hit[0] is not g:
            if self.name == "baseline":
                built = ss_ftrs_baseline(g, root, k, direction, self.budget)
            else:
                built = ss_ftrs_whole(g, root, k, direction)
            hit = (g, built)
            self._cache[key] = hit
        return hit[1]

    def ftro(self, g: DiGraph, root: int, direction: str) -> SsFtro:
        key = ("ftro", id(g), root, direction)
        hit = self._cache.get(key)
        if hit is None or hit[0] is not g:
            sub = self.ftrs(g, root, 2, direction).sub.as_digraph()
            hit = (g, SsFtro(root, direction, sub))
            self._cache[key] = hit
        return hit[1]

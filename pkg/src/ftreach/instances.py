"""Graph families used for testing and lower-bound demonstrations.

The layered bipartite family has ``r`` source paths and ``r`` sink paths of
``N`` vertices each, with a complete bipartite layer between the ``k``-th
vertices of every source and sink path.  Any subgraph that keeps every
``(a_i, b_j)`` pair connected under two edge failures must keep all
``N * r * r`` bipartite edges.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .graph import DiGraph, reachable

Edge = tuple[int, int]

MAX_MULTI_VERTICES = 1 << 20


@dataclass(frozen=True)
class HardInstance:
    N: int
    r: int
    graph: DiGraph
    designated: tuple[int, ...]
    pairs: tuple[Edge, ...]

    def source(self, k: int, i: int) -> int:
        """Vertex ``k`` (1-based) of source path ``i`` (1-based)."""
        self._check(k, i)
        return (i - 1) * self.N + (k - 1)

    def sink(self, k: int, j: int) -> int:
        """Vertex ``k`` (1-based) of sink path ``j`` (1-based)."""
        self._check(k, j)
        return self.r * self.N + (j - 1) * self.N + (k - 1)

    def _check(self, k: int, i: int) -> None:
        if not (1 <= k <= self.N and 1 <= i <= self.r):
            raise InputError(f"index out of range: level {k}, path {i} (N={self.N}, r={self.r})")

    def layout(self) -> dict[tuple[int, int, str], int]:
        out = {}
        for k in range(1, self.N + 1):
            for i in range(1, self.r + 1):
                out[(k, i, "a")] = self.source(k, i)
                out[(k, i, "b")] = self.sink(k, i)
        return out

    def bipartite_edges(self) -> list[Edge]:
        return [
            (self.source(k, i), self.sink(k, j))
            for k in range(1, self.N + 1)
            for i in range(1, self.r + 1)
            for j in range(1, self.r + 1)
        ]


def gen_hard_dual(N: int, r: int) -> HardInstance:
    if N < 1 or r < 1:
        raise InputError(f"N and r must be positive, got N={N}, r={r}")

    def src(k: int, i: int) -> int:
        return (i - 1) * N + (k - 1)

    def snk(k: int, j: int) -> int:
        return r * N + (j - 1) * N + (k - 1)

    edges: list[Edge] = []
    for i in range(1, r + 1):
        edges += [(src(k, i), src(k + 1, i)) for k in range(1, N)]
    for j in range(1, r + 1):
        edges += [(snk(k, j), snk(k + 1, j)) for k in range(1, N)]
    for k in range(1, N + 1):
        for i in range(1, r + 1):
            edges += [(src(k, i), snk(k, j)) for j in range(1, r + 1)]
    heads = tuple(src(1, i) for i in range(1, r + 1))
    tails = tuple(snk(N, j) for j in range(1, r + 1))
    pairs = tuple((a, b) for a in heads for b in tails)
    return HardInstance(N, r, DiGraph(2 * N * r, edges), heads + tails, pairs)


@dataclass(frozen=True)
class MultiInstance:
    base: HardInstance
    graph: DiGraph
    hubs: tuple[int, ...]
    k: int
    rho: int


def gen_hard_multi(rho: int, k: int, N: int = 1) -> MultiInstance:
    """Hard instance with ``2**k * rho`` paths per side and binary trees on top.

    Every group of ``2**k`` source heads becomes the leaf set of an
    out-directed complete binary tree rooted at a new vertex; every group of
    sink tails is the leaf set of an in-directed tree.  ``hubs`` lists the
    source roots then the sink roots.
    """
    if rho < 1 or k < 1 or N < 1:
        raise InputError(f"rho, k and N must be positive, got {rho}, {k}, {N}")
    width = 2**k
    if 2 * width * rho * N + 2 * rho * width > MAX_MULTI_VERTICES:
        raise InputError("instance too large")
    base = gen_hard_dual(N, width * rho)
    n = base.graph.n
    edges = list(base.graph.edges)
    roots: dict[str, list[int]] = {"a": [], "b": []}
    for side, ends in (("a", base.designated[: width * rho]), ("b", base.designated[width * rho:])):
        for j in range(rho):
            heap = {h: n + h - 1 for h in range(1, width)}
            n += width - 1
            for h in range(width, 2 * width):
                heap[h] = ends[j * width + h - width]
            for h in range(2, 2 * width):
                parent, child = heap[h // 2], heap[h]
                edges.append((parent, child) if side == "a" else (child, parent))
            roots[side].append(heap[1])
    return MultiInstance(base, DiGraph(n, edges), tuple(roots["a"] + roots["b"]), k, rho)


@dataclass(frozen=True)
class EssentialWitness:
    edge: Edge
    pair: Edge
    failures: tuple[Edge, ...]


def essential_edge_witness(inst: HardInstance, k: int, i: int, j: int) -> EssentialWitness:
    edge = (inst.source(k, i), inst.sink(k, j))
    fails = []
    if k < inst.N:
        fails.append((inst.source(k, i), inst.source(k + 1, i)))
    if k > 1:
        fails.append((inst.sink(k - 1, j), inst.sink(k, j)))
    return EssentialWitness(edge, (inst.source(1, i), inst.sink(inst.N, j)), tuple(fails))


def check(inst: HardInstance, w: EssentialWitness) -> bool:
    """True iff the pair survives the failures but not once the edge is also gone."""
    s, t = w.pair
    return reachable(inst.graph, s, t, w.failures) and not reachable(
        inst.graph, s, t, w.failures + (w.edge,)
    )


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")


def gen_random_digraph(n: int, p: float, seed: int) -> DiGraph:
    _check_p(p)
    rng = random.Random(seed)
    return DiGraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def gen_random_dag(n: int, p: float, seed: int) -> DiGraph:
    _check_p(p)
    rng = random.Random(seed)
    return DiGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])

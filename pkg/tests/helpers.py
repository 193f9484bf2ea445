"""Fixtures and brute-force helpers shared by the test modules."""
from __future__ import annotations

import itertools
import random

from ftreach.graph import DiGraph, reach_set, reaches
from ftreach.instances import gen_random_digraph

CHAIN3 = [(0, 1), (1, 2)]
CHAIN4 = [(0, 1), (1, 2), (2, 3)]
DIAMOND = [(0, 1), (1, 3), (0, 2), (2, 3)]
CYCLE3 = [(0, 1), (1, 2), (2, 0)]
LOOPY = [(0, 1), (1, 2), (2, 3), (2, 1)]
SIX = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5), (1, 4)]


def graph(edges, n=None) -> DiGraph:
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return DiGraph(n, edges)


def all_failure_sets(m: int, k: int):
    for r in range(min(k, m) + 1):
        yield from itertools.combinations(range(m), r)


def reachable_pairs(g: DiGraph) -> list[tuple[int, int]]:
    out = []
    for s in range(g.n):
        seen = reach_set(g, s)
        out += [(s, t) for t in range(g.n) if t != s and seen[t]]
    return out


def random_corpus(count: int = 200, max_n: int = 10, probs=(0.2, 0.35)):
    """Seeded random digraphs with ``4 <= n <= max_n``."""
    for seed in range(count):
        n = 4 + seed % (max_n - 3)
        p = probs[seed % len(probs)]
        yield seed, gen_random_digraph(n, p, seed)


def backbone_graph(rng: random.Random, n: int, extra: int) -> DiGraph:
    """A 0..n-1 path with back edges and short chords, so many cut vertices survive."""
    edges = {(i, i + 1) for i in range(n - 1)}
    for _ in range(extra):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v and (v < u or (v - u == 2 and rng.random() < 0.3)):
            edges.add((u, v))
    return DiGraph(n, sorted(edges))


def random_pairs(rng: random.Random, n: int, count: int) -> list[tuple[int, int]]:
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(count)]


def brute(g: DiGraph, s: int, t: int, banned=(), removed=()) -> bool:
    return reaches(g, s, t, frozenset(banned), frozenset(removed))

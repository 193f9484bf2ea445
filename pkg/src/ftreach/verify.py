"""Brute-force ground truth and exhaustive or sampled checkers.

Failure sets are enumerated by size, then lexicographically by edge id.
Past the work budget a seeded sample is drawn instead, or
:class:`BudgetExceeded` is raised when sampling was not requested.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .errors import BudgetExceeded, InputError
from .graph import DiGraph, Subgraph, reach_set, reaches

DEFAULT_BUDGET = 10**7

Pair = tuple[int, int]


@dataclass
class CheckReport:
    total_queries: int = 0
    mismatches: list[tuple[Pair, tuple, bool, bool]] = field(default_factory=list)
    elapsed: float = 0.0
    sampled: bool = False

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def lines(self) -> list[str]:
        out = []
        for (s, t), f, expected, got in self.mismatches:
            tokens = ["pair", str(s), str(t), "F"]
            for x in f:
                tokens += map(str, x) if isinstance(x, tuple) else [str(x)]
            tokens += [str(int(expected)), str(int(got))]
            out.append(" ".join(tokens))
        return out


def count_failure_sets(m: int, k: int) -> int:
    return sum(math.comb(m, r) for r in range(min(k, m) + 1))


def failure_sets(
    m: int,
    k: int,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    sample: int | None = None,
) -> tuple[Iterator[tuple[int, ...]], bool]:
    """Id tuples of every failure set of size <= ``k``, or a seeded sample.

    Returns the iterator and whether it is a sample.  A sample always starts
    with the empty set; each further draw picks a size in ``1..k`` uniformly
    and then that many distinct ids.
    """
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    total = count_failure_sets(m, k)
    if total <= budget:
        it = itertools.chain.from_iterable(
            itertools.combinations(range(m), r) for r in range(min(k, m) + 1)
        )
        return it, False
    if sample is None:
        raise BudgetExceeded(f"{total} failure sets exceed the budget of {budget}")

    def draw() -> Iterator[tuple[int, ...]]:
        rng = random.Random(seed)
        yield ()
        top = min(k, m)
        for _ in range(sample - 1):
            r = rng.randint(1, top)
            yield tuple(sorted(rng.sample(range(m), r)))

    return draw(), True


def brute_reachable(g: DiGraph, s: int, t: int, f: Iterable[Sequence[int]] = ()) -> bool:
    return reaches(g, s, t, g.edge_ids(f))


def brute_vertex_reachable(g: DiGraph, s: int, t: int, x: int | None) -> bool:
    return reaches(g, s, t, removed=frozenset() if x is None else {x})


def _by_source(pairs: Iterable[Sequence[int]]) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = defaultdict(list)
    for s, t in dict.fromkeys((int(s), int(t)) for s, t in pairs):
        groups[s].append(t)
    return groups


def _search_tree(g: DiGraph, s: int, banned: frozenset[int]) -> tuple[bytearray, frozenset[int]]:
    # failing an edge outside the tree cannot change the reachable set
    seen = bytearray(g.n)
    seen[s] = 1
    tree: list[int] = []
    stack = [s]
    while stack:
        v = stack.pop()
        for eid, w in g.out_adj[v]:
            if not seen[w] and eid not in banned:
                seen[w] = 1
                tree.append(eid)
                stack.append(w)
    return seen, frozenset(tree)


def is_k_ftrs(
    g: DiGraph,
    h: Subgraph,
    pairs: Iterable[Sequence[int]],
    k: int,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    sample: int | None = None,
) -> CheckReport:
    """Compare reachability in ``g - F`` and ``h - F`` for every pair and ``|F| <= k``."""
    if h.parent is not g and h.parent != g:
        raise InputError("subgraph does not belong to the given graph")
    start = time.perf_counter()
    groups = _by_source(pairs)
    for s, ts in groups.items():
        g.check_vertex(s)
        for t in ts:
            g.check_vertex(t)
    missing = frozenset(range(g.m)) - h.kept
    base = {s: (_search_tree(g, s, frozenset()), _search_tree(g, s, missing)) for s in groups}
    sets, sampled = failure_sets(g.m, k, budget, seed, sample)
    report = CheckReport(sampled=sampled)
    h_cache: dict[tuple[int, frozenset[int]], bytearray] = {}
    for f in sets:
        banned = frozenset(f)
        inside = banned & h.kept
        for s, ts in groups.items():
            (g_seen, g_tree), (h_seen, h_tree) = base[s]
            in_g = g_seen if g_tree.isdisjoint(banned) else reach_set(g, s, banned)
            if h_tree.isdisjoint(inside):
                in_h = h_seen
            else:
                key = (s, inside)
                in_h = h_cache.get(key)
                if in_h is None:
                    in_h = reach_set(g, s, inside | missing)
                    if len(h_cache) < 200_000:
                        h_cache[key] = in_h
            for t in ts:
                report.total_queries += 1
                if in_g[t] != in_h[t]:
                    edges = tuple(g.edges[e] for e in f)
                    report.mismatches.append(((s, t), edges, bool(in_g[t]), bool(in_h[t])))
    report.elapsed = time.perf_counter() - start
    return report


def check_oracle(
    oracle: Any,
    g: DiGraph,
    pairs: Iterable[Sequence[int]],
    mode: str = "edge",
    k: int = 2,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    sample: int | None = None,
) -> CheckReport:
    """Compare ``oracle.query(pair, *F)`` with brute force.

    ``mode="edge"`` enumerates edge sets of size <= ``k`` passed as endpoint
    pairs; ``mode="vertex"`` enumerates no failure and every single vertex.
    """
    start = time.perf_counter()
    groups = _by_source(pairs)
    report = CheckReport()
    if mode == "vertex":
        if k > 1:
            raise InputError("vertex mode supports at most one failure")
        candidates: list[int | None] = [None] + (list(range(g.n)) if k == 1 else [])
        for x in candidates:
            for s, ts in groups.items():
                seen = reach_set(g, s, removed=frozenset() if x is None else {x})
                for t in ts:
                    expected = bool(seen[t])
                    got = oracle.query((s, t)) if x is None else oracle.query((s, t), x)
                    report.total_queries += 1
                    if expected != bool(got):
                        fs = () if x is None else (x,)
                        report.mismatches.append(((s, t), fs, expected, bool(got)))
    elif mode == "edge":
        sets, report.sampled = failure_sets(g.m, k, budget, seed, sample)
        for f in sets:
            edges = tuple(g.edges[e] for e in f)
            for s, ts in groups.items():
                seen = reach_set(g, s, frozenset(f))
                for t in ts:
                    expected = bool(seen[t])
                    got = bool(oracle.query((s, t), *edges))
                    report.total_queries += 1
                    if expected != got:
                        report.mismatches.append(((s, t), edges, expected, got))
    else:
        raise InputError(f"unknown mode {mode!r}")
    report.elapsed = time.perf_counter() - start
    return report

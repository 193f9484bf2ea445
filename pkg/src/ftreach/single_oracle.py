"""Pairwise reachability oracles for one failed vertex or one failed edge.

The core piece is :class:`CutSetAPR`: for an ordered set ``C`` of cut
vertices of one pair it answers "does ``y`` reach ``z`` once ``x`` is
deleted?" for any ``x, y, z`` in ``C`` with a constant number of forest
lookups.  The vertex oracle groups the cut vertices of heavy pairs into
disjoint blocks with one such structure each; light pairs just store their
remaining cut vertices.  Edge failures reduce to vertex failures by
subdividing the cut edges whose endpoints only stay strongly connected
through the edge itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractViolation, InputError, PreconditionError
from .framework import Pair
from .graph import DiGraph, cut_elements, reaches, split_edges, strongly_connected
from .lca import RootedForest

SUCCESSOR = "successor"
PREDECESSOR = "predecessor"


# ---------------------------------------------------------------- cut-set all pairs


class CutSetAPR:
    def __init__(self, order: Sequence[int], pred_parent: Sequence[int],
                 succ_parent: Sequence[int], hmap: Sequence[int]):
        self.order = tuple(order)
        self.pos = {v: i for i, v in enumerate(self.order)}
        self.pred_parent = tuple(pred_parent)
        self.succ_parent = tuple(succ_parent)
        self.hmap = tuple(hmap)
        self.t_pred = RootedForest(self.pred_parent)
        self.t_succ = RootedForest(self.succ_parent)

    def _index(self, v: int) -> int:
        try:
            return self.pos[v]
        except KeyError:
            raise InputError(f"vertex {v} is not in the cut set") from None

    def successor(self, x: int, y: int) -> int:
        """First vertex after ``x`` strongly connected to ``y`` once ``x`` is gone."""
        px, py = self._index(x), self._index(y)
        if not px < py:
            raise InputError(f"successor lookup needs {x} before {y}")
        return self.order[self._neighbor(self.t_pred, px, py, lambda r: px < r)]

    def predecessor(self, x: int, y: int) -> int:
        """Last vertex before ``x`` strongly connected to ``y`` once ``x`` is gone."""
        px, py = self._index(x), self._index(y)
        if not py < px:
            raise InputError(f"predecessor lookup needs {y} before {x}")
        return self.order[self._neighbor(self.t_succ, px, py, lambda r: r < px)]

    @staticmethod
    def _neighbor(forest: RootedForest, px: int, py: int, outside) -> int:
        r = forest.root[py]
        if outside(r):
            return r
        a = forest.lca(px, py)
        if a is None:
            raise ContractViolation(f"positions {px} and {py} lie in different trees")
        return forest.level_ancestor(py, forest.depth[a] + 1)

    def query(self, x: int, y: int, z: int) -> bool:
        """Is ``z`` reachable from ``y`` after deleting ``x``?"""
        px, py, pz = self._index(x), self._index(y), self._index(z)
        if px in (py, pz):
            return False
        if py == pz:
            return True
        if py < px < pz:
            return False
        if pz < px < py:
            y0 = self.pos[self.successor(x, y)]
            z0 = self.pos[self.predecessor(x, z)]
            return self.hmap[y0] <= z0
        if px < py:
            if py < pz:
                return True
            return self.pos[self.successor(x, y)] <= pz
        if py < pz:
            return True
        return py <= self.pos[self.predecessor(x, z)]

    def order_neighbor(self, x: int, y: int, direction: str) -> int:
        if direction == SUCCESSOR:
            return self.successor(x, y)
        if direction == PREDECESSOR:
            return self.predecessor(x, y)
        raise InputError(f"unknown direction {direction!r}")

    def words(self) -> int:
        return 4 * len(self.order) + self.t_pred.words() + self.t_succ.words()

    def to_dict(self) -> dict:
        return {
            "order": list(self.order),
            "pred": list(self.pred_parent),
            "succ": list(self.succ_parent),
            "hmap": list(self.hmap),
        }

    @classmethod
    def from_dict(cls, d: dict) -> CutSetAPR:
        return cls(d["order"], d["pred"], d["succ"], d["hmap"])


def build_cutset_apr(g: DiGraph, s: int, t: int, cut_set: Sequence[int]) -> CutSetAPR:
    """Build the structure for ``cut_set``, given in the order along any s-t path."""
    order = list(cut_set)
    if len(set(order)) != len(order):
        raise InputError("cut set contains duplicates")
    full = cut_elements(g, s, t).vertices
    rank = {v: i for i, v in enumerate(full)}
    for v in order:
        if v not in rank:
            raise InputError(f"{v} is not a cut vertex of ({s}, {t})")
    if any(rank[a] >= rank[b] for a, b in zip(order, order[1:])):
        raise InputError("cut set is not in path order")
    size = len(order)
    pred = [-1] * size
    succ = [-1] * size
    for j, w in enumerate(order):
        for i in range(j - 1, -1, -1):
            if strongly_connected(g, order[i], w, order[:i]):
                pred[j] = i
                break
        for i in range(j + 1, size):
            if strongly_connected(g, order[i], w, order[i + 1:]):
                succ[j] = i
                break
    hmap = []
    for j, a in enumerate(order):
        for i in range(j + 1):
            if reaches(g, a, order[i], removed=frozenset(order[i + 1:j])):
                hmap.append(i)
                break
    return CutSetAPR(order, pred, succ, hmap)


def apr_query(a: CutSetAPR, x: int, y: int, z: int) -> bool:
    return a.query(x, y, z)


def order_neighbor(a: CutSetAPR, x: int, y: int, direction: str) -> int:
    return a.order_neighbor(x, y, direction)


# ---------------------------------------------------------------- vertex failures


def _isqrt_ceil(n: int) -> int:
    return 0 if n <= 0 else math.isqrt(n - 1) + 1


@dataclass
class VertexFailOracle:
    n: int
    alpha: int
    pairs: tuple[Pair, ...]
    base: dict[Pair, bool]
    heavy: tuple[Pair, ...]
    block_of: dict[int, int]
    ends: dict[Pair, dict[int, tuple[int, int]]]
    light_cuts: dict[Pair, frozenset[int]]
    blocks: tuple[CutSetAPR, ...]

    def query(self, pair: Sequence[int], x: int | None = None) -> bool:
        p = (int(pair[0]), int(pair[1]))
        if p not in self.base:
            raise InputError(f"pair {p} was not given at build time")
        if x is None:
            return self.base[p]
        if not 0 <= x < self.n:
            raise InputError(f"vertex {x} out of range for n={self.n}")
        if not self.base[p]:
            return False
        i = self.block_of.get(x)
        if i is None:
            return x not in self.light_cuts[p]
        span = self.ends[p].get(i)
        if span is None:
            return True
        a, b = span
        if x in (a, b) or x in p:
            return False
        return self.blocks[i].query(x, a, b)

    def words(self) -> int:
        return (
            2
            + 3 * len(self.pairs)
            + 2 * len(self.heavy)
            + 2 * len(self.block_of)
            + sum(3 * len(e) for e in self.ends.values())
            + sum(len(c) for c in self.light_cuts.values())
            + sum(b.words() for b in self.blocks)
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "pairs": [list(p) for p in self.pairs],
            "base": [int(self.base[p]) for p in self.pairs],
            "heavy": [list(p) for p in self.heavy],
            "block_of": sorted([v, i] for v, i in self.block_of.items()),
            "ends": [sorted([i, a, b] for i, (a, b) in self.ends[p].items()) for p in self.pairs],
            "light": [sorted(self.light_cuts[p]) for p in self.pairs],
            "blocks": [b.to_dict() for b in self.blocks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> VertexFailOracle:
        pairs = tuple((s, t) for s, t in d["pairs"])
        return cls(
            d["n"],
            d["alpha"],
            pairs,
            {p: bool(b) for p, b in zip(pairs, d["base"])},
            tuple((s, t) for s, t in d["heavy"]),
            {v: i for v, i in d["block_of"]},
            {p: {i: (a, b) for i, a, b in e} for p, e in zip(pairs, d["ends"])},
            {p: frozenset(c) for p, c in zip(pairs, d["light"])},
            tuple(CutSetAPR.from_dict(b) for b in d["blocks"]),
        )


def build_vertex_ftro(g: DiGraph, pairs: Sequence[Sequence[int]]) -> VertexFailOracle:
    plist = list(dict.fromkeys((int(s), int(t)) for s, t in pairs))
    alpha = _isqrt_ceil(g.n)
    base: dict[Pair, bool] = {}
    cuts: dict[Pair, tuple[int, ...]] = {}
    for s, t in plist:
        g.check_vertex(s)
        g.check_vertex(t)
        try:
            cuts[(s, t)] = cut_elements(g, s, t).vertices
            base[(s, t)] = True
        except PreconditionError:
            base[(s, t)] = False

    heavy: list[Pair] = []
    block_of: dict[int, int] = {}
    parts: list[list[int]] = []
    for p in plist:
        if not base[p]:
            continue
        fresh = [v for v in cuts[p] if v not in block_of]
        if len(fresh) > alpha:
            for v in fresh:
                block_of[v] = len(parts)
            heavy.append(p)
            parts.append(fresh)
    blocks = tuple(build_cutset_apr(g, q[0], q[1], part) for q, part in zip(heavy, parts))

    ends: dict[Pair, dict[int, tuple[int, int]]] = {}
    light: dict[Pair, frozenset[int]] = {}
    for p in plist:
        span: dict[int, tuple[int, int]] = {}
        for v in cuts.get(p, ()):
            i = block_of.get(v)
            if i is not None:
                span[i] = (span[i][0], v) if i in span else (v, v)
        ends[p] = span
        light[p] = frozenset(v for v in cuts.get(p, ()) if v not in block_of)
    return VertexFailOracle(
        g.n, alpha, tuple(plist), base, tuple(heavy), block_of, ends, light, blocks
    )


# ---------------------------------------------------------------- edge failures


@dataclass
class EdgeFailOracle:
    n: int
    cut_edges: dict[tuple[int, int], int]
    """Every cut edge of some pair, mapped to its middle vertex or ``-1``."""
    inner: VertexFailOracle

    @property
    def c0(self) -> list[tuple[int, int]]:
        return sorted(e for e, mid in self.cut_edges.items() if mid >= 0)

    def query(self, pair: Sequence[int], e: Sequence[int] | None = None) -> bool:
        p = (int(pair[0]), int(pair[1]))
        if p not in self.inner.base:
            raise InputError(f"pair {p} was not given at build time")
        if e is None:
            return self.inner.base[p]
        a, b = int(e[0]), int(e[1])
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise InputError(f"edge {(a, b)} out of range for n={self.n}")
        if not self.inner.base[p]:
            return False
        mid = self.cut_edges.get((a, b))
        if mid is None:
            return True
        if mid >= 0:
            return self.inner.query(p, mid)
        return self.inner.query(p, a) or self.inner.query(p, b)

    def words(self) -> int:
        return 1 + 3 * len(self.cut_edges) + self.inner.words()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cut_edges": sorted([a, b, mid] for (a, b), mid in self.cut_edges.items()),
            "inner": self.inner.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> EdgeFailOracle:
        return cls(
            d["n"],
            {(a, b): mid for a, b, mid in d["cut_edges"]},
            VertexFailOracle.from_dict(d["inner"]),
        )


def build_edge_ftro(g: DiGraph, pairs: Sequence[Sequence[int]]) -> EdgeFailOracle:
    plist = list(dict.fromkeys((int(s), int(t)) for s, t in pairs))
    cut_ids: set[int] = set()
    for s, t in plist:
        g.check_vertex(s)
        g.check_vertex(t)
        if reaches(g, s, t):
            cut_ids.update(cut_elements(g, s, t).edges)
    c0 = set()
    for e in cut_ids:
        x, y = g.edges[e]
        if reaches(g, y, x) and not reaches(g, x, y, banned={e}):
            c0.add(e)
    if len(c0) > 2 * g.n:
        raise ContractViolation(f"|C0| = {len(c0)} exceeds 2n = {2 * g.n}")
    split, mid = split_edges(g, c0)
    inner = build_vertex_ftro(split, plist)
    table = {g.edges[e]: mid.get(e, -1) for e in cut_ids}
    return EdgeFailOracle(g.n, table, inner)

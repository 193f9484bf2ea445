"""Pairwise reachability oracle for up to two failed edges.

One slack level picks a segment length, hits the strand segments with a
small set of hub vertices and keeps, for every covered pair, a compressed
graph on its segment vertices.  Queries first try to route through a hub
that sits on a segment, then fall back to a from-``s`` oracle on the
compressed graph.  :func:`build_dual_oracle` lifts the slack levels to all
pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, RoutingError
from .framework import LiftedStructure, Pair, lift_oracle
from .graph import DiGraph, reach_set
from .providers import FROM_ROOT, TO_ROOT, Providers, SsFtro
from .skeleton import PairSkeleton, build_pair_skeleton
from .slack import build_skeletons, segments, select_covered

Edge = tuple[int, int]


def segment_length(n: int, num_pairs: int) -> int:
    root = math.isqrt(num_pairs - 1) + 1 if num_pairs > 1 else 1
    return max(1, -(-n // root))


def _failures(f1: Sequence[int] | None, f2: Sequence[int] | None) -> list[Edge]:
    return [(int(f[0]), int(f[1])) for f in (f1, f2) if f is not None]


# ---------------------------------------------------------------- compressed graph


@dataclass(frozen=True)
class AuxGraph:
    """Segment vertices of one pair with path and shortcut edges.

    ``vertices[i]`` is the original id of local vertex ``i``; local ids at or
    past ``len(vertices)`` are subdivision points for shortcuts that would
    otherwise duplicate a path edge.
    """

    graph: DiGraph
    vertices: tuple[int, ...]
    path_edges: tuple[Edge, ...]
    aux_edges: tuple[Edge, ...]
    mids: dict[Edge, int]

    @property
    def local(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def vertex_set(self) -> set[int]:
        return set(self.vertices)


def aux_graph(sk: PairSkeleton, seg_len: int) -> AuxGraph:
    if seg_len < 1:
        raise InputError(f"segment length must be positive, got {seg_len}")
    segs = segments(sk, seg_len)
    order = tuple(dict.fromkeys(v for seg in segs for v in seg))
    local = {v: i for i, v in enumerate(order)}
    strand_pairs = {sk.g.edges[e] for e in sk.strand_edge_set}
    path_edges = list(
        dict.fromkeys((a, b) for seg in segs for a, b in zip(seg, seg[1:]) if (a, b) in strand_pairs)
    )

    off = [e for e in sk.kept_edges if e not in sk.strand_edge_set]
    h = DiGraph(sk.g.n, sorted(sk.g.edges[e] for e in off))
    aux_edges = []
    for u in order:
        seen = reach_set(h, u)
        for v in order:
            if v != u and seen[v]:
                aux_edges.append((u, v))

    edges = [(local[a], local[b]) for a, b in path_edges]
    taken = set(path_edges)
    mids: dict[Edge, int] = {}
    nxt = len(order)
    for a, b in aux_edges:
        if (a, b) in taken:
            mids[(a, b)] = nxt
            edges += [(local[a], nxt), (nxt, local[b])]
            nxt += 1
        else:
            edges.append((local[a], local[b]))
    return AuxGraph(DiGraph(nxt, edges), order, tuple(path_edges), tuple(aux_edges), mids)


# ---------------------------------------------------------------- slack level


@dataclass
class PairRecord:
    """What one covered pair keeps: hubs, segment index and the compressed oracle."""

    reachable: bool
    hubs: tuple[int, ...] = ()
    local: dict[int, int] | None = None
    strand_local: frozenset[Edge] = frozenset()
    path_local: frozenset[Edge] = frozenset()
    mids: dict[Edge, int] | None = None
    oracle: SsFtro | None = None

    def words(self) -> int:
        if not self.reachable or self.oracle is None:
            return 1
        return (
            1
            + len(self.hubs)
            + 2 * len(self.local)
            + 2 * len(self.strand_local)
            + 2 * len(self.path_local)
            + 3 * len(self.mids)
            + self.oracle.words()
        )

    def translate(self, failures: Iterable[Edge]) -> frozenset[int]:
        """Failures as edge ids of the compressed oracle's graph."""
        local, og = self.local, self.oracle.graph
        banned = set()
        for a, b in failures:
            if a not in local or b not in local:
                continue
            la, lb = local[a], local[b]
            if (la, lb) in self.strand_local:
                if (la, lb) not in self.path_local:
                    continue
                target = (la, lb)
            elif (la, lb) in self.mids:
                target = (la, self.mids[(la, lb)])
            else:
                target = (la, lb)
            if og.has_edge(*target):
                banned.add(og.edge_id(*target))
        return frozenset(banned)

    def to_dict(self) -> dict:
        if not self.reachable or self.oracle is None:
            return {"reachable": int(self.reachable)}
        return {
            "reachable": 1,
            "hubs": list(self.hubs),
            "local": sorted([v, i] for v, i in self.local.items()),
            "strand": sorted(list(e) for e in self.strand_local),
            "path": sorted(list(e) for e in self.path_local),
            "mids": sorted([a, b, m] for (a, b), m in self.mids.items()),
            "oracle": self.oracle.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> PairRecord:
        if "oracle" not in d:
            return cls(bool(d["reachable"]))
        return cls(
            True,
            tuple(d["hubs"]),
            {v: i for v, i in d["local"]},
            frozenset((a, b) for a, b in d["strand"]),
            frozenset((a, b) for a, b in d["path"]),
            {(a, b): m for a, b, m in d["mids"]},
            SsFtro.from_dict(d["oracle"]),
        )


@dataclass
class DualOracleSlack:
    seg_len: int
    hitting_set: tuple[int, ...]
    into: dict[int, SsFtro]
    out_of: dict[int, SsFtro]
    records: dict[Pair, PairRecord]

    @property
    def covered(self) -> list[Pair]:
        return list(self.records)

    def query(self, pair: Sequence[int], f1: Sequence[int] | None = None,
              f2: Sequence[int] | None = None) -> bool:
        p = (int(pair[0]), int(pair[1]))
        rec = self.records.get(p)
        if rec is None:
            raise RoutingError(f"pair {p} is not covered by this level")
        fails = _failures(f1, f2)
        if not rec.reachable:
            return False
        if p[0] == p[1]:
            return True
        for v in rec.hubs:
            if self.into[v].query(p[0], fails) and self.out_of[v].query(p[1], fails):
                return True
        banned = rec.translate(fails)
        return rec.oracle.query_ids(rec.local[p[1]], banned)

    def words(self) -> int:
        return (
            1
            + len(self.hitting_set)
            + sum(o.words() for o in self.into.values())
            + sum(o.words() for o in self.out_of.values())
            + sum(2 + r.words() for r in self.records.values())
        )

    def to_dict(self) -> dict:
        return {
            "seg_len": self.seg_len,
            "hitting_set": list(self.hitting_set),
            "into": [self.into[v].to_dict() for v in self.hitting_set],
            "out": [self.out_of[v].to_dict() for v in self.hitting_set],
            "records": [[s, t, r.to_dict()] for (s, t), r in self.records.items()],
        }

    @classmethod
    def from_dict(cls, d: dict) -> DualOracleSlack:
        chosen = tuple(d["hitting_set"])
        return cls(
            d["seg_len"],
            chosen,
            {v: SsFtro.from_dict(x) for v, x in zip(chosen, d["into"])},
            {v: SsFtro.from_dict(x) for v, x in zip(chosen, d["out"])},
            {(s, t): PairRecord.from_dict(r) for s, t, r in d["records"]},
        )


def build_dual_oracle_slack(
    g: DiGraph,
    pairs: Sequence[Pair],
    providers: Providers | None = None,
    skeletons: dict[Pair, PairSkeleton | None] | None = None,
) -> DualOracleSlack:
    if not pairs:
        raise InputError("pairs must be non-empty")
    providers = providers or Providers()
    seg_len = segment_length(g.n, len(pairs))
    sel = select_covered(g, pairs, seg_len, skeletons)
    chosen = sel.hitting_set
    into = {v: providers.ftro(g, v, TO_ROOT) for v in chosen}
    out_of = {v: providers.ftro(g, v, FROM_ROOT) for v in chosen}
    records: dict[Pair, PairRecord] = {}
    for p in sel.covered:
        sk = sel.skeletons[p]
        if sk is None:
            records[p] = PairRecord(False)
            continue
        aux = aux_graph(sk, seg_len)
        local = aux.local
        strand_pairs = {sk.g.edges[e] for e in sk.strand_edge_set}
        strand_local = frozenset(
            (local[a], local[b]) for a, b in strand_pairs if a in local and b in local
        )
        path_local = frozenset((local[a], local[b]) for a, b in aux.path_edges)
        mids = {(local[a], local[b]): m for (a, b), m in aux.mids.items()}
        oracle = providers.ftro(aux.graph, local[p[0]], FROM_ROOT)
        records[p] = PairRecord(
            True, sel.hubs.get(p, ()), local, strand_local, path_local, mids, oracle
        )
    return DualOracleSlack(seg_len, chosen, into, out_of, records)


# ---------------------------------------------------------------- lifted oracle


class SubgraphOracle:
    """Base-case oracle: a stored subgraph searched directly."""

    def __init__(self, pair: Pair, graph: DiGraph):
        self.pair = pair
        self.graph = graph

    def query(self, pair: Sequence[int], f1: Sequence[int] | None = None,
              f2: Sequence[int] | None = None) -> bool:
        s, t = int(pair[0]), int(pair[1])
        banned = {self.graph.edge_id(a, b) for a, b in _failures(f1, f2) if self.graph.has_edge(a, b)}
        return bool(reach_set(self.graph, s, banned)[t])

    def words(self) -> int:
        return 3 + 2 * self.graph.m

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
        }

    @classmethod
    def from_dict(cls, d: dict) -> SubgraphOracle:
        return cls(tuple(d["pair"]), DiGraph(d["n"], d["edges"]))


def _skeleton_oracle(g: DiGraph, p: Pair) -> SubgraphOracle:
    if p[0] != p[1] and not reach_set(g, p[0])[p[1]]:
        return SubgraphOracle(p, DiGraph(g.n))
    return SubgraphOracle(p, build_pair_skeleton(g, *p).subgraph().as_digraph())


class DualOracle:
    def __init__(self, n: int, lifted: LiftedStructure):
        self.n = n
        self.lifted = lifted

    def query(self, pair: Sequence[int], f1: Sequence[int] | None = None,
              f2: Sequence[int] | None = None) -> bool:
        p = (int(pair[0]), int(pair[1]))
        try:
            level = self.lifted.level_for(p)
        except RoutingError:
            raise InputError(f"pair {p} was not given at build time") from None
        for a, b in _failures(f1, f2):
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise InputError(f"edge {(a, b)} out of range for n={self.n}")
        return level.query(p, f1, f2)

    @property
    def pairs(self) -> list[Pair]:
        return list(self.lifted.pair_index)

    def words(self) -> int:
        return 1 + self.lifted.words()

    def to_dict(self) -> dict:
        levels = []
        for lv in self.lifted.levels:
            kind = "slack" if isinstance(lv, DualOracleSlack) else "base"
            levels.append({"kind": kind, "body": lv.to_dict()})
        return {
            "n": self.n,
            "levels": levels,
            "index": [[s, t, i] for (s, t), i in self.lifted.pair_index.items()],
        }

    @classmethod
    def from_dict(cls, d: dict) -> DualOracle:
        levels = []
        for lv in d["levels"]:
            load = DualOracleSlack if lv["kind"] == "slack" else SubgraphOracle
            levels.append(load.from_dict(lv["body"]))
        index = {(s, t): i for s, t, i in d["index"]}
        served: list[tuple[Pair, ...]] = [() for _ in levels]
        for p, i in index.items():
            served[i] += (p,)
        return cls(d["n"], LiftedStructure(levels, served, index))


def build_dual_oracle(
    g: DiGraph, pairs: Iterable[Sequence[int]], providers: Providers | None = None
) -> DualOracle:
    providers = providers or Providers()
    plist = [(int(s), int(t)) for s, t in pairs]
    for s, t in plist:
        g.check_vertex(s)
        g.check_vertex(t)
    skeletons = build_skeletons(g, list(dict.fromkeys(plist)))

    def slack(graph: DiGraph, remaining: list[Pair]):
        level = build_dual_oracle_slack(graph, remaining, providers, skeletons)
        return level, level.covered

    return DualOracle(g.n, lift_oracle(slack, _skeleton_oracle, g, plist))

"""Linear-size dual-failure preserver for a single (s, t) pair.

The skeleton keeps two outer strands and, for each strand vertex ``v`` and
each strand ``i``, possibly the *coupling path* from the earliest vertex of
strand ``i`` that reaches ``v`` without using strand edges.  Only the
coupling paths that survive the "every later vertex couples strictly later"
filter are kept, which bounds the coupling in-degree of any vertex by 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError
from .graph import DiGraph, Subgraph, bfs_path, path_vertices, reach_set, reaches, strands


@dataclass(frozen=True)
class CouplingRecord:
    anchor: int
    edges: tuple[int, ...]
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class NicePath:
    i: int
    j: int
    u: int
    u_prime: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True)
class PairSkeleton:
    g: DiGraph
    s: int
    t: int
    strand1: tuple[int, ...]
    strand2: tuple[int, ...]
    strand_edges1: tuple[int, ...]
    strand_edges2: tuple[int, ...]
    couplings: dict[tuple[int, int], CouplingRecord]
    essential: frozenset[tuple[int, int]]
    kept_edges: frozenset[int]

    def strand(self, i: int) -> tuple[int, ...]:
        return self.strand1 if i == 1 else self.strand2

    def strand_edges(self, i: int) -> tuple[int, ...]:
        return self.strand_edges1 if i == 1 else self.strand_edges2

    @property
    def strand_edge_set(self) -> frozenset[int]:
        return frozenset(self.strand_edges1) | frozenset(self.strand_edges2)

    def subgraph(self) -> Subgraph:
        return Subgraph(self.g, self.kept_edges)

    def coupling_in_degree(self) -> list[int]:
        deg = [0] * self.g.n
        for e in self.kept_edges - self.strand_edge_set:
            deg[self.g.edges[e][1]] += 1
        return deg

    def essential_paths(self) -> list[tuple[tuple[int, int], CouplingRecord]]:
        return [(key, self.couplings[key]) for key in sorted(self.essential)]


def build_pair_skeleton(g: DiGraph, s: int, t: int) -> PairSkeleton:
    g.check_vertex(s)
    g.check_vertex(t)
    if not reaches(g, s, t):
        raise PreconditionError(f"{t} is not reachable from {s}")
    sp = strands(g, s, t)
    strand_v = {1: sp.p1, 2: sp.p2}
    pos = {i: {v: k for k, v in enumerate(strand_v[i])} for i in (1, 2)}
    banned = sp.edge_set()

    # coupling point of v on strand i = earliest strand-i vertex reaching v
    # in g minus all strand edges (v itself counts when v lies on strand i)
    anchor: dict[tuple[int, int], int] = {}
    targets = set(sp.p1) | set(sp.p2)
    for i in (1, 2):
        pending = set(targets)
        for u in strand_v[i]:
            if not pending:
                break
            seen = reach_set(g, u, banned)
            hit = [v for v in pending if seen[v]]
            for v in hit:
                anchor[(v, i)] = u
            pending.difference_update(hit)

    # essential filter: (v, i) survives if every later v' on v's strand has
    # a strictly later coupling point on strand i (undefined counts as +inf)
    essential: set[tuple[int, int]] = set()
    inf = float("inf")
    for i in (1, 2):
        for j in (1, 2):
            best_after = inf
            for v in reversed(strand_v[j]):
                a = anchor.get((v, i))
                ap = inf if a is None else pos[i][a]
                if a is not None and ap < best_after:
                    essential.add((v, i))
                best_after = min(best_after, ap)

    couplings: dict[tuple[int, int], CouplingRecord] = {}
    for (v, i), u in anchor.items():
        path = bfs_path(g, u, v, banned)
        assert path is not None
        couplings[(v, i)] = CouplingRecord(u, tuple(path), path_vertices(g, u, path))

    kept = set(banned)
    for key in essential:
        kept.update(couplings[key].edges)
    return PairSkeleton(
        g, s, t, sp.p1, sp.p2, sp.e1, sp.e2, couplings, frozenset(essential), frozenset(kept)
    )


def _avoids(edges: Iterable[int], failed: frozenset[int]) -> bool:
    return failed.isdisjoint(edges)


def find_nice_path(sk: PairSkeleton, f: Iterable[Sequence[int]]) -> NicePath | None:
    """A strand prefix, one essential coupling path and a strand suffix avoiding ``f``."""
    failed = sk.g.edge_ids(f)
    return find_nice_path_ids(sk, failed)


def find_nice_path_ids(sk: PairSkeleton, failed: frozenset[int]) -> NicePath | None:
    for i in (1, 2):
        if _avoids(sk.strand_edges(i), failed):
            return NicePath(i, i, sk.s, sk.s, sk.strand(i), sk.strand_edges(i))
    for (v, i), rec in sk.essential_paths():
        if not _avoids(rec.edges, failed):
            continue
        si = sk.strand(i)
        ui = si.index(rec.anchor)
        prefix = sk.strand_edges(i)[:ui]
        if not _avoids(prefix, failed):
            continue
        for j in (1, 2):
            sj = sk.strand(j)
            if v not in sj:
                continue
            vj = sj.index(v)
            suffix = sk.strand_edges(j)[vj:]
            if _avoids(suffix, failed):
                vertices = si[: ui + 1] + rec.vertices[1:] + sj[vj + 1 :]
                return NicePath(i, j, rec.anchor, v, vertices, prefix + rec.edges + suffix)
    return None

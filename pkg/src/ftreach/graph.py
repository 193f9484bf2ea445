"""Directed graphs and the primitive reachability, cut and flow routines.

Vertices are the integers ``0..n-1``.  Edges are numbered ``0..m-1`` in
insertion order and are also addressable by their ``(tail, head)`` pair,
which is unique because graphs are simple.  Every routine here is a pure
function of an immutable :class:`DiGraph`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError, PreconditionError

Edge = tuple[int, int]


class DiGraph:
    """Simple directed graph with dual adjacency lists.

    ``out_adj[v]`` and ``in_adj[v]`` hold ``(edge_id, neighbour)`` tuples in
    increasing edge-id order.
    """

    __slots__ = ("n", "edges", "out_adj", "in_adj", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        self.n = n
        edge_list: list[Edge] = []
        index: dict[Edge, int] = {}
        out_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        in_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop ({u},{v}) not allowed")
            if (u, v) in index:
                raise InputError(f"duplicate edge ({u},{v})")
            eid = len(edge_list)
            index[(u, v)] = eid
            edge_list.append((u, v))
            out_adj[u].append((eid, v))
            in_adj[v].append((eid, u))
        self.edges: tuple[Edge, ...] = tuple(edge_list)
        self.out_adj = tuple(tuple(a) for a in out_adj)
        self.in_adj = tuple(tuple(a) for a in in_adj)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[(u, v)]
        except KeyError:
            raise InputError(f"edge ({u},{v}) not in graph") from None

    def edge_ids(self, failures: Iterable[Sequence[int]]) -> frozenset[int]:
        """Translate ``(tail, head)`` failures into a set of edge ids."""
        return frozenset(self.edge_id(int(f[0]), int(f[1])) for f in failures)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range for n={self.n}")

    def reverse(self) -> DiGraph:
        """Graph with every edge flipped; edge ids are preserved."""
        return DiGraph(self.n, [(v, u) for u, v in self.edges])

    def subgraph(self, kept: Iterable[int]) -> Subgraph:
        return Subgraph(self, frozenset(kept))


@dataclass(frozen=True)
class Subgraph:
    """A subset of a parent graph's edges over the full parent vertex set."""

    parent: DiGraph
    kept: frozenset[int]

    def __post_init__(self):
        m = self.parent.m
        for e in self.kept:
            if not 0 <= e < m:
                raise InputError(f"edge id {e} not in parent graph")

    def __len__(self) -> int:
        return len(self.kept)

    def __or__(self, other: Subgraph) -> Subgraph:
        if other.parent is not self.parent and other.parent != self.parent:
            raise InputError("cannot union subgraphs of different parents")
        return Subgraph(self.parent, self.kept | other.kept)

    def edge_list(self) -> list[Edge]:
        return [self.parent.edges[e] for e in sorted(self.kept)]

    def as_digraph(self) -> DiGraph:
        """Materialise the subgraph; edges keep their relative parent order."""
        return DiGraph(self.parent.n, self.edge_list())


# ---------------------------------------------------------------- reachability


def reach_set(
    g: DiGraph,
    source: int,
    banned: frozenset[int] | set[int] = frozenset(),
    removed: frozenset[int] | set[int] = frozenset(),
    reverse: bool = False,
) -> bytearray:
    """Vertices reachable from ``source`` (or reaching it, if ``reverse``).

    ``banned`` are edge ids and ``removed`` vertex ids deleted from ``g``.
    """
    adj = g.in_adj if reverse else g.out_adj
    seen = bytearray(g.n)
    if source in removed:
        return seen
    seen[source] = 1
    stack = [source]
    while stack:
        v = stack.pop()
        for eid, w in adj[v]:
            if not seen[w] and eid not in banned and w not in removed:
                seen[w] = 1
                stack.append(w)
    return seen


def reaches(
    g: DiGraph,
    s: int,
    t: int,
    banned: frozenset[int] | set[int] = frozenset(),
    removed: frozenset[int] | set[int] = frozenset(),
) -> bool:
    """Edge-id level reachability test; ``s == t`` is reachable unless removed."""
    if s in removed or t in removed:
        return False
    if s == t:
        return True
    adj = g.out_adj
    seen = bytearray(g.n)
    seen[s] = 1
    stack = [s]
    while stack:
        v = stack.pop()
        for eid, w in adj[v]:
            if not seen[w] and eid not in banned and w not in removed:
                if w == t:
                    return True
                seen[w] = 1
                stack.append(w)
    return False


def reachable(g: DiGraph, s: int, t: int, f: Iterable[Sequence[int]] = ()) -> bool:
    """True iff ``t`` is reachable from ``s`` in ``g`` minus the failed edges ``f``."""
    g.check_vertex(s)
    g.check_vertex(t)
    return reaches(g, s, t, g.edge_ids(f))


def bfs_path(
    g: DiGraph,
    s: int,
    t: int,
    banned: frozenset[int] | set[int] = frozenset(),
) -> list[int] | None:
    """Shortest ``s``-``t`` path as a list of edge ids, or None.

    Neighbours are scanned in edge-id order and the first discovery wins, so
    the result is deterministic.
    """
    if s == t:
        return []
    parent_edge = [-1] * g.n
    seen = bytearray(g.n)
    seen[s] = 1
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for eid, w in g.out_adj[v]:
            if seen[w] or eid in banned:
                continue
            seen[w] = 1
            parent_edge[w] = eid
            if w == t:
                path = []
                x = t
                while x != s:
                    e = parent_edge[x]
                    path.append(e)
                    x = g.edges[e][0]
                path.reverse()
                return path
            queue.append(w)
    return None


def distance(g: DiGraph, s: int, t: int, banned: frozenset[int] | set[int] = frozenset()) -> float:
    """Number of edges on a shortest path, ``inf`` when unreachable."""
    p = bfs_path(g, s, t, banned)
    return float("inf") if p is None else len(p)


def path_vertices(g: DiGraph, s: int, edge_path: Sequence[int]) -> tuple[int, ...]:
    return (s,) + tuple(g.edges[e][1] for e in edge_path)


def strongly_connected(g: DiGraph, u: int, v: int, removed: Iterable[int] = ()) -> bool:
    """True iff ``u`` and ``v`` reach each other once ``removed`` vertices are deleted."""
    removed = frozenset(removed)
    if u in removed or v in removed:
        raise InputError(f"query vertex in removed set: u={u}, v={v}")
    return reaches(g, u, v, removed=removed) and reaches(g, v, u, removed=removed)


# ---------------------------------------------------------------- cut elements


@dataclass(frozen=True)
class CutElements:
    """(s,t) cut vertices and cut edges, in the order they appear on any s-t path."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def cut_elements(
    g: DiGraph, s: int, t: int, banned: frozenset[int] | set[int] = frozenset()
) -> CutElements:
    """Naive cut-vertex / cut-edge computation, one probe per candidate."""
    g.check_vertex(s)
    g.check_vertex(t)
    path = bfs_path(g, s, t, banned)
    if path is None:
        raise PreconditionError(f"{t} is not reachable from {s}")
    verts = path_vertices(g, s, path)
    if s == t:
        return CutElements((s,), ())
    cut_v = [s]
    for v in verts[1:-1]:
        if not reaches(g, s, t, banned, removed={v}):
            cut_v.append(v)
    cut_v.append(t)
    cut_e = []
    for e in path:
        if not reaches(g, s, t, banned | {e}):
            cut_e.append(e)
    return CutElements(tuple(cut_v), tuple(cut_e))


# ---------------------------------------------------------------- strands


@dataclass(frozen=True)
class StrandPair:
    """Two s-t paths that share only (s,t) cut edges and cut vertices."""

    p1: tuple[int, ...]
    p2: tuple[int, ...]
    e1: tuple[int, ...]
    e2: tuple[int, ...]
    shared: tuple[int, ...]

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.e1) | frozenset(self.e2)


class _FlowNetwork:
    """Residual network used by :func:`strands`; arcs are stored in pairs."""

    def __init__(self, size: int):
        self.head: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(size)]

    def add(self, u: int, v: int, cap: int) -> int:
        a = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.adj[u].append(a)
        self.adj[v].append(a + 1)
        return a

    def augment(self, source: int, sink: int) -> bool:
        pred = [-1] * len(self.adj)
        seen = bytearray(len(self.adj))
        seen[source] = 1
        queue = deque([source])
        while queue and not seen[sink]:
            x = queue.popleft()
            for a in self.adj[x]:
                y = self.head[a]
                if self.cap[a] > 0 and not seen[y]:
                    seen[y] = 1
                    pred[y] = a
                    queue.append(y)
        if not seen[sink]:
            return False
        y = sink
        while y != source:
            a = pred[y]
            self.cap[a] -= 1
            self.cap[a ^ 1] += 1
            y = self.head[a ^ 1]
        return True


def _loop_erase(g: DiGraph, s: int, walk: list[int]) -> list[int]:
    """Drop cycles from an edge walk that starts at ``s``."""
    out: list[int] = []
    pos = {s: 0}
    for e in walk:
        w = g.edges[e][1]
        if w in pos:
            cut = pos[w]
            for dropped in out[cut:]:
                del pos[g.edges[dropped][1]]
            del out[cut:]
        else:
            out.append(e)
            pos[w] = len(out)
    return out


def strands(
    g: DiGraph, s: int, t: int, banned: frozenset[int] | set[int] = frozenset()
) -> StrandPair:
    """Two s-t paths meeting only at (s,t) cut elements of ``g`` minus ``banned``.

    Vertex-split flow network: cut vertices and cut edges get capacity 2,
    everything else capacity 1.  A flow of value 2 exists because any single
    unit bottleneck would itself be a cut element.
    """
    cuts = cut_elements(g, s, t, banned)
    if s == t:
        return StrandPair((s,), (s,), (), (), (s,))
    cut_v = set(cuts.vertices)
    cut_e = set(cuts.edges)
    net = _FlowNetwork(2 * g.n)
    for v in range(g.n):
        net.add(2 * v, 2 * v + 1, 2 if v in cut_v else 1)
    arc_edge: dict[int, int] = {}
    for eid, (u, v) in enumerate(g.edges):
        if eid in banned:
            continue
        a = net.add(2 * u + 1, 2 * v, 2 if eid in cut_e else 1)
        arc_edge[a] = eid
    source, sink = 2 * s + 1, 2 * t
    for _ in range(2):
        if not net.augment(source, sink):
            raise AssertionError("strand flow below 2; cut computation inconsistent")
    # flow on a forward arc = original capacity - residual capacity
    flow = {a: net.cap[a ^ 1] for a in range(0, len(net.head), 2) if net.cap[a ^ 1] > 0}
    paths = []
    for _ in range(2):
        walk = []
        x = source
        while x != sink:
            a = min(b for b in net.adj[x] if b % 2 == 0 and flow.get(b, 0) > 0)
            flow[a] -= 1
            if a in arc_edge:
                walk.append(arc_edge[a])
            x = net.head[a]
        paths.append(_loop_erase(g, s, walk))
    e1, e2 = paths
    p1, p2 = path_vertices(g, s, e1), path_vertices(g, s, e2)
    shared = tuple(v for v in p1 if v in set(p2))
    return StrandPair(p1, p2, tuple(e1), tuple(e2), shared)


# ---------------------------------------------------------------- splitting


def split_vertices(g: DiGraph) -> tuple[DiGraph, dict[int, tuple[int, int]]]:
    """Replace every vertex ``v`` by the edge ``(2v, 2v+1)``.

    Edge ``(u, v)`` becomes ``(2u+1, 2v)``.  Failing vertex ``v`` in ``g`` is
    failing edge ``(2v, 2v+1)`` in the result.
    """
    mapping = {v: (2 * v, 2 * v + 1) for v in range(g.n)}
    edges = [(2 * v, 2 * v + 1) for v in range(g.n)]
    edges += [(2 * u + 1, 2 * v) for u, v in g.edges]
    return DiGraph(2 * g.n, edges), mapping


def split_edges(g: DiGraph, e0: Iterable[int]) -> tuple[DiGraph, dict[int, int]]:
    """Subdivide every edge in ``e0`` with a fresh middle vertex.

    Middle vertices are numbered ``n, n+1, ...`` in increasing edge-id order;
    the other edges keep their relative order.
    """
    chosen = sorted(set(e0))
    for e in chosen:
        if not 0 <= e < g.m:
            raise InputError(f"unknown edge id {e}")
    mid = {e: g.n + i for i, e in enumerate(chosen)}
    edges: list[Edge] = []
    for eid, (u, v) in enumerate(g.edges):
        if eid in mid:
            edges += [(u, mid[eid]), (mid[eid], v)]
        else:
            edges.append((u, v))
    return DiGraph(g.n + len(chosen), edges), mid


# ---------------------------------------------------------------- text formats


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.split("\n"), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> DiGraph:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``."""
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty graph file")
    lineno, head = lines[0]
    if len(head) != 2:
        raise InputError(f"line {lineno}: header must be 'n m'")
    n, m = _ints(head, lineno)
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, tokens in body:
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: edge lines must be 'u v'")
        edges.append(_ints(tokens, lineno))
    return DiGraph(n, edges)


def format_graph(g: DiGraph, edges: Iterable[Edge] | None = None) -> str:
    edge_list = list(g.edges if edges is None else edges)
    out = [f"{g.n} {len(edge_list)}"]
    out += [f"{u} {v}" for u, v in edge_list]
    return "\n".join(out) + "\n"


def parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for lineno, tokens in _content_lines(text):
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: pair lines must be 's t'")
        s, t = _ints(tokens, lineno)
        pairs.append((s, t))
    return pairs


def format_pairs(pairs: Iterable[tuple[int, int]]) -> str:
    return "".join(f"{s} {t}\n" for s, t in pairs)

import pytest
from helpers import brute
from hypothesis import given, settings
from hypothesis import strategies as st

from ftreach.errors import InputError, PreconditionError
from ftreach.graph import (
    DiGraph, bfs_path, cut_elements, format_graph, format_pairs, parse_graph, parse_pairs,
    path_vertices, reach_set, reachable, split_edges, split_vertices, strands, strongly_connected,
)


def edge_tuple(g, ids):
    return tuple(g.edges[e] for e in ids)


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    cells = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.lists(st.sampled_from(cells), unique=True, max_size=3 * n))
    return DiGraph(n, edges)


class TestDiGraph:
    def test_adjacency_and_ids(self, diamond):
        assert diamond.m == 4
        assert diamond.edge_id(1, 3) == 1
        assert diamond.has_edge(0, 2) and not diamond.has_edge(2, 0)
        assert [w for _, w in diamond.out_adj[0]] == [1, 2]

    def test_rejects_bad_edges(self):
        with pytest.raises(InputError):
            DiGraph(2, [(0, 2)])
        with pytest.raises(InputError):
            DiGraph(2, [(0, 1), (0, 1)])

    def test_unknown_edge(self, chain3):
        with pytest.raises(InputError):
            chain3.edge_id(2, 0)

    def test_reverse(self, chain3):
        assert chain3.reverse().edges == ((1, 0), (2, 1))

    def test_subgraph_edge_list(self, diamond):
        sub = diamond.subgraph([0, 1])
        assert sub.edge_list() == [(0, 1), (1, 3)]
        assert sub.as_digraph().n == 4


class TestReachability:
    def test_diamond(self, diamond):
        assert reachable(diamond, 0, 3)
        assert not reachable(diamond, 0, 3, [(0, 1), (0, 2)])
        assert reachable(diamond, 0, 3, [(0, 1)])

    def test_vertex_check(self, diamond):
        with pytest.raises(InputError):
            reachable(diamond, 0, 9)

    def test_reverse_reach(self, chain3):
        assert list(reach_set(chain3, 2, reverse=True)) == [1, 1, 1]

    def test_bfs_path_deterministic(self, diamond):
        assert bfs_path(diamond, 0, 3) == [0, 1]
        assert bfs_path(diamond, 0, 3, {0}) == [2, 3]
        assert bfs_path(diamond, 0, 0) == []
        assert path_vertices(diamond, 0, [2, 3]) == (0, 2, 3)

    def test_strongly_connected(self, cycle3, loopy):
        assert strongly_connected(cycle3, 0, 2)
        assert not strongly_connected(cycle3, 0, 2, {1})
        assert strongly_connected(loopy, 1, 2, {0})

    @given(small_graphs())
    @settings(max_examples=60, deadline=None)
    def test_reach_set_matches_closure(self, g):
        for s in range(g.n):
            seen = reach_set(g, s)
            for t in range(g.n):
                assert bool(seen[t]) == brute(g, s, t)


class TestCutElements:
    def test_chain(self, chain3):
        c = cut_elements(chain3, 0, 2)
        assert c.vertices == (0, 1, 2)
        assert edge_tuple(chain3, c.edges) == ((0, 1), (1, 2))

    def test_diamond(self, diamond):
        c = cut_elements(diamond, 0, 3)
        assert c.vertices == (0, 3) and c.edges == ()

    def test_loopy_edges_against_brute_force(self, loopy):
        c = cut_elements(loopy, 0, 3)
        assert c.vertices == (0, 1, 2, 3)
        expected = tuple(e for e in range(loopy.m) if not brute(loopy, 0, 3, {e}))
        assert c.edges == expected
        assert edge_tuple(loopy, c.edges) == ((0, 1), (1, 2), (2, 3))

    def test_unreachable(self, chain3):
        with pytest.raises(PreconditionError):
            cut_elements(chain3, 2, 0)

    @given(small_graphs())
    @settings(max_examples=60, deadline=None)
    def test_matches_single_removals(self, g):
        if not brute(g, 0, g.n - 1):
            return
        c = cut_elements(g, 0, g.n - 1)
        inner = {v for v in range(1, g.n - 1) if not brute(g, 0, g.n - 1, removed={v})}
        assert set(c.vertices) == inner | {0, g.n - 1}
        assert set(c.edges) == {e for e in range(g.m) if not brute(g, 0, g.n - 1, {e})}


class TestStrands:
    def test_diamond(self, diamond):
        sp = strands(diamond, 0, 3)
        assert {sp.p1, sp.p2} == {(0, 1, 3), (0, 2, 3)}

    def test_chain_and_loopy(self, chain3, loopy):
        assert strands(chain3, 0, 2).p1 == strands(chain3, 0, 2).p2 == (0, 1, 2)
        sp = strands(loopy, 0, 3)
        assert sp.p1 == sp.p2 == (0, 1, 2, 3)

    @given(small_graphs())
    @settings(max_examples=80, deadline=None)
    def test_share_only_cut_elements(self, g):
        s, t = 0, g.n - 1
        if not brute(g, s, t):
            return
        sp = strands(g, s, t)
        cuts = cut_elements(g, s, t)
        for p, es in ((sp.p1, sp.e1), (sp.p2, sp.e2)):
            assert p[0] == s and p[-1] == t and len(set(p)) == len(p)
            assert path_vertices(g, s, es) == p
        assert set(sp.p1) & set(sp.p2) == set(cuts.vertices)
        assert set(sp.e1) & set(sp.e2) == set(cuts.edges)


class TestSplitting:
    def test_split_vertices_counts(self, chain3, diamond):
        g, mapping = split_vertices(chain3)
        assert (g.n, g.m) == (6, 5)
        assert mapping[1] == (2, 3)
        g, _ = split_vertices(diamond)
        assert (g.n, g.m) == (8, 8)
        assert split_vertices(DiGraph(0, []))[0].n == 0

    def test_vertex_failure_becomes_edge_failure(self, diamond):
        g, mapping = split_vertices(diamond)
        a, b = mapping[1]
        assert brute(g, 1, 6, {g.edge_id(a, b)})

    def test_split_edges(self, chain3, diamond):
        g, mid = split_edges(chain3, [0])
        assert (g.n, g.m) == (4, 3) and mid == {0: 3}
        assert split_edges(diamond, [])[0].edges == diamond.edges
        g, _ = split_edges(diamond, [diamond.edge_id(0, 1), diamond.edge_id(2, 3)])
        assert (g.n, g.m) == (6, 6)


class TestTextFormat:
    def test_round_trip(self, loopy):
        text = format_graph(loopy)
        assert text.splitlines()[0] == "4 4"
        assert parse_graph(text).edges == loopy.edges
        assert parse_pairs(format_pairs([(0, 3), (1, 2)])) == [(0, 3), (1, 2)]

    def test_comments_and_blank_lines(self):
        g = parse_graph("# header\n2 1\n\n0 1  # edge\n")
        assert g.edges == ((0, 1),)

    @pytest.mark.parametrize("text", ["", "2\n", "2 2\n0 1\n", "2 1\n0 x\n", "2 1\n0 5\n"])
    def test_malformed(self, text):
        with pytest.raises(InputError):
            parse_graph(text)

    def test_bad_pairs(self):
        with pytest.raises(InputError):
            parse_pairs("0 1 2\n")

import pytest

from ftreach.errors import InputError
from ftreach.instances import (
    check, essential_edge_witness, gen_hard_dual, gen_hard_multi, gen_random_dag, gen_random_digraph,
)
from ftreach.verify import is_k_ftrs


@pytest.mark.parametrize("N,r,n,m", [(2, 2, 8, 12), (1, 1, 2, 1), (3, 2, 12, 20)])
def test_hard_counts(N, r, n, m):
    inst = gen_hard_dual(N, r)
    assert (inst.graph.n, inst.graph.m) == (n, m)
    assert len(inst.bipartite_edges()) == N * r * r
    assert len(inst.pairs) == r * r


def test_hard_layout():
    inst = gen_hard_dual(2, 2)
    assert inst.source(1, 1) == 0 and inst.sink(2, 2) == 7
    assert inst.layout()[(1, 2, "b")] == 6
    with pytest.raises(InputError):
        inst.source(3, 1)
    with pytest.raises(InputError):
        gen_hard_dual(0, 1)


def test_witnesses():
    inst = gen_hard_dual(2, 2)
    w = essential_edge_witness(inst, 1, 1, 2)
    assert w.edge == (0, 6) and w.pair == (0, 7) and w.failures == ((0, 1),)
    assert check(inst, w)
    w = essential_edge_witness(inst, 2, 1, 2)
    assert w.edge == (1, 7) and w.failures == ((6, 7),)
    assert check(inst, w)
    one = gen_hard_dual(1, 1)
    w = essential_edge_witness(one, 1, 1, 1)
    assert w.failures == () and check(one, w)


def test_every_bipartite_edge_is_essential():
    inst = gen_hard_dual(2, 3)
    g = inst.graph
    for u, v in inst.bipartite_edges():
        h = g.subgraph(frozenset(range(g.m)) - {g.edge_id(u, v)})
        assert not is_k_ftrs(g, h, inst.pairs, 2).passed


@pytest.mark.parametrize("rho,k,N,hubs", [(1, 1, 1, 2), (2, 1, 2, 4)])
def test_multi(rho, k, N, hubs):
    multi = gen_hard_multi(rho, k, N)
    assert len(multi.hubs) == hubs
    extra = multi.graph.m - multi.base.graph.m
    assert extra == hubs * (2 ** (k + 1) - 2)


def test_random_generators():
    assert gen_random_digraph(5, 0.0, 1).m == 0
    assert gen_random_dag(3, 1.0, 1).m == 3
    assert gen_random_digraph(10, 0.3, 42).edges == gen_random_digraph(10, 0.3, 42).edges
    with pytest.raises(InputError):
        gen_random_digraph(3, 1.5, 0)

import pytest
from helpers import all_failure_sets

from ftreach.dual_oracle import build_dual_oracle
from ftreach.errors import BudgetExceeded, InputError
from ftreach.instances import gen_hard_dual
from ftreach.single_oracle import build_edge_ftro, build_vertex_ftro
from ftreach.verify import (
    brute_reachable, brute_vertex_reachable, check_oracle, count_failure_sets, failure_sets, is_k_ftrs,
)


def test_identity_passes(diamond, chain3):
    assert is_k_ftrs(diamond, diamond.subgraph(range(4)), [(0, 3)], 2).passed
    assert is_k_ftrs(chain3, chain3.subgraph(range(2)), [(0, 2)], 2).passed


def test_missing_edge_detected(diamond):
    h = diamond.subgraph(frozenset(range(4)) - {diamond.edge_id(2, 3)})
    rep = is_k_ftrs(diamond, h, [(0, 3)], 1)
    assert [m[1] for m in rep.mismatches] == [((0, 1),), ((1, 3),)]
    assert rep.lines()[0].startswith("pair 0 3 F")


def test_enumeration_order():
    sets, sampled = failure_sets(4, 2)
    assert not sampled
    assert list(sets) == list(all_failure_sets(4, 2))
    assert count_failure_sets(4, 2) == 11


def test_budget_and_sampling():
    with pytest.raises(BudgetExceeded):
        failure_sets(50, 3, budget=100)
    a, sampled = failure_sets(50, 3, budget=100, seed=4, sample=30)
    b, _ = failure_sets(50, 3, budget=100, seed=4, sample=30)
    a, b = list(a), list(b)
    assert sampled and a == b and len(a) == 30 and a[0] == ()
    assert all(1 <= len(f) <= 3 and len(set(f)) == len(f) for f in a[1:])
    with pytest.raises(InputError):
        failure_sets(3, -1)


def test_brute_helpers(diamond, loopy):
    assert brute_reachable(diamond, 0, 3, [(0, 1)])
    assert not brute_vertex_reachable(loopy, 0, 3, 2)
    assert brute_vertex_reachable(loopy, 0, 3, None)


def test_foreign_subgraph(diamond, chain3):
    with pytest.raises(InputError):
        is_k_ftrs(diamond, chain3.subgraph([0]), [(0, 2)], 1)


def test_oracle_checks(diamond, loopy):
    rep = check_oracle(build_dual_oracle(diamond, [(0, 3)]), diamond, [(0, 3)], "edge", 2)
    assert rep.passed and rep.total_queries == 11
    rep = check_oracle(build_vertex_ftro(loopy, [(0, 3)]), loopy, [(0, 3)], "vertex", 1)
    assert rep.passed and rep.total_queries == 5
    inst = gen_hard_dual(2, 2)
    assert check_oracle(build_edge_ftro(inst.graph, inst.pairs), inst.graph, inst.pairs, "edge", 1).passed
    with pytest.raises(InputError):
        check_oracle(None, diamond, [(0, 3)], "vertex", 2)
    with pytest.raises(InputError):
        check_oracle(None, diamond, [(0, 3)], "path", 1)


class Liar:
    def query(self, pair, *failures):
        return True


def test_wrong_oracle_reported(diamond):
    rep = check_oracle(Liar(), diamond, [(0, 3)], "edge", 2)
    assert not rep.passed
    assert all(expected is False for _, _, expected, _ in rep.mismatches)

import random

import pytest
from helpers import backbone_graph, random_corpus, random_pairs

from ftreach.dual_oracle import (
    DualOracle, aux_graph, build_dual_oracle, build_dual_oracle_slack, segment_length,
)
from ftreach.errors import InputError, RoutingError
from ftreach.framework import ceil_fraction
from ftreach.instances import gen_hard_dual
from ftreach.skeleton import build_pair_skeleton
from ftreach.verify import check_oracle


def test_segment_length():
    assert segment_length(8, 4) == 4
    assert segment_length(10, 1) == 10
    assert segment_length(9, 10) == 3
    assert segment_length(1, 100) == 1


class TestAuxGraph:
    def test_diamond(self, diamond):
        aux = aux_graph(build_pair_skeleton(diamond, 0, 3), 10)
        assert set(aux.vertices) == {0, 1, 2, 3}
        assert len(aux.path_edges) == 4 and aux.aux_edges == ()

    def test_chain_short_segments(self, chain3):
        aux = aux_graph(build_pair_skeleton(chain3, 0, 2), 1)
        assert set(aux.vertices) == {0, 2}
        assert aux.path_edges == () and aux.aux_edges == ()

    def test_six_vertex_shortcut(self, six):
        aux = aux_graph(build_pair_skeleton(six, 0, 5), 2)
        assert (1, 4) in aux.aux_edges


class TestSlackLevel:
    def test_diamond_all_covered(self, diamond):
        slack = build_dual_oracle_slack(diamond, [(0, 3)])
        assert slack.covered == [(0, 3)]
        assert check_oracle(slack, diamond, [(0, 3)], "edge", 2).passed

    def test_hard_instance_coverage(self):
        inst = gen_hard_dual(2, 2)
        slack = build_dual_oracle_slack(inst.graph, list(inst.pairs))
        assert len(slack.covered) >= ceil_fraction(3, 5, 4)
        assert len(slack.covered) == 4

    def test_uncovered_pair(self, diamond):
        slack = build_dual_oracle_slack(diamond, [(0, 3)])
        with pytest.raises(RoutingError):
            slack.query((1, 3))


class TestDualOracle:
    def test_fixture_answers(self, diamond, chain3, six):
        o = build_dual_oracle(diamond, [(0, 3)])
        assert not o.query((0, 3), (0, 1), (2, 3))
        assert o.query((0, 3), (0, 1))
        assert not build_dual_oracle(chain3, [(0, 2)]).query((0, 2), (0, 1))
        assert build_dual_oracle(six, [(0, 5)]).query((0, 5), (1, 2), (3, 4))

    def test_hard_instance(self):
        inst = gen_hard_dual(2, 2)
        o = build_dual_oracle(inst.graph, inst.pairs)
        assert not o.query((0, 7), (0, 1), (6, 7))
        assert o.query((0, 7), (0, 4), (2, 3))
        assert check_oracle(o, inst.graph, inst.pairs, "edge", 2).passed

    def test_unknown_pair(self, diamond):
        with pytest.raises(InputError):
            build_dual_oracle(diamond, [(0, 3)]).query((1, 2))

    def test_failure_free_matches_reachability(self):
        for seed, g in random_corpus(30, max_n=9):
            pairs = random_pairs(random.Random(seed), g.n, 6)
            assert check_oracle(build_dual_oracle(g, pairs), g, pairs, "edge", 0).passed

    def test_long_strands_use_slack_levels(self):
        rng = random.Random(21)
        slack_served = 0
        for _ in range(12):
            g = backbone_graph(rng, 16, 10)
            pairs = [p for p in random_pairs(rng, g.n, 10) if p[0] != p[1]]
            o = build_dual_oracle(g, pairs)
            slack_served += sum(
                len(s) for lv, s in zip(o.lifted.levels, o.lifted.served) if hasattr(lv, "records")
            )
            rep = check_oracle(o, g, pairs, "edge", 2)
            assert rep.passed, rep.lines()[:3]
            back = DualOracle.from_dict(o.to_dict())
            assert check_oracle(back, g, pairs, "edge", 2, sample=400, budget=1).passed
        assert slack_served > 0

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftreach.errors import ContractViolation, InputError, RoutingError
from ftreach.framework import (
    LiftedStructure, SetFamily, ceil_fraction, coverage_ok, fractional_hitting_set, hitting_rounds,
    lift_oracle, lift_preserver, max_slack_levels,
)
from ftreach.graph import DiGraph, Subgraph
from ftreach.skeleton import build_pair_skeleton


class TestHittingSet:
    def test_small_family(self):
        res = fractional_hitting_set(SetFamily.of(4, [{0, 1}, {1, 2}, {2, 3}]), 2)
        assert res.chosen == (1, 2)
        assert res.hit_mask == (True, True, True)

    def test_singleton(self):
        res = fractional_hitting_set(SetFamily.of(1, [[0]]), 1)
        assert res.chosen == (0,) and res.hit_count == 1

    def test_disjoint_blocks(self):
        fam = SetFamily.of(1000, [range(10 * i, 10 * i + 10) for i in range(100)])
        res = fractional_hitting_set(fam, 10)
        assert len(res.chosen) <= 400
        assert res.hit_count == 100

    def test_short_set_rejected(self):
        with pytest.raises(InputError):
            fractional_hitting_set(SetFamily.of(4, [[0]]), 2)

    def test_out_of_universe(self):
        with pytest.raises(InputError):
            fractional_hitting_set(SetFamily.of(2, [[0, 5]]), 2)

    @given(st.integers(4, 200), st.integers(1, 12), st.integers(0, 10**6))
    @settings(max_examples=80, deadline=None)
    def test_bounds(self, n, k, seed):
        import random
        rng = random.Random(seed)
        k = min(k, n)
        sets = [rng.sample(range(n), rng.randint(k, n)) for _ in range(rng.randint(1, 4 * n))]
        res = fractional_hitting_set(SetFamily.of(n, sets), k)
        assert len(res.chosen) <= hitting_rounds(n, k) == math.ceil(4 * n / k)
        assert 10 * res.hit_count >= 9 * len(sets)
        picked = set(res.chosen)
        assert res.hit_mask == tuple(bool(picked & set(s)) for s in sets)


def fraction_builder(num=3, den=5):
    """Slack builder that covers exactly the first ceil(num/den) of the pairs."""
    calls = []

    def slack(g, pairs):
        take = ceil_fraction(num, den, len(pairs))
        calls.append(len(pairs))
        return Subgraph(g, frozenset()), pairs[:take]

    return slack, calls


def base_full(g, pair):
    return Subgraph(g, frozenset({0}))


class TestLifting:
    g = DiGraph(2, [(0, 1)])

    def test_empty(self):
        assert len(lift_preserver(fraction_builder()[0], base_full, self.g, [])) == 0

    def test_single_pair_goes_to_base(self, diamond):
        def base(g, p):
            return build_pair_skeleton(g, *p).subgraph()

        sub = lift_preserver(fraction_builder()[0], base, diamond, [(0, 3)])
        assert sub.kept == frozenset(range(4))

    def test_ten_pairs_levels(self):
        slack, calls = fraction_builder()
        lift_preserver(slack, base_full, self.g, [(i, i + 1) for i in range(10)])
        assert calls == [10, 4]
        assert len(calls) <= 5

    def test_sixteen_pairs_indexed_once(self):
        slack, _ = fraction_builder()
        pairs = [(i, i + 1) for i in range(16)]
        lifted = lift_oracle(slack, lambda g, p: ("base", p), self.g, pairs)
        assert len(lifted.levels) <= 7
        assert sorted(lifted.pair_index) == pairs
        assert sum(len(s) for s in lifted.served) == 16

    def test_routing(self):
        slack, _ = fraction_builder()
        lifted = lift_oracle(slack, lambda g, p: ("base", p), self.g, [(0, 1), (1, 2), (2, 3)])
        for p in [(0, 1), (1, 2), (2, 3)]:
            assert p in lifted.served[lifted.pair_index[p]]
            assert lifted.level_for(p) is lifted.levels[lifted.pair_index[p]]
        with pytest.raises(RoutingError):
            lifted.level_for((5, 6))

    def test_one_pair_base_level(self):
        lifted = lift_oracle(fraction_builder()[0], lambda g, p: p, self.g, [(0, 1)])
        assert lifted.levels == [(0, 1)] and lifted.pair_index == {(0, 1): 0}

    def test_stalled_builder(self):
        def lazy(g, pairs):
            return Subgraph(g, frozenset()), []

        with pytest.raises(ContractViolation):
            lift_preserver(lazy, base_full, self.g, [(0, 1), (1, 0)])

    def test_level_cap(self):
        def trickle(g, pairs):
            return Subgraph(g, frozenset()), pairs[:1]

        with pytest.raises(ContractViolation):
            lift_preserver(trickle, base_full, self.g, [(i, i) for i in range(40)])

    def test_cap_and_helpers(self):
        assert max_slack_levels(1) == 2
        assert max_slack_levels(10) == math.ceil(math.log(10, 2.5)) + 2
        assert ceil_fraction(3, 5, 4) == 3
        assert coverage_ok([(0, 1)] * 3, 5) and not coverage_ok([(0, 1)] * 2, 5)
        assert LiftedStructure([], []).words() == 0

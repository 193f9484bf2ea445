import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftreach.lca import RootedForest


def naive_ancestors(parent, v):
    out = [v]
    while parent[v] != -1:
        v = parent[v]
        out.append(v)
    return out


@st.composite
def forests(draw):
    n = draw(st.integers(1, 40))
    order = draw(st.permutations(range(n)))
    parent = [-1] * n
    for idx, v in enumerate(order):
        if idx and draw(st.booleans()):
            parent[v] = order[draw(st.integers(0, idx - 1))]
    return parent


@given(forests())
@settings(max_examples=80, deadline=None)
def test_against_naive(parent):
    f = RootedForest(parent)
    n = len(parent)
    rng = random.Random(n)
    for _ in range(30):
        u, v = rng.randrange(n), rng.randrange(n)
        au, av = naive_ancestors(parent, u), naive_ancestors(parent, v)
        common = [a for a in au if a in av]
        assert f.lca(u, v) == (common[0] if common else None)
        assert f.depth[u] == len(au) - 1
        assert f.root[u] == au[-1]
        d = rng.randint(0, f.depth[u])
        assert f.level_ancestor(u, d) == au[len(au) - 1 - d]


def test_chain():
    f = RootedForest([-1, 0, 1, 2])
    assert f.lca(3, 1) == 1
    assert f.level_ancestor(3, 1) == 1
    with pytest.raises(ValueError):
        f.level_ancestor(1, 3)


def test_cycle_rejected():
    with pytest.raises(ValueError):
        RootedForest([1, 0])

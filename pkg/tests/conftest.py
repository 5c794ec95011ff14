import random

import pytest
from hypothesis import strategies as st

from boolwidth.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def graph_and_cut(draw, min_n=2, max_n=10):
    g = draw(graphs(min_n, max_n))
    a = draw(st.integers(0, g.full))
    return g, a


def random_cuts(count, seed, max_n=16, max_a=12):
    """Seeded (graph, side) pairs: n in 2..max_n, edge probability in {0.2, 0.5, 0.8}."""
    from boolwidth.generators import gen_random

    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, max_n)
        g = gen_random(n, rng.choice([0.2, 0.5, 0.8]), seed * 1000 + i)
        k = rng.randint(1, min(max_a, n - 1))
        out.append((g, sum(1 << v for v in rng.sample(range(n), k))))
    return out


@pytest.fixture
def tmp_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path

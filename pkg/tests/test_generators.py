import pytest

from boolwidth.generators import (
    FamilySpec,
    gen_classic,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_grid,
    gen_hsu,
    gen_hsu_grid,
    gen_random,
    gen_rk,
    generate,
    grid_columns,
    grid_index,
    grid_rows,
)


def test_hsu_staircase():
    g, a = gen_hsu(3)
    assert g.n == 8 and list(a) == [0, 1, 2, 3]
    # a_i sees b_1..b_{i-1}
    for i in range(1, 5):
        assert [v - 4 + 1 for v in g.neighbors(i - 1)] == list(range(1, i))
    assert g.m == 6


def test_rk_odd_intersection():
    g, a = gen_rk(2)
    assert g.n == 8 and list(a) == [0, 1, 2, 3]
    assert g.has_edge(0b01, 4 + 0b11) and not g.has_edge(0b11, 4 + 0b11)
    assert g.degree(0) == 0
    with pytest.raises(ValueError):
        gen_rk(5)


def test_hsu_grid_structure():
    p, q = 3, 2
    g = gen_hsu_grid(p, q)
    v = lambda i, j: grid_index(p, i, j)
    assert g.has_edge(v(1, 1), v(2, 1))
    assert g.has_edge(v(1, 1), v(3, 2)) and g.has_edge(v(2, 1), v(2, 2))
    assert not g.has_edge(v(3, 1), v(2, 2))
    # p-1 path edges per column plus p(p+1)/2 staircase edges per column pair
    assert g.m == q * (p - 1) + (q - 1) * p * (p + 1) // 2


def test_grid_and_groups():
    g = gen_grid(3, 4)
    assert g.m == 4 * 2 + 3 * 3
    assert grid_columns(2, 2) == [[0, 1], [2, 3]]
    assert grid_rows(2, 2) == [[0, 2], [1, 3]]


def test_classic_families():
    assert gen_cycle(5).m == 5 and gen_complete(5).m == 10
    g, a = gen_complete_bipartite(2, 3)
    assert g.m == 6 and list(a) == [0, 1]
    assert gen_classic("path", 4).m == 3
    with pytest.raises(ValueError):
        gen_cycle(2)
    with pytest.raises(ValueError):
        gen_classic("petersen", 10)


def test_random_is_reproducible():
    assert gen_random(12, 0.4, 7) == gen_random(12, 0.4, 7)
    assert gen_random(12, 0.4, 7) != gen_random(12, 0.4, 8)
    assert gen_random(6, 0.0, 1).m == 0 and gen_random(6, 1.0, 1).m == 15
    with pytest.raises(ValueError):
        gen_random(5, 0.5, None)
    with pytest.raises(ValueError):
        gen_random(5, 1.5, 0)


def test_generate_from_spec():
    g, a = generate(FamilySpec("hsu", {"k": 2}))
    assert g.n == 6 and len(a) == 3
    g, a = generate(FamilySpec("random", {"n": 5, "p_edge": 0.5}, seed=3))
    assert a is None and g == gen_random(5, 0.5, 3)
    with pytest.raises(ValueError):
        FamilySpec("nope")


def test_public_names_resolve():
    import boolwidth

    assert all(hasattr(boolwidth, name) for name in boolwidth.__all__)
    assert boolwidth.gen_hsu_grid(3, 3).n == 9

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolwidth.cuts import CutCache
from boolwidth.decomposition import (
    DecompositionTree,
    comb_tree,
    enumerate_trees,
    exact_min_width,
    f_width,
    greedy_decompose,
    hsu_structured_tree,
    random_tree,
    root_at,
    tree_dumps,
    tree_loads,
    trivial_tree,
)
from boolwidth.errors import GraphFormatError, RefusalError, TreeError
from boolwidth.generators import gen_complete, gen_cycle, gen_grid, gen_hsu_grid, gen_path, gen_random, grid_columns
from boolwidth.graph import Graph

from conftest import graphs


def _double_factorial(k):
    return math.prod(range(k, 0, -2)) if k > 0 else 1


@pytest.mark.parametrize("n", range(3, 8))
def test_enumeration_count(n):
    trees = list(enumerate_trees(n))
    assert len(trees) == _double_factorial(2 * n - 5)
    for t in trees:
        t.validate(n)
    assert len({frozenset(map(frozenset, _splits(t))) for t in trees}) == len(trees)


def _splits(t):
    full = (1 << t.n_leaves) - 1
    return [{a, full ^ a} for a in t.edge_cuts()]


def test_degenerate_trees():
    assert [t.size for t in enumerate_trees(1)] == [1]
    assert [t.edges for t in enumerate_trees(2)] == [[(0, 1)]]
    assert f_width(Graph(1), trivial_tree(1), "rank") == (0, None)
    assert f_width(Graph(1), trivial_tree(1), "boolean") == (1, None)
    assert f_width(Graph(2, [(0, 1)]), trivial_tree(2), "boolean") == (2, 0)
    assert f_width(Graph(2, [(0, 1)]), trivial_tree(2), "rank") == (1, 0)


def test_validation_errors():
    with pytest.raises(TreeError):
        DecompositionTree(3, [(0, 1), (1, 2)], {0: 0, 2: 1}).validate()  # degree-2 internal node
    with pytest.raises(TreeError):
        DecompositionTree(2, [(0, 1)], {0: 0, 1: 0}).validate()
    with pytest.raises(TreeError):
        trivial_tree(2).validate(3)
    with pytest.raises(TreeError):
        DecompositionTree(4, [(0, 1), (2, 3), (0, 1)], {0: 0, 1: 1, 2: 2, 3: 3}).validate()
    with pytest.raises(TreeError):
        root_at(trivial_tree(2), 5)


def test_edgeless_width():
    g = Graph(6)
    t = random_tree(6, 1)
    assert f_width(g, t, "rank")[0] == 0
    assert f_width(g, t, "boolean")[0] == 1


def test_argmax_is_smallest_edge():
    g = gen_random(8, 0.5, 3)
    t = random_tree(8, 2)
    val, edge = f_width(g, t, "rank")
    cache = CutCache(g, "rank")
    vals = [cache(a) for a in t.edge_cuts()]
    assert val == max(vals) and edge == vals.index(val)


@given(st.integers(2, 12), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_root_at_structure(n, seed):
    t = random_tree(n, seed)
    t.validate(n)
    for e in range(len(t.edges)):
        r = root_at(t, e)
        assert r.leafset[r.root] == (1 << n) - 1
        for w in r.postorder:
            if not r.is_leaf(w):
                a, b = r.children[w]
                assert r.leafset[a] & r.leafset[b] == 0
                assert r.leafset[a] | r.leafset[b] == r.leafset[w]


def test_edge_cuts_are_complementary():
    t = random_tree(9, 4)
    full = (1 << 9) - 1
    cuts = t.edge_cuts()
    for (u, v), side in zip(t.edges, cuts):
        flipped = DecompositionTree(t.size, [(v, u) if e == (u, v) else e for e in t.edges], t.leaf_vertex)
        assert flipped.edge_cuts()[t.edges.index((u, v))] == full ^ side


def test_exact_examples():
    for n in range(2, 8):
        assert exact_min_width(gen_complete(n), "boolean")[1] == 2
    assert exact_min_width(gen_path(3), "boolean")[1] == 2
    assert exact_min_width(gen_cycle(5), "rank")[1] == 2
    tree, w = exact_min_width(gen_cycle(6), "rank")
    assert f_width(gen_cycle(6), tree, "rank")[0] == w


def test_exact_guard():
    with pytest.raises(RefusalError):
        exact_min_width(gen_random(11, 0.5, 1), "rank")


@given(graphs(min_n=1, max_n=7), st.sampled_from(["boolean", "rank"]))
@settings(max_examples=40, deadline=None)
def test_exact_is_minimum_over_enumeration(g, f):
    tree, w = exact_min_width(g, f)
    tree.validate(g.n)
    assert f_width(g, tree, f)[0] == w
    assert w == min(f_width(g, t, f)[0] for t in enumerate_trees(g.n))


@given(graphs(min_n=1, max_n=8), st.sampled_from(["boolean", "rank"]), st.integers(0, 99))
@settings(max_examples=30, deadline=None)
def test_greedy_is_valid_and_not_better_than_optimum(g, f, seed):
    tree, w = greedy_decompose(g, f, seed=seed)
    tree.validate(g.n)
    assert w == f_width(g, tree, f)[0]
    assert w >= exact_min_width(g, f)[1]


def test_greedy_deterministic_and_optimal_on_clique():
    g = gen_random(14, 0.4, 9)
    t1, w1 = greedy_decompose(g, "boolean", seed=5)
    t2, w2 = greedy_decompose(g, "boolean", seed=5)
    assert tree_dumps(t1) == tree_dumps(t2) and w1 == w2
    assert greedy_decompose(gen_complete(5), "boolean", seed=0)[1] == 2


@pytest.mark.parametrize("p,q", [(3, 3), (4, 4), (5, 3), (8, 5)])
def test_structured_trees_valid(p, q):
    for orientation in ("vertical", "horizontal"):
        t = hsu_structured_tree(p, q, orientation)
        t.validate(p * q)
        assert t.n_leaves == p * q
        assert all(len(t.nbrs[x]) == 3 for x in range(t.size) if x not in t.leaf_vertex)


def test_structured_tree_guards():
    with pytest.raises(ValueError):
        hsu_structured_tree(2, 4)
    with pytest.raises(ValueError):
        hsu_structured_tree(4, 4, "diagonal")
    with pytest.raises(ValueError):
        comb_tree([[0, 1, 2]])


def test_vertical_tree_hsu_grid_44():
    g = gen_hsu_grid(4, 4)
    assert f_width(g, hsu_structured_tree(4, 4, "vertical"), "boolean")[0] <= 16


def test_column_comb_of_grid():
    for k in (3, 4, 5):
        t = comb_tree(grid_columns(k, k), k * k)
        assert f_width(gen_grid(k, k), t, "rank")[0] <= k + 1


def test_random_tree_deterministic():
    assert tree_dumps(random_tree(10, 3)) == tree_dumps(random_tree(10, 3))
    assert tree_dumps(random_tree(gen_random(10, 0.5, 1), 3)) == tree_dumps(random_tree(10, 3))


def test_tree_file_roundtrip():
    t = random_tree(7, 1)
    back = tree_loads(tree_dumps(t))
    assert back.edge_cuts() == t.edge_cuts()


def test_tree_file_arbitrary_ids():
    text = "leaf 10 1\nleaf 20 2\nleaf 30 3\nnode 5\nedge 5 10\nedge 5 20\nedge 30 5\n"
    t = tree_loads(text)
    t.validate(3)
    assert sorted(t.leaf_vertex.values()) == [0, 1, 2]


@pytest.mark.parametrize(
    "text",
    ["leaf 1 0\n", "leaf 1 x\n", "edge 1\n", "twig 1 2\n", "leaf 1 1\nleaf 1 2\n", "leaf a 1\n"],
)
def test_tree_file_errors(text):
    with pytest.raises((GraphFormatError, TreeError)):
        tree_loads(text)


def test_tree_file_rejects_degree_two():
    with pytest.raises(TreeError):
        tree_loads("leaf 0 1\nleaf 1 2\nnode 2\nedge 0 2\nedge 2 1\n")

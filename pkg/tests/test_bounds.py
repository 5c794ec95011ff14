import math

import pytest

from boolwidth.bounds import (
    bounds_report,
    check_cut,
    cut_chain,
    graph_chain,
    sample_cuts,
    width_upper_exponent,
)
from boolwidth.errors import RefusalError
from boolwidth.generators import gen_complete, gen_hsu, gen_random, gen_rk
from boolwidth.graph import Graph


def test_graph_chain_matches_float_form():
    for rw in range(1, 9):
        upper = width_upper_exponent(rw)
        for c in range(1, 2**12):
            as_float = math.log2(rw) <= math.log2(c) + 1e-12 and math.log2(c) <= upper + 1e-12
            assert graph_chain(rw, c) == as_float


def test_graph_chain_rank_zero():
    assert graph_chain(0, 1)
    assert not graph_chain(0, 2)


def test_cut_chain():
    assert cut_chain(0, 1, 1)
    assert not cut_chain(0, 1, 2)
    assert cut_chain(3, 4, 8)
    assert not cut_chain(3, 2, 8)
    assert not cut_chain(2, 6, 5)
    assert cut_chain(2, 5, None)
    # S <= r * 2^(r^2/4 + 5r/4): r=1 gives 2, r=2 gives 2*2^(3.5)
    assert cut_chain(1, 2, 2) and not cut_chain(1, 2, 3)
    assert cut_chain(2, 5, 22) and not cut_chain(2, 5, 23)


def test_check_cut_orientation():
    g = gen_random(20, 0.3, 4)
    small = sum(1 << v for v in range(5))
    big = g.full & ~small
    assert check_cut(g, small).subspaces is not None
    assert check_cut(g, big).subspaces is not None
    g2 = gen_random(40, 0.1, 4)
    half = sum(1 << v for v in range(20))
    assert check_cut(g2, half).subspaces is None


def test_hsu_and_rk_cuts_pass():
    for k in range(2, 6):
        g, a = gen_hsu(k)
        assert check_cut(g, a.bits).ok
    for k in (2, 3):
        g, a = gen_rk(k)
        c = check_cut(g, a.bits)
        assert c.ok and c.closure == c.subspaces


def test_sample_cuts_reproducible():
    assert sample_cuts(12, 10, 3) == sample_cuts(12, 10, 3)
    assert all(0 < a < (1 << 12) - 1 and a.bit_count() <= 11 for a in sample_cuts(12, 50, 1))
    assert sample_cuts(1, 5, 0) == []


def test_report_complete_graph():
    rep = bounds_report(gen_complete(5), "exact")
    assert (rep.rw, rep.closure_width) == (1, 2)
    assert rep.chain_ok
    lines = rep.lines()
    assert lines[:4] == ["n=5", "mode=exact", "rw=1", "closure_width=2"]
    assert "chain=pass" in lines


def test_report_edgeless():
    rep = bounds_report(Graph(4), "exact", samples=3, seed=1)
    assert (rep.rw, rep.closure_width) == (0, 1)
    assert rep.chain_ok and rep.cut_violations == 0
    assert any(line.startswith("# rank-width 0") for line in rep.lines())
    assert rep.lines()[-2:] == ["cuts_checked=3", "cut_violations=0"]


def test_report_heuristic():
    g = gen_random(14, 0.3, 2)
    rep = bounds_report(g, "heuristic", samples=5, seed=0)
    assert rep.mode == "heuristic" and rep.cut_violations == 0
    assert any(line.startswith("# heuristic") for line in rep.lines())


def test_report_argument_errors():
    with pytest.raises(RefusalError):
        bounds_report(gen_random(11, 0.5, 0), "exact")
    with pytest.raises(ValueError):
        bounds_report(gen_complete(4), "heuristic")
    with pytest.raises(ValueError):
        bounds_report(gen_complete(4), "exact", samples=2)
    with pytest.raises(ValueError):
        bounds_report(gen_complete(4), "approximate")

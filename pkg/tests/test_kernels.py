import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolwidth import kernels

BACKENDS = sorted(kernels.implementations("gf2_rank"))


def _ref_rank(rows):
    basis = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def _ref_closure(gens):
    seen = {0}
    for g in gens:
        seen |= {s | g for s in seen}
    return len(seen)


def test_numba_is_available_and_selected_by_flag():
    assert "numpy" in BACKENDS
    if kernels.HAVE_NUMBA:
        assert "numba" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("backend", BACKENDS)
@given(st.lists(st.integers(0, 2**130 - 1), max_size=12))
@settings(max_examples=60, deadline=None)
def test_gf2_rank_matches_reference(backend, rows):
    fn = kernels.implementations("gf2_rank")[backend]
    assert fn(kernels.pack_rows(rows, 130)) == _ref_rank(rows)


@pytest.mark.parametrize("backend", BACKENDS)
def test_gf2_rank_edge_cases(backend):
    fn = kernels.implementations("gf2_rank")[backend]
    assert fn(np.zeros((0, 1), dtype=np.uint64)) == 0
    assert fn(kernels.pack_rows([0, 0], 8)) == 0
    assert fn(kernels.pack_rows([1 << 63, 1 << 63, 1], 64)) == 2
    rows = kernels.pack_rows([3, 5, 6], 8)
    before = rows.copy()
    assert fn(rows) == 2
    assert np.array_equal(rows, before)


@pytest.mark.parametrize("backend", BACKENDS)
@given(st.lists(st.integers(0, 2**16 - 1), max_size=10))
@settings(max_examples=60, deadline=None)
def test_closure_count_matches_reference(backend, gens):
    fn = kernels.implementations("closure_count")[backend]
    assert fn(np.array(gens, dtype=np.uint64)) == _ref_closure(gens)


@pytest.mark.parametrize("backend", BACKENDS)
def test_closure_count_limit(backend):
    fn = kernels.implementations("closure_count")[backend]
    gens = np.array([1 << i for i in range(10)], dtype=np.uint64)
    assert fn(gens, 2000) == 1024
    assert fn(gens, 1000) == -1
    assert fn(np.array([], dtype=np.uint64)) == 1


def _ref_join(ta, tb, jw, jabar, jbbar, n_in, maximize):
    out = np.full((n_in, jabar.shape[1]), -1, dtype=np.int64)
    for ia, ib, iw in itertools.product(range(jw.shape[0]), range(jw.shape[1]), range(jabar.shape[1])):
        va, vb = ta[ia, jabar[ib, iw]], tb[ib, jbbar[ia, iw]]
        if va < 0 or vb < 0:
            continue
        cur = out[jw[ia, ib], iw]
        s = va + vb
        if cur < 0 or (s > cur if maximize else s < cur):
            out[jw[ia, ib], iw] = s
    return out


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("maximize", [False, True])
@pytest.mark.parametrize("seed", range(8))
def test_dp_join_matches_reference(backend, maximize, seed):
    rng = np.random.default_rng(seed)
    ka, kb, kwa, kwb, kw, kin = rng.integers(1, 7, size=6)
    ta = rng.integers(-1, 5, size=(ka, kwa))
    tb = rng.integers(-1, 5, size=(kb, kwb))
    jw = rng.integers(0, kin, size=(ka, kb))
    jabar = rng.integers(0, kwa, size=(kb, kw))
    jbbar = rng.integers(0, kwb, size=(ka, kw))
    fn = kernels.implementations("dp_join")[backend]
    got = fn(ta, tb, jw, jabar, jbbar, int(kin), maximize)
    assert np.array_equal(got, _ref_join(ta, tb, jw, jabar, jbbar, int(kin), maximize))


def test_flag_selects_numpy(monkeypatch):
    import importlib

    monkeypatch.setenv("BOOLWIDTH_DISABLE_NUMBA", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "numpy"
        assert mod.gf2_rank is mod.gf2_rank_numpy
    finally:
        monkeypatch.delenv("BOOLWIDTH_DISABLE_NUMBA")
        importlib.reload(kernels)

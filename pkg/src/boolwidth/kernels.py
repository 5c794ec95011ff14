"""Hot inner loops, each in a numba and a pure-numpy flavour.

The numba path is used when numba imports and ``BOOLWIDTH_DISABLE_NUMBA`` is
unset (or ``0``). Both flavours stay importable by name regardless of the
flag, so tests and the benchmark can compare them directly:

    gf2_rank_numpy / gf2_rank_numba
    closure_count_numpy / closure_count_numba
    dp_join_numpy / dp_join_numba

The dispatching names ``gf2_rank``, ``closure_count`` and ``dp_join`` point to
the selected flavour.
"""

from __future__ import annotations

import os

import numpy as np

UNDEF = -1
_BIG = np.iinfo(np.int64).max

_flag = os.environ.get("BOOLWIDTH_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _disabled
BACKEND = "numba" if USE_NUMBA else "numpy"


# ----------------------------------------------------------------- packing


def pack_rows(rows, n_bits: int) -> np.ndarray:
    """Pack Python-int bit rows into a ``(len(rows), words)`` uint64 array."""
    words = max(1, (n_bits + 63) // 64)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, r in enumerate(rows):
        k = 0
        while r:
            out[i, k] = r & mask
            r >>= 64
            k += 1
    return out


# ----------------------------------------------------------------- GF(2) rank


def gf2_rank_numpy(rows: np.ndarray) -> int:
    """Rank over GF(2) of packed bit rows; ``rows`` is not modified."""
    m = np.array(rows, dtype=np.uint64, copy=True)
    if m.ndim != 2 or m.shape[0] == 0:
        return 0
    r = m.shape[0]
    rank = 0
    for word in range(m.shape[1]):
        present = int(np.bitwise_or.reduce(m[rank:, word])) if rank < r else 0
        while present and rank < r:
            low = present & -present
            present ^= low
            bit = np.uint64(low)
            hits = np.flatnonzero(m[rank:, word] & bit)
            if hits.size == 0:
                continue
            piv = rank + hits[0]
            if piv != rank:
                m[[rank, piv]] = m[[piv, rank]]
            below = rank + 1 + np.flatnonzero(m[rank + 1:, word] & bit)
            if below.size:
                m[below] ^= m[rank]
            rank += 1
    return rank


# ----------------------------------------------------------------- union closure


def closure_count_numpy(gens: np.ndarray, limit: int = 1 << 24) -> int:
    """Size of the union-closed family generated by ``gens`` plus the empty set.

    ``gens`` is a 1-D uint64 array of bitmasks. Returns -1 once the family
    grows past ``limit``.
    """
    gens = np.unique(np.asarray(gens, dtype=np.uint64))
    gens = gens[gens != 0]
    known = np.zeros(1, dtype=np.uint64)
    frontier = known
    while frontier.size:
        cand = np.unique((frontier[:, None] | gens[None, :]).ravel())
        new = np.setdiff1d(cand, known, assume_unique=True)
        if new.size == 0:
            break
        known = np.union1d(known, new)
        if known.size > limit:
            return -1
        frontier = new
    return int(known.size)


# ----------------------------------------------------------------- DP join


def dp_join_numpy(ta, tb, jw, jabar, jbbar, n_in: int, maximize: bool) -> np.ndarray:
    """Combine two child tables into the parent table.

    For every triple ``(ia, ib, iw)`` of (left inner, right inner, parent outer)
    class ids, the parent entry ``[jw[ia, ib], iw]`` receives the better of its
    current value and ``ta[ia, jabar[ib, iw]] + tb[ib, jbbar[ia, iw]]``.
    ``UNDEF`` (-1) entries are absorbing.
    """
    ka, kb = jw.shape
    kwb = jabar.shape[1]
    if maximize:
        out = np.full((n_in, kwb), UNDEF, dtype=np.int64)
    else:
        out = np.full((n_in, kwb), _BIG, dtype=np.int64)
    cols = np.broadcast_to(np.arange(kwb)[None, :], (kb, kwb))
    rows_b = np.arange(kb)[:, None]
    for ia in range(ka):
        va = ta[ia][jabar]                      # (kb, kwb)
        vb = tb[rows_b, jbbar[ia][None, :]]     # (kb, kwb)
        ok = (va >= 0) & (vb >= 0)
        if not ok.any():
            continue
        rows = np.broadcast_to(jw[ia][:, None], (kb, kwb))
        s = (va + vb)[ok]
        if maximize:
            np.maximum.at(out, (rows[ok], cols[ok]), s)
        else:
            np.minimum.at(out, (rows[ok], cols[ok]), s)
    if not maximize:
        out[out == _BIG] = UNDEF
    return out


if HAVE_NUMBA:
    njit = numba.njit

    @njit(cache=True)
    def _gf2_rank_nb(rows):
        m = rows.copy()
        r, w = m.shape
        rank = 0
        one = np.uint64(1)
        for word in range(w):
            for bit in range(64):
                if rank == r:
                    return rank
                mask = one << np.uint64(bit)
                piv = -1
                for i in range(rank, r):
                    if m[i, word] & mask:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != rank:
                    for k in range(w):
                        tmp = m[rank, k]
                        m[rank, k] = m[piv, k]
                        m[piv, k] = tmp
                for i in range(rank + 1, r):
                    if m[i, word] & mask:
                        for k in range(word, w):
                            m[i, k] ^= m[rank, k]
                rank += 1
        return rank

    @njit(cache=True)
    def _closure_count_nb(gens, limit):
        zero = np.uint64(0)
        seen = {zero}
        stack = [zero]
        while len(stack) > 0:
            s = stack.pop()
            for g in gens:
                t = s | g
                if t not in seen:
                    seen.add(t)
                    if len(seen) > limit:
                        return -1
                    stack.append(t)
        return len(seen)

    @njit(cache=True)
    def _dp_join_nb(ta, tb, jw, jabar, jbbar, n_in, maximize):
        ka, kb = jw.shape
        kwb = jabar.shape[1]
        out = np.full((n_in, kwb), -1, dtype=np.int64)
        for ia in range(ka):
            for ib in range(kb):
                rw = jw[ia, ib]
                for iw in range(kwb):
                    va = ta[ia, jabar[ib, iw]]
                    if va < 0:
                        continue
                    vb = tb[ib, jbbar[ia, iw]]
                    if vb < 0:
                        continue
                    s = va + vb
                    cur = out[rw, iw]
                    if cur < 0:
                        out[rw, iw] = s
                    elif maximize:
                        if s > cur:
                            out[rw, iw] = s
                    elif s < cur:
                        out[rw, iw] = s
        return out

    def gf2_rank_numba(rows: np.ndarray) -> int:
        rows = np.ascontiguousarray(rows, dtype=np.uint64)
        if rows.ndim != 2 or rows.shape[0] == 0:
            return 0
        return int(_gf2_rank_nb(rows))

    def closure_count_numba(gens: np.ndarray, limit: int = 1 << 24) -> int:
        gens = np.unique(np.asarray(gens, dtype=np.uint64))
        gens = gens[gens != 0]
        if gens.size == 0:
            return 1
        return int(_closure_count_nb(gens, limit))

    def dp_join_numba(ta, tb, jw, jabar, jbbar, n_in: int, maximize: bool) -> np.ndarray:
        return _dp_join_nb(
            np.ascontiguousarray(ta, dtype=np.int64),
            np.ascontiguousarray(tb, dtype=np.int64),
            np.ascontiguousarray(jw, dtype=np.int64),
            np.ascontiguousarray(jabar, dtype=np.int64),
            np.ascontiguousarray(jbbar, dtype=np.int64),
            int(n_in),
            bool(maximize),
        )

else:
    gf2_rank_numba = closure_count_numba = dp_join_numba = None

if USE_NUMBA:
    gf2_rank = gf2_rank_numba
    closure_count = closure_count_numba
    dp_join = dp_join_numba
else:
    gf2_rank = gf2_rank_numpy
    closure_count = closure_count_numpy
    dp_join = dp_join_numpy


def implementations(name: str) -> dict:
    """Available flavours of a kernel, keyed by backend name."""
    table = {
        "gf2_rank": (gf2_rank_numpy, gf2_rank_numba),
        "closure_count": (closure_count_numpy, closure_count_numba),
        "dp_join": (dp_join_numpy, dp_join_numba),
    }
    np_impl, nb_impl = table[name]
    out = {"numpy": np_impl}
    if nb_impl is not None:
        out["numba"] = nb_impl
    return out

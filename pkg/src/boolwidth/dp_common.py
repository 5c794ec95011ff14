"""Plumbing shared by the subset and partition dynamic programs."""

from __future__ import annotations

import numpy as np

from .equivalence import RepresentativeIndex, build_representatives
from .graph import Graph

_CHUNK_CELLS = 1 << 22


class IndexCache:
    """Representative indexes of one graph and threshold, built on demand per vertex set."""

    def __init__(self, g: Graph, d: int, cap: int | None = None):
        self.g = g
        self.d = d
        self.cap = cap
        self._memo: dict[int, RepresentativeIndex] = {}

    def __call__(self, bits: int) -> RepresentativeIndex:
        idx = self._memo.get(bits)
        if idx is None:
            idx = build_representatives(self.g, bits, self.d, cap=self.cap)
            self._memo[bits] = idx
        return idx

    def max_classes(self) -> int:
        return max((len(i) for i in self._memo.values()), default=1)


def union_classes(target: RepresentativeIndex, x: RepresentativeIndex, y: RepresentativeIndex) -> np.ndarray:
    """``out[i, j]`` is the class in ``target`` of ``x.rep(i) | y.rep(j)``.

    The two sides are disjoint, so neighbor counts add; each class is found by
    summing the untruncated counts and truncating at ``d``.
    """
    d = target.d
    if target.n_outside == 0:
        return np.zeros((len(x), len(y)), dtype=np.int64)
    cols = target.out_vertices
    cx = x.counts_at(cols).astype(np.int64)
    cy = y.counts_at(cols).astype(np.int64)
    out = np.empty((len(x), len(y)), dtype=np.int64)
    step = max(1, _CHUNK_CELLS // max(1, len(y) * len(cols)))
    for lo in range(0, len(x), step):
        block = np.minimum(cx[lo:lo + step, None, :] + cy[None, :, :], d)
        out[lo:lo + step] = target.lookup(block)
    return out

"""Cut functions: boolean-cut (union closure), cut-rank, and the subspace count.

All functions take a graph and one side ``A`` of the cut; the other side is
the complement. The boolean-cut value is carried as the exact integer
``closure_count`` (number of distinct neighborhood unions, the empty union
included); ``beta = log2(closure_count)`` is derived only for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import RefusalError
from .graph import Graph, SetLike, as_bits, iter_bits

NSS_MAX_ROWS = 14
CLOSURE_LIMIT = 1 << 24

BOOLEAN = "boolean"
RANK = "rank"
CUT_FUNCTIONS = (BOOLEAN, RANK)


def sides(g: Graph, a: SetLike) -> tuple[int, int]:
    a_bits = as_bits(a)
    if a_bits >> g.n:
        raise ValueError("cut side has vertices outside the graph")
    return a_bits, g.full & ~a_bits


def cut_rows(g: Graph, a_bits: int, b_bits: int) -> list[int]:
    """Distinct nonzero rows ``N(v) & B`` for ``v`` in ``A``, in vertex order."""
    seen = {}
    for v in iter_bits(a_bits):
        row = g.adj[v] & b_bits
        if row and row not in seen:
            seen[row] = None
    return list(seen)


def _compress(gens: list[int], a_bits: int) -> tuple[list[int], int]:
    """Re-express generators over the classes of A-vertices they cannot tell apart."""
    patterns: dict[int, int] = {}
    for v in iter_bits(a_bits):
        pat = 0
        for i, gen in enumerate(gens):
            if (gen >> v) & 1:
                pat |= 1 << i
        if pat and pat not in patterns:
            patterns[pat] = len(patterns)
    out = [0] * len(gens)
    for pat, col in patterns.items():
        for i in iter_bits(pat):
            out[i] |= 1 << col
    return out, len(patterns)


def _closure_count_ints(gens: list[int], limit: int) -> int:
    seen = {0}
    stack = [0]
    while stack:
        s = stack.pop()
        for gen in gens:
            t = s | gen
            if t not in seen:
                seen.add(t)
                if len(seen) > limit:
                    return -1
                stack.append(t)
    return len(seen)


def union_closure_count(g: Graph, a: SetLike, limit: int = CLOSURE_LIMIT) -> int:
    """Number of distinct sets ``N(Y) & A`` over ``Y`` subset of the other side."""
    a_bits, b_bits = sides(g, a)
    gens = cut_rows(g, b_bits, a_bits)
    if not gens:
        return 1
    small, width = _compress(gens, a_bits)
    if width <= 64:
        count = kernels.closure_count(np.array(small, dtype=np.uint64), limit)
    else:
        count = _closure_count_ints(small, limit)
    if count < 0:
        raise RefusalError(f"union closure exceeds {limit} sets")
    return count


def boolean_cut(g: Graph, a: SetLike) -> float:
    return math.log2(union_closure_count(g, a))


def cut_rank(g: Graph, a: SetLike) -> int:
    """GF(2) rank of the A x (V \\ A) adjacency submatrix."""
    a_bits, b_bits = sides(g, a)
    if a_bits.bit_count() > b_bits.bit_count():
        a_bits, b_bits = b_bits, a_bits
    rows = cut_rows(g, a_bits, b_bits)
    if len(rows) <= 1:
        return len(rows)
    return kernels.gf2_rank(kernels.pack_rows(rows, g.n))


def _reduce_into(basis: tuple[int, ...], v: int) -> tuple[int, ...] | None:
    """Insert ``v`` into a reduced row-echelon basis; None if ``v`` is already spanned."""
    for b in basis:
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
    if not v:
        return None
    lead = v.bit_length() - 1
    out = [b ^ v if (b >> lead) & 1 else b for b in basis]
    out.append(v)
    out.sort(reverse=True)
    return tuple(out)


def nss(g: Graph, a: SetLike, max_rows: int = NSS_MAX_ROWS) -> int:
    """Number of GF(2) subspaces spanned by subsets of the cut rows, zero space included.

    Walks subspaces by adding one row at a time; every span of a row subset is
    reached this way and nothing else is.
    """
    a_bits, b_bits = sides(g, a)
    if a_bits.bit_count() > max_rows:
        raise RefusalError(f"nss limited to |A| <= {max_rows}, got {a_bits.bit_count()}")
    rows = cut_rows(g, a_bits, b_bits)
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for space in frontier:
            for r in rows:
                grown = _reduce_into(space, r)
                if grown is not None and grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return len(seen)


def count_d_classes(g: Graph, a: SetLike, d: int, cap: int | None = None) -> int:
    """Number of classes of d-neighbor equivalence over subsets of A."""
    from .equivalence import build_representatives

    return len(build_representatives(g, a, d, cap=cap))


@dataclass
class CutReport:
    closure_count: int
    rank: int
    nss: int | None = None
    d_class_counts: dict[int, int] = field(default_factory=dict)

    @property
    def beta(self) -> float:
        return math.log2(self.closure_count)

    def lines(self) -> list[str]:
        out = [
            f"closure_count={self.closure_count}",
            f"beta={self.beta:.6f}",
            f"rank={self.rank}",
        ]
        if self.nss is not None:
            out.append(f"nss={self.nss}")
        for d in sorted(self.d_class_counts):
            out.append(f"classes_d{d}={self.d_class_counts[d]}")
        return out


def cut_report(g: Graph, a: SetLike, with_nss: bool = False, classes=(), cap: int | None = None) -> CutReport:
    rep = CutReport(union_closure_count(g, a), cut_rank(g, a))
    if with_nss:
        rep.nss = nss(g, a)
    for d in classes:
        rep.d_class_counts[d] = count_d_classes(g, a, d, cap=cap)
    return rep


def cut_value(g: Graph, a: SetLike, f: str) -> int:
    """Exact integer value of a cut function: closure count for boolean, rank for rank."""
    if f == BOOLEAN:
        return union_closure_count(g, a)
    if f == RANK:
        return cut_rank(g, a)
    raise ValueError(f"unknown cut function {f!r}")


class CutCache:
    """Memoized cut values for one graph and function, keyed up to complement."""

    def __init__(self, g: Graph, f: str):
        if f not in CUT_FUNCTIONS:
            raise ValueError(f"unknown cut function {f!r}")
        self.g = g
        self.f = f
        self._memo: dict[int, int] = {}

    def __call__(self, a_bits: int) -> int:
        key = min(a_bits, self.g.full & ~a_bits)
        val = self._memo.get(key)
        if val is None:
            val = cut_value(self.g, key, self.f)
            self._memo[key] = val
        return val

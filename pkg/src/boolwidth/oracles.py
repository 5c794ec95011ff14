"""Exhaustive reference implementations.

Each function here enumerates its search space literally and shares no code
path with the module it checks: closures loop over every subset of the other
side, ranks and spans use their own elimination, and trees are grown by
inserting leaves in descending vertex order.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import RefusalError
from .graph import Graph, SetLike, as_bits

SUBSET_MAX_N = 20
PARTITION_BUDGET = 10**7
CUT_MAX_SIDE = 12
WIDTH_MAX_N = 8


def _in_spec(spec, counts: np.ndarray) -> np.ndarray:
    hit = np.isin(counts, np.array(sorted(spec.elements), dtype=np.int64))
    return hit if spec.kind == "finite" else ~hit


def brute_subset_opt(g: Graph, sigma, rho, objective: str = "min") -> int | None:
    """Optimum |X| over all (sigma, rho)-sets X of g; None when no X qualifies."""
    n = g.n
    if n > SUBSET_MAX_N:
        raise RefusalError(f"brute-force subset search limited to n <= {SUBSET_MAX_N}, got {n}")
    xs = np.arange(1 << n, dtype=np.uint64)
    ok = np.ones(xs.shape, dtype=bool)
    for v in range(n):
        counts = np.bitwise_count(xs & np.uint64(g.adj[v])).astype(np.int64)
        inside = ((xs >> np.uint64(v)) & np.uint64(1)).astype(bool)
        ok &= np.where(inside, _in_spec(sigma, counts), _in_spec(rho, counts))
    if not ok.any():
        return None
    sizes = np.bitwise_count(xs[ok]).astype(np.int64)
    return int(sizes.max() if objective == "max" else sizes.min())


def _member(spec, t: int) -> bool:
    return (t in spec.elements) == (spec.kind == "finite")


def _partitions(g: Graph, dm):
    q, n = dm.q, g.n
    if q**n > PARTITION_BUDGET:
        raise RefusalError(f"{q}^{n} assignments exceed the budget of {PARTITION_BUDGET}")
    allowed = [[{t for t in range(n + 1) if _member(dm[i, j], t)} for j in range(q)] for i in range(q)]
    for colour in itertools.product(range(q), repeat=n):
        parts = [0] * q
        for v, c in enumerate(colour):
            parts[c] |= 1 << v
        if all((g.adj[v] & parts[j]).bit_count() in allowed[colour[v]][j] for v in range(n) for j in range(q)):
            yield parts


def brute_partition_exists(g: Graph, dm) -> bool:
    """Whether some assignment of vertices to the q parts satisfies every cell of dm."""
    return next(_partitions(g, dm), None) is not None


def brute_partition_opt(g: Graph, dm, target: int = 0, objective: str = "max") -> int | None:
    sizes = [parts[target].bit_count() for parts in _partitions(g, dm)]
    if not sizes:
        return None
    return max(sizes) if objective == "max" else min(sizes)


def _rank_ints(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def _span_key(rows: list[int]) -> tuple[int, ...]:
    """Fully reduced echelon basis of the span, as a sorted tuple."""
    piv: dict[int, int] = {}
    for r in rows:
        for top in sorted(piv, reverse=True):
            if (r >> top) & 1:
                r ^= piv[top]
        if r:
            top = r.bit_length() - 1
            for k in list(piv):
                if (piv[k] >> top) & 1:
                    piv[k] ^= r
            piv[top] = r
    return tuple(sorted(piv.values()))


def brute_cut(g: Graph, a: SetLike, with_nss: bool = True) -> tuple[int, int, int | None]:
    """(closure_count, rank, nss) of the cut (A, V \\ A) by direct enumeration."""
    a_bits = as_bits(a)
    b_bits = g.full & ~a_bits
    b = [v for v in range(g.n) if (b_bits >> v) & 1]
    av = [v for v in range(g.n) if (a_bits >> v) & 1]
    if len(b) > CUT_MAX_SIDE:
        raise RefusalError(f"literal closure limited to |V \\ A| <= {CUT_MAX_SIDE}")
    unions = set()
    for mask in range(1 << len(b)):
        u = 0
        for i, v in enumerate(b):
            if (mask >> i) & 1:
                u |= g.adj[v]
        unions.add(u & a_bits)
    rows = [g.adj[v] & b_bits for v in av]
    rank = _rank_ints(rows)
    count = None
    if with_nss:
        if len(av) > CUT_MAX_SIDE:
            raise RefusalError(f"literal nss limited to |A| <= {CUT_MAX_SIDE}")
        spans = set()
        for mask in range(1 << len(rows)):
            spans.add(_span_key([r for i, r in enumerate(rows) if (mask >> i) & 1]))
        count = len(spans)
    return len(unions), rank, count


def brute_d_classes(g: Graph, a: SetLike, d: int) -> list[list[int]]:
    """Classes of d-neighbor equivalence on subsets of A, comparing counts at every outside vertex."""
    a_bits = as_bits(a)
    av = [v for v in range(g.n) if (a_bits >> v) & 1]
    if len(av) > 16:
        raise RefusalError("literal class enumeration limited to |A| <= 16")
    outside = [u for u in range(g.n) if not (a_bits >> u) & 1]
    groups: dict[tuple[int, ...], list[int]] = {}
    for mask in range(1 << len(av)):
        x = 0
        for i, v in enumerate(av):
            if (mask >> i) & 1:
                x |= 1 << v
        sig = tuple(min((g.adj[u] & x).bit_count(), d) for u in outside)
        groups.setdefault(sig, []).append(x)
    return list(groups.values())


# ----------------------------------------------------------------- trees


def _trees_desc(n: int):
    """Edge lists of all leaf-labelled subcubic trees; leaves are nodes 0..n-1.

    Starts from the three highest vertices and inserts the rest from high to low.
    """
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    hub = n
    base = [(hub, n - 1), (hub, n - 2), (hub, n - 3)]

    def grow(edges, v, nxt):
        if v < 0:
            yield edges
            return
        for i in range(len(edges)):
            x, y = edges[i]
            yield from grow(edges[:i] + edges[i + 1:] + [(x, nxt), (nxt, y), (nxt, v)], v - 1, nxt + 1)

    yield from grow(base, n - 4, n + 1)


def _edge_sides(n: int, edges) -> list[int]:
    adj: dict[int, list[int]] = {}
    for x, y in edges:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    out = []
    for x, y in edges:
        seen, stack, side = {x, y}, [y], 0
        while stack:
            u = stack.pop()
            if u < n:
                side |= 1 << u
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(side)
    return out


def brute_tree_count(n: int) -> int:
    return sum(1 for _ in _trees_desc(n))


def brute_optimal_width(g: Graph, f: str) -> int:
    """Minimum over all decomposition trees of the maximum edge cut value.

    Boolean values are closure counts, rank values are ranks. A graph with
    one vertex has no tree edge and gets the value of the empty cut.
    """
    n = g.n
    if n > WIDTH_MAX_N:
        raise RefusalError(f"tree enumeration limited to n <= {WIDTH_MAX_N}, got {n}")
    if f not in ("boolean", "rank"):
        raise ValueError(f"unknown cut function {f!r}")
    pick = 0 if f == "boolean" else 1
    memo: dict[int, int] = {}

    def value(side: int) -> int:
        if side not in memo:
            memo[side] = brute_cut(g, side, with_nss=False)[pick]
        return memo[side]

    if n == 1:
        return value(0)
    best = None
    for edges in _trees_desc(n):
        w = max(value(side) for side in _edge_sides(n, edges))
        if best is None or w < best:
            best = w
    return best

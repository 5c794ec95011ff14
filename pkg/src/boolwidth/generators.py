"""Graph families used to probe cut functions and decompositions.

Vertex numbering is fixed per family so that named cuts are reproducible:

* ``hsu(k)``: a_1..a_{k+1} are 0..k, b_1..b_{k+1} are k+1..2k+1.
* ``rk(k)``: a_S is ``s`` and b_T is ``2**k + t``, where bit ``i`` of ``s``
  (binary-counter order) marks element ``i+1`` of S.
* ``hsu_grid(p, q)`` and ``grid(p, q)``: v_{i,j} (row i, column j, 1-based)
  is ``(j-1)*p + (i-1)``, i.e. column-major.
* ``complete_bipartite(a, b)``: the a-side first.
* ``random``: pairs (u, v), u < v, visited in lexicographic order; an edge
  is kept when ``random.Random(seed).random() < p_edge``. Python's Mersenne
  Twister gives identical streams on every platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, VertexSet

FAMILIES = (
    "hsu",
    "rk",
    "grid",
    "hsu-grid",
    "path",
    "cycle",
    "complete",
    "complete-bipartite",
    "random",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def gen_hsu(k: int) -> tuple[Graph, VertexSet]:
    """Hsu's staircase graph H_k and its A-side."""
    if k < 1:
        raise ValueError("H_k needs k >= 1")
    a = lambda i: i - 1
    b = lambda i: k + i
    edges = [(a(i), b(j)) for i in range(2, k + 2) for j in range(1, i)]
    g = Graph(2 * (k + 1), edges)
    return g, VertexSet(g.n, range(k + 1))


def gen_rk(k: int) -> tuple[Graph, VertexSet]:
    """Bipartite graph R_k on subset-indexed sides, adjacent on odd intersection."""
    if not 1 <= k <= 4:
        raise ValueError("R_k supported for 1 <= k <= 4")
    half = 1 << k
    edges = [(s, half + t) for s in range(half) for t in range(half) if (s & t).bit_count() % 2]
    g = Graph(2 * half, edges)
    return g, VertexSet(g.n, range(half))


def grid_index(p: int, i: int, j: int) -> int:
    """Vertex id of v_{i,j} (1-based row i, column j) in a p-row grid."""
    return (j - 1) * p + (i - 1)


def gen_hsu_grid(p: int, q: int) -> Graph:
    """Hsu-grid HG_{p,q}: columns are paths, consecutive columns joined as a staircase."""
    if p < 2 or q < 2:
        raise ValueError("HG_{p,q} needs p >= 2 and q >= 2")
    v = lambda i, j: grid_index(p, i, j)
    edges = [(v(i, j), v(i + 1, j)) for j in range(1, q + 1) for i in range(1, p)]
    edges += [
        (v(i, j), v(i2, j + 1))
        for j in range(1, q)
        for i in range(1, p + 1)
        for i2 in range(i, p + 1)
    ]
    return Graph(p * q, edges)


def gen_grid(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise ValueError("grid sizes must be >= 1")
    v = lambda i, j: grid_index(p, i, j)
    edges = [(v(i, j), v(i + 1, j)) for j in range(1, q + 1) for i in range(1, p)]
    edges += [(v(i, j), v(i, j + 1)) for j in range(1, q) for i in range(1, p + 1)]
    return Graph(p * q, edges)


def grid_columns(p: int, q: int) -> list[list[int]]:
    return [[grid_index(p, i, j) for i in range(1, p + 1)] for j in range(1, q + 1)]


def grid_rows(p: int, q: int) -> list[list[int]]:
    return [[grid_index(p, i, j) for j in range(1, q + 1)] for i in range(1, p + 1)]


def gen_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def gen_complete_bipartite(a: int, b: int) -> tuple[Graph, VertexSet]:
    if a < 1 or b < 1:
        raise ValueError("sides must be >= 1")
    g = Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])
    return g, VertexSet(g.n, range(a))


def gen_random(n: int, p_edge: float, seed: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p_edge <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    if seed is None:
        raise ValueError("random graphs need an explicit seed")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p_edge]
    return Graph(n, edges)


def gen_classic(family: str, n: int, p_edge: float | None = None, seed: int | None = None, m: int | None = None) -> Graph:
    """Standard families by name; ``m`` is the second side for complete-bipartite."""
    if family == "path":
        return gen_path(n)
    if family == "cycle":
        return gen_cycle(n)
    if family == "complete":
        return gen_complete(n)
    if family == "complete-bipartite":
        return gen_complete_bipartite(n, n if m is None else m)[0]
    if family == "random":
        if p_edge is None:
            raise ValueError("random graphs need an edge probability")
        return gen_random(n, p_edge, seed)
    raise ValueError(f"unknown classic family {family!r}")


def generate(spec: FamilySpec) -> tuple[Graph, VertexSet | None]:
    """Build a graph from a :class:`FamilySpec`; bipartite families also return their A-side."""
    f, p = spec.family, spec.params
    if f == "hsu":
        return gen_hsu(p["k"])
    if f == "rk":
        return gen_rk(p["k"])
    if f == "hsu-grid":
        return gen_hsu_grid(p["p"], p["q"]), None
    if f == "grid":
        return gen_grid(p["p"], p["q"]), None
    if f == "complete-bipartite":
        return gen_complete_bipartite(p["n"], p.get("m", p["n"]))
    return gen_classic(f, p["n"], p_edge=p.get("p_edge"), seed=spec.seed), None

"""Decomposition trees: subcubic trees whose leaves are the graph's vertices.

Tree file format (line oriented, vertex ids 1-indexed)::

    node <id>          # optional
    leaf <id> <vertex>
    edge <id1> <id2>
"""

from __future__ import annotations

import io
import random
from collections.abc import Iterator
from dataclasses import dataclass
from typing import TextIO

from .cuts import CUT_FUNCTIONS, CutCache
from .errors import GraphFormatError, RefusalError, TreeError
from .generators import grid_columns, grid_rows
from .graph import Graph, iter_bits

EXACT_MAX_N = 10


class DecompositionTree:
    """Unrooted tree with nodes ``0..size-1``; ``leaf_vertex`` maps leaf nodes to graph vertices."""

    def __init__(self, size: int, edges, leaf_vertex: dict[int, int]):
        self.size = size
        self.edges: list[tuple[int, int]] = [tuple(e) for e in edges]
        self.leaf_vertex = dict(leaf_vertex)
        self.nbrs: list[list[int]] = [[] for _ in range(size)]
        for u, v in self.edges:
            if not (0 <= u < size and 0 <= v < size) or u == v:
                raise TreeError(f"bad tree edge ({u}, {v})")
            self.nbrs[u].append(v)
            self.nbrs[v].append(u)

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_vertex)

    def node_of_vertex(self) -> dict[int, int]:
        return {v: node for node, v in self.leaf_vertex.items()}

    def validate(self, n: int | None = None) -> None:
        """Raise TreeError unless this is a subcubic decomposition tree (of an n-vertex graph)."""
        if n is not None and self.n_leaves != n:
            raise TreeError(f"tree has {self.n_leaves} leaves, graph has {n} vertices")
        n = self.n_leaves
        if sorted(self.leaf_vertex.values()) != list(range(n)):
            raise TreeError("leaf labels are not a bijection onto the vertices")
        if self.size == 0:
            raise TreeError("empty tree")
        if len(self.edges) != self.size - 1:
            raise TreeError("tree must have exactly size - 1 edges")
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.nbrs[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != self.size:
            raise TreeError("tree is disconnected")
        for node in range(self.size):
            deg = len(self.nbrs[node])
            if node in self.leaf_vertex:
                if deg > 1:
                    raise TreeError(f"leaf node {node} has degree {deg}")
            elif deg != 3:
                raise TreeError(f"internal node {node} has degree {deg}, expected 3")

    def edge_cuts(self) -> list[int]:
        """Per edge ``(u, v)``: bitmask of the vertices on the ``v`` side."""
        if not self.edges:
            return []
        parent = [-1] * self.size
        order = []
        stack = [0]
        parent[0] = 0
        while stack:
            u = stack.pop()
            order.append(u)
            for v in self.nbrs[u]:
                if parent[v] == -1:
                    parent[v] = u
                    stack.append(v)
        below = [0] * self.size
        for u in reversed(order):
            if u in self.leaf_vertex:
                below[u] |= 1 << self.leaf_vertex[u]
            if u != 0:
                below[parent[u]] |= below[u]
        full = below[0]
        out = []
        for u, v in self.edges:
            if parent[v] == u:
                out.append(below[v])
            else:
                out.append(full & ~below[u])
        return out

    def __repr__(self) -> str:
        return f"DecompositionTree(size={self.size}, leaves={self.n_leaves})"


class _Builder:
    def __init__(self):
        self.size = 0
        self.edges: list[tuple[int, int]] = []
        self.leaves: dict[int, int] = {}

    def node(self) -> int:
        self.size += 1
        return self.size - 1

    def leaf(self, vertex: int) -> int:
        node = self.node()
        self.leaves[node] = vertex
        return node

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def build(self) -> DecompositionTree:
        return DecompositionTree(self.size, self.edges, self.leaves)


def trivial_tree(n: int) -> DecompositionTree:
    """The unique trees for n = 1 (one node) and n = 2 (one edge)."""
    if n == 1:
        return DecompositionTree(1, [], {0: 0})
    if n == 2:
        return DecompositionTree(2, [(0, 1)], {0: 0, 1: 1})
    raise ValueError("only n = 1 or 2 have a trivial tree")


@dataclass
class RootedTree:
    """Binary rooted tree obtained by subdividing one edge with a new root node."""

    root: int
    children: list[list[int]]
    parent: list[int]
    postorder: list[int]
    leafset: list[int]
    leaf_vertex: dict[int, int]

    def is_leaf(self, node: int) -> bool:
        return node in self.leaf_vertex


def root_at(tree: DecompositionTree, edge: int = 0) -> RootedTree:
    if not 0 <= edge < len(tree.edges):
        raise TreeError(f"edge index {edge} not in tree")
    u0, v0 = tree.edges[edge]
    root = tree.size
    nbrs = [list(x) for x in tree.nbrs] + [[u0, v0]]
    nbrs[u0] = [root if x == v0 else x for x in nbrs[u0]]
    nbrs[v0] = [root if x == u0 else x for x in nbrs[v0]]
    size = root + 1
    parent = [-1] * size
    children: list[list[int]] = [[] for _ in range(size)]
    order = []
    parent[root] = root
    stack = [root]
    while stack:
        u = stack.pop()
        order.append(u)
        for v in nbrs[u]:
            if parent[v] == -1:
                parent[v] = u
                children[u].append(v)
                stack.append(v)
    parent[root] = -1
    postorder = order[::-1]
    leafset = [0] * size
    for u in postorder:
        if u in tree.leaf_vertex:
            leafset[u] = 1 << tree.leaf_vertex[u]
        for c in children[u]:
            leafset[u] |= leafset[c]
    for u in range(size):
        if u not in tree.leaf_vertex and len(children[u]) != 2:
            raise TreeError(f"node {u} has {len(children[u])} children after rooting")
    return RootedTree(root, children, parent, postorder, leafset, dict(tree.leaf_vertex))


# ----------------------------------------------------------------- widths


def f_width(g: Graph, tree: DecompositionTree, f: str, cache: CutCache | None = None) -> tuple[int, int | None]:
    """Maximum cut value over the tree's edges and the first edge attaining it.

    Boolean widths are exact closure counts; rank widths are ranks.
    """
    tree.validate(g.n)
    cache = cache or CutCache(g, f)
    cuts = tree.edge_cuts()
    if not cuts:
        return cache(0), None
    best, arg = -1, None
    for i, a in enumerate(cuts):
        val = cache(a)
        if val > best:
            best, arg = val, i
    return best, arg


def exact_min_width(g: Graph, f: str, max_n: int = EXACT_MAX_N) -> tuple[DecompositionTree, int]:
    """An optimal f-decomposition and its width.

    Dynamic programming over vertex subsets: the best rooted binary tree on S
    is the best split S = S1 + S2 of max(f(S1), f(S2), best(S1), best(S2)).
    Splits are tried with S1 holding the lowest vertex of S, larger S1 first;
    the first optimum found wins.
    """
    n = g.n
    if n > max_n:
        raise RefusalError(f"exact width search limited to n <= {max_n}, got {n}")
    if f not in CUT_FUNCTIONS:
        raise ValueError(f"unknown cut function {f!r}")
    cache = CutCache(g, f)
    if n <= 2:
        tree = trivial_tree(n)
        return tree, f_width(g, tree, f, cache)[0]
    full = g.full
    best = [0] * (full + 1)
    split = [0] * (full + 1)
    for s in range(1, full + 1):
        if s & (s - 1) == 0:
            continue
        low = s & -s
        rest = s ^ low
        top = None
        sub = (rest - 1) & rest
        while True:
            s1 = low | sub
            s2 = s ^ s1
            val = max(cache(s1), cache(s2), best[s1], best[s2])
            if top is None or val < top:
                top, split[s] = val, s1
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[s] = top
    b = _Builder()

    def grow(s: int) -> int:
        if s & (s - 1) == 0:
            return b.leaf(s.bit_length() - 1)
        node = b.node()
        for part in (split[s], s ^ split[s]):
            b.edge(node, grow(part))
        return node

    left, right = grow(split[full]), grow(full ^ split[full])
    b.edge(left, right)
    return b.build(), best[full]


def _balanced_split(members: list[int], cost, rng: random.Random, restarts: int, max_iter: int) -> int:
    k = len(members) // 2
    best_bits, best_val = 0, None
    for _ in range(restarts):
        pick = rng.sample(members, k)
        s1 = sum(1 << v for v in pick)
        total = sum(1 << v for v in members)
        val = cost(s1, total ^ s1)
        for _ in range(max_iter):
            move = None
            for x in iter_bits(s1):
                for y in iter_bits(total ^ s1):
                    t1 = s1 ^ (1 << x) ^ (1 << y)
                    v = cost(t1, total ^ t1)
                    if v < val and (move is None or v < move[0]):
                        move = (v, t1)
            if move is None:
                break
            val, s1 = move
        if best_val is None or val < best_val:
            best_bits, best_val = s1, val
    return best_bits


def greedy_decompose(
    g: Graph, f: str, seed: int = 0, restarts: int = 3, max_iter: int = 50
) -> tuple[DecompositionTree, int]:
    """Heuristic tree by recursive balanced bipartitioning; no approximation guarantee.

    Each vertex set is split into halves by steepest-descent single-swap local
    search on max(f(S1), f(S2)) from ``restarts`` seeded random starts.
    """
    if f not in CUT_FUNCTIONS:
        raise ValueError(f"unknown cut function {f!r}")
    n = g.n
    if n <= 2:
        tree = trivial_tree(n)
        return tree, f_width(g, tree, f)[0]
    cache = CutCache(g, f)
    rng = random.Random(seed)
    cost = lambda s1, s2: max(cache(s1), cache(s2))
    b = _Builder()

    def grow(s: int) -> int:
        members = list(iter_bits(s))
        if len(members) == 1:
            return b.leaf(members[0])
        if len(members) == 2:
            s1 = 1 << members[0]
        else:
            s1 = _balanced_split(members, cost, rng, restarts, max_iter)
        node = b.node()
        b.edge(node, grow(s1))
        b.edge(node, grow(s ^ s1))
        return node

    s1 = _balanced_split(list(range(n)), cost, rng, restarts, max_iter)
    left, right = grow(s1), grow(g.full ^ s1)
    b.edge(left, right)
    tree = b.build()
    return tree, f_width(g, tree, f, cache)[0]


# ----------------------------------------------------------------- structured trees


def comb_tree(groups: list[list[int]], n: int | None = None) -> DecompositionTree:
    """Caterpillar ("comb") over groups, each group hung as a stretched star.

    A group's star center is split left to right: the first node keeps the
    comb edge and the group's first leaf, each following node takes the next
    leaf, and the last node takes the final two.
    """
    if len(groups) < 2:
        raise ValueError("need at least two groups")
    b = _Builder()
    heads = []
    for grp in groups:
        if not grp:
            raise ValueError("empty group")
        if len(grp) == 1:
            heads.append(b.leaf(grp[0]))
            continue
        chain = [b.node() for _ in range(len(grp) - 1)]
        for i, node in enumerate(chain):
            b.edge(node, b.leaf(grp[i]))
            if i + 1 < len(chain):
                b.edge(node, chain[i + 1])
        b.edge(chain[-1], b.leaf(grp[-1]))
        heads.append(chain[0])
    k = len(groups)
    if k == 2:
        b.edge(heads[0], heads[1])
    else:
        spine = [b.node() for _ in range(k - 2)]
        for i in range(len(spine) - 1):
            b.edge(spine[i], spine[i + 1])
        b.edge(spine[0], heads[0])
        for i in range(len(spine)):
            b.edge(spine[i], heads[i + 1])
        b.edge(spine[-1], heads[-1])
    tree = b.build()
    tree.validate(n)
    return tree


def hsu_structured_tree(p: int, q: int, orientation: str = "vertical") -> DecompositionTree:
    """Vertical (one star per column) or horizontal (one per row) tree of HG_{p,q}."""
    if p < 3 or q < 3:
        raise ValueError("structured Hsu-grid trees need p >= 3 and q >= 3")
    if orientation == "vertical":
        groups = grid_columns(p, q)
    elif orientation == "horizontal":
        groups = grid_rows(p, q)
    else:
        raise ValueError("orientation must be 'vertical' or 'horizontal'")
    return comb_tree(groups, p * q)


# ----------------------------------------------------------------- enumeration


def enumerate_trees(n: int) -> Iterator[DecompositionTree]:
    """All leaf-labelled subcubic trees with n leaves, (2n-5)!! of them for n >= 3.

    Leaves are inserted in vertex order, each on every edge of the current
    tree in edge-list order.
    """
    if n < 1:
        return
    if n <= 2:
        yield trivial_tree(n)
        return
    # nodes 0..n-1 are the leaves, internal nodes follow
    start = [(n, 0), (n, 1), (n, 2)]

    def rec(edges: list[tuple[int, int]], k: int, next_node: int):
        if k == n:
            yield DecompositionTree(next_node, edges, {v: v for v in range(n)})
            return
        for i, (u, v) in enumerate(edges):
            w = next_node
            grown = edges[:i] + [(u, w), (w, v), (w, k)] + edges[i + 1:]
            yield from rec(grown, k + 1, next_node + 1)

    yield from rec(start, 3, n + 1)


def random_tree(n: int | Graph, seed: int) -> DecompositionTree:
    """Random decomposition tree, reproducible per seed.

    Vertices are shuffled with ``random.Random(seed)``; each is then inserted
    on an edge of the current tree chosen uniformly at random.
    """
    if isinstance(n, Graph):
        n = n.n
    if n <= 2:
        return trivial_tree(n)
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    b = _Builder()
    leaves = [b.leaf(v) for v in order]
    center = b.node()
    edges = [(center, leaves[0]), (center, leaves[1]), (center, leaves[2])]
    for k in range(3, n):
        i = rng.randrange(len(edges))
        u, v = edges[i]
        w = b.node()
        edges[i:i + 1] = [(u, w), (w, v)]
        edges.append((w, leaves[k]))
    return DecompositionTree(b.size, edges, b.leaves)


# ----------------------------------------------------------------- I/O


def load_tree(stream: TextIO) -> DecompositionTree:
    ids: dict[int, int] = {}
    edges = []
    leaves = {}

    def nid(tok: str, lineno: int) -> int:
        try:
            raw = int(tok)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer node id") from None
        return ids.setdefault(raw, len(ids))

    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "node" and len(parts) == 2:
            nid(parts[1], lineno)
        elif kind == "leaf" and len(parts) == 3:
            node = nid(parts[1], lineno)
            try:
                vertex = int(parts[2]) - 1
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer vertex") from None
            if vertex < 0:
                raise GraphFormatError(f"line {lineno}: vertex ids are 1-indexed")
            if node in leaves:
                raise GraphFormatError(f"line {lineno}: node labelled twice")
            leaves[node] = vertex
        elif kind == "edge" and len(parts) == 3:
            edges.append((nid(parts[1], lineno), nid(parts[2], lineno)))
        else:
            raise GraphFormatError(f"line {lineno}: cannot parse {line!r}")
    tree = DecompositionTree(len(ids), edges, leaves)
    tree.validate()
    return tree


def save_tree(tree: DecompositionTree, stream: TextIO) -> None:
    for node in range(tree.size):
        if node in tree.leaf_vertex:
            stream.write(f"leaf {node} {tree.leaf_vertex[node] + 1}\n")
        else:
            stream.write(f"node {node}\n")
    for u, v in tree.edges:
        stream.write(f"edge {u} {v}\n")


def tree_dumps(tree: DecompositionTree) -> str:
    buf = io.StringIO()
    save_tree(tree, buf)
    return buf.getvalue()


def tree_loads(text: str) -> DecompositionTree:
    return load_tree(io.StringIO(text))


def read_tree(path) -> DecompositionTree:
    with open(path, encoding="utf-8") as fh:
        return load_tree(fh)


def write_tree(path, tree: DecompositionTree) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        save_tree(tree, fh)


__all__ = [
    "DecompositionTree",
    "RootedTree",
    "comb_tree",
    "enumerate_trees",
    "exact_min_width",
    "f_width",
    "greedy_decompose",
    "hsu_structured_tree",
    "load_tree",
    "random_tree",
    "read_tree",
    "root_at",
    "save_tree",
    "tree_dumps",
    "tree_loads",
    "trivial_tree",
    "write_tree",
]

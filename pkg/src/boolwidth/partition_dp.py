"""Vertex partitioning problems given by a q x q degree constraint matrix.

A partition (V_1, ..., V_q) of V(G), empty parts allowed, satisfies D when
every vertex of V_i has a number of neighbors in V_j that lies in D[i][j].

The dynamic program works on q-tuples of d-neighbor classes, one component
per part. By default only tuples that can actually occur are materialized:
inner tuples bottom-up as unions of the children's inner tuples, outer tuples
top-down from the root's single all-empty tuple. ``strict=True`` instead uses
every tuple of the cartesian product.
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .decomposition import DecompositionTree, root_at
from .dp_common import IndexCache, union_classes
from .errors import GraphFormatError, RefusalError
from .graph import Graph
from .subset_dp import SetSpec, d_value, membership_table

UNDEF = kernels.UNDEF
DEFAULT_TUPLE_CAP = 1 << 18


@dataclass(frozen=True)
class DegreeMatrix:
    cells: tuple[tuple[SetSpec, ...], ...]

    def __post_init__(self):
        q = len(self.cells)
        if q < 1:
            raise ValueError("degree matrix needs q >= 1")
        if any(len(row) != q for row in self.cells):
            raise ValueError("degree matrix must be square")

    @classmethod
    def from_rows(cls, rows) -> DegreeMatrix:
        return cls(tuple(tuple(SetSpec.parse(c) if isinstance(c, str) else c for c in row) for row in rows))

    @property
    def q(self) -> int:
        return len(self.cells)

    @property
    def d(self) -> int:
        return max(d_value(c) for row in self.cells for c in row)

    def __getitem__(self, ij) -> SetSpec:
        i, j = ij
        return self.cells[i][j]

    def dumps(self) -> str:
        lines = [f"q {self.q}"] + [" ".join(str(c) for c in row) for row in self.cells]
        return "\n".join(lines) + "\n"


def load_matrix(stream) -> DegreeMatrix:
    """Read ``q <q>`` followed by q lines of q set specs."""
    lines = [ln.strip() for ln in stream if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0].split()) != 2 or lines[0].split()[0] != "q":
        raise GraphFormatError("matrix file must start with 'q <q>'")
    try:
        q = int(lines[0].split()[1])
    except ValueError:
        raise GraphFormatError("matrix size is not an integer") from None
    rows = [ln.split() for ln in lines[1:]]
    if q < 1 or len(rows) != q or any(len(r) != q for r in rows):
        raise GraphFormatError(f"expected {q} rows of {q} set specs")
    try:
        return DegreeMatrix.from_rows(rows)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def matrix_loads(text: str) -> DegreeMatrix:
    return load_matrix(io.StringIO(text))


def read_matrix(path) -> DegreeMatrix:
    with open(path, encoding="utf-8") as fh:
        return load_matrix(fh)


DQ_PROBLEMS = ("q-coloring", "h-homomorphism", "h-cover", "independence")


def dq_catalog(name: str, q: int | None = None, h: Graph | None = None, loops=()) -> DegreeMatrix:
    """Degree matrices of standard partition problems.

    ``h`` is the pattern graph of the H-problems; ``loops`` lists its looped
    vertices (homomorphism only, since a Graph carries no self-loops).
    """
    F, N = SetSpec.finite, SetSpec.naturals()
    if name == "q-coloring":
        if q is None or q < 1:
            raise ValueError("q-coloring needs q >= 1")
        return DegreeMatrix(tuple(tuple(F(0) if i == j else N for j in range(q)) for i in range(q)))
    if name == "independence":
        return DegreeMatrix(((F(0),),))
    if name in ("h-homomorphism", "h-cover"):
        if h is None or h.n < 1:
            raise ValueError(f"{name} needs a nonempty pattern graph H")
        loops = set(loops)
        if any(not 0 <= x < h.n for x in loops):
            raise ValueError("loop vertex outside H")
        if name == "h-cover" and loops:
            raise ValueError("h-cover supports loopless H only")
        hit = F(1) if name == "h-cover" else N
        return DegreeMatrix(
            tuple(
                tuple(hit if h.has_edge(i, j) or (i == j and i in loops) else F(0) for j in range(h.n))
                for i in range(h.n)
            )
        )
    raise ValueError(f"unknown partition problem {name!r}; known: {', '.join(DQ_PROBLEMS)}")


class _TupleSet:
    """Ordered set of q-tuples of class ids, stored as rows of an int array."""

    def __init__(self, rows: np.ndarray, radix: np.ndarray):
        self.rows = rows
        self.radix = radix
        keys = rows @ radix
        order = np.argsort(keys, kind="stable")
        self._keys = keys[order]
        self._ids = order

    def __len__(self) -> int:
        return len(self.rows)

    def ids(self, comp: np.ndarray) -> np.ndarray:
        keys = comp @ self.radix
        pos = np.minimum(np.searchsorted(self._keys, keys), len(self._keys) - 1)
        if not np.array_equal(self._keys[pos], keys):
            raise KeyError("tuple outside the materialized set")
        return self._ids[pos]


def _radix(k: int, q: int, where: str) -> np.ndarray:
    if k ** q >= 1 << 62:
        raise RefusalError(f"tuple space {k}^{q} at {where} too large to index")
    return k ** np.arange(q, dtype=np.int64)


def _unique_rows(comp: np.ndarray, k: int, q: int, cap: int, where: str) -> _TupleSet:
    radix = _radix(k, q, where)
    keys, first = np.unique(comp.reshape(-1, q) @ radix, return_index=True)
    if len(keys) > cap:
        raise RefusalError(f"{len(keys)} tuple classes at {where} exceed cap {cap}")
    rows = comp.reshape(-1, q)[np.sort(first)]
    return _TupleSet(rows, radix)


def _product(k: int, q: int, cap: int, where: str) -> _TupleSet:
    if k ** q > cap:
        raise RefusalError(f"{k}^{q} = {k ** q} tuple classes at {where} exceed cap {cap}")
    rows = np.array(list(itertools.product(range(k), repeat=q)), dtype=np.int64).reshape(-1, q)
    return _TupleSet(rows, _radix(k, q, where))


def _tuple_join(scalar: np.ndarray, left: _TupleSet, right: _TupleSet, target: _TupleSet) -> np.ndarray:
    """Tuple-level map: componentwise scalar map, then the id in ``target``."""
    comp = scalar[left.rows[:, None, :], right.rows[None, :, :]]
    return target.ids(comp.reshape(-1, comp.shape[-1])).reshape(len(left), len(right))


def _run(g: Graph, tree: DecompositionTree, dm: DegreeMatrix, target: int | None, objective: str,
         strict: bool, cap: int | None, tuple_cap: int) -> int | None:
    tree.validate(g.n)
    q, d = dm.q, dm.d
    maximize = objective == "max"
    if g.n == 1:
        ok = [i for i in range(q) if all(0 in dm[i, j] for j in range(q))]
        if not ok:
            return None
        if target is None:
            return 0
        vals = [1 if i == target else 0 for i in ok]
        return max(vals) if maximize else min(vals)

    rooted = root_at(tree, 0)
    idx = IndexCache(g, d, cap)
    full = g.full
    inner_idx, outer_idx, inner_t, outer_t, jw = {}, {}, {}, {}, {}

    def where(w):
        return f"tree node {w} (|V_w|={rooted.leafset[w].bit_count()})"

    for w in rooted.postorder:
        vw = rooted.leafset[w]
        inner_idx[w], outer_idx[w] = idx(vw), idx(full & ~vw)
        k = len(inner_idx[w])
        if not rooted.is_leaf(w):
            a, b = rooted.children[w]
            jw[w] = union_classes(inner_idx[w], inner_idx[a], inner_idx[b])
        if strict:
            inner_t[w] = _product(k, q, tuple_cap, where(w))
        elif rooted.is_leaf(w):
            single = inner_idx[w].class_of(1 << rooted.leaf_vertex[w])
            inner_t[w] = _unique_rows(single * np.eye(q, dtype=np.int64), k, q, tuple_cap, where(w))
        else:
            comp = jw[w][inner_t[a].rows[:, None, :], inner_t[b].rows[None, :, :]]
            inner_t[w] = _unique_rows(comp, k, q, tuple_cap, where(w))

    jabar, jbbar = {}, {}
    for w in reversed(rooted.postorder):
        k = len(outer_idx[w])
        if strict:
            outer_t[w] = _product(k, q, tuple_cap, where(w))
        elif w == rooted.root:
            outer_t[w] = _unique_rows(np.zeros((1, q), dtype=np.int64), k, q, tuple_cap, where(w))
        if rooted.is_leaf(w):
            continue
        a, b = rooted.children[w]
        jabar[w] = union_classes(outer_idx[a], inner_idx[b], outer_idx[w])
        jbbar[w] = union_classes(outer_idx[b], inner_idx[a], outer_idx[w])
        if not strict:
            for child, other, scalar in ((a, b, jabar[w]), (b, a, jbbar[w])):
                comp = scalar[inner_t[other].rows[:, None, :], outer_t[w].rows[None, :, :]]
                outer_t[child] = _unique_rows(comp, len(outer_idx[child]), q, tuple_cap, where(child))

    member = [[membership_table(dm[i, j], d) for j in range(q)] for i in range(q)]
    tables = {}
    for w in rooted.postorder:
        if rooted.is_leaf(w):
            v = rooted.leaf_vertex[w]
            counts = np.minimum(outer_idx[w].counts_at([v])[:, 0], d)
            ys = counts[outer_t[w].rows]  # (n_outer, q) truncated counts at v
            single = inner_idx[w].class_of(1 << v)
            tab = np.full((len(inner_t[w]), len(outer_t[w])), UNDEF, dtype=np.int64)
            for i in range(q):
                row = np.zeros(q, dtype=np.int64)
                row[i] = single
                ti = int(inner_t[w].ids(row[None, :])[0])
                ok = np.ones(len(outer_t[w]), dtype=bool)
                for j in range(q):
                    ok &= member[i][j][ys[:, j]]
                val = 1 if target == i else 0
                cur = tab[ti, ok]
                if maximize:
                    tab[ti, ok] = np.where(cur < 0, val, np.maximum(cur, val))
                else:
                    tab[ti, ok] = np.where(cur < 0, val, np.minimum(cur, val))
            tables[w] = tab
            continue
        a, b = rooted.children[w]
        tw = _tuple_join(jw[w], inner_t[a], inner_t[b], inner_t[w])
        ta_bar = _tuple_join(jabar[w], inner_t[b], outer_t[w], outer_t[a])
        tb_bar = _tuple_join(jbbar[w], inner_t[a], outer_t[w], outer_t[b])
        tables[w] = kernels.dp_join(tables.pop(a), tables.pop(b), tw, ta_bar, tb_bar, len(inner_t[w]), maximize)
    root = tables[rooted.root]
    vals = root[root >= 0]
    if vals.size == 0:
        return None
    return int(vals.max() if maximize else vals.min())


def solve_partition(g: Graph, tree: DecompositionTree, dm: DegreeMatrix, strict: bool = False,
                    cap: int | None = None, tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """Whether g has a partition into dm.q parts (empty parts allowed) satisfying dm."""
    return _run(g, tree, dm, None, "min", strict, cap, tuple_cap) is not None


def solve_partition_opt(g: Graph, tree: DecompositionTree, dm: DegreeMatrix, target: int = 0,
                        objective: str = "max", strict: bool = False, cap: int | None = None,
                        tuple_cap: int = DEFAULT_TUPLE_CAP) -> int | None:
    """Optimum size of part ``target`` over all partitions satisfying dm; None if none exist."""
    if not 0 <= target < dm.q:
        raise ValueError(f"target part {target} outside 0..{dm.q - 1}")
    if objective not in ("min", "max"):
        raise ValueError("objective must be 'min' or 'max'")
    return _run(g, tree, dm, target, objective, strict, cap, tuple_cap)

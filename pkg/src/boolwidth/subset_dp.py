"""Minimum or maximum (sigma, rho)-sets by dynamic programming over a decomposition tree.

A set X is a (sigma, rho)-set when every vertex in X has a neighbor count
inside X in sigma, and every vertex outside X has one in rho. Both sets are
finite or cofinite sets of naturals, written ``{0,2}``, ``co{0}`` (all
naturals except 0) or ``N``.

Tables are indexed by (inner class, outer class) of d-neighbor equivalence at
each node; entries are set sizes, with ``UNDEF`` (-1) marking an empty
candidate set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .decomposition import DecompositionTree, RootedTree, root_at
from .dp_common import IndexCache, union_classes
from .equivalence import RepresentativeIndex
from .graph import Graph

UNDEF = kernels.UNDEF
INFEASIBLE = None

_SPEC_RE = re.compile(r"^(co)?\{\s*([0-9,\s]*)\}$")


@dataclass(frozen=True)
class SetSpec:
    """A finite set of naturals, or a cofinite one given by its excluded elements."""

    kind: str
    elements: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("finite", "cofinite"):
            raise ValueError(f"kind must be 'finite' or 'cofinite', got {self.kind!r}")
        if any((not isinstance(e, (int, np.integer))) or e < 0 for e in self.elements):
            raise ValueError("elements must be natural numbers")
        object.__setattr__(self, "elements", frozenset(int(e) for e in self.elements))

    @classmethod
    def finite(cls, *elements: int) -> SetSpec:
        return cls("finite", frozenset(elements))

    @classmethod
    def cofinite(cls, *excluded: int) -> SetSpec:
        return cls("cofinite", frozenset(excluded))

    @classmethod
    def naturals(cls) -> SetSpec:
        return cls("cofinite", frozenset())

    @classmethod
    def parse(cls, text: str) -> SetSpec:
        t = text.strip()
        if t == "N":
            return cls.naturals()
        m = _SPEC_RE.match(t)
        if not m:
            raise ValueError(f"cannot parse set spec {text!r}; expected {{0,2}}, co{{0}} or N")
        body = [p.strip() for p in m.group(2).split(",") if p.strip()]
        elems = frozenset(int(p) for p in body)
        return cls("cofinite" if m.group(1) else "finite", elems)

    def __contains__(self, t: int) -> bool:
        return (t in self.elements) == (self.kind == "finite")

    @property
    def d(self) -> int:
        return d_value(self)

    def __str__(self) -> str:
        if self.kind == "cofinite" and not self.elements:
            return "N"
        body = ",".join(str(e) for e in sorted(self.elements))
        return ("co{" if self.kind == "cofinite" else "{") + body + "}"


def d_value(mu: SetSpec) -> int:
    """Threshold past which membership in mu no longer changes (0 for N and for the empty set)."""
    if not mu.elements:
        return 0
    return 1 + max(mu.elements)


def member_truncated(mu: SetSpec, t: int, d: int) -> bool:
    """Membership of a neighbor count that was truncated at d."""
    if d < d_value(mu):
        raise ValueError(f"threshold {d} is below d({mu}) = {d_value(mu)}")
    if not 0 <= t <= d:
        raise ValueError(f"truncated count {t} outside [0, {d}]")
    if t < d:
        return t in mu
    return mu.kind == "cofinite"


def membership_table(mu: SetSpec, d: int) -> np.ndarray:
    """Boolean vector of ``member_truncated(mu, t, d)`` for t = 0..d."""
    return np.array([member_truncated(mu, t, d) for t in range(d + 1)], dtype=bool)


@dataclass(frozen=True)
class SubsetProblem:
    sigma: SetSpec
    rho: SetSpec
    objective: str = "min"
    name: str | None = None

    def __post_init__(self):
        if self.objective not in ("min", "max"):
            raise ValueError("objective must be 'min' or 'max'")

    @property
    def d(self) -> int:
        return max(d_value(self.sigma), d_value(self.rho))

    def with_objective(self, objective: str) -> SubsetProblem:
        return SubsetProblem(self.sigma, self.rho, objective, self.name)


PROBLEMS = (
    "independent-set",
    "dominating-set",
    "total-dominating-set",
    "independent-dominating-set",
    "perfect-code",
    "strong-stable-set",
    "perfect-dominating-set",
    "induced-k-regular",
    "k-bounded-degree",
    "k-dominating",
)


def catalog(name: str, k: int | None = None, objective: str | None = None) -> SubsetProblem:
    """Standard (sigma, rho) encodings; ``k`` parameterizes the three k-problems."""
    F, CO, N = SetSpec.finite, SetSpec.cofinite, SetSpec.naturals()
    table = {
        "independent-set": (F(0), N, "max"),
        "dominating-set": (N, CO(0), "min"),
        "total-dominating-set": (CO(0), CO(0), "min"),
        "independent-dominating-set": (F(0), CO(0), "min"),
        "perfect-code": (F(0), F(1), "min"),
        "strong-stable-set": (F(0), F(0, 1), "max"),
        "perfect-dominating-set": (N, F(1), "min"),
    }
    if name in ("induced-k-regular", "k-bounded-degree", "k-dominating"):
        if k is None or k < 0 or (name == "k-dominating" and k < 1):
            raise ValueError(f"{name} needs a parameter k")
        if name == "induced-k-regular":
            entry = (F(k), N, "max")
        elif name == "k-bounded-degree":
            entry = (F(*range(k + 1)), N, "max")
        else:
            entry = (N, CO(*range(k)), "min")
    elif name in table:
        entry = table[name]
    else:
        raise ValueError(f"unknown problem {name!r}; known: {', '.join(PROBLEMS)}")
    sigma, rho, default = entry
    return SubsetProblem(sigma, rho, objective or default, name)


@dataclass
class SubsetRun:
    """Everything the DP built: rooted tree, per-node indexes, and final tables."""

    rooted: RootedTree
    inner: dict[int, RepresentativeIndex] = field(default_factory=dict)
    outer: dict[int, RepresentativeIndex] = field(default_factory=dict)
    tables: dict[int, np.ndarray] = field(default_factory=dict)
    value: int | None = None

    @property
    def max_classes(self) -> int:
        sizes = [len(i) for i in self.inner.values()] + [len(i) for i in self.outer.values()]
        return max(sizes, default=1)


def _better(a: int, b: int, maximize: bool) -> int:
    if a < 0:
        return b
    if b < 0:
        return a
    return max(a, b) if maximize else min(a, b)


def _leaf_table(g: Graph, v: int, inner: RepresentativeIndex, outer: RepresentativeIndex, prob: SubsetProblem, d: int) -> np.ndarray:
    counts = np.minimum(outer.counts_at([v])[:, 0], d)
    in_sigma = membership_table(prob.sigma, d)[counts]
    in_rho = membership_table(prob.rho, d)[counts]
    tab = np.full((len(inner), len(outer)), UNDEF, dtype=np.int64)
    tab[0, in_rho] = 0
    single = inner.class_of(1 << v)
    maximize = prob.objective == "max"
    for iy in np.flatnonzero(in_sigma):
        tab[single, iy] = _better(int(tab[single, iy]), 1, maximize)
    return tab


def _single_vertex(g: Graph, prob: SubsetProblem) -> int | None:
    options = []
    if 0 in prob.rho:
        options.append(0)
    if 0 in prob.sigma:
        options.append(1)
    if not options:
        return INFEASIBLE
    return max(options) if prob.objective == "max" else min(options)


def run_subset(
    g: Graph, tree: DecompositionTree, prob: SubsetProblem, cap: int | None = None, keep_tables: bool = False
) -> SubsetRun:
    """Run the DP; child tables are dropped once joined unless ``keep_tables``."""
    tree.validate(g.n)
    if g.n == 1:
        run = SubsetRun(rooted=None)  # type: ignore[arg-type]
        run.value = _single_vertex(g, prob)
        return run
    d = prob.d
    maximize = prob.objective == "max"
    rooted = root_at(tree, 0)
    idx = IndexCache(g, d, cap)
    run = SubsetRun(rooted)
    full = g.full
    for w in rooted.postorder:
        vw = rooted.leafset[w]
        inner, outer = idx(vw), idx(full & ~vw)
        run.inner[w], run.outer[w] = inner, outer
        if rooted.is_leaf(w):
            run.tables[w] = _leaf_table(g, rooted.leaf_vertex[w], inner, outer, prob, d)
            continue
        a, b = rooted.children[w]
        jw = union_classes(inner, run.inner[a], run.inner[b])
        jabar = union_classes(run.outer[a], run.inner[b], outer)
        jbbar = union_classes(run.outer[b], run.inner[a], outer)
        run.tables[w] = kernels.dp_join(run.tables[a], run.tables[b], jw, jabar, jbbar, len(inner), maximize)
        if not keep_tables:
            del run.tables[a], run.tables[b]
    root_tab = run.tables[rooted.root]
    assert root_tab.shape == (1, 1), "root must have a single inner and outer class"
    val = int(root_tab[0, 0])
    run.value = INFEASIBLE if val < 0 else val
    return run


def solve_subset(g: Graph, tree: DecompositionTree, prob: SubsetProblem, cap: int | None = None) -> int | None:
    """Optimum size of a (sigma, rho)-set of g, or ``INFEASIBLE`` (None) if there is none."""
    return run_subset(g, tree, prob, cap).value

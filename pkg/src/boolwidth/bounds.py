"""Empirical checks of the inequalities relating rank, boolean-cut and subspace counts.

Per cut, with r the cut-rank, C the closure count and S the subspace count:

    r <= C <= S        and        S <= r * 2**(r*r/4 + 5*r/4)

Per graph, with rw the rank-width and C the boolean width as a closure count:

    rw <= C            and        log2 C <= rw*rw/4 + 5*rw/4 + log2 rw

Every comparison is done on integers (the second forms are raised to the
fourth power, and r*(r+5) is always even). Rank 0 forces C = S = 1.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .cuts import NSS_MAX_ROWS, cut_rank, nss, union_closure_count
from .decomposition import EXACT_MAX_N, exact_min_width, greedy_decompose
from .errors import RefusalError
from .graph import Graph, format_vertices


def width_upper_exponent(rw: int) -> float:
    return rw * rw / 4 + 5 * rw / 4 + (math.log2(rw) if rw > 0 else 0.0)


def graph_chain(rw: int, closure: int) -> bool:
    """Whether (rw, closure width) satisfy the width comparison chain."""
    if rw == 0:
        return closure == 1
    return rw <= closure and closure**4 <= rw**4 * 2 ** (rw * rw + 5 * rw)


def cut_chain(rank: int, closure: int, subspaces: int | None) -> bool:
    """Per-cut chain; ``subspaces`` may be None when not computed."""
    if rank == 0:
        return closure == 1 and subspaces in (None, 1)
    if not rank <= closure:
        return False
    if subspaces is None:
        return True
    return closure <= subspaces and subspaces**4 <= rank**4 * 2 ** (rank * rank + 5 * rank)


@dataclass
class CutCheck:
    a_bits: int
    rank: int
    closure: int
    subspaces: int | None

    @property
    def ok(self) -> bool:
        return cut_chain(self.rank, self.closure, self.subspaces)


def check_cut(g: Graph, a_bits: int) -> CutCheck:
    """Chain quantities of one cut.

    Subspaces are counted over the rows of A, or over its columns when only
    the other side is small enough to enumerate; either bounds the closure.
    """
    comp = g.full & ~a_bits
    if a_bits.bit_count() <= NSS_MAX_ROWS:
        sub = nss(g, a_bits)
    elif comp.bit_count() <= NSS_MAX_ROWS:
        sub = nss(g, comp)
    else:
        sub = None
    return CutCheck(a_bits, cut_rank(g, a_bits), union_closure_count(g, a_bits), sub)


def sample_cuts(n: int, count: int, seed: int, max_side: int = NSS_MAX_ROWS) -> list[int]:
    """Random proper nonempty sides A with |A| <= max_side, reproducible per seed."""
    if n < 2:
        return []
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, min(max_side, n - 1))
        out.append(sum(1 << v for v in rng.sample(range(n), k)))
    return out


@dataclass
class BoundsReport:
    n: int
    mode: str
    rw: int
    closure_width: int
    cuts: list[CutCheck] = field(default_factory=list)

    @property
    def chain_ok(self) -> bool:
        return graph_chain(self.rw, self.closure_width)

    @property
    def cut_violations(self) -> int:
        return sum(1 for c in self.cuts if not c.ok)

    def lines(self) -> list[str]:
        rw, c = self.rw, self.closure_width
        out = [
            f"n={self.n}",
            f"mode={self.mode}",
            f"rw={rw}",
            f"closure_width={c}",
            f"beta_width={math.log2(c):.6f}",
        ]
        if rw == 0:
            out.append("# rank-width 0: only the edgeless case, chain reads closure_width == 1")
        else:
            out.append(f"log2_rw={math.log2(rw):.6f}")
            out.append(f"upper={width_upper_exponent(rw):.6f}")
        if self.mode == "heuristic":
            out.append("# heuristic widths are upper bounds on the optimum; the chain is checked on them as-is")
        out.append(f"chain={'pass' if self.chain_ok else 'fail'}")
        for i, cut in enumerate(self.cuts, 1):
            s = "-" if cut.subspaces is None else str(cut.subspaces)
            out.append(
                f"cut_{i}=vertices:{format_vertices(cut.a_bits)} rank:{cut.rank} closure:{cut.closure} "
                f"nss:{s} chain:{'pass' if cut.ok else 'fail'}"
            )
        out.append(f"cuts_checked={len(self.cuts)}")
        out.append(f"cut_violations={self.cut_violations}")
        return out


def bounds_report(
    g: Graph, mode: str = "exact", samples: int = 0, seed: int | None = None, extra_cuts=()
) -> BoundsReport:
    """Widths by exact search (n <= 10) or the seeded greedy heuristic, plus per-cut checks."""
    if mode == "exact":
        if g.n > EXACT_MAX_N:
            raise RefusalError(f"exact bounds report limited to n <= {EXACT_MAX_N}, got {g.n}")
        rw = exact_min_width(g, "rank")[1]
        cw = exact_min_width(g, "boolean")[1]
    elif mode == "heuristic":
        if seed is None:
            raise ValueError("heuristic mode needs a seed")
        rw = greedy_decompose(g, "rank", seed=seed)[1]
        cw = greedy_decompose(g, "boolean", seed=seed)[1]
    else:
        raise ValueError("mode must be 'exact' or 'heuristic'")
    if samples and seed is None:
        raise ValueError("sampling cuts needs a seed")
    report = BoundsReport(g.n, mode, rw, cw)
    sides = list(extra_cuts) + (sample_cuts(g.n, samples, seed) if samples else [])
    report.cuts = [check_cut(g, a) for a in sides]
    return report

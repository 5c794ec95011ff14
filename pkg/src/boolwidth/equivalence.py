"""d-neighbor equivalence over the subsets of one side of a cut.

Two subsets X, X' of A are equivalent when every vertex outside A sees the
same number of their members, counting only up to ``d``. A class is named by
its *signature*: the truncated counts at one vertex per outside twin class
(outside vertices with no neighbor in A are dropped, they always see 0).

Canonical representatives are minimum-size members of each class, ties broken
by the smallest multiset over the twin classes of A (ordered by smallest
member), realised with the smallest vertex ids of each twin class.
"""

from __future__ import annotations

import os

import numpy as np

from .cuts import sides
from .errors import ClassCapExceeded
from .graph import Graph, SetLike, VertexSet, as_bits, iter_bits, twin_groups

DEFAULT_CAP = 1 << 20


def default_cap() -> int:
    env = os.environ.get("BOOLWIDTH_CLASS_CAP")
    return int(env) if env else DEFAULT_CAP


def _outside_classes(g: Graph, a_bits: int, b_bits: int) -> list[int]:
    """One vertex per twin class of the outside side that touches A."""
    return [(members & -members).bit_length() - 1 for members, nb in twin_groups(g, b_bits) if nb]


def d_signature(g: Graph, a: SetLike, x: SetLike, d: int) -> tuple[int, ...]:
    """Truncated neighbor counts of X at each outside twin class of A."""
    a_bits, b_bits = sides(g, a)
    x_bits = as_bits(x)
    if x_bits & ~a_bits:
        raise ValueError("X must be a subset of A")
    if d < 0:
        raise ValueError("d must be >= 0")
    return tuple(min((g.adj[u] & x_bits).bit_count(), d) for u in _outside_classes(g, a_bits, b_bits))


class RepresentativeIndex:
    """Canonical representatives of d-neighbor equivalence on one cut side.

    Class ids are list positions; the class of the empty set is always 0.
    """

    def __init__(self, g: Graph, a_bits: int, d: int, reps: list[int], out_vertices: list[int]):
        self.g = g
        self.a_bits = a_bits
        self.d = d
        self.reps = reps
        self.out_vertices = np.array(out_vertices, dtype=np.intp)
        ind = np.zeros((len(reps), g.n), dtype=np.int32)
        for i, r in enumerate(reps):
            ind[i, list(iter_bits(r))] = 1
        self.indicator = ind
        if d > 0 and len(out_vertices):
            self.signatures = np.minimum(self.counts_at(self.out_vertices), d)
        else:
            self.signatures = np.zeros((len(reps), 0), dtype=np.int64)
        self._encode_ints = self.signatures.shape[1] * np.log2(d + 1) <= 62 if d > 0 else True
        if self._encode_ints:
            self._radix = (d + 1) ** np.arange(self.signatures.shape[1], dtype=np.int64)
        keys = self._keys(self.signatures)
        self._lookup = {k: i for i, k in enumerate(keys)}
        if len(self._lookup) != len(reps):
            raise AssertionError("representatives are not pairwise inequivalent")
        if self._encode_ints:
            order = np.argsort(keys)
            self._sorted_keys = np.asarray(keys, dtype=np.int64)[order]
            self._sorted_ids = order

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def n_outside(self) -> int:
        return self.signatures.shape[1]

    def rep(self, i: int) -> VertexSet:
        return VertexSet.from_bits(self.g.n, self.reps[i])

    def counts_at(self, vertices) -> np.ndarray:
        """Untruncated counts ``|N(u) & R|`` for each representative R and vertex u."""
        return self.indicator @ self.g.matrix[:, vertices].astype(np.int32)

    def _keys(self, sigs: np.ndarray):
        sigs = np.asarray(sigs, dtype=np.int64)
        if self._encode_ints:
            if sigs.shape[-1] == 0:
                return [0] * sigs.shape[0]
            return (sigs @ self._radix).tolist()
        return [row.tobytes() for row in np.ascontiguousarray(sigs, dtype=np.uint8)]

    def signature(self, x: SetLike) -> tuple[int, ...]:
        x_bits = as_bits(x)
        if x_bits & ~self.a_bits:
            raise ValueError("X must be a subset of A")
        if self.d == 0:
            return ()
        return tuple(min((self.g.adj[u] & x_bits).bit_count(), self.d) for u in self.out_vertices.tolist())

    def class_of(self, x: SetLike) -> int:
        sig = self.signature(x)
        return self._lookup[self._keys(np.array([sig], dtype=np.int64).reshape(1, -1))[0]]

    def lookup(self, sigs: np.ndarray) -> np.ndarray:
        """Class ids for a stack of signatures (last axis = outside classes)."""
        sigs = np.asarray(sigs, dtype=np.int64)
        shape = sigs.shape[:-1]
        flat = sigs.reshape(-1, sigs.shape[-1])
        if self._encode_ints:
            if flat.shape[1] == 0:
                return np.zeros(shape, dtype=np.int64)
            keys = flat @ self._radix
            pos = np.searchsorted(self._sorted_keys, keys)
            pos = np.minimum(pos, len(self._sorted_keys) - 1)
            if not np.array_equal(self._sorted_keys[pos], keys):
                raise KeyError("signature outside the representative list")
            return self._sorted_ids[pos].reshape(shape).astype(np.int64)
        ids = np.array([self._lookup[k] for k in self._keys(flat)], dtype=np.int64)
        return ids.reshape(shape)


def build_representatives(g: Graph, a: SetLike, d: int, cap: int | None = None) -> RepresentativeIndex:
    """List canonical representatives of every class of d-neighbor equivalence on A.

    Enumerates, size level by size level, the multisets over A's twin classes
    that are irredundant (no member can be dropped without changing the
    signature). Irredundant sets are closed under taking subsets and every
    class has a minimum-size member among them, so the walk is complete; it
    ends by itself once a level is empty, which happens by size ``d * rank``.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    cap = default_cap() if cap is None else cap
    a_bits, b_bits = sides(g, a)
    active = [(m, nb) for m, nb in twin_groups(g, a_bits) if nb]
    outs = [(m, nb) for m, nb in twin_groups(g, b_bits) if nb]
    out_vertices = [(m & -m).bit_length() - 1 for m, _ in outs]
    if d == 0 or not active:
        return RepresentativeIndex(g, a_bits, d, [0], out_vertices)

    t, o = len(active), len(outs)
    inc = np.array([[1 if nb_o & m_c else 0 for m_c, _ in active] for _, nb_o in outs], dtype=np.int32)
    capacity = np.array([min(d, m.bit_count()) for m, _ in active], dtype=np.int32)
    members = [list(iter_bits(m)) for m, _ in active]

    def materialize(mult) -> int:
        bits = 0
        for c in np.flatnonzero(mult):
            for v in members[c][: mult[c]]:
                bits |= 1 << v
        return bits

    radix_ok = o * np.log2(d + 1) <= 62
    radix = (d + 1) ** np.arange(o, dtype=np.int64) if radix_ok else None

    def keys_of(sig):
        if radix_ok:
            return (sig.astype(np.int64) @ radix).tolist()
        return [row.tobytes() for row in sig.astype(np.uint8)]

    seen = set(keys_of(np.zeros((1, o), dtype=np.int32)))
    reps = [0]
    mult = np.zeros((1, t), dtype=np.int32)
    cnt = np.zeros((1, o), dtype=np.int32)
    last = np.zeros(1, dtype=np.int32)
    cols = np.arange(t)
    state_budget = 64 * cap
    visited = 1
    while len(mult):
        grow = (cols[None, :] >= last[:, None]) & (mult < capacity[None, :])
        s_idx, c_idx = np.nonzero(grow)
        if s_idx.size == 0:
            break
        new_mult = mult[s_idx]
        new_mult[np.arange(len(s_idx)), c_idx] += 1
        new_cnt = np.minimum(cnt[s_idx] + inc[:, c_idx].T, d + 1)
        tight = (new_cnt <= d).astype(np.int32)
        covered = (tight @ inc) > 0
        keep = np.all(covered | (new_mult == 0), axis=1)
        mult, cnt, last = new_mult[keep], new_cnt[keep], c_idx[keep].astype(np.int32)
        visited += len(mult)
        if visited > state_budget:
            raise ClassCapExceeded(f"representative search on cut A={_fmt(a_bits)} visited over {state_budget} sets")
        for key, m in zip(keys_of(np.minimum(cnt, d)), mult):
            if key not in seen:
                seen.add(key)
                reps.append(materialize(m))
                if len(reps) > cap:
                    raise ClassCapExceeded(f"more than {cap} classes (d={d}) on cut A={_fmt(a_bits)}")
    return RepresentativeIndex(g, a_bits, d, reps, out_vertices)


def _fmt(bits: int) -> str:
    return "{" + ",".join(str(v + 1) for v in iter_bits(bits)) + "}"


def canonical_representative(idx: RepresentativeIndex, x: SetLike) -> tuple[int, VertexSet]:
    """Class id and canonical representative of X.

    X is first pruned (drop any vertex whose removal keeps the signature), so
    the set that is looked up has at most d * rank members.
    """
    x_bits = as_bits(x)
    target = idx.signature(x_bits)
    r = x_bits
    for v in iter_bits(x_bits):
        if idx.signature(r & ~(1 << v)) == target:
            r &= ~(1 << v)
    try:
        cid = idx.class_of(r)
    except KeyError:
        raise AssertionError("signature missing from a complete representative list") from None
    return cid, idx.rep(cid)

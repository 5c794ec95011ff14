"""Simple undirected graphs over a dense vertex universe, with bitset vertex sets.

Vertices are the integers ``0..n-1``. Neighborhoods and vertex sets are stored
as Python ints used as bitsets; :class:`VertexSet` is the public wrapper.
The on-disk format is 1-indexed (DIMACS style)::

    # optional comments
    p <n> <m>
    e <u> <v>
"""

from __future__ import annotations

import io
import logging
from collections.abc import Iterable, Iterator
from typing import TextIO, Union

import numpy as np

from .errors import GraphFormatError

log = logging.getLogger(__name__)


def iter_bits(x: int) -> Iterator[int]:
    """Yield the positions of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_of(members: Iterable[int]) -> int:
    out = 0
    for v in members:
        out |= 1 << v
    return out


class VertexSet:
    """Immutable subset of the universe ``0..n-1``."""

    __slots__ = ("_bits", "_n")

    def __init__(self, n: int, members: Iterable[int] = ()):
        bits = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside universe 0..{n - 1}")
            bits |= 1 << v
        self._bits = bits
        self._n = n

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "VertexSet":
        if bits < 0 or bits >> n:
            raise ValueError("bitset has members outside the universe")
        vs = cls.__new__(cls)
        vs._bits = bits
        vs._n = n
        return vs

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def n(self) -> int:
        return self._n

    def _other(self, other: "VertexSet") -> int:
        if not isinstance(other, VertexSet):
            return NotImplemented
        if other._n != self._n:
            raise ValueError("vertex sets over different universes")
        return other._bits

    def __or__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else VertexSet.from_bits(self._n, self._bits | b)

    def __and__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else VertexSet.from_bits(self._n, self._bits & b)

    def __sub__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else VertexSet.from_bits(self._n, self._bits & ~b)

    def __xor__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else VertexSet.from_bits(self._n, self._bits ^ b)

    def complement(self) -> "VertexSet":
        return VertexSet.from_bits(self._n, ((1 << self._n) - 1) & ~self._bits)

    __invert__ = complement

    def __le__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else self._bits & ~b == 0

    def issubset(self, other: "VertexSet") -> bool:
        return self <= other

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self._bits)

    def __len__(self) -> int:
        return self._bits.bit_count()

    def __bool__(self) -> bool:
        return self._bits != 0

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self._n and (self._bits >> v) & 1 == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self._n == other._n and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self._n, self._bits))

    def __repr__(self) -> str:
        return f"VertexSet({self._n}, {list(self)})"

    def min(self) -> int:
        if not self._bits:
            raise ValueError("empty vertex set")
        return (self._bits & -self._bits).bit_length() - 1


SetLike = Union[VertexSet, Iterable[int], int]


def as_bits(x: SetLike) -> int:
    """Coerce a VertexSet, a raw bitmask or an iterable of vertices to a bitmask."""
    if isinstance(x, VertexSet):
        return x.bits
    if isinstance(x, (int, np.integer)):
        return int(x)
    return bits_of(x)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_adj", "_m", "_matrix")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("negative vertex count")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._set(n, adj)

    def _set(self, n: int, adj: list[int]) -> None:
        self._n = n
        self._adj = tuple(adj)
        self._m = sum(a.bit_count() for a in adj) // 2
        self._matrix = None

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> "Graph":
        """Build from neighborhood bitmasks; symmetry and looplessness are checked."""
        adj = list(adj)
        n = len(adj)
        for v, nb in enumerate(adj):
            if (nb >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if nb >> n:
                raise ValueError(f"neighbor of {v} outside universe")
            for u in iter_bits(nb):
                if not (adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        g = cls.__new__(cls)
        g._set(n, adj)
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def adj(self) -> tuple[int, ...]:
        """Neighborhood bitmasks, indexed by vertex."""
        return self._adj

    @property
    def full(self) -> int:
        return (1 << self._n) - 1

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_bits(self._n, self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return (self._adj[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in iter_bits(self._adj[u] >> (u + 1) << (u + 1))]

    def vertex_set(self, members: SetLike = ()) -> VertexSet:
        return VertexSet.from_bits(self._n, as_bits(members))

    def vertices(self) -> VertexSet:
        return VertexSet.from_bits(self._n, self.full)

    @property
    def matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (uint8), built on first use."""
        if self._matrix is None:
            mat = np.zeros((self._n, self._n), dtype=np.uint8)
            for u, v in self.edges():
                mat[u, v] = mat[v, u] = 1
            mat.setflags(write=False)
            self._matrix = mat
        return self._matrix

    def induced_subgraph(self, members: SetLike) -> tuple["Graph", list[int]]:
        keep = list(iter_bits(as_bits(members)))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return Graph(len(keep), edges), keep

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def neighborhood_union(g: Graph, y: SetLike) -> VertexSet:
    """N(Y): the union of the neighborhoods of the vertices in ``y``."""
    out = 0
    adj = g.adj
    for v in iter_bits(as_bits(y)):
        out |= adj[v]
    return VertexSet.from_bits(g.n, out)


def twin_groups(g: Graph, a_bits: int) -> list[tuple[int, int]]:
    """Group the vertices of A by their neighborhood outside A.

    Returns ``(members, outside_neighborhood)`` bitmask pairs ordered by the
    smallest member of each group.
    """
    outside = g.full & ~a_bits
    groups: dict[int, int] = {}
    for v in iter_bits(a_bits):
        key = g.adj[v] & outside
        groups[key] = groups.get(key, 0) | (1 << v)
    # dict preserves insertion order, and vertices arrive in increasing order
    return [(members, key) for key, members in groups.items()]


def external_module_partition(g: Graph, a: SetLike) -> list[VertexSet]:
    """Coarsest partition of A into classes of identical outside-neighborhood."""
    return [VertexSet.from_bits(g.n, members) for members, _ in twin_groups(g, as_bits(a))]


# --------------------------------------------------------------------------- I/O


def load_graph_with_meta(stream: TextIO) -> tuple[Graph, dict[str, str]]:
    """Parse the graph format; also return ``# key value`` comment lines as metadata."""
    n = None
    edges = []
    meta: dict[str, str] = {}
    declared_m = 0
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body:
                key, _, value = body.partition(" ")
                meta.setdefault(key, value.strip())
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: header must be 'p <n> <m>'")
            try:
                n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header") from None
            if n < 0 or declared_m < 0:
                raise GraphFormatError(f"line {lineno}: negative header value")
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: edge must be 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer endpoint") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {lineno}: vertex index out of range 1..{n}")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p <n> <m>' header")
    g = Graph(n, edges)
    if len(edges) != declared_m:
        log.warning("header declares %d edges, file lists %d", declared_m, len(edges))
    return g, meta


def load_graph(stream: TextIO) -> Graph:
    return load_graph_with_meta(stream)[0]


def loads(text: str) -> Graph:
    return load_graph(io.StringIO(text))


def read_graph(path) -> tuple[Graph, dict[str, str]]:
    with open(path, encoding="utf-8") as fh:
        return load_graph_with_meta(fh)


def save_graph(g: Graph, stream: TextIO, comments: Iterable[str] = ()) -> None:
    for c in comments:
        stream.write(f"# {c}\n")
    stream.write(f"p {g.n} {g.m}\n")
    for u, v in g.edges():
        stream.write(f"e {u + 1} {v + 1}\n")


def dumps(g: Graph, comments: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    save_graph(g, buf, comments)
    return buf.getvalue()


def write_graph(path, g: Graph, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        save_graph(g, fh, comments)


def format_vertices(vs: SetLike) -> str:
    """Comma-separated 1-indexed list, the CLI's vertex-list syntax."""
    return ",".join(str(v + 1) for v in iter_bits(as_bits(vs)))


def parse_vertices(text: str, n: int) -> VertexSet:
    members = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        v = int(tok)
        if not 1 <= v <= n:
            raise GraphFormatError(f"vertex {v} out of range 1..{n}")
        members.append(v - 1)
    return VertexSet(n, members)

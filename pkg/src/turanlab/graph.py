"""Small simple undirected graphs with bitset adjacency rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapacityError, InputError

MAX_ORDER = 32


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """An immutable simple graph on vertices ``0..n-1``.

    ``adj[i]`` is a bitmask of the neighbours of ``i``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise CapacityError(f"graph order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise InputError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise InputError(f"row {i} has bits at or above n={self.n}")
            if row >> i & 1:
                raise InputError(f"loop at vertex {i}")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise InputError(f"asymmetric edge {i}-{j}")

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # Skips validation; callers guarantee the invariants.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 0 <= n <= MAX_ORDER:
            raise CapacityError(f"graph order {n} outside 0..{MAX_ORDER}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def add_edge(self, u: int, v: int) -> Graph:
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> Graph:
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def remove_vertex(self, v: int) -> Graph:
        return induced_subgraph(self, [u for u in range(self.n) if u != v])

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Return the graph with vertex ``i`` renamed to ``perm[i]``."""
        rows = [0] * self.n
        for i in range(self.n):
            row = 0
            for j in bits(self.adj[i]):
                row |= 1 << perm[j]
            rows[perm[i]] = row
        return Graph._trusted(self.n, tuple(rows))

    def complement(self) -> Graph:
        full = self.vertex_mask
        return Graph(self.n, tuple(full ^ row ^ (1 << i) for i, row in enumerate(self.adj)))

    def components(self) -> list[int]:
        """Connected components as vertex bitmasks, ordered by least vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _guard_order(n: int) -> None:
    if n > MAX_ORDER:
        raise CapacityError(f"result would have {n} vertices; limit is {MAX_ORDER}")


def disjoint_union(a: Graph, b: Graph) -> Graph:
    _guard_order(a.n + b.n)
    return Graph(a.n + b.n, a.adj + tuple(row << a.n for row in b.adj))


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union of ``a`` and ``b`` plus every edge between them."""
    _guard_order(a.n + b.n)
    a_all = (1 << a.n) - 1
    b_all = ((1 << b.n) - 1) << a.n
    rows = tuple(row | b_all for row in a.adj) + tuple((row << a.n) | a_all for row in b.adj)
    return Graph(a.n + b.n, rows)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled ``0..k-1`` in increasing order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(vs)}
    rows = []
    for v in vs:
        row = 0
        for u in bits(g.adj[v]):
            if u in pos:
                row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(vs), tuple(rows))

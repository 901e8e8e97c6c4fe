"""Chromatic number, proper colouring partitions and colour-critical elements.

A proper ``k``-colouring is read as a partition of V(g) into at most ``k``
independent classes; two colourings that differ only by renaming colours are
the same partition.  Uniqueness is judged on these unordered partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, bits


@dataclass(frozen=True)
class ColoringPartition:
    # Classes as vertex bitmasks, ordered by least vertex.
    classes: tuple[int, ...]

    def as_sets(self) -> list[list[int]]:
        return [list(bits(c)) for c in self.classes]

    def is_valid_for(self, g: Graph) -> bool:
        union = 0
        for c in self.classes:
            if not c or union & c:
                return False
            union |= c
            if any(g.adj[v] & c for v in bits(c)):
                return False
        return union == g.vertex_mask


def max_clique_size(g: Graph) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(size + 1, cand & g.adj[v])

    expand(0, g.vertex_mask)
    return best


def _dsatur_greedy(g: Graph) -> int:
    n = g.n
    color = [-1] * n
    used = 0
    for _ in range(n):
        v = max(
            (u for u in range(n) if color[u] < 0),
            key=lambda u: (len({color[w] for w in bits(g.adj[u]) if color[w] >= 0}), g.adj[u].bit_count()),
        )
        taken = {color[w] for w in bits(g.adj[v])}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
        used = max(used, c + 1)
    return used


def find_coloring(g: Graph, k: int) -> list[int] | None:
    """A proper colouring with colours ``0..k-1`` as a list, or None."""
    n = g.n
    if n == 0:
        return []
    if k <= 0:
        return None
    adj = g.adj
    classes: list[int] = []
    color = [-1] * n

    def rec(colored: int) -> bool:
        if colored == n:
            return True
        v, best = -1, (-1, -1)
        for u in range(n):
            if color[u] < 0:
                sat = sum(1 for c in classes if adj[u] & c)
                key = (sat, adj[u].bit_count())
                if key > best:
                    v, best = u, key
        for c in range(len(classes)):
            if not adj[v] & classes[c]:
                classes[c] |= 1 << v
                color[v] = c
                if rec(colored + 1):
                    return True
                classes[c] &= ~(1 << v)
        if len(classes) < k:
            classes.append(1 << v)
            color[v] = len(classes) - 1
            if rec(colored + 1):
                return True
            classes.pop()
        color[v] = -1
        return False

    return color if rec(0) else None


def is_colorable(g: Graph, k: int) -> bool:
    return find_coloring(g, k) is not None


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    lo, hi = max_clique_size(g), _dsatur_greedy(g)
    for k in range(lo, hi):
        if is_colorable(g, k):
            return k
    return hi


def iter_partitions(g: Graph, k: int) -> Iterator[ColoringPartition]:
    """Partitions into at most ``k`` independent classes, each exactly once."""
    n = g.n
    adj = g.adj
    classes: list[int] = []

    def rec(v: int) -> Iterator[ColoringPartition]:
        if v == n:
            yield ColoringPartition(tuple(classes))
            return
        for c in range(len(classes)):
            if not adj[v] & classes[c]:
                classes[c] |= 1 << v
                yield from rec(v + 1)
                classes[c] &= ~(1 << v)
        if len(classes) < k:
            classes.append(1 << v)
            yield from rec(v + 1)
            classes.pop()

    yield from rec(0)


def proper_partitions(g: Graph, k: int) -> list[ColoringPartition]:
    return list(iter_partitions(g, k))


def has_unique_proper_coloring(g: Graph, k: int) -> bool:
    it = iter_partitions(g, k)
    return next(it, None) is not None and next(it, None) is None


def color_critical_edges(g: Graph) -> list[tuple[int, int]]:
    """Edges whose deletion lowers the chromatic number."""
    chi = chromatic_number(g)
    return [(u, v) for u, v in g.edges() if is_colorable(g.remove_edge(u, v), chi - 1)]


def color_critical_vertices(g: Graph) -> list[int]:
    """Vertices whose deletion lowers the chromatic number."""
    chi = chromatic_number(g)
    return [v for v in range(g.n) if is_colorable(g.remove_vertex(v), chi - 1)]

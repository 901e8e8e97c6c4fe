"""Exact subgraph copy counting.

A *copy* of ``h`` in ``g`` is a (not necessarily induced) subgraph of ``g``
isomorphic to ``h``.  Copies are counted as injective edge-preserving maps
divided by |Aut(h)|.  Cliques go through a dedicated pivoting counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable

from .canon import automorphism_count, vertex_orbits
from .errors import InputError
from .graph import Graph, bits, induced_subgraph


@dataclass(frozen=True)
class CopyCount:
    value: int
    injective_homs: int


@dataclass(frozen=True)
class _Plan:
    order: tuple[int, ...]
    # back[i]: positions j < i whose h-vertex is adjacent to order[i]
    back: tuple[tuple[int, ...], ...]
    degree: tuple[int, ...]


@lru_cache(maxsize=1024)
def _plan(h: Graph, first: int | None = None) -> _Plan:
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    if first is not None:
        order.append(first)
        placed |= 1 << first
        remaining.discard(first)
    while remaining:
        v = max(remaining, key=lambda x: ((h.adj[x] & placed).bit_count(), h.adj[x].bit_count(), -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(tuple(sorted(pos[u] for u in bits(h.adj[v]) if pos[u] < i)) for i, v in enumerate(order))
    return _Plan(tuple(order), back, tuple(h.adj[v].bit_count() for v in order))


def _degree_masks(g: Graph, max_deg: int) -> list[int]:
    masks = [0] * (max_deg + 1)
    for v in range(g.n):
        d = g.adj[v].bit_count()
        for k in range(min(d, max_deg) + 1):
            masks[k] |= 1 << v
    return masks


def _embed(plan: _Plan, g: Graph, stop_at_first: bool, anchor: int | None = None) -> int:
    k = len(plan.order)
    if k == 0:
        return 1
    if k > g.n:
        return 0
    gadj = g.adj
    dmask = _degree_masks(g, max(plan.degree))
    cand0 = [dmask[d] for d in plan.degree]
    back = plan.back
    img = [0] * k
    last = k - 1

    def rec(i: int, used: int) -> int:
        cand = cand0[i] & ~used
        for j in back[i]:
            cand &= gadj[img[j]]
        if i == last:
            return 1 if stop_at_first and cand else cand.bit_count()
        total = 0
        for u in bits(cand):
            img[i] = u
            total += rec(i + 1, used | 1 << u)
            if stop_at_first and total:
                return total
        return total

    if anchor is None:
        return rec(0, 0)
    if not cand0[0] >> anchor & 1:
        return 0
    img[0] = anchor
    if k == 1:
        return 1
    return rec(1, 1 << anchor)


def injective_homomorphisms(h: Graph, g: Graph) -> int:
    """Number of injective maps V(h) -> V(g) sending edges to edges."""
    return _embed(_plan(h), g, False)


def _clique_order(h: Graph) -> int | None:
    n = h.n
    return n if h.edge_count == n * (n - 1) // 2 else None


def count_copies(h: Graph, g: Graph) -> CopyCount:
    r = _clique_order(h)
    if r is not None and r >= 1:
        value = count_cliques(g, r)
        homs = value * factorial(r)
    else:
        homs = injective_homomorphisms(h, g)
        value, rem = divmod(homs, automorphism_count(h))
        assert rem == 0, "injective homomorphisms not divisible by |Aut(h)|"
    return CopyCount(value, homs)


def contains(g: Graph, f: Graph) -> bool:
    """True iff ``g`` has a subgraph isomorphic to ``f``."""
    if f.n > g.n or f.edge_count > g.edge_count:
        return False
    return _embed(_plan(f), g, True) > 0


def is_free(g: Graph, f: Graph) -> bool:
    return not contains(g, f)


def contains_through(g: Graph, f: Graph, v: int) -> bool:
    """True iff some copy of ``f`` in ``g`` uses vertex ``v``."""
    if f.n > g.n:
        return False
    for orbit in vertex_orbits(f):
        if _embed(_plan(f, orbit[0]), g, True, anchor=v):
            return True
    return False


def _pivot_counts(adj: tuple[int, ...], cand: int, held: int, pivots: int, acc: list[int]) -> None:
    if not cand:
        for j in range(pivots + 1):
            if held + j < len(acc):
                acc[held + j] += comb(pivots, j)
        return
    if held >= len(acc):
        return
    best, best_deg = -1, -1
    for u in bits(cand):
        d = (adj[u] & cand).bit_count()
        if d > best_deg:
            best, best_deg = u, d
    _pivot_counts(adj, cand & adj[best], held, pivots + 1, acc)
    rest = cand & ~adj[best] & ~(1 << best)
    done = 1 << best
    for v in bits(rest):
        _pivot_counts(adj, cand & adj[v] & ~done, held + 1, pivots, acc)
        done |= 1 << v


def clique_counts(g: Graph, max_size: int | None = None) -> list[int]:
    """``out[r]`` is the number of r-cliques of ``g`` for r = 0..max_size."""
    top = g.n if max_size is None else max_size
    acc = [0] * (top + 1)
    _pivot_counts(g.adj, g.vertex_mask, 0, 0, acc)
    return acc


def count_cliques(g: Graph, r: int) -> int:
    if r < 1:
        raise InputError("clique size must be positive")
    if r > g.n:
        return 0
    return clique_counts(g, r)[r]


def count_copies_intersecting(h: Graph, g: Graph, s: Iterable[int]) -> int:
    """Copies of ``h`` in ``g`` with at least one vertex in ``s``."""
    s = set(s)
    for v in s:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
    outside = induced_subgraph(g, [v for v in range(g.n) if v not in s])
    return count_copies(h, g).value - count_copies(h, outside).value

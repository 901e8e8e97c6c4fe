"""Canonical labelling, isomorphism and automorphism groups.

The canonical form is found by individualisation-refinement: the vertex
partition is refined to an equitable one, then the search branches on the
first smallest non-singleton cell.  Among the discrete leaves the relabelled
graph with the lexicographically least upper-triangle bit string (graph6
order) wins.  Automorphisms met along the way (twin swaps, equal leaves)
prune branches that are images of already explored ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .graph import Graph
from .graph6 import to_graph6

Cells = list[tuple[int, ...]]


@dataclass(frozen=True)
class CanonicalForm:
    graph: Graph
    cert: bytes
    # labeling[v] is the canonical position of input vertex v.
    labeling: tuple[int, ...] = field(compare=False, repr=False)

    @property
    def order(self) -> tuple[int, ...]:
        """Input vertices listed by canonical position."""
        inv = [0] * len(self.labeling)
        for v, p in enumerate(self.labeling):
            inv[p] = v
        return tuple(inv)


def _refine(adj: tuple[int, ...], cells: Cells) -> Cells:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out: Cells = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                a = adj[v]
                groups.setdefault(tuple((a & m).bit_count() for m in masks), []).append(v)
            if len(groups) == 1:
                out.append(c)
                continue
            split = True
            for key in sorted(groups):
                out.append(tuple(groups[key]))
        cells = out
        if not split:
            return cells


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def _twin_swaps(adj: tuple[int, ...], n: int, cells: Cells) -> list[list[int]]:
    # Only swaps inside one initial cell respect a pre-individualised colouring.
    cell_of = {v: i for i, c in enumerate(cells) for v in c}
    gens = []
    seen_open: dict[int, int] = {}
    seen_closed: dict[int, int] = {}
    for v in range(n):
        for table, key in ((seen_open, adj[v]), (seen_closed, adj[v] | 1 << v)):
            # Chain consecutive twins so stabilisers of a prefix keep the rest.
            u = table.get(key)
            table[key] = v
            if u is not None and cell_of[u] == cell_of[v]:
                perm = list(range(n))
                perm[u], perm[v] = v, u
                gens.append(perm)
    return gens


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _orbit_roots(n: int, gens: list[list[int]], fixed: tuple[int, ...]) -> list[int]:
    """Union-find roots of the orbits of the generators that fix ``fixed`` pointwise."""
    parent = list(range(n))
    for perm in gens:
        if any(perm[p] != p for p in fixed):
            continue
        for x in range(n):
            y = perm[x]
            if y != x:
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[rx] = ry
    return [_find(parent, x) for x in range(n)]


def _search(adj: tuple[int, ...], n: int, cells: Cells) -> tuple[int, list[int]]:
    """Return (least leaf code, vertex order achieving it) below ``cells``."""
    gens = _twin_swaps(adj, n, cells)
    best_code = -1
    best_order: list[int] = []

    def visit(cells: Cells, prefix: tuple[int, ...]) -> None:
        nonlocal best_code, best_order
        if len(cells) == n:
            order = [c[0] for c in cells]
            code = _code(adj, order)
            if best_code < 0 or code < best_code:
                best_code, best_order = code, order
            elif code == best_code:
                perm = [0] * n
                for a, b in zip(order, best_order):
                    perm[a] = b
                gens.append(perm)
            return
        size = min(len(c) for c in cells if len(c) > 1)
        idx = next(i for i, c in enumerate(cells) if len(c) == size)
        cell = cells[idx]
        tried: list[int] = []
        roots: list[int] = []
        seen_gens = -1
        for v in cell:
            if tried:
                if seen_gens != len(gens):
                    seen_gens = len(gens)
                    roots = _orbit_roots(n, gens, prefix)
                if any(roots[u] == roots[v] for u in tried):
                    continue
            tried.append(v)
            rest = tuple(x for x in cell if x != v)
            child = cells[:idx] + [(v,), rest] + cells[idx + 1:]
            visit(_refine(adj, child), prefix + (v,))

    visit(_refine(adj, cells), ())
    return best_code, best_order


def _degree_cells(g: Graph, fixed: tuple[int, ...] = ()) -> Cells:
    fixed_set = set(fixed)
    by_deg: dict[int, list[int]] = {}
    for v in range(g.n):
        if v not in fixed_set:
            by_deg.setdefault(g.adj[v].bit_count(), []).append(v)
    return [(v,) for v in fixed] + [tuple(by_deg[d]) for d in sorted(by_deg)]


@lru_cache(maxsize=1 << 16)
def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical relabelling of ``g``; isomorphic inputs give byte-equal certs."""
    if g.n == 0:
        return CanonicalForm(g, to_graph6(g).encode(), ())
    _, order = _search(g.adj, g.n, _degree_cells(g))
    labeling = [0] * g.n
    for pos, v in enumerate(order):
        labeling[v] = pos
    cg = g.relabel(labeling)
    return CanonicalForm(cg, to_graph6(cg).encode(), tuple(labeling))


def canonical_code(g: Graph) -> tuple[int, list[int]]:
    """Uncached (code, vertex order) pair; equal codes on equal orders mean isomorphic."""
    if g.n == 0:
        return 0, []
    return _search(g.adj, g.n, _degree_cells(g))


def cert(g: Graph) -> bytes:
    return canonical_form(g).cert


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.edge_count == b.edge_count and cert(a) == cert(b)


def _colored_code(g: Graph, fixed: tuple[int, ...]) -> int:
    # Canonical code of g with the vertices of ``fixed`` individualised in order.
    return _search(g.adj, g.n, _degree_cells(g, fixed))[0]


@lru_cache(maxsize=4096)
def vertex_orbits(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Orbits of Aut(g) on vertices, each sorted, ordered by least member."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(_colored_code(g, (v,)), []).append(v)
    return tuple(sorted(tuple(vs) for vs in groups.values()))


@lru_cache(maxsize=4096)
def automorphism_count(g: Graph) -> int:
    """|Aut(g)| via the orbit-stabiliser chain of point stabilisers."""
    count = 1
    prefix: tuple[int, ...] = ()
    twins = _twin_swaps(g.adj, g.n, [tuple(range(g.n))])
    while True:
        cells = _refine(g.adj, _degree_cells(g, prefix))
        if len(cells) == g.n:
            return count
        size = min(len(c) for c in cells if len(c) > 1)
        cell = next(c for c in cells if len(c) == size)
        u = cell[0]
        roots = _orbit_roots(g.n, twins, prefix)
        target = None
        orbit = 0
        for v in cell:
            if roots[v] == roots[u]:
                orbit += 1
                continue
            if target is None:
                target = _colored_code(g, prefix + (u,))
            if _colored_code(g, prefix + (v,)) == target:
                orbit += 1
        count *= orbit
        prefix += (u,)

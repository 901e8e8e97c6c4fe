"""Isomorph-free enumeration of F-free graphs and exact ex(n, H, F).

Graphs on n vertices are grown from the (n-1)-vertex representatives by adding
one vertex with every possible neighbourhood.  A child is kept only if it is
F-free (only copies through the new vertex need checking, since F-freeness is
inherited by subgraphs) and if deleting its canonically last vertex gives back
the parent's isomorphism class.  Children of one parent that are isomorphic
are merged by certificate.  Every level is sorted by certificate.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .canon import canonical_code, cert
from .chromatic import chromatic_number
from .counting import contains, contains_through, count_copies
from .errors import CapExceeded, PreconditionError
from .families import turan_graph
from .graph import Graph
from .graph6 import from_graph6, to_graph6

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 10
CACHE_VERSION = "v1"

# (cert(F), n) -> canonical representatives sorted by cert
_memo: dict[tuple[bytes, int], tuple[Graph, ...]] = {}


def clear_memo() -> None:
    _memo.clear()


def _cache_path(cache_dir: Path, fcert: bytes, n: int) -> Path:
    return cache_dir / f"turanlab-{CACHE_VERSION}-{fcert.hex()}-n{n}.g6"


def _cache_header(fcert: bytes, n: int, count: int) -> str:
    return f"#turanlab {CACHE_VERSION} F={fcert.hex()} n={n} count={count}"


def _read_cache(path: Path, fcert: bytes, n: int) -> tuple[Graph, ...] | None:
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    if not lines:
        return None
    graphs = tuple(from_graph6(line) for line in lines[1:] if line)
    if lines[0] != _cache_header(fcert, n, len(graphs)):
        log.warning("ignoring stale cache file %s", path)
        return None
    return graphs


def _write_cache(path: Path, fcert: bytes, n: int, graphs: Sequence[Graph]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    body = "\n".join([_cache_header(fcert, n, len(graphs))] + [to_graph6(g) for g in graphs]) + "\n"
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(body)
    tmp.replace(path)


def _children(args: tuple[Graph, Graph]) -> list[tuple[bytes, Graph]]:
    """Accepted children of one canonical parent, as (cert, canonical graph)."""
    parent, f = args
    m = parent.n
    n = m + 1
    v = m
    parent_code, _ = canonical_code(parent)
    pdeg = parent.degrees()
    out: dict[bytes, Graph] = {}
    for mask in range(1 << m):
        dv = mask.bit_count()
        # The canonically last vertex has maximum degree, and deleting a
        # vertex of another degree cannot give back the parent.
        if any(pdeg[i] + (mask >> i & 1) > dv for i in range(m)):
            continue
        rows = tuple(row | (mask >> i & 1) << v for i, row in enumerate(parent.adj)) + (mask,)
        g = Graph._trusted(n, rows)
        if f.n <= n and contains_through(g, f, v):
            continue
        code, order = canonical_code(g)
        w = order[-1]
        if w != v and canonical_code(g.remove_vertex(w))[0] != parent_code:
            continue
        labeling = [0] * n
        for pos, x in enumerate(order):
            labeling[x] = pos
        cg = g.relabel(labeling)
        out.setdefault(to_graph6(cg).encode(), cg)
    return list(out.items())


def _extend(level: Sequence[Graph], f: Graph, workers: int) -> tuple[Graph, ...]:
    tasks = [(p, f) for p in level]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_children, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_children(t) for t in tasks]
    merged = sorted(item for chunk in results for item in chunk)
    return tuple(g for _, g in merged)


def free_graphs(
    n: int,
    f: Graph,
    *,
    max_n: int = DEFAULT_MAX_N,
    cache_dir: str | Path | None = None,
    workers: int = 1,
    cache_hits: list[int] | None = None,
) -> tuple[Graph, ...]:
    """One canonical representative per iso-class of F-free graphs on n vertices."""
    if n > max_n:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {max_n}; raise --max-n to allow it")
    if n < 0:
        raise PreconditionError("n must be non-negative")
    fcert = cert(f)
    key = (fcert, n)
    if key in _memo:
        return _memo[key]
    cdir = Path(cache_dir) if cache_dir is not None else None
    if cdir is not None:
        hit = _read_cache(_cache_path(cdir, fcert, n), fcert, n)
        if hit is not None:
            if cache_hits is not None:
                cache_hits.append(n)
            _memo[key] = hit
            return hit
    if n == 0:
        level: tuple[Graph, ...] = (Graph.empty(0),) if f.n > 0 else ()
    else:
        prev = free_graphs(n - 1, f, max_n=max_n, cache_dir=cache_dir, workers=workers, cache_hits=cache_hits)
        level = _extend(prev, f, workers)
    log.debug("n=%d: %d F-free classes", n, len(level))
    _memo[key] = level
    if cdir is not None:
        _write_cache(_cache_path(cdir, fcert, n), fcert, n, level)
    return level


def enumerate_free(n: int, f: Graph, **kwargs) -> Iterator[Graph]:
    """Stream the canonical F-free representatives on n vertices, in cert order."""
    yield from free_graphs(n, f, **kwargs)


def is_complete_multipartite(g: Graph) -> bool:
    """Non-adjacency (with equality) is an equivalence relation."""
    full = g.vertex_mask
    classes = [full & ~row for row in g.adj]
    for u in range(g.n):
        m = classes[u]
        while m:
            low = m & -m
            if classes[low.bit_length() - 1] != classes[u]:
                return False
            m ^= low
    return True


def turan_count(h: Graph, k: int, n: int) -> int:
    """N(h, T_k(n))."""
    return count_copies(h, turan_graph(k, n)).value


@dataclass(frozen=True)
class ExtremalGraph:
    cert: bytes
    is_complete_multipartite: bool
    contains_spanning_turan: bool


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    h: bytes
    f: bytes
    value: int
    extremal: tuple[ExtremalGraph, ...]
    free_count: int

    @property
    def extremal_certs(self) -> list[bytes]:
        return [e.cert for e in self.extremal]


def ex_value(n: int, h: Graph, f: Graph, **kwargs) -> ExtremalReport:
    graphs = free_graphs(n, f, **kwargs)
    if not graphs:
        raise PreconditionError(f"there are no F-free graphs on {n} vertices")
    counts = [count_copies(h, g).value for g in graphs]
    value = max(counts)
    k = max(chromatic_number(f) - 1, 1)
    t = turan_graph(k, n)
    extremal = tuple(
        ExtremalGraph(cert(g), is_complete_multipartite(g), contains(g, t))
        for g, c in zip(graphs, counts)
        if c == value
    )
    return ExtremalReport(n, cert(h), cert(f), value, extremal, len(graphs))


@dataclass(frozen=True)
class VerdictRow:
    n: int
    ex_value: int
    turan_value: int
    equal: bool
    turan_extremal_unique: bool
    extremal: tuple[bytes, ...] = field(default=())
    free_count: int = 0


@dataclass(frozen=True)
class Verdict:
    h: bytes
    f: bytes
    chi_f: int
    rows: tuple[VerdictRow, ...]


def turan_good_verdict(h: Graph, f: Graph, n_range: Sequence[int] | range, **kwargs) -> Verdict:
    """Per-n comparison of ex(n, h, f) with N(h, T_{chi(f)-1}(n))."""
    chi_f = chromatic_number(f)
    if chi_f < 2:
        raise PreconditionError("F must have chromatic number at least 2")
    if contains(h, f):
        raise PreconditionError("H contains F, so H cannot be F-Turán-good")
    rows = []
    for n in n_range:
        rep = ex_value(n, h, f, **kwargs)
        t = turan_graph(chi_f - 1, n)
        tv = count_copies(h, t).value
        rows.append(
            VerdictRow(
                n=n,
                ex_value=rep.value,
                turan_value=tv,
                equal=rep.value == tv,
                turan_extremal_unique=rep.extremal_certs == [cert(t)],
                extremal=tuple(rep.extremal_certs),
                free_count=rep.free_count,
            )
        )
    return Verdict(cert(h), cert(f), chi_f, tuple(rows))

"""Named graph families and their text syntax.

Syntax (case-insensitive, no whitespace)::

    P4  C5  K4  K(2,2,2)  B2  F2  T(3,12)  T'(2,9)  2K3  g6:<graph6>

``T(k,n)`` is the Turán graph with ``k`` parts on ``n`` vertices and ``T'(k,n)``
the same graph with one vertex of a largest part joined to all of its part
mates.  A leading integer ``m`` takes ``m`` disjoint copies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InputError
from .graph import Graph, disjoint_union, join
from .graph6 import from_graph6

KINDS = ("path", "cycle", "complete", "complete_multipartite", "book", "fan", "turan", "turan_prime")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]
    copies: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown family kind {self.kind!r}")
        if self.copies < 1:
            raise InputError("number of copies must be positive")
        p = self.params
        if not p or any(x < 1 for x in p):
            raise InputError(f"{self.kind} parameters must be positive, got {p}")
        single = self.kind not in ("complete_multipartite", "turan", "turan_prime")
        if single and len(p) != 1:
            raise InputError(f"{self.kind} takes exactly one parameter")
        if self.kind == "cycle" and p[0] < 3:
            raise InputError("cycles need at least 3 vertices")
        if self.kind == "turan" and (len(p) != 2 or not p[1] >= p[0] >= 2):
            raise InputError("turan(k, n) requires n >= k >= 2")
        if self.kind == "turan_prime" and (len(p) != 2 or not p[1] >= p[0] >= 1):
            raise InputError("turan_prime(k, n) requires n >= k >= 1")

    def __str__(self) -> str:
        p = self.params
        if self.kind == "complete_multipartite":
            body = "K(" + ",".join(map(str, p)) + ")"
        elif self.kind in ("turan", "turan_prime"):
            body = ("T'" if self.kind == "turan_prime" else "T") + f"({p[0]},{p[1]})"
        else:
            body = {"path": "P", "cycle": "C", "complete": "K", "book": "B", "fan": "F"}[self.kind] + str(p[0])
        return body if self.copies == 1 else f"{self.copies}{body}"


def turan_part_sizes(k: int, n: int) -> list[int]:
    """Sizes of the ``k`` parts of T_k(n), larger parts first (zeros if k > n)."""
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def complete_multipartite(sizes: list[int] | tuple[int, ...]) -> Graph:
    g = Graph.empty(0)
    for s in sizes:
        if s:
            g = join(g, Graph.empty(s))
    return g


def turan_graph(k: int, n: int) -> Graph:
    # Accepts k > n (giving K_n); FamilySpec enforces n >= k for user input.
    return complete_multipartite(turan_part_sizes(k, n))


def turan_prime_graph(k: int, n: int) -> Graph:
    """T_k(n) with vertex 0, in a largest part, joined to its own part."""
    sizes = turan_part_sizes(k, n)
    g = turan_graph(k, n)
    for u in range(1, sizes[0]):
        g = g.add_edge(0, u)
    return g


def path(m: int) -> Graph:
    return Graph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def cycle(m: int) -> Graph:
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def book(t: int) -> Graph:
    """Edge 0-1 plus ``t`` vertices adjacent to both."""
    return Graph.from_edges(t + 2, [(0, 1)] + [(e, v) for v in range(2, t + 2) for e in (0, 1)])


def fan(t: int) -> Graph:
    """``t`` triangles sharing vertex 0."""
    edges = []
    for i in range(t):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * t + 1, edges)


def build(spec: FamilySpec) -> Graph:
    p = spec.params
    if spec.kind == "path":
        g = path(p[0])
    elif spec.kind == "cycle":
        g = cycle(p[0])
    elif spec.kind == "complete":
        g = Graph.complete(p[0])
    elif spec.kind == "complete_multipartite":
        g = complete_multipartite(p)
    elif spec.kind == "book":
        g = book(p[0])
    elif spec.kind == "fan":
        g = fan(p[0])
    elif spec.kind == "turan":
        g = turan_graph(*p)
    else:
        g = turan_prime_graph(*p)
    one = g
    for _ in range(spec.copies - 1):
        g = disjoint_union(g, one)
    return g


_SIMPLE = {"p": "path", "c": "cycle", "k": "complete", "b": "book", "f": "fan"}
_TOKEN = re.compile(
    r"""^(?P<copies>\d+)?(?:
        (?P<simple>[pckbf])(?P<m>\d+)
      | k\((?P<parts>\d+(?:,\d+)*)\)
      | t(?P<prime>')?\((?P<k>\d+),(?P<n>\d+)\)
    )$""",
    re.VERBOSE,
)


def parse_family(text: str) -> FamilySpec:
    t = text.strip().lower()
    mt = _TOKEN.match(t)
    if not mt:
        raise InputError(f"cannot parse family spec {text!r}")
    copies = int(mt["copies"]) if mt["copies"] else 1
    if mt["simple"]:
        return FamilySpec(_SIMPLE[mt["simple"]], (int(mt["m"]),), copies)
    if mt["parts"]:
        return FamilySpec("complete_multipartite", tuple(int(x) for x in mt["parts"].split(",")), copies)
    kind = "turan_prime" if mt["prime"] else "turan"
    return FamilySpec(kind, (int(mt["k"]), int(mt["n"])), copies)


def parse_graph(text: str) -> Graph:
    """Parse a family spec or a ``g6:``-prefixed graph6 string."""
    if text[:3].lower() == "g6:":
        return from_graph6(text[3:])
    return build(parse_family(text))

"""Decide the finite hypotheses of the Turán-goodness theorems and build H'.

Asymptotic hypotheses such as ``ex(n, K_k, F) = o(n^(k-1))`` cannot be decided
at finite scale.  They enter as declared flags; a small whitelist (odd cycles
and books, for k = 3) is filled in automatically from known results.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

from .canon import is_isomorphic
from .chromatic import (
    chromatic_number,
    color_critical_edges,
    color_critical_vertices,
    find_coloring,
    iter_partitions,
)
from .counting import count_copies, is_free
from .errors import CapacityError, InputError
from .families import book, complete_multipartite, turan_graph, turan_prime_graph
from .graph import MAX_ORDER, Graph, bits, induced_subgraph, to_mask
from .graph6 import from_graph6, to_graph6


@dataclass(frozen=True)
class HypothesisVerdict:
    holds: bool
    witness: dict[str, Any] = field(default_factory=dict)
    failure_reason: str | None = None
    failed: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "failed": list(self.failed),
            "failure_reason": self.failure_reason,
            "witness": self.witness,
        }


def _verdict(failures: list[tuple[str, str]], witness: dict[str, Any]) -> HypothesisVerdict:
    if not failures:
        return HypothesisVerdict(True, witness)
    reason = "; ".join(f"({c}) {msg}" for c, msg in failures)
    return HypothesisVerdict(False, witness, reason, tuple(c for c, _ in failures))


def cliques_of_size(g: Graph, r: int) -> list[int]:
    """All r-cliques of ``g`` as bitmasks, in increasing order."""
    out: list[int] = []

    def rec(clique: int, size: int, cand: int) -> None:
        if size == r:
            out.append(clique)
            return
        for v in bits(cand):
            rec(clique | 1 << v, size + 1, cand & g.adj[v] & ~((2 << v) - 1))

    if r >= 0:
        rec(0, 0, g.vertex_mask)
    return sorted(out)


def _disjoint_cliques(g: Graph, cliques: list[int], target: int, size: int) -> list[int] | None:
    by_vertex: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for c in cliques:
        by_vertex[(c & -c).bit_length() - 1].append(c)

    def rec(avail: int, slack: int, chosen: list[int]) -> list[int] | None:
        if len(chosen) == target:
            return list(chosen)
        if not avail:
            return None
        v = (avail & -avail).bit_length() - 1
        for c in by_vertex[v]:
            if c & ~avail == 0:
                chosen.append(c)
                found = rec(avail & ~c, slack, chosen)
                chosen.pop()
                if found is not None:
                    return found
        if slack > 0:
            return rec(avail & ~(1 << v), slack - 1, chosen)
        return None

    # Cliques are indexed by least vertex, so v is always that least vertex.
    return rec(g.vertex_mask, g.n - target * size, [])


def _spanning_tree(nodes: list[int], cliques: list[int], share: int) -> list[tuple[int, int]]:
    edges = []
    seen = {nodes[0]}
    queue = [nodes[0]]
    while queue:
        a = queue.pop(0)
        for b in nodes:
            if b not in seen and (cliques[a] & cliques[b]).bit_count() >= share:
                seen.add(b)
                edges.append((a, b))
                queue.append(b)
    return edges


def check_gpl(h: Graph, k: int) -> HypothesisVerdict:
    """Hypotheses of the Győri–Pach–Simonovits theorem for ``h`` and K_k."""
    if k < 3:
        raise InputError("check_gpl requires k >= 3")
    p = k - 1
    m = h.n
    failures: list[tuple[str, str]] = []
    witness: dict[str, Any] = {"k": k}

    coloring = find_coloring(h, p)
    if m <= p:
        failures.append(("a", f"has {m} vertices, needs more than {p}"))
    if coloring is None:
        failures.append(("a", f"not {p}-partite"))
    else:
        witness["coloring"] = coloring

    cliques = cliques_of_size(h, p)
    target = m // p
    packing = _disjoint_cliques(h, cliques, target, p)
    if packing is None:
        failures.append(("b", f"no {target} vertex-disjoint copies of K_{p}"))
    else:
        witness["disjoint_cliques"] = [list(bits(c)) for c in packing]

    # Clique graph: (k-1)-cliques adjacent when they share k-2 vertices.
    parent = list(range(len(cliques)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in combinations(range(len(cliques)), 2):
        if (cliques[a] & cliques[b]).bit_count() >= p - 1:
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for i in range(len(cliques)):
        groups.setdefault(find(i), []).append(i)
    comp_cover = {r: 0 for r in groups}
    for r, members in groups.items():
        for i in members:
            comp_cover[r] |= cliques[i]

    used: set[int] = set()
    bad_pair = None
    for comp in h.components():
        vs = list(bits(comp))
        for u, v in combinations(vs, 2):
            both = [r for r in groups if comp_cover[r] >> u & 1 and comp_cover[r] >> v & 1]
            if not both:
                bad_pair = (u, v)
                break
            used.add(both[0])
        if bad_pair:
            break
    if bad_pair:
        failures.append(("c", f"no chain of K_{p}'s from {bad_pair[0]} to {bad_pair[1]}"))
    else:
        witness["chains"] = [
            {
                "cliques": [list(bits(cliques[i])) for i in groups[r]],
                "tree": _spanning_tree(list(range(len(groups[r]))), [cliques[i] for i in groups[r]], p - 1),
            }
            for r in sorted(used, key=lambda r: groups[r][0])
        ]
    return _verdict(failures, witness)


@dataclass(frozen=True)
class AttachmentSpec:
    base: Graph
    k: int
    x_set: tuple[int, ...]
    # (base vertex, index 0..k-2 of the attached clique vertex)
    cross_edges: tuple[tuple[int, int], ...]
    mode: str = "turgood"

    def to_json(self) -> str:
        return json.dumps(
            {
                "base": to_graph6(self.base),
                "k": self.k,
                "x_set": list(self.x_set),
                "cross_edges": [list(e) for e in self.cross_edges],
                "mode": self.mode,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> AttachmentSpec:
        d = json.loads(text)
        try:
            return cls(
                from_graph6(d["base"]),
                int(d["k"]),
                tuple(int(x) for x in d.get("x_set", [])),
                tuple((int(a), int(b)) for a, b in d.get("cross_edges", [])),
                d.get("mode", "turgood"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad attachment spec: {exc}") from None


def build_attachment(spec: AttachmentSpec) -> Graph:
    """H' = base plus a new K_{k-1} (vertices base.n ..) plus the cross edges."""
    base, k = spec.base, spec.k
    if spec.mode not in ("turgood", "newturgoo"):
        raise InputError(f"unknown attachment mode {spec.mode!r}")
    if k < 2:
        raise InputError("k must be at least 2")
    total = base.n + k - 1
    if total > MAX_ORDER:
        raise CapacityError(f"H' would have {total} vertices")
    for x in spec.x_set:
        if not 0 <= x < base.n:
            raise InputError(f"x_set vertex {x} out of range")
    x_mask = to_mask(spec.x_set)
    if spec.mode == "turgood":
        for x in spec.x_set:
            if (base.adj[x] | 1 << x) & x_mask != x_mask:
                raise InputError("x_set does not induce a complete subgraph")
    for u, j in spec.cross_edges:
        if not 0 <= u < base.n or not 0 <= j < k - 1:
            raise InputError(f"cross edge ({u}, {j}) out of range")
        if spec.mode == "turgood" and not x_mask >> u & 1:
            raise InputError(f"cross edge ({u}, {j}) leaves x_set")
    edges = base.edges()
    edges += [(base.n + a, base.n + b) for a, b in combinations(range(k - 1), 2)]
    edges += [(u, base.n + j) for u, j in spec.cross_edges]
    return Graph.from_edges(total, edges)


def _find_clique(g: Graph, size: int, must: int, allowed: int) -> list[int] | None:
    def rec(clique: int, cand: int) -> int | None:
        if clique.bit_count() == size:
            return clique
        for v in bits(cand):
            found = rec(clique | 1 << v, cand & g.adj[v] & ~((2 << v) - 1))
            if found is not None:
                return found
        return None

    found = rec(1 << must, g.adj[must] & allowed)
    return None if found is None else list(bits(found))


def check_newturgoo(
    hprime: Graph, h_vertices: Iterable[int], k_order: Iterable[int], k: int | None = None
) -> HypothesisVerdict:
    """Hypotheses of the clique-attachment proposition for a given split of H'."""
    hv = sorted(set(h_vertices))
    ko = list(k_order)
    if k is None:
        k = len(ko) + 1
    if len(ko) != k - 1:
        raise InputError(f"k_order must list k-1 = {k - 1} vertices")
    if len(set(ko)) != len(ko) or set(hv) & set(ko) or set(hv) | set(ko) != set(range(hprime.n)):
        raise InputError("h_vertices and k_order must partition V(H')")
    for a, b in combinations(ko, 2):
        if not hprime.has_edge(a, b):
            raise InputError(f"k_order vertices {a} and {b} are not adjacent")

    failures: list[tuple[str, str]] = []
    witness: dict[str, Any] = {"k": k}
    h = induced_subgraph(hprime, hv)
    parts = iter_partitions(h, k - 1)
    first, second = next(parts, None), next(parts, None)
    if first is None or second is not None:
        got = "none" if first is None else "several"
        failures.append(("a", f"H has {got} proper {k - 1}-colourings, needs exactly one"))
    else:
        witness["h_coloring"] = [[hv[i] for i in cls] for cls in first.as_sets()]

    per_i = []
    for i, v in enumerate(ko):
        later = to_mask(ko[i + 1:])
        clique = _find_clique(hprime, k - 1, v, hprime.vertex_mask & ~later)
        if clique is None:
            failures.append(("b", f"no K_{k - 1} contains v_{i + 1}={v} while avoiding later v_j"))
            break
        per_i.append(clique)
    witness["per_i_cliques"] = per_i

    chi = chromatic_number(hprime)
    witness["chromatic_number"] = chi
    if chi != k - 1:
        failures.append(("c", f"chromatic number of H' is {chi}, not {k - 1}"))
    return _verdict(failures, witness)


def is_odd_cycle(f: Graph) -> bool:
    return f.n >= 3 and f.n % 2 == 1 and f.is_connected() and all(d == 2 for d in f.degrees())


def is_book(f: Graph) -> bool:
    return f.n >= 3 and is_isomorphic(f, book(f.n - 2))


def check_critical_edge_preconditions(
    f: Graph, k: int, small_kk_declared: bool | None = None
) -> HypothesisVerdict:
    """chi(f) = k, f has a colour-critical edge, and ex(n, K_k, f) = o(n^(k-1)).

    ``small_kk_declared=None`` fills the asymptotic clause from the whitelist.
    """
    failures: list[tuple[str, str]] = []
    chi = chromatic_number(f)
    crit = color_critical_edges(f)
    if small_kk_declared is None:
        if k == 3 and is_odd_cycle(f):
            small_kk, source = True, "known: odd cycle"
        elif k == 3 and is_book(f):
            small_kk, source = True, "known: book"
        else:
            small_kk, source = False, "not declared"
    else:
        small_kk, source = small_kk_declared, "declared"
    witness = {"chromatic_number": chi, "critical_edges": [list(e) for e in crit], "small_kk": small_kk,
               "small_kk_source": source}
    if chi != k:
        failures.append(("chi", f"chromatic number is {chi}, not {k}"))
    if not crit:
        failures.append(("edge", "no colour-critical edge"))
    if not small_kk:
        failures.append(("small_kk", f"ex(n,K_{k},F)=o(n^{k - 1}) not declared"))
    return _verdict(failures, witness)


def ma_qiu_good(s: int, t: int) -> bool:
    """Exact test of t < s + 1/2 + sqrt(2s + 1/4) for K_{s,t}, s <= t."""
    if s < 1 or t < 1:
        raise InputError("s and t must be positive")
    if s > t:
        raise InputError(f"need s <= t, got s={s}, t={t}")
    if t == s:
        return True
    return (2 * t - 2 * s - 1) ** 2 < 8 * s + 1


@dataclass(frozen=True)
class ComplInstance:
    h: Graph
    f: Graph
    valid: bool


def compl_instance(b: int, a: int, k: int) -> ComplInstance:
    """H = K_{b,...,b} with k parts, F = K_{1,a,...,a} with k+1 parts; valid iff b > 2a-2."""
    if b < 1 or a < 1:
        raise InputError("a and b must be positive")
    if k < 2:
        raise InputError("k must be at least 2")
    for order in (b * k, 1 + a * k):
        if order > MAX_ORDER:
            raise CapacityError(f"instance needs {order} vertices")
    return ComplInstance(complete_multipartite([b] * k), complete_multipartite([1] + [a] * k), b > 2 * a - 2)


def critical_vertex_test(f: Graph, h: Graph | None = None, n: int | None = None) -> HypothesisVerdict:
    """Two-sided check around colour-critical vertices of ``f``.

    ``holds`` is True when f has a colour-critical vertex; the witness then
    names the complete multipartite host K_{1,a,...,a} containing f.  When
    there is none and ``h``, ``n`` are given, T'_{k-1}(n) is built, checked to
    be f-free and its copy count of ``h`` compared with T_{k-1}(n).
    """
    chi = chromatic_number(f)
    crit = color_critical_vertices(f)
    witness: dict[str, Any] = {"chromatic_number": chi, "critical_vertices": crit}
    if crit:
        v = crit[0]
        coloring = find_coloring(f.remove_vertex(v), chi - 1) or []
        a = max((coloring.count(c) for c in set(coloring)), default=0)
        witness["host"] = {"a": a, "parts": chi - 1, "graph6": to_graph6(complete_multipartite([1] + [a] * (chi - 1)))}
        if chi - 1 >= 2:
            witness["good_h"] = {"b": 2 * a - 1, "parts": chi - 1}
        return HypothesisVerdict(True, witness)
    if h is not None and n is not None:
        t = turan_graph(chi - 1, n)
        tp = turan_prime_graph(chi - 1, n)
        n_t, n_tp = count_copies(h, t).value, count_copies(h, tp).value
        witness.update(
            {
                "n": n,
                "turan_prime": to_graph6(tp),
                "turan_prime_is_f_free": is_free(tp, f),
                "count_turan": n_t,
                "count_turan_prime": n_tp,
                "turan_prime_beats_turan": n_tp > n_t,
            }
        )
    return HypothesisVerdict(False, witness, "F has no colour-critical vertex", ("vertex",))

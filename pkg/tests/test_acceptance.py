"""Acceptance criteria, each checked against an independent oracle.

Every test prints one ``PASS`` or ``FAIL`` line for its criterion (visible
even when pytest captures output) and then fails normally if the check did.
"""

import contextlib
import io
import json
import math
import random
import subprocess
import sys
import time
from itertools import combinations

import networkx as nx
import pytest

from oracles import (
    brute_aut,
    brute_chromatic,
    contains_nx,
    injective_maps,
    labeled_iso_classes,
    naive_extremal,
    verify_gpl_witness,
    verify_newturgoo_witness,
)
from turanlab import extremal
from turanlab.canon import cert
from turanlab.chromatic import color_critical_edges, color_critical_vertices
from turanlab.cli import main
from turanlab.counting import count_copies
from turanlab.extremal import ex_value, free_graphs, turan_good_verdict
from turanlab.families import complete_multipartite, cycle, parse_graph, path, turan_graph, turan_prime_graph
from turanlab.graph import Graph, disjoint_union
from turanlab.hypotheses import check_critical_edge_preconditions, check_gpl, check_newturgoo, ma_qiu_good


@pytest.fixture
def criterion(capsys):
    """Run a check and print its PASS/FAIL line."""

    def run(number, title, check):
        extremal.clear_memo()
        t0 = time.perf_counter()
        try:
            detail = check()
        except Exception as exc:
            with capsys.disabled():
                print(f"\nFAIL criterion {number}: {title} ({type(exc).__name__}: {exc})")
            raise
        finally:
            extremal.clear_memo()
        with capsys.disabled():
            print(f"\nPASS criterion {number}: {title} [{time.perf_counter() - t0:.2f}s] {detail or ''}".rstrip())

    return run


def _edges_of(g: nx.Graph):
    return sorted(tuple(sorted(e)) for e in g.edges())


def _naive_certs(classes, n):
    return sorted(cert(Graph.from_edges(n, _edges_of(c))) for c in classes)


def test_c1_enumeration_counts(criterion):
    def check():
        t0 = time.perf_counter()
        ours = [len(free_graphs(n, Graph.complete(8))) for n in range(1, 8)]
        elapsed = time.perf_counter() - t0
        oracle = [labeled_iso_classes(n) for n in range(1, 8)]
        assert ours == oracle == [1, 2, 4, 11, 34, 156, 1044], (ours, oracle)
        assert elapsed < 60, elapsed
        return f"counts {ours}, enumeration {elapsed:.2f}s"

    criterion(1, "unrestricted iso-class counts n=1..7", check)


def test_c2_mantel(criterion):
    def check():
        k2, k3 = Graph.complete(2), Graph.complete(3)
        for n in range(3, 9):
            rep = ex_value(n, k2, k3)
            assert rep.value == n * n // 4, (n, rep.value)
            assert rep.extremal_certs == [cert(turan_graph(2, n))], n
            value, classes, _ = naive_extremal(n, 2, [(0, 1)], 3, [(0, 1), (1, 2), (0, 2)])
            assert value == rep.value and len(classes) == 1
            assert nx.is_isomorphic(classes[0], nx.turan_graph(n, 2))
        return "ex(n,K2,K3) = floor(n^2/4), unique T_2(n), n=3..8"

    criterion(2, "Mantel with unique Turán extremal graph", check)


def test_c3_zykov(criterion):
    def check():
        k3, k4 = Graph.complete(3), Graph.complete(4)
        k3_edges = list(combinations(range(3), 2))
        k4_edges = list(combinations(range(4), 2))
        for n in range(4, 9):
            rep = ex_value(n, k3, k4)
            t = nx.turan_graph(n, 3)
            turan_value = injective_maps(3, k3_edges, n, _edges_of(t)) // 6
            assert rep.value == turan_value == count_copies(k3, turan_graph(3, n)).value, n
            assert rep.extremal_certs == [cert(turan_graph(3, n))], n
            value, classes, _ = naive_extremal(n, 3, k3_edges, 4, k4_edges)
            assert value == rep.value and len(classes) == 1 and nx.is_isomorphic(classes[0], t)
        return "ex(n,K3,K4) = N(K3,T_3(n)), unique, n=4..8"

    criterion(3, "clique case with unique Turán extremal graph", check)


def test_c4_counting_oracle(criterion):
    def check():
        rnd = random.Random(20240611)
        t0 = time.perf_counter()
        pairs = 0
        while pairs < 150:
            hn, gn = rnd.randint(1, 5), rnd.randint(1, 7)
            h_edges = [e for e in combinations(range(hn), 2) if rnd.random() < 0.6]
            g_edges = [e for e in combinations(range(gn), 2) if rnd.random() < rnd.choice((0.3, 0.6, 0.9))]
            h, g = Graph.from_edges(hn, h_edges), Graph.from_edges(gn, g_edges)
            homs = injective_maps(hn, h_edges, gn, g_edges)
            got = count_copies(h, g)
            assert got.injective_homs == homs, (h_edges, g_edges)
            assert got.value * brute_aut(hn, h_edges) == homs
            pairs += 1
        elapsed = time.perf_counter() - t0
        assert elapsed < 30, elapsed
        return f"{pairs} random pairs agree"

    criterion(4, "copy counts match the all-injective-maps oracle", check)


def test_c5_compl_echo(criterion):
    def check():
        h, f = complete_multipartite([2, 2]), Graph.complete(3)
        c4 = [(0, 1), (1, 2), (2, 3), (0, 3)]
        rows = turan_good_verdict(h, f, range(4, 9)).rows
        for row in rows:
            n = row.n
            t = nx.turan_graph(n, 2)
            assert row.equal and row.turan_value == injective_maps(4, c4, n, _edges_of(t)) // 8, n
            value, classes, _ = naive_extremal(n, 4, c4, 3, [(0, 1), (1, 2), (0, 2)])
            assert value == row.ex_value
            assert sorted(row.extremal) == _naive_certs(classes, n)
            for c in classes:
                assert contains_nx(n, _edges_of(c), n, _edges_of(t)), n
            assert all(e.contains_spanning_turan for e in ex_value(n, h, f).extremal)
        return "ex(n,K22,K3) = N(K22,T_2(n)); every extremal graph contains T_2(n), n=4..8"

    criterion(5, "complete multipartite instance b=2 a=1 k=2", check)


def test_c6_corollary_instances(criterion):
    def check():
        lines = []
        for hs, fs in (("P4", "C5"), ("C4", "C5"), ("P4", "B2")):
            h, f = parse_graph(hs), parse_graph(fs)
            rows = turan_good_verdict(h, f, range(4, 9)).rows
            for row in rows:
                n = row.n
                value, classes, free_count = naive_extremal(n, h.n, h.edges(), f.n, f.edges())
                t = nx.turan_graph(n, 2)
                turan_value = injective_maps(h.n, h.edges(), n, _edges_of(t)) // brute_aut(h.n, h.edges())
                assert (row.ex_value, row.turan_value) == (value, turan_value), (hs, fs, n)
                assert sorted(row.extremal) == _naive_certs(classes, n), (hs, fs, n)
                assert row.equal == (value == turan_value)
                if free_count >= 0:
                    assert row.free_count == free_count
            lines.append(f"{hs}/{fs}: " + " ".join(f"{r.n}:{r.ex_value}{'=' if r.equal else '>'}{r.turan_value}"
                                                  for r in rows))
            if (hs, fs) == ("P4", "C5"):
                first = rows[0]
                assert (first.n, first.ex_value, first.turan_value, first.equal) == (4, 12, 4, False)
        return "; ".join(lines)

    criterion(6, "corollary verdict tables match the naive pipeline", check)


def test_c7_critical_vertex_negative(criterion):
    def check():
        f = parse_graph("2K3")
        assert color_critical_vertices(f) == []
        chi = brute_chromatic(f.n, f.edges())
        for v in range(f.n):
            rest = f.remove_vertex(v)
            assert brute_chromatic(rest.n, rest.edges()) == chi
        pairs = []
        for n in range(6, 10):
            tp = turan_prime_graph(2, n)
            assert not contains_nx(n, tp.edges(), f.n, f.edges()), n
            n_tp = count_copies(Graph.complete(2), tp).value
            n_t = count_copies(Graph.complete(2), turan_graph(2, n)).value
            assert n_tp == len(tp.edges()) and n_t == n * n // 4
            assert n_tp > n_t, n
            pairs.append(f"{n}:{n_tp}>{n_t}")
        assert pairs[0] == "6:11>9"
        return " ".join(pairs)

    criterion(7, "2K3 has no critical vertex and T' beats T", check)


def test_c8_hypothesis_suite(criterion):
    def check():
        t0 = time.perf_counter()
        # gpl
        v = check_gpl(cycle(6), 3)
        assert v.holds
        verify_gpl_witness(cycle(6), 3, v)
        assert "a" in check_gpl(Graph.complete(3), 3).failed
        v = check_gpl(path(3), 3)
        assert v.holds
        verify_gpl_witness(path(3), 3, v)
        # newturgoo
        c4 = Graph.from_edges(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
        v = check_newturgoo(c4, [0, 1], [2, 3])
        assert v.holds
        verify_newturgoo_witness(c4, [0, 1], [2, 3], v)
        assert check_newturgoo(Graph.complete(3), [0], [1, 2]).failed == ("c",)
        assert check_newturgoo(disjoint_union(path(4), Graph.complete(2)), [0, 1, 2, 3], [4, 5]).failed == ("b",)
        # Ma-Qiu
        assert ma_qiu_good(1, 2) and not ma_qiu_good(2, 5)
        assert all(ma_qiu_good(s, s) for s in range(1, 101))
        for s in range(1, 101):
            for t in range(s, 101):
                assert ma_qiu_good(s, t) == (t < s + 0.5 + math.sqrt(2 * s + 0.25))
        # colour-critical detectors
        assert check_critical_edge_preconditions(cycle(5), 3).holds
        assert check_critical_edge_preconditions(parse_graph("B2"), 3).holds
        assert "edge" in check_critical_edge_preconditions(cycle(6), 2, False).failed
        for g, expected in ((cycle(5), 5), (cycle(6), 0), (Graph.complete(4), 6)):
            crit = color_critical_edges(g)
            assert len(crit) == expected
            chi = brute_chromatic(g.n, g.edges())
            for u, w in crit:
                rest = g.remove_edge(u, w)
                assert brute_chromatic(rest.n, rest.edges()) < chi
        assert color_critical_vertices(parse_graph("F2")) == [0]
        assert color_critical_vertices(parse_graph("2K3")) == []
        assert 0 in color_critical_vertices(parse_graph("K(1,2,2)"))
        elapsed = time.perf_counter() - t0
        assert elapsed < 10, elapsed
        return "all listed examples, witnesses re-verified"

    criterion(8, "hypothesis predicates", check)


def _run_cli(argv):
    buf = io.StringIO()
    extremal.clear_memo()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    extremal.clear_memo()
    assert code == 0, argv
    return buf.getvalue().encode()


def test_c9_determinism_and_cache(criterion, tmp_path, monkeypatch):
    def check():
        monkeypatch.delenv("TURANLAB_CACHE", raising=False)
        corpus = tmp_path / "corpus.json"
        corpus.write_text(json.dumps({
            "format": "turanlab-corpus/1",
            "entries": [{"id": "p4-c5", "h": "P4", "f": "C5", "n_range": "4..7", "expected": {"4": 12}}],
        }))
        commands = [
            ["ex", "--h", "P4", "--f", "C5", "--n", "7", "--emit", "json"],
            ["verdict", "--h", "C4", "--f", "C5", "--n", "4..8", "--emit", "json"],
            ["verdict", "--h", "P4", "--f", "B2", "--n", "4..7", "--emit", "csv"],
            ["gen", "--f", "K3", "--n", "7"],
            ["check", "gpl", "--h", "C6", "--k", "3", "--emit", "json"],
            ["check", "critver", "--f", "2K3", "--h", "K2", "--n", "7", "--emit", "json"],
            ["corpus", str(corpus), "--emit", "table"],
        ]
        for i, argv in enumerate(commands):
            cache = tmp_path / f"cache{i}"
            plain = _run_cli(argv)
            again = _run_cli(argv)
            cold = _run_cli(argv + ["--cache-dir", str(cache)])
            stamps = {p.name: p.stat().st_mtime_ns for p in cache.glob("*.g6")}
            warm = _run_cli(argv + ["--cache-dir", str(cache)])
            assert {p.name: p.stat().st_mtime_ns for p in cache.glob("*.g6")} == stamps
            assert plain == again == cold == warm, argv
        # a fresh interpreter must agree with the in-process runs, cold and warm
        argv = commands[1]
        cache = tmp_path / "subproc"
        outs = [
            subprocess.run([sys.executable, "-m", "turanlab", *argv, "--cache-dir", str(cache)],
                           capture_output=True, check=True).stdout
            for _ in range(2)
        ]
        assert outs[0] == outs[1] == _run_cli(argv)
        return f"{len(commands)} commands byte-identical across no/cold/warm cache"

    criterion(9, "determinism and cache integrity", check)

"""Command-line driver.

Exit codes: 0 success, 1 regression mismatch, 2 input or cap error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Any

from .canon import cert
from .errors import CapExceeded, TuranLabError
from .extremal import DEFAULT_MAX_N, ex_value, free_graphs, turan_good_verdict
from .families import parse_graph
from .graph import Graph
from .graph6 import to_graph6
from .hypotheses import (
    AttachmentSpec,
    build_attachment,
    check_critical_edge_preconditions,
    check_gpl,
    check_newturgoo,
    compl_instance,
    critical_vertex_test,
    ma_qiu_good,
)
from .report import RunReport, render

log = logging.getLogger("turanlab")

EXIT_OK, EXIT_REGRESSION, EXIT_INPUT = 0, 1, 2
CORPUS_FORMAT = "turanlab-corpus/1"


class UsageError(TuranLabError):
    pass


def parse_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        n = int(text)
        return range(n, n + 1)
    except ValueError:
        raise UsageError(f"bad n-range {text!r}; use N or A..B") from None


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _g6(certificate: bytes) -> str:
    return certificate.decode("ascii")


def _enum_options(args: argparse.Namespace, hits: list[int] | None = None) -> dict[str, Any]:
    cache_dir = args.cache_dir or os.environ.get("TURANLAB_CACHE") or None
    return {"max_n": args.max_n, "cache_dir": cache_dir, "workers": args.workers, "cache_hits": hits}


def _check_cap(n_range: range, max_n: int) -> None:
    if n_range and max(n_range) > max_n:
        raise CapExceeded(f"n={max(n_range)} exceeds the enumeration cap {max_n}; raise --max-n to allow it")


def verdict_rows(h: Graph, f: Graph, n_range: range, opts: dict[str, Any]) -> list[dict[str, Any]]:
    v = turan_good_verdict(h, f, n_range, **opts)
    return [
        {
            "n": r.n,
            "ex": r.ex_value,
            "turan": r.turan_value,
            "equal": r.equal,
            "turan_unique": r.turan_extremal_unique,
            "free_count": r.free_count,
            "extremal": [_g6(c) for c in r.extremal],
        }
        for r in v.rows
    ]


def cmd_ex(args: argparse.Namespace) -> RunReport:
    h, f = parse_graph(args.h), parse_graph(args.f)
    _check_cap(range(args.n, args.n + 1), args.max_n)
    hits: list[int] = []
    rep = ex_value(args.n, h, f, **_enum_options(args, hits))
    row = {
        "n": rep.n,
        "value": rep.value,
        "free_count": rep.free_count,
        "extremal": [_g6(e.cert) for e in rep.extremal],
        "complete_multipartite": [e.is_complete_multipartite for e in rep.extremal],
        "spanning_turan": [e.contains_spanning_turan for e in rep.extremal],
    }
    params = {"h": args.h, "f": args.f, "h_cert": _g6(rep.h), "f_cert": _g6(rep.f)}
    return RunReport("ex", f"{args.h}/{args.f}", params, [row], cache_hits=hits)


def cmd_verdict(args: argparse.Namespace) -> RunReport:
    h, f = parse_graph(args.h), parse_graph(args.f)
    n_range = parse_range(args.n)
    _check_cap(n_range, args.max_n)
    hits: list[int] = []
    rows = verdict_rows(h, f, n_range, _enum_options(args, hits))
    params = {"h": args.h, "f": args.f, "h_cert": _g6(cert(h)), "f_cert": _g6(cert(f)), "n_range": [n_range.start, n_range.stop - 1]}
    return RunReport("verdict", f"{args.h}/{args.f}", params, rows, cache_hits=hits)


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"check {args.theorem} needs {', '.join(missing)}")


def cmd_check(args: argparse.Namespace) -> RunReport:
    th = args.theorem
    params: dict[str, Any] = {"theorem": th}
    extra: dict[str, Any] = {}
    if th == "gpl":
        _need(args, "h", "k")
        params.update(h=args.h, k=args.k)
        verdict = check_gpl(parse_graph(args.h), args.k)
    elif th == "turgood":
        if args.spec:
            spec = AttachmentSpec.from_json(Path(args.spec).read_text())
            params["spec"] = json.loads(spec.to_json())
        else:
            _need(args, "h", "k")
            cross = []
            for item in (args.cross or "").split(","):
                if item:
                    a, _, b = item.partition(":")
                    cross.append((int(a), int(b)))
            spec = AttachmentSpec(parse_graph(args.h), args.k, tuple(_int_list(args.x or "")), tuple(cross), args.mode)
            params.update(h=args.h, k=args.k, x=list(spec.x_set), cross=[list(e) for e in spec.cross_edges], mode=spec.mode)
        hp = build_attachment(spec)
        extra = {"hprime": to_graph6(hp), "hprime_edges": [list(e) for e in hp.edges()]}
        verdict = None
    elif th == "newturgoo":
        _need(args, "hprime", "h_vertices", "k_order")
        params.update(hprime=args.hprime, h_vertices=args.h_vertices, k_order=args.k_order, k=args.k)
        verdict = check_newturgoo(
            parse_graph(args.hprime), _int_list(args.h_vertices), _int_list(args.k_order), args.k
        )
    elif th == "critedge":
        _need(args, "f", "k")
        declared = {"auto": None, "yes": True, "no": False}[args.small_kk]
        params.update(f=args.f, k=args.k, small_kk=args.small_kk)
        verdict = check_critical_edge_preconditions(parse_graph(args.f), args.k, declared)
    elif th == "maqiu":
        _need(args, "s", "t")
        params.update(s=args.s, t=args.t)
        extra = {"holds": ma_qiu_good(args.s, args.t)}
        verdict = None
    elif th == "compl":
        _need(args, "b", "a", "k")
        params.update(b=args.b, a=args.a, k=args.k)
        inst = compl_instance(args.b, args.a, args.k)
        extra = {"holds": inst.valid, "h": to_graph6(inst.h), "f": to_graph6(inst.f)}
        verdict = None
    elif th == "critver":
        _need(args, "f")
        params.update(f=args.f, h=args.h, n=args.n)
        h = parse_graph(args.h) if args.h else None
        verdict = critical_vertex_test(parse_graph(args.f), h, args.n)
    else:
        raise UsageError(f"unknown theorem id {th!r}")
    row = verdict.to_dict() if verdict is not None else {}
    row.update(extra)
    return RunReport("check", th, params, [row])


def _bundled(name: str) -> str:
    if not name.endswith(".json"):
        name += ".json"
    try:
        return resources.files("turanlab.data").joinpath(name).read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        raise UsageError(f"no bundled corpus named {name!r}") from None


def load_corpus(text: str) -> list[dict[str, Any]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"corpus is not valid JSON: {exc}") from None
    entries = data.get("entries") if isinstance(data, dict) else None
    if not isinstance(entries, list):
        raise UsageError("corpus must be an object with an 'entries' list")
    ids = set()
    for e in entries:
        if not isinstance(e, dict) or not {"id", "h", "f", "n_range"} <= set(e):
            raise UsageError("each corpus entry needs id, h, f and n_range")
        if e["id"] in ids:
            raise UsageError(f"duplicate corpus id {e['id']!r}")
        ids.add(e["id"])
    return entries


def _entry_range(e: dict[str, Any]) -> range:
    r = e["n_range"]
    if isinstance(r, list) and len(r) == 2:
        return range(int(r[0]), int(r[1]) + 1)
    return parse_range(str(r))


def run_entry(e: dict[str, Any], args: argparse.Namespace) -> RunReport:
    h, f = parse_graph(e["h"]), parse_graph(e["f"])
    n_range = _entry_range(e)
    _check_cap(n_range, args.max_n)
    hits: list[int] = []
    rows = verdict_rows(h, f, n_range, _enum_options(args, hits))
    params = {
        "h": e["h"],
        "f": e["f"],
        "n_range": [n_range.start, n_range.stop - 1],
        "declared_facts": sorted(e.get("declared_facts", [])),
    }
    report = RunReport("corpus", str(e["id"]), params, rows, cache_hits=hits)
    expected = {int(k): v for k, v in e.get("expected", {}).items()}
    for row in rows:
        if row["n"] in expected and expected[row["n"]] != row["ex"]:
            report.regression.append({"n": row["n"], "expected": expected[row["n"]], "got": row["ex"]})
    return report


def cmd_corpus(args: argparse.Namespace) -> tuple[list[RunReport], int]:
    if args.bundled:
        text = _bundled(args.bundled)
    elif args.path:
        try:
            text = Path(args.path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read corpus: {exc}") from None
    else:
        raise UsageError("corpus needs a file path or --bundled NAME")
    entries = load_corpus(text)
    out = Path(args.out) if args.out else None
    reports, summary, status = [], [], EXIT_OK
    for e in entries:
        t0 = time.perf_counter()
        try:
            rep = run_entry(e, args)
        except TuranLabError as exc:
            summary.append({"id": e["id"], "status": "error", "error": str(exc)})
            status = EXIT_INPUT
            continue
        if args.timing:
            rep.timing = time.perf_counter() - t0
        else:
            rep.cache_hits = None
        reports.append(rep)
        ok = not rep.regression
        summary.append({"id": rep.entry, "status": "ok" if ok else "regression", "rows": len(rep.rows)})
        if not ok and status == EXIT_OK:
            status = EXIT_REGRESSION
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{rep.entry}.json").write_text(rep.to_json())
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.json").write_text(json.dumps({"entries": summary}, indent=2) + "\n")
    return reports, status


def cmd_gen(args: argparse.Namespace) -> RunReport:
    if args.f:
        f = parse_graph(args.f)
    else:
        f = Graph.complete(min(args.n + 1, 32))
    _check_cap(range(args.n, args.n + 1), args.max_n)
    graphs = free_graphs(args.n, f, **_enum_options(args))
    rows = [{"graph6": to_graph6(g), "edges": g.edge_count} for g in graphs]
    params = {"f": args.f, "n": args.n, "count": len(rows)}
    return RunReport("gen", args.f or "none", params, rows)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=("json", "csv", "table"), default="table")
    common.add_argument("--cache-dir", help="enumeration cache directory (default: $TURANLAB_CACHE)")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="enumeration cap on n")
    common.add_argument("--workers", type=int, default=1, help="processes for enumeration")
    common.add_argument("--timing", action="store_true", help="include run time and cache hits")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="turanlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("ex", parents=[common], help="compute ex(n, H, F)")
    ex.add_argument("--h", required=True)
    ex.add_argument("--f", required=True)
    ex.add_argument("--n", type=int, required=True)

    ve = sub.add_parser("verdict", parents=[common], help="per-n Turán-goodness table")
    ve.add_argument("--h", required=True)
    ve.add_argument("--f", required=True)
    ve.add_argument("--n", required=True, help="N or A..B")

    ch = sub.add_parser("check", parents=[common], help="check a theorem's hypotheses")
    ch.add_argument("theorem", help="gpl, turgood, newturgoo, critedge, maqiu, compl or critver")
    ch.add_argument("--h")
    ch.add_argument("--f")
    ch.add_argument("--k", type=int)
    ch.add_argument("--n", type=int)
    ch.add_argument("--x", help="x_set as comma list (turgood)")
    ch.add_argument("--cross", help="cross edges u:j,... (turgood)")
    ch.add_argument("--mode", default="turgood", choices=("turgood", "newturgoo"))
    ch.add_argument("--spec", help="AttachmentSpec JSON file (turgood)")
    ch.add_argument("--hprime")
    ch.add_argument("--h-vertices")
    ch.add_argument("--k-order")
    ch.add_argument("--small-kk", choices=("auto", "yes", "no"), default="auto")
    ch.add_argument("--s", type=int)
    ch.add_argument("--t", type=int)
    ch.add_argument("--a", type=int)
    ch.add_argument("--b", type=int)

    co = sub.add_parser("corpus", parents=[common], help="run a corpus of verdict entries")
    co.add_argument("path", nargs="?")
    co.add_argument("--bundled", help="name of a bundled corpus, e.g. paper_corollaries")
    co.add_argument("--out", help="directory for per-entry reports")

    ge = sub.add_parser("gen", parents=[common], help="dump F-free graphs as graph6")
    ge.add_argument("--f")
    ge.add_argument("--n", type=int, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    try:
        if args.command == "corpus":
            reports, status = cmd_corpus(args)
            for rep in reports:
                sys.stdout.write(render(rep, args.emit))
            return status
        handler = {"ex": cmd_ex, "verdict": cmd_verdict, "check": cmd_check, "gen": cmd_gen}[args.command]
        report = handler(args)
    except (TuranLabError, OSError) as exc:
        print(f"turanlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        report.timing = time.perf_counter() - t0
    else:
        report.cache_hits = None
    if args.command == "gen" and args.emit == "table":
        sys.stdout.write("".join(r["graph6"] + "\n" for r in report.rows))
    else:
        sys.stdout.write(render(report, args.emit))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

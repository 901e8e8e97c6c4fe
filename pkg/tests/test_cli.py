import json
import subprocess
import sys

import pytest

from turanlab import extremal
from turanlab.cli import main
from turanlab.report import RunReport


@pytest.fixture(autouse=True)
def fresh(monkeypatch):
    monkeypatch.delenv("TURANLAB_CACHE", raising=False)
    extremal.clear_memo()
    yield
    extremal.clear_memo()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ex_mantel(capsys):
    code, out, _ = run(capsys, "ex", "--h", "K2", "--f", "K3", "--n", "5", "--emit", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["value"] == 6 and row["extremal"] == ["DFw"]


def test_ex_p4_c5_json(capsys):
    code, out, _ = run(capsys, "ex", "--h", "P4", "--f", "C5", "--n", "4", "--emit", "json")
    assert code == 0
    data = json.loads(out)
    assert data["rows"][0]["value"] == 12
    assert data["rows"][0]["extremal"] == ["C~"]  # K_4
    assert "timing" not in data


def test_ex_cap_refusal(capsys):
    code, out, err = run(capsys, "ex", "--h", "P4", "--f", "C5", "--n", "40")
    assert code == 2 and out == "" and "cap" in err


def test_parse_error(capsys):
    code, _, err = run(capsys, "ex", "--h", "Q7", "--f", "C5", "--n", "4")
    assert code == 2 and err.startswith("turanlab: error")


@pytest.mark.parametrize(
    "h,f,rng,rows",
    [("C4", "C5", "5..8", 4), ("P4", "B2", "4..8", 5), ("K3", "C5", "3..3", 1)],
)
def test_verdict(capsys, h, f, rng, rows):
    code, out, _ = run(capsys, "verdict", "--h", h, "--f", f, "--n", rng, "--emit", "json")
    assert code == 0
    data = json.loads(out)
    assert [r["n"] for r in data["rows"]] == list(range(int(rng.split("..")[0]), int(rng.split("..")[1]) + 1))
    assert len(data["rows"]) == rows


def test_verdict_precondition(capsys):
    code, _, err = run(capsys, "verdict", "--h", "K4", "--f", "K3", "--n", "4")
    assert code == 2 and "contains F" in err


def test_csv_and_table(capsys):
    _, out, _ = run(capsys, "verdict", "--h", "K2", "--f", "K3", "--n", "3..4", "--emit", "csv")
    lines = out.splitlines()
    assert lines[0].startswith("entry,n,ex,turan,equal")
    assert len(lines) == 3
    _, out, _ = run(capsys, "verdict", "--h", "K2", "--f", "K3", "--n", "3..4")
    assert out.splitlines()[0] == "verdict K2/K3"


def test_check_critver(capsys):
    code, out, _ = run(capsys, "check", "critver", "--f", "2K3", "--h", "K2", "--n", "6", "--emit", "json")
    w = json.loads(out)["rows"][0]["witness"]
    assert code == 0
    assert w["critical_vertices"] == []
    assert (w["count_turan_prime"], w["count_turan"]) == (11, 9) and w["turan_prime_is_f_free"]


def test_check_maqiu_and_compl(capsys):
    _, out, _ = run(capsys, "check", "maqiu", "--s", "2", "--t", "5", "--emit", "json")
    assert json.loads(out)["rows"][0]["holds"] is False
    _, out, _ = run(capsys, "check", "compl", "--b", "2", "--a", "1", "--k", "2", "--emit", "json")
    row = json.loads(out)["rows"][0]
    assert row["holds"] is True and (row["h"], row["f"]) == ("C]", "Bw")


def test_check_other_theorems(capsys):
    _, out, _ = run(capsys, "check", "gpl", "--h", "C6", "--k", "3", "--emit", "json")
    assert json.loads(out)["rows"][0]["holds"] is True
    _, out, _ = run(capsys, "check", "critedge", "--f", "B2", "--k", "3", "--emit", "json")
    assert json.loads(out)["rows"][0]["holds"] is True
    _, out, _ = run(capsys, "check", "newturgoo", "--hprime", "C4", "--h-vertices", "0,1", "--k-order", "3,2",
                    "--emit", "json")
    assert json.loads(out)["rows"][0]["holds"] is True
    _, out, _ = run(capsys, "check", "turgood", "--h", "K2", "--k", "3", "--x", "0,1", "--cross", "0:0,1:1",
                    "--emit", "json")
    assert json.loads(out)["rows"][0]["hprime"] == "Cr"


def test_check_unknown_theorem(capsys):
    code, _, err = run(capsys, "check", "nope")
    assert code == 2 and "unknown theorem" in err


def test_missing_params(capsys):
    code, _, err = run(capsys, "check", "maqiu", "--s", "2")
    assert code == 2 and "--t" in err


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "verdict", "--h", "P3", "--f", "C5", "--n", "3..6", "--emit", "json")
    rep = RunReport.from_dict(json.loads(out))
    assert rep.to_json() == out
    _, out, _ = run(capsys, "check", "gpl", "--h", "P3", "--k", "3", "--emit", "json", "--timing")
    rep = RunReport.from_dict(json.loads(out))
    assert json.loads(rep.to_json()) == json.loads(out)


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--n", "4")
    assert code == 0 and len(out.split()) == 11
    _, out, _ = run(capsys, "gen", "--n", "3", "--f", "K3")
    assert out.split() == sorted(out.split()) and len(out.split()) == 3


def _corpus(tmp_path, expected):
    doc = {
        "format": "turanlab-corpus/1",
        "entries": [{"id": "mantel", "h": "K2", "f": "K3", "n_range": "5..5", "expected": {"5": expected}}],
    }
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    return path


def test_corpus_pass_and_regression(capsys, tmp_path):
    out_dir = tmp_path / "out"
    code, _, _ = run(capsys, "corpus", str(_corpus(tmp_path, 6)), "--out", str(out_dir))
    assert code == 0
    assert json.loads((out_dir / "summary.json").read_text())["entries"][0]["status"] == "ok"
    assert json.loads((out_dir / "mantel.json").read_text())["rows"][0]["ex"] == 6

    code, out, _ = run(capsys, "corpus", str(_corpus(tmp_path, 7)))
    assert code == 1
    assert "REGRESSION n=5: expected 7, got 6" in out


def test_corpus_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "corpus", str(bad))[0] == 2
    assert run(capsys, "corpus", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "corpus", "--bundled", "nope")[0] == 2
    capped = tmp_path / "capped.json"
    capped.write_text(json.dumps({"entries": [{"id": "x", "h": "K2", "f": "K3", "n_range": [3, 12]}]}))
    assert run(capsys, "corpus", str(capped))[0] == 2


@pytest.mark.slow
def test_bundled_corpus_smoke(capsys, tmp_path):
    code, _, _ = run(capsys, "corpus", "--bundled", "paper_corollaries", "--out", str(tmp_path), "--emit", "json")
    assert code == 0
    summary = json.loads((tmp_path / "summary.json").read_text())["entries"]
    assert summary and all(e["status"] == "ok" for e in summary)
    for e in summary:
        rep = json.loads((tmp_path / f"{e['id']}.json").read_text())
        lo, hi = rep["params"]["n_range"]
        assert [r["n"] for r in rep["rows"]] == list(range(lo, hi + 1))


def test_env_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TURANLAB_CACHE", str(tmp_path))
    run(capsys, "ex", "--h", "K2", "--f", "K3", "--n", "4")
    assert any(p.name.endswith("-n4.g6") for p in tmp_path.iterdir())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "turanlab", "check", "maqiu", "--s", "1", "--t", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "yes" in proc.stdout

from __future__ import annotations

import json

import pytest

from dbsplit.cli import EXIT_CODES, main
from dbsplit.corpus import neworder_workload, source
from dbsplit.interp import run_reference
from dbsplit.frontend import load


@pytest.fixture
def neworder(tmp_path):
    w = neworder_workload(2)
    wpath = tmp_path / "w.json"
    wpath.write_text(w.to_json())
    ppath = tmp_path / "neworder.pyx"
    ppath.write_text(source("neworder"))
    return ppath, wpath, w


def partition(tmp_path, ppath, wpath, budgets="0,inf"):
    out = tmp_path / "out"
    assert main(["partition", str(ppath), "--workload", str(wpath), "-o", str(out),
                 "--budgets", budgets]) == 0
    return out, json.loads((out / "index.json").read_text())


def test_profile_then_partition_from_profile(neworder, tmp_path, capsys):
    ppath, wpath, _ = neworder
    prof = tmp_path / "p.txt"
    assert main(["profile", str(ppath), "--workload", str(wpath), "-o", str(prof)]) == 0
    assert prof.read_text().startswith("# dbsplit-profile v1")
    out = tmp_path / "o"
    assert main(["partition", str(ppath), "--profile", str(prof), "-o", str(out), "--budgets", "0"]) == 0
    index = json.loads((out / "index.json").read_text())
    assert index[0]["partition"] == "all-APP"
    d = out / index[0]["dir"]
    assert {p.name for p in d.iterdir()} == {"bundle.json", "program.pyxil", "placement.txt"}
    assert "budget 0: all-APP" in capsys.readouterr().out


def test_run_matches_reference(neworder, tmp_path, capsys):
    ppath, wpath, w = neworder
    out, index = partition(tmp_path, ppath, wpath, "0,50%,inf")
    assert [e["budget"] for e in index][0] == "0" and index[-1]["budget"] == "inf"
    ref = run_reference(load(source("neworder")), w)
    for e in index:
        capsys.readouterr()
        trace = tmp_path / f"t-{e['budget']}.txt"
        dbout = tmp_path / f"db-{e['budget']}.json"
        assert main(["run", str(out / e["dir"] / "bundle.json"), "--workload", str(wpath),
                     "--trace-out", str(trace), "--db-out", str(dbout), "--check-freshness"]) == 0
        assert trace.read_text().splitlines() == ref.lines
        assert json.loads(dbout.read_text()) == json.loads(json.dumps(ref.db))
        assert "# report" in capsys.readouterr().out


def test_adaptive_run_reports_shares(neworder, tmp_path, capsys):
    ppath, wpath, _ = neworder
    out, index = partition(tmp_path, ppath, wpath)
    trace = tmp_path / "load.txt"
    trace.write_text("0 20\n50 80\n")
    bundles = [str(out / e["dir"] / "bundle.json") for e in index]
    evlog = tmp_path / "events.txt"
    assert main(["run", *bundles, "--workload", str(wpath), "--load-trace", str(trace),
                 "--think-ms", "20", "--poll-ms", "10", "--repeat", "5",
                 "--event-log", str(evlog)]) == 0
    text = capsys.readouterr().out
    assert "# partition share per window" in text
    events = evlog.read_text()
    assert "partition high" in events and "partition low" in events


def test_dump_graph_and_blocks(neworder, tmp_path, capsys):
    ppath, wpath, _ = neworder
    assert main(["dump-graph", str(ppath), "--workload", str(wpath)]) == 0
    assert capsys.readouterr().out.startswith("# dbsplit-graph v1")
    out, index = partition(tmp_path, ppath, wpath, "inf")
    capsys.readouterr()
    assert main(["dump-blocks", str(out / index[0]["dir"] / "bundle.json")]) == 0
    text = capsys.readouterr().out
    assert "entry fn newOrder" in text and "block newOrder#0 @APP" in text


def test_parse_and_reference_with_corpus_names(capsys):
    assert main(["parse", "corpus:neworder", "--normal"]) == 0
    assert "$t1" in capsys.readouterr().out
    assert main(["reference", "corpus:neworder", "--workload", "corpus:neworder"]) == 0
    assert "=>" in capsys.readouterr().out


def test_bench_writes_csv(tmp_path, capsys):
    csv = tmp_path / "b.csv"
    assert main(["bench", "neworder", "--seeds", "1", "--budgets", "0,inf", "--csv", str(csv)]) == 0
    rows = csv.read_text().splitlines()
    assert rows[0].startswith("benchmark,budget,partition")
    assert len(rows) == 3


def _code(capsys, argv):
    rc = main(argv)
    err = capsys.readouterr().err
    return rc, err


def test_error_exit_codes(neworder, tmp_path, capsys):
    ppath, wpath, _ = neworder
    rc, err = _code(capsys, ["frobnicate"])
    assert rc == EXIT_CODES["usage"] and err.startswith("error: usage:")
    rc, _ = _code(capsys, ["profile", str(tmp_path / "missing.pyx"), "--workload", str(wpath)])
    assert rc == EXIT_CODES["usage"]
    rc, _ = _code(capsys, ["partition", str(ppath), "--workload", str(wpath), "-o", str(tmp_path),
                           "--lat", "-1"])
    assert rc == EXIT_CODES["usage"]

    bad = tmp_path / "bad.pyx"
    bad.write_text("fn f() {\n  var x = ;\n}\n")
    rc, err = _code(capsys, ["parse", str(bad)])
    assert rc == EXIT_CODES["dsl"] and err.count("\n") == 1

    oob = tmp_path / "oob.pyx"
    oob.write_text("entry fn f() { var a = new int[1]; var x = a[3]; return x; }")
    calls = tmp_path / "c.json"
    calls.write_text(json.dumps({"seed": 0, "tables": {}, "calls": [{"entry": "f", "args": []}]}))
    rc, _ = _code(capsys, ["reference", str(oob), "--workload", str(calls)])
    assert rc == EXIT_CODES["interp"]

    out, index = partition(tmp_path, ppath, wpath, "inf")
    broken = tmp_path / "broken.json"
    broken.write_text((out / index[0]["dir"] / "bundle.json").read_text().replace("newOrder#0", "newOrder#x", 1))
    rc, err = _code(capsys, ["dump-blocks", str(broken)])
    assert rc == EXIT_CODES["bundle"], err

    rc, _ = _code(capsys, ["run", str(out / index[0]["dir"] / "bundle.json"), "--workload", str(wpath),
                           "--channel", "tcp", "--port", "1"])
    assert rc == EXIT_CODES["runtime"]

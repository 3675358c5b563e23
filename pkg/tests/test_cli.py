import io
import json
import subprocess
import sys

import pytest

from ecbehave import scenarios
from ecbehave.cli import main, read_recognized
from ecbehave.kernel import Interval

from table import TABLE, table_fixture


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def golden(tmp_path):
    return scenarios.write_corpus(scenarios.golden_corpus(), tmp_path / "golden")


@pytest.fixture
def leaving(tmp_path):
    return scenarios.write_corpus(scenarios.leaving_object(), tmp_path / "lo")


def test_recognize_leaving_object(leaving, tmp_path):
    out = tmp_path / "rec.csv"
    code, _, err = call("recognize", "--events", leaving["events"], "--out", out)
    assert code == 0, err
    assert out.read_text().splitlines() == [
        "behaviour,entities,start,end", "leaving_object,lo_p1|lo_o1,100,200"]


def test_recognize_to_stdout(leaving):
    code, out, _ = call("recognize", "--events", leaving["events"])
    assert code == 0 and "leaving_object,lo_p1|lo_o1,100,200" in out


def test_recognize_missing_events(tmp_path):
    code, out, err = call("recognize", "--events", tmp_path / "missing.csv")
    assert code == 1 and "missing.csv" in err and out == ""


def test_recognize_bad_rules(leaving, tmp_path):
    rules = tmp_path / "bad.ecr"
    rules.write_text("action walking/1\nfluent f/1 values true, false\n"
                     "initiates walking(P) -> f(P)=true when holdsAt(f(P)=true);\n")
    out = tmp_path / "rec.csv"
    code, _, err = call("recognize", "--events", leaving["events"],
                        "--rules", rules, "--out", out)
    assert code == 2 and "stratif" in err
    assert not out.exists()


def test_recognize_rules_missing_label(leaving, tmp_path):
    rules = tmp_path / "small.ecr"
    rules.write_text("action walking/1\naction appear/1\naction exit/1\n")
    code, _, err = call("recognize", "--events", leaving["events"], "--rules", rules)
    assert code == 2 and "inactive" in err


def test_recognize_threshold_override(leaving):
    code, out, _ = call("recognize", "--events", leaving["events"],
                        "--set", "d_leaving=5")
    assert code == 0 and "leaving_object" not in out
    code, _, err = call("recognize", "--events", leaving["events"], "--set", "bogus=1")
    assert code == 1 and "bogus" in err


def test_recognize_is_byte_identical(golden, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert call("recognize", "--events", golden["events"],
                    "--context", golden["context"], "--out", out)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_open_interval_round_trip(tmp_path):
    path = tmp_path / "rec.csv"
    path.write_text("behaviour,entities,start,end\nimmobile,p,40,since:40\n")
    assert read_recognized(path) == {("immobile", ("p",)): [Interval.since(40)]}


def _write_table(tmp_path):
    results, truth, horizon = table_fixture()
    rec = tmp_path / "rec.csv"
    rec.write_text("behaviour,entities,start,end\n" + "".join(
        f"{n},{'|'.join(e)},{iv.start},{iv.end}\n"
        for (n, e), ivs in results.items() for iv in ivs))
    gt = tmp_path / "truth.csv"
    gt.write_text("".join(f"{g.behaviour},{'|'.join(g.entities)},{g.start},{g.end}\n"
                          for g in truth))
    return rec, gt


def test_evaluate_table(tmp_path):
    rec, gt = _write_table(tmp_path)
    code, out, _ = call("evaluate", rec, "--truth", gt)
    assert code == 0
    rows = [line.split() for line in out.splitlines()[1:]]
    assert rows == [[n, str(tp), str(fp), str(fn), r, p] for n, tp, fp, fn, r, p in TABLE]


def test_evaluate_json(tmp_path):
    rec, gt = _write_table(tmp_path)
    code, out, _ = call("evaluate", rec, "--truth", gt, "--format", "json")
    assert code == 0 and json.loads(out)[1]["precision"] == "0.52"


def test_evaluate_empty(tmp_path):
    rec, gt = tmp_path / "r.csv", tmp_path / "t.csv"
    rec.write_text("behaviour,entities,start,end\n")
    gt.write_text("")
    code, out, _ = call("evaluate", rec, "--truth", gt, "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == [f"{n},0,0,0,—,—" for n, *_ in TABLE]


def test_evaluate_unknown_behaviour_warns(tmp_path):
    rec, gt = tmp_path / "r.csv", tmp_path / "t.csv"
    rec.write_text("")
    gt.write_text("dancing,p1,3,9\n")
    code, _, err = call("evaluate", rec, "--truth", gt)
    assert code == 0 and "dancing" in err


def test_evaluate_malformed(tmp_path):
    rec, gt = tmp_path / "r.csv", tmp_path / "t.csv"
    rec.write_text("immobile,p,9,3\n")
    gt.write_text("")
    assert call("evaluate", rec, "--truth", gt)[0] == 1


def test_end_to_end_golden(golden, tmp_path):
    rec = tmp_path / "rec.csv"
    assert call("recognize", "--events", golden["events"],
                "--context", golden["context"], "--out", rec)[0] == 0
    code, out, _ = call("evaluate", rec, "--truth", golden["truth"], "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert all(r["fp"] == 0 and r["fn"] == 0 for r in rows)
    assert sum(r["tp"] for r in rows) == 4


def test_check_shipped(tmp_path):
    from importlib import resources
    path = resources.files("ecbehave").joinpath("rules/caviar.ecr")
    code, out, _ = call("check", path)
    assert code == 0 and "ok" in out


def test_check_unstratified(tmp_path):
    rules = tmp_path / "r.ecr"
    rules.write_text("action a/1\nfluent f/1 values true, false\n"
                     "initiates a(X) -> f(X)=true when holdsAt(f(X)=true);\n")
    code, _, err = call("check", rules)
    assert code == 2 and "stratif" in err and ":3:" in err


def test_check_unreadable(tmp_path):
    assert call("check", tmp_path / "none.ecr")[0] == 1


def test_bad_flags():
    assert call("recognize")[0] == 1
    assert call("evaluate", "x.csv", "--truth", "t.csv", "--format", "xml")[0] == 1


def test_console_script(leaving):
    proc = subprocess.run([sys.executable, "-m", "ecbehave.cli", "recognize",
                           "--events", str(leaving["events"])],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.endswith("leaving_object,lo_p1|lo_o1,100,200\n")

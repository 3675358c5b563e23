import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ecbehave.evaluation import (UNDEFINED, match_intervals, metrics,
                                 render_ratio, report)
from ecbehave.ingest import GroundTruthRecord
from ecbehave.kernel import Interval

from table import TABLE, table_fixture

I = Interval


@pytest.mark.parametrize("rec, truth, counts", [
    ([I(10, 20)], [I(12, 25)], (1, 0, 0)),
    ([], [I(5, 9)], (0, 0, 1)),
    ([I(1, 4), I(6, 9)], [I(2, 8)], (1, 1, 0)),
    ([I(1, 4)], [I(4, 8)], (0, 1, 1)),          # touching, no shared frame
    ([I(1, 30)], [I(2, 5), I(10, 12)], (1, 0, 1)),
])
def test_match_intervals(rec, truth, counts):
    assert match_intervals(rec, truth) == counts


def test_metrics_exact():
    assert metrics(9, 8, 0) == (1, Fraction(9, 17))
    assert metrics(0, 0, 0) == (None, None)
    with pytest.raises(ValueError):
        metrics(-1, 0, 0)


@pytest.mark.parametrize("value, text", [
    (Fraction(4, 5), "0.8"), (Fraction(1), "1"), (Fraction(9, 17), "0.52"),
    (Fraction(15, 17), "0.88"), (Fraction(15, 18), "0.83"),
    (Fraction(6, 9), "0.66"), (Fraction(6, 7), "0.85"), (Fraction(0), "0"),
    (Fraction(1, 200), "0"), (None, UNDEFINED),
])
def test_render_truncates(value, text):
    assert render_ratio(value) == text


@pytest.mark.parametrize("name, tp, fp, fn, recall, precision", TABLE)
def test_table_rows(name, tp, fp, fn, recall, precision):
    r, p = metrics(tp, fp, fn)
    assert (render_ratio(r), render_ratio(p)) == (recall, precision)


def test_report_on_table_fixture():
    results, truth, horizon = table_fixture()
    rep = report(results, truth, horizon)
    got = [(r.behaviour.replace("_", " "), r.tp, r.fp, r.fn,
            render_ratio(r.recall), render_ratio(r.precision)) for r in rep.rows]
    assert got == [(n.replace("_", " "), *rest) for n, *rest in TABLE]


def test_report_empty():
    rep = report({}, [], 0)
    assert [(r.tp, r.fp, r.fn) for r in rep.rows] == [(0, 0, 0)] * 5
    assert "—" in rep.to_text()


def test_report_symmetric_pairs_and_open_intervals():
    results = {("meeting", ("b", "a")): [I.since(90)]}
    truth = [GroundTruthRecord("meeting", ("a", "b"), 95, 120)]
    row = report(results, truth, horizon=100)["meeting"]
    assert (row.tp, row.fp, row.fn) == (1, 0, 0)


def test_report_unknown_truth_behaviour_warns(caplog):
    truth = [GroundTruthRecord("dancing", ("p",), 1, 5)]
    rep = report({}, truth, 10)
    assert rep.warnings and "dancing" in rep.warnings[0]
    assert rep["dancing"].fn == 1
    assert "dancing" in caplog.text


def test_report_formats():
    results, truth, horizon = table_fixture()
    rep = report(results, truth, horizon)
    csv_lines = rep.to_csv().splitlines()
    assert csv_lines[0] == "behaviour,tp,fp,fn,recall,precision"
    assert csv_lines[2] == "immobile,9,8,0,1,0.52"
    data = json.loads(rep.to_json())
    assert data[3] == {"behaviour": "meeting", "tp": 6, "fp": 1, "fn": 3,
                       "recall": "0.66", "precision": "0.85"}
    assert rep.render("text") == rep.to_text()


intervals = st.lists(st.tuples(st.integers(0, 50), st.integers(1, 10))
                     .map(lambda p: I(p[0], p[0] + p[1])), max_size=8)


@given(intervals, intervals, st.randoms())
def test_matching_invariants(rec, truth, rnd):
    tp, fp, fn = match_intervals(rec, truth)
    assert tp + fn == len(truth) and tp + fp == len(rec)
    rnd.shuffle(rec)
    rnd.shuffle(truth)
    assert match_intervals(rec, truth) == (tp, fp, fn)
    for v in metrics(tp, fp, fn):
        assert v is None or 0 <= v <= 1

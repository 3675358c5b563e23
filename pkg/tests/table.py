"""Reference count triples with their expected two-decimal ratios, plus a
synthetic corpus that reproduces those counts."""

from ecbehave.ingest import GroundTruthRecord
from ecbehave.kernel import Interval

TABLE = [
    ("leaving_object", 4, 0, 1, "0.8", "1"),
    ("immobile", 9, 8, 0, "1", "0.52"),
    ("moving", 15, 3, 2, "0.88", "0.83"),
    ("meeting", 6, 1, 3, "0.66", "0.85"),
    ("fighting", 6, 0, 0, "1", "1"),
]

ARITY = {"immobile": 1}


def table_fixture():
    """``(results, truth, horizon)`` whose per-behaviour counts match TABLE."""
    results, truth = {}, []
    t = 0
    for name, tp, fp, fn, *_ in TABLE:
        ents = lambda k: (f"{name[:2]}{k}",) if ARITY.get(name) == 1 \
            else (f"{name[:2]}{k}a", f"{name[:2]}{k}b")
        for k in range(tp + fp + fn):
            t += 20
            if k < tp + fp:
                results.setdefault((name, ents(k)), []).append(Interval(t, t + 10))
            if k < tp or k >= tp + fp:
                truth.append(GroundTruthRecord(name, ents(k), t + 2, t + 12))
    return results, truth, t + 20

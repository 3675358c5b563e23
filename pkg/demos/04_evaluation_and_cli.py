"""
Scoring against ground truth
============================

Recognised intervals are matched one-to-one with annotated ones; a match
needs at least one shared frame. Ratios are truncated, not rounded.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from ecbehave import Interval, match_intervals, metrics, render_ratio, scenarios

print(match_intervals([Interval(1, 4), Interval(6, 9)], [Interval(2, 8)]))  # (1, 1, 0)

for tp, fp, fn in [(4, 0, 1), (9, 8, 0), (15, 3, 2), (6, 1, 3), (6, 0, 0)]:
    recall, precision = metrics(tp, fp, fn)
    print(tp, fp, fn, render_ratio(recall), render_ratio(precision), flush=True)

# the same pipeline from the command line
with tempfile.TemporaryDirectory() as d:
    paths = scenarios.write_corpus(scenarios.golden_corpus(), d)
    rec = Path(d) / "recognized.csv"
    cli = [sys.executable, "-m", "ecbehave.cli"]
    subprocess.run(cli + ["recognize", "--events", str(paths["events"]),
                          "--context", str(paths["context"]), "--out", str(rec)],
                   check=True)
    print(rec.read_text(), flush=True)
    subprocess.run(cli + ["evaluate", str(rec), "--truth", str(paths["truth"])],
                   check=True)

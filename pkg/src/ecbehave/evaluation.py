"""Instance-level precision and recall of recognised intervals."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .behaviours import BEHAVIOURS, SYMMETRIC_BEHAVIOURS
from .kernel import Interval

__all__ = ["match_intervals", "metrics", "render_ratio", "BehaviourRow",
           "EvalReport", "report"]

log = logging.getLogger(__name__)

UNDEFINED = "—"


def _overlaps(a: Interval, b: Interval) -> bool:
    # shared frames of (a.start, a.end] and (b.start, b.end]
    return max(a.start, b.start) < min(a.end, b.end)


def match_intervals(recognized, truth):
    """Greedy one-to-one matching; returns ``(tp, fp, fn)``.

    Recognised intervals are taken in start order and each claims the
    earliest unclaimed truth interval it shares at least one frame with.
    Both lists must be bounded (close ``since`` intervals first).
    """
    recognized = sorted(recognized)
    truth = sorted(truth)
    used = [False] * len(truth)
    tp = 0
    for r in recognized:
        for i, g in enumerate(truth):
            if not used[i] and _overlaps(r, g):
                used[i] = True
                tp += 1
                break
    return tp, len(recognized) - tp, len(truth) - tp


def metrics(tp: int, fp: int, fn: int):
    """Exact ``(recall, precision)``; ``None`` where the ratio is undefined."""
    if min(tp, fp, fn) < 0:
        raise ValueError("counts must be non-negative")
    recall = Fraction(tp, tp + fn) if tp + fn else None
    precision = Fraction(tp, tp + fp) if tp + fp else None
    return recall, precision


def render_ratio(value: Optional[Fraction]) -> str:
    """Truncate toward zero at two decimals: 6/7 -> ``0.85``, 4/5 -> ``0.8``."""
    if value is None:
        return UNDEFINED
    hundredths = math.floor(value * 100)
    whole, frac = divmod(hundredths, 100)
    if frac == 0:
        return str(whole)
    return f"{whole}.{frac:02d}".rstrip("0")


@dataclass
class BehaviourRow:
    behaviour: str
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def recall(self):
        return metrics(self.tp, self.fp, self.fn)[0]

    @property
    def precision(self):
        return metrics(self.tp, self.fp, self.fn)[1]

    def cells(self):
        return [self.behaviour, str(self.tp), str(self.fp), str(self.fn),
                render_ratio(self.recall), render_ratio(self.precision)]


@dataclass
class EvalReport:
    rows: list
    warnings: list = field(default_factory=list)

    HEADER = ("behaviour", "tp", "fp", "fn", "recall", "precision")

    def __getitem__(self, behaviour) -> BehaviourRow:
        for row in self.rows:
            if row.behaviour == behaviour:
                return row
        raise KeyError(behaviour)

    def to_text(self) -> str:
        table = [list(self.HEADER)] + [r.cells() for r in self.rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(self.HEADER))]
        lines = []
        for row in table:
            cells = [row[0].ljust(widths[0])]
            cells += [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
            lines.append("  ".join(cells).rstrip())
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.HEADER)
        for r in self.rows:
            w.writerow(r.cells())
        return buf.getvalue()

    def to_json(self) -> str:
        data = [dict(zip(self.HEADER, r.cells())) for r in self.rows]
        for d, r in zip(data, self.rows):
            d.update(tp=r.tp, fp=r.fp, fn=r.fn)
        return json.dumps(data, indent=2) + "\n"

    def render(self, fmt: str = "text") -> str:
        return {"text": self.to_text, "csv": self.to_csv, "json": self.to_json}[fmt]()


def _row_order(names):
    fixed = [b for b in BEHAVIOURS if b in names]
    return fixed + sorted(set(names) - set(BEHAVIOURS))


def report(results, truth, horizon: int, *, behaviours=None,
           symmetric=SYMMETRIC_BEHAVIOURS) -> EvalReport:
    """Aggregate TP/FP/FN per behaviour over all entity tuples.

    ``results`` is a :class:`~ecbehave.behaviours.RecognitionResult` or any
    mapping ``{(behaviour, entities): [Interval, ...]}``; ``truth`` is a
    list of :class:`~ecbehave.ingest.GroundTruthRecord`. Open-ended
    recognised intervals are closed at ``horizon``. ``behaviours`` is the
    recognised vocabulary (defaults to the five standard behaviours plus any
    behaviour present in ``results``).
    """
    vocab = set(BEHAVIOURS if behaviours is None else behaviours)
    rec, gt = {}, {}
    for (name, ents), ivs in results.items():
        vocab.add(name)
        key = (name, tuple(sorted(ents)) if name in symmetric else tuple(ents))
        rec.setdefault(key, []).extend(iv.closed_at(horizon) for iv in ivs)
    warnings = []
    for g in truth:
        if g.behaviour not in vocab:
            msg = f"ground-truth behaviour {g.behaviour!r} is never recognised"
            if msg not in warnings:
                warnings.append(msg)
                log.warning(msg)
        ents = tuple(sorted(g.entities)) if g.behaviour in symmetric else tuple(g.entities)
        gt.setdefault((g.behaviour, ents), []).append(Interval(g.start, g.end))

    rows = {name: BehaviourRow(name) for name in vocab | {k[0] for k in gt}}
    for key in set(rec) | set(gt):
        tp, fp, fn = match_intervals(rec.get(key, []), gt.get(key, []))
        row = rows[key[0]]
        row.tp += tp
        row.fp += fp
        row.fn += fn
    return EvalReport([rows[n] for n in _row_order(rows)], warnings)

"""Hand-built scenarios with known outcomes, and a synthetic long log.

Each golden scenario lives in its own region of the image plane, at least a
thousand pixels from the others, so all of them can share one event log.
"""

from __future__ import annotations

import csv
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .behaviours import Place
from .ingest import EVENT_COLUMNS, EventRecord, GroundTruthRecord

__all__ = ["Scenario", "golden_scenarios", "golden_corpus", "synthetic_log",
           "write_corpus"]


@dataclass
class Scenario:
    name: str
    records: list
    truth: list = field(default_factory=list)
    places: list = field(default_factory=list)


def _seg(out, eid, cls, label, frames, pos):
    """Append one record per frame; ``pos`` is a point or ``f(frame)``."""
    for t in frames:
        x, y = pos(t) if callable(pos) else pos
        out.append(EventRecord(t, eid, cls, label, int(x), int(y)))


def leaving_object():
    # Person walks past; an object appears inactive 10 px away at frame 100
    # and is picked up after frame 199 (exit at 200).
    recs = []
    _seg(recs, "lo_p1", "person", "walking", range(0, 301), lambda t: (100 + t, 200))
    _seg(recs, "lo_o1", "object", "inactive", range(100, 200), (210, 200))
    truth = [GroundTruthRecord("leaving_object", ("lo_p1", "lo_o1"), 100, 200)]
    return Scenario("leaving_object", recs, truth)


def immobile():
    # Active at 10..19, inactive 20..80 (a 61-frame run), walks off at 81.
    recs = []
    at = (1500, 200)
    _seg(recs, "im_p1", "person", "walking", range(0, 10), at)
    _seg(recs, "im_p1", "person", "active", range(10, 20), at)
    _seg(recs, "im_p1", "person", "inactive", range(20, 81), at)
    _seg(recs, "im_p1", "person", "walking", range(81, 121), at)
    truth = [GroundTruthRecord("immobile", ("im_p1",), 20, 81)]
    return Scenario("immobile", recs, truth, [Place("shop_im", "shop", 1500, 400)])


def immobile_near_shop():
    # 90 inactive frames 30 px from a shop: long, but not long enough there.
    recs = []
    at = (9000, 200)
    _seg(recs, "is_p1", "person", "active", range(0, 10), at)
    _seg(recs, "is_p1", "person", "inactive", range(10, 100), at)
    _seg(recs, "is_p1", "person", "walking", range(100, 110), at)
    return Scenario("immobile_near_shop", recs, [],
                    [Place("shop_is", "shop", 9000, 230)])


def fighting():
    # p1 moves abruptly 15 px from an active p2 at 50..70, walks 60 px off at 71.
    recs = []
    _seg(recs, "fi_p2", "person", "active", range(0, 101), (3000, 200))
    _seg(recs, "fi_p1", "person", "walking", range(0, 50), (3100, 200))
    _seg(recs, "fi_p1", "person", "abrupt", range(50, 71), (3015, 200))
    _seg(recs, "fi_p1", "person", "walking", range(71, 101), (3060, 200))
    truth = [GroundTruthRecord("fighting", ("fi_p1", "fi_p2"), 50, 71)]
    return Scenario("fighting", recs, truth)


def meeting_while_running():
    # p1 is inactive 10 px from p2, but p2 is running throughout.
    recs = []
    _seg(recs, "me_p1", "person", "inactive", range(30, 61), (4500, 200))
    _seg(recs, "me_p2", "person", "running", range(0, 101),
         lambda t: (4510, 200) if 30 <= t <= 60 else (4700, 200))
    return Scenario("meeting_while_running", recs)


def moving_short():
    # Two people walk within 10 px of each other for only 20 frames.
    recs = []
    _seg(recs, "ms_p1", "person", "walking", range(0, 60), lambda t: (6000 + t, 200))
    _seg(recs, "ms_p2", "person", "walking", range(0, 60),
         lambda t: (6010 + t, 200) if 10 <= t < 30 else (6100 + t, 200))
    return Scenario("moving_short", recs)


def moving():
    # Two people walk side by side from frame 20 to 99 and split at 100.
    recs = []
    _seg(recs, "mv_p1", "person", "walking", range(0, 120), lambda t: (7500 + t, 200))
    _seg(recs, "mv_p2", "person", "walking", range(0, 120),
         lambda t: (7500 + t, 220) if 20 <= t < 100 else (7500 + t, 400))
    truth = [GroundTruthRecord("moving", ("mv_p1", "mv_p2"), 20, 100)]
    return Scenario("moving", recs, truth)


def golden_scenarios() -> list:
    return [leaving_object(), immobile(), immobile_near_shop(), fighting(),
            meeting_while_running(), moving_short(), moving()]


def golden_corpus() -> Scenario:
    """All golden scenarios merged into one log."""
    recs, truth, places = [], [], []
    for sc in golden_scenarios():
        recs += sc.records
        truth += sc.truth
        places += sc.places
    recs.sort(key=lambda r: (r.frame, r.entity_id))
    return Scenario("golden", recs, truth, places)


def synthetic_log(frames: int = 26419, entities: int = 10, seed: int = 0) -> list:
    """Random walkers in a 320x240 scene switching behaviour in segments.

    Every entity is tracked for the whole log; labels change every 20-120
    frames. Deterministic for a given seed.
    """
    rng = random.Random(seed)
    labels = ("walking", "walking", "active", "inactive", "running", "abrupt")
    recs = []
    for k in range(entities):
        eid = f"s{k:02d}"
        x, y = rng.uniform(0, 320), rng.uniform(0, 240)
        start = 0
        while start < frames:
            label = rng.choice(labels)
            stop = min(start + rng.randint(20, 120), frames)
            speed = {"walking": 1.0, "running": 3.0}.get(label, 0.0)
            heading = rng.uniform(-math.pi, math.pi)
            dx, dy = speed * math.cos(heading), speed * math.sin(heading)
            for t in range(start, stop):
                x = min(max(x + dx, 0), 320)
                y = min(max(y + dy, 0), 240)
                recs.append(EventRecord(t, eid, "person", label, int(x), int(y)))
            start = stop
    recs.sort(key=lambda r: (r.frame, r.entity_id))
    return recs


def write_corpus(sc: Scenario, directory) -> dict:
    """Write ``events.csv``, ``context.json`` and ``truth.csv``; return paths."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = {"events": d / "events.csv", "context": d / "context.json",
             "truth": d / "truth.csv"}
    with open(paths["events"], "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EVENT_COLUMNS)
        for r in sc.records:
            w.writerow([r.frame, r.entity_id, r.entity_class, r.label, r.x, r.y])
    places = [{"name": p.name, "class": p.place_class, "x": p.x, "y": p.y}
              for p in sc.places]
    paths["context"].write_text(json.dumps(places, indent=2) + "\n", encoding="utf-8")
    with open(paths["truth"], "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["behaviour", "entities", "start", "end"])
        for g in sc.truth:
            w.writerow([g.behaviour, "|".join(g.entities), g.start, g.end])
    return paths

"""Loaders for event logs, context maps and ground truth.

File formats:

``events.csv``
    header ``frame,entity_id,entity_class,label,x,y``; one row per tracked
    entity per frame.
``context.json``
    array of ``{"name", "class", "x", "y"}`` objects.
``truth.csv``
    ``behaviour,entities,start,end`` with entities joined by ``|``; the
    header line is optional.
``appearance.csv``
    optional ``entity_id,first_frame,last_frame`` corrections to the
    appear/exit frames derived from tracks.

Every loader either returns a complete structure or raises
:class:`IngestError` listing all problems found.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .behaviours import ContextMap, Place, Track
from .kernel import Action, Narrative

__all__ = [
    "IngestError", "EventRecord", "GroundTruthRecord", "LABELS",
    "load_events", "write_events", "load_context", "load_ground_truth",
    "load_appearance",
]

LABELS = ("walking", "running", "active", "inactive", "abrupt")
EVENT_COLUMNS = ("frame", "entity_id", "entity_class", "label", "x", "y")


class IngestError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(self.errors))


@dataclass(frozen=True)
class EventRecord:
    frame: int
    entity_id: str
    entity_class: str
    label: str
    x: int
    y: int


@dataclass(frozen=True)
class GroundTruthRecord:
    behaviour: str
    entities: tuple
    start: int
    end: int


def _int(text, what):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise ValueError(f"{what} must be an integer, got {text!r}") from None


def _read_text(path):
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestError([f"{path}: cannot read: {exc.strerror or exc}"]) from None


def parse_event_rows(text: str, source="<events>"):
    """Validated :class:`EventRecord` list from CSV text."""
    errors, records = [], []
    reader = csv.reader(text.splitlines())
    header = next(reader, None)
    if header is None:
        raise IngestError([f"{source}: missing header {','.join(EVENT_COLUMNS)}"])
    if tuple(h.strip() for h in header) != EVENT_COLUMNS:
        raise IngestError([f"{source}:1: header must be {','.join(EVENT_COLUMNS)}, "
                           f"got {','.join(header)}"])
    seen = {}
    for lineno, row in enumerate(reader, 2):
        if not row or all(not c.strip() for c in row):
            continue
        where = f"{source}:{lineno}"
        if len(row) != len(EVENT_COLUMNS):
            errors.append(f"{where}: expected {len(EVENT_COLUMNS)} fields, "
                          f"got {len(row)}")
            continue
        frame, eid, ecls, label, x, y = (c.strip() for c in row)
        try:
            rec = EventRecord(_int(frame, "frame"), eid, ecls, label,
                              _int(x, "x"), _int(y, "y"))
        except ValueError as exc:
            errors.append(f"{where}: {exc}")
            continue
        row_errors = len(errors)
        if rec.frame < 0:
            errors.append(f"{where}: frame must be >= 0, got {rec.frame}")
        if not eid:
            errors.append(f"{where}: empty entity_id")
        if ecls not in ("person", "object"):
            errors.append(f"{where}: entity_class must be person or object, "
                          f"got {ecls!r}")
        if label not in LABELS:
            errors.append(f"{where}: unknown label {label!r} "
                          f"(expected one of {', '.join(LABELS)})")
        if len(errors) > row_errors:
            continue
        prev = seen.get((rec.frame, eid))
        if prev is not None:
            if prev[1] != rec:
                errors.append(f"{where}: conflicts with line {prev[0]} for "
                              f"entity {eid!r} at frame {rec.frame}")
            continue
        seen[(rec.frame, eid)] = (lineno, rec)
        records.append(rec)
    classes = {}
    for rec in records:
        if classes.setdefault(rec.entity_id, rec.entity_class) != rec.entity_class:
            errors.append(f"{source}: entity {rec.entity_id!r} has both classes "
                          f"{classes[rec.entity_id]} and {rec.entity_class}")
            classes[rec.entity_id] = rec.entity_class
    if errors:
        raise IngestError(errors)
    return records


def build(records):
    """Sealed narrative and ``{entity_id: Track}`` from event records."""
    narrative = Narrative()
    positions, classes = {}, {}
    for rec in records:
        narrative.happens(Action(rec.label, (rec.entity_id,)), rec.frame)
        positions.setdefault(rec.entity_id, {})[rec.frame] = (rec.x, rec.y)
        classes[rec.entity_id] = rec.entity_class
    tracks = {eid: Track(eid, classes[eid], pos)
              for eid, pos in sorted(positions.items())}
    return narrative.seal(), tracks


def load_events(path):
    """Load ``events.csv`` into ``(Narrative, {entity_id: Track})``."""
    return build(parse_event_rows(_read_text(path), str(path)))


def write_events(path, narrative: Narrative, tracks: dict) -> None:
    """Write an event log back to CSV, one row per occurrence."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EVENT_COLUMNS)
        for t, act in narrative.occurrences():
            eid = act.args[0]
            tr = tracks[eid]
            x, y = tr.positions[t]
            w.writerow([t, eid, tr.entity_class, act.name, x, y])


def load_context(path) -> ContextMap:
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IngestError([f"{path}:{exc.lineno}: invalid JSON: {exc.msg}"]) from None
    if not isinstance(data, list):
        raise IngestError([f"{path}: expected a JSON array of places"])
    errors, places, names = [], [], set()
    for i, item in enumerate(data):
        where = f"{path}: place #{i}"
        if not isinstance(item, dict):
            errors.append(f"{where}: expected an object")
            continue
        missing = [k for k in ("name", "class", "x", "y") if k not in item]
        if missing:
            errors.append(f"{where}: missing field(s) {', '.join(missing)}")
            continue
        name = str(item["name"])
        if name in names:
            errors.append(f"{where}: duplicate name {name!r}")
            continue
        x, y = item["x"], item["y"]
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                   for v in (x, y)):
            errors.append(f"{where}: x and y must be numbers")
            continue
        names.add(name)
        places.append(Place(name, str(item["class"]), x, y))
    if errors:
        raise IngestError(errors)
    return ContextMap(places)


def parse_ground_truth(text: str, source="<truth>", behaviours=None):
    errors, out = [], []
    for lineno, row in enumerate(csv.reader(text.splitlines()), 1):
        if not row or all(not c.strip() for c in row):
            continue
        if lineno == 1 and row[0].strip() == "behaviour":
            continue
        where = f"{source}:{lineno}"
        if len(row) != 4:
            errors.append(f"{where}: expected 4 fields, got {len(row)}")
            continue
        name, ents, start, end = (c.strip() for c in row)
        try:
            rec = GroundTruthRecord(name, tuple(ents.split("|")),
                                    _int(start, "start"), _int(end, "end"))
        except ValueError as exc:
            errors.append(f"{where}: {exc}")
            continue
        if not rec.start < rec.end:
            errors.append(f"{where}: start {rec.start} must be before end {rec.end}")
            continue
        if behaviours is not None and name not in behaviours:
            errors.append(f"{where}: unknown behaviour {name!r}")
            continue
        out.append(rec)
    if errors:
        raise IngestError(errors)
    return out


def load_ground_truth(path, behaviours=None):
    """Load ``truth.csv``; overlapping intervals for one key are allowed."""
    return parse_ground_truth(_read_text(path), str(path), behaviours)


def load_appearance(path) -> dict:
    """``{entity_id: (first_frame, last_frame)}`` overrides."""
    errors, out = [], {}
    rows = list(csv.reader(_read_text(path).splitlines()))
    for lineno, row in enumerate(rows, 1):
        if not row or (lineno == 1 and row[0].strip() == "entity_id"):
            continue
        where = f"{path}:{lineno}"
        if len(row) != 3:
            errors.append(f"{where}: expected entity_id,first_frame,last_frame")
            continue
        try:
            first, last = _int(row[1].strip(), "first_frame"), _int(row[2].strip(), "last_frame")
        except ValueError as exc:
            errors.append(f"{where}: {exc}")
            continue
        if first < 0 or first > last:
            errors.append(f"{where}: need 0 <= first_frame <= last_frame")
            continue
        out[row[0].strip()] = (first, last)
    if errors:
        raise IngestError(errors)
    return out

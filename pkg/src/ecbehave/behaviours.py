"""Spatial built-ins, derived events and the recognition pipeline."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from importlib import resources
from typing import Optional

from .dsl import RuleError, RuleSet, parse_rules, validate_rules
from .kernel import (Action, ContractError, EventCalculus, FluentAssignment,
                     Interval, Narrative, VocabularyError)

__all__ = [
    "Track", "Place", "ContextMap", "ThresholdConfig", "RecognitionResult",
    "Scene", "euclidean_distance", "close_holds", "far_from_all",
    "derive_boundary_events", "entity_kinds", "load_rules", "recognize",
    "BEHAVIOURS", "SYMMETRIC_BEHAVIOURS",
]

BEHAVIOURS = ("leaving_object", "immobile", "moving", "meeting", "fighting")
SYMMETRIC_BEHAVIOURS = frozenset({"moving", "meeting", "fighting"})


@dataclass
class Track:
    """Pixel positions of one tracked entity, keyed by frame."""

    entity_id: str
    entity_class: str
    positions: dict

    def __post_init__(self):
        if not self.positions:
            raise ContractError(f"track {self.entity_id!r} has no positions")
        if self.entity_class not in ("person", "object"):
            raise ContractError(f"entity class must be person or object, "
                                f"got {self.entity_class!r}")

    @property
    def first_frame(self) -> int:
        return min(self.positions)

    @property
    def last_frame(self) -> int:
        return max(self.positions)

    def at(self, t: int):
        return self.positions.get(t)


@dataclass(frozen=True)
class Place:
    name: str
    place_class: str
    x: float
    y: float


class ContextMap:
    """Named fixed places (shops, information displays)."""

    def __init__(self, places=()):
        self.places = {}
        for p in places:
            if p.name in self.places:
                raise ContractError(f"duplicate place name {p.name!r}")
            self.places[p.name] = p

    def of_class(self, place_class: str) -> list:
        return [p for p in self.places.values() if p.place_class == place_class]

    def __len__(self):
        return len(self.places)

    def __iter__(self):
        return iter(self.places.values())


@dataclass(frozen=True)
class ThresholdConfig:
    """Distances in pixels, durations in frames.

    The four distances and ``immobile_min`` are the reference values; the
    rest are calibration knobs.
    """

    d_leaving: float = 30
    d_moving: float = 34
    d_meeting: float = 25
    d_fighting: float = 24
    immobile_min: int = 54
    immobile_min_near_shop: int = 162
    shop_far_distance: float = 60
    moving_min_duration: int = 25
    max_gap: int = 1

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"threshold {f.name} must be positive, got {value}")
        if not self.immobile_min_near_shop > self.immobile_min:
            raise ValueError("immobile_min_near_shop must exceed immobile_min")

    @classmethod
    def from_mapping(cls, values: dict, base: Optional["ThresholdConfig"] = None):
        """Override fields from ``{name: value}``; string values are parsed."""
        base = base or cls()
        known = {f.name: f.type for f in fields(cls)}
        changes = {}
        for name, raw in values.items():
            if name not in known:
                raise ValueError(f"unknown threshold {name!r}; known: "
                                 f"{', '.join(known)}")
            want_int = known[name] in ("int", int)
            try:
                value = int(raw) if want_int else float(raw)
            except (TypeError, ValueError):
                raise ValueError(f"threshold {name} needs a "
                                 f"{'whole' if want_int else ''} number, "
                                 f"got {raw!r}") from None
            changes[name] = value
        return replace(base, **changes)

    @classmethod
    def load(cls, path, base=None) -> "ThresholdConfig":
        """Read ``key = value`` lines; ``#`` starts a comment."""
        values = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise ValueError(f"{path}:{lineno}: expected key=value")
                values[key.strip()] = value.strip()
        return cls.from_mapping(values, base)

    def constants(self) -> dict:
        """Values for the like-named constants of a rule file."""
        out = asdict(self)
        del out["moving_min_duration"], out["max_gap"]
        return out


def euclidean_distance(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def close_holds(tracks: dict, a: str, b: str, d: float, t: int) -> bool:
    """Both entities tracked at ``t`` and at most ``d`` pixels apart."""
    ta, tb = tracks.get(a), tracks.get(b)
    pa = ta.at(t) if ta else None
    pb = tb.at(t) if tb else None
    if pa is None or pb is None:
        return False
    return euclidean_distance(pa, pb) <= d


def far_from_all(tracks: dict, e: str, places: ContextMap, place_class: str,
                 d: float, t: int) -> bool:
    """Strictly more than ``d`` pixels from every place of the class."""
    track = tracks.get(e)
    pos = track.at(t) if track else None
    if pos is None:
        raise ContractError(f"{e!r} is not tracked at frame {t}")
    return all(euclidean_distance(pos, (p.x, p.y)) > d
               for p in places.of_class(place_class))


class Scene:
    """Spatial adapter handed to :class:`~ecbehave.kernel.EventCalculus`."""

    def __init__(self, tracks: dict, context: Optional[ContextMap] = None):
        self.tracks = tracks
        self.context = context or ContextMap()
        self._frames = {}
        for tr in tracks.values():
            for t, pos in tr.positions.items():
                self._frames.setdefault(t, {})[tr.entity_id] = pos

    def entities_at(self, t):
        return self._frames.get(t, {}).keys()

    def close(self, a, b, d, t):
        here = self._frames.get(t)
        if here is None:
            return False
        pa, pb = here.get(a), here.get(b)
        if pa is None or pb is None:
            return False
        return math.hypot(pa[0] - pb[0], pa[1] - pb[1]) <= d

    def far_from_all(self, e, place_class, d, t):
        return far_from_all(self.tracks, e, self.context, place_class, d, t)


def derive_boundary_events(tracks: dict, overrides: Optional[dict] = None):
    """``appear`` at each track's first frame, ``exit`` one frame after its last.

    Returns ``(events, initial)``: a sorted list of ``(frame, Action)`` and a
    set of initial :class:`FluentAssignment`. Entities tracked from frame 0
    start with ``appearance=appear``. ``overrides`` maps an entity id to a
    corrected ``(first_frame, last_frame)``.
    """
    overrides = overrides or {}
    events, initial = [], set()
    for eid in sorted(tracks):
        first, last = overrides.get(eid, (tracks[eid].first_frame,
                                          tracks[eid].last_frame))
        events.append((first, Action("appear", (eid,))))
        events.append((last + 1, Action("exit", (eid,))))
        if first == 0:
            initial.add(FluentAssignment("appearance", (eid,), "appear"))
    events.sort()
    return events, initial


def entity_kinds(narrative: Narrative, tracks: dict) -> set:
    """Initial ``kind`` values: object only if declared so and never anything
    but inactive."""
    labels = {}
    for _, act in narrative.occurrences():
        for e in act.args:
            labels.setdefault(e, set()).add(act.name)
    out = set()
    for eid in sorted(tracks):
        is_object = (tracks[eid].entity_class == "object"
                     and labels.get(eid, set()) <= {"inactive"})
        out.add(FluentAssignment("kind", (eid,), "object" if is_object else "person"))
    return out


def load_rules(path=None) -> RuleSet:
    """Parse a rule file; the shipped ``caviar.ecr`` when ``path`` is None."""
    if path is None:
        text = resources.files("ecbehave").joinpath("rules/caviar.ecr").read_text(
            encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_rules(text)


class RecognitionResult:
    """Recognised intervals keyed by ``(behaviour, entity tuple)``."""

    def __init__(self, intervals: dict, horizon: int):
        self.intervals = dict(sorted(intervals.items()))
        self.horizon = horizon

    def __getitem__(self, key):
        return self.intervals.get(key, [])

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def items(self):
        return self.intervals.items()

    def behaviour(self, name: str) -> dict:
        return {k[1]: v for k, v in self.intervals.items() if k[0] == name}

    def rows(self):
        """``(behaviour, entities, interval)`` in canonical order."""
        for (name, ents), ivs in self.intervals.items():
            for iv in ivs:
                yield name, ents, iv

    def __eq__(self, other):
        if not isinstance(other, RecognitionResult):
            return NotImplemented
        return self.intervals == other.intervals

    def __repr__(self):
        return f"RecognitionResult({self.intervals!r})"


def _check_vocabulary(narrative: Narrative, rules: RuleSet):
    for _, act in narrative.occurrences():
        arity = rules.actions.get(act.name)
        if arity is None:
            raise VocabularyError(f"event label '{act.name}' is not declared "
                                  f"as an action in the rules")
        if arity != len(act.args):
            raise VocabularyError(f"action '{act.name}' takes {arity} "
                                  f"argument(s), got {act}")


def recognize(narrative: Narrative, tracks: dict, rules: Optional[RuleSet] = None,
              context: Optional[ContextMap] = None,
              config: Optional[ThresholdConfig] = None, *,
              symmetric=SYMMETRIC_BEHAVIOURS, appearance=None) -> RecognitionResult:
    """Recognise long-term behaviours as maximal intervals.

    Every Boolean fluent declared by ``rules`` is treated as a behaviour and
    reported where it holds ``true``. Thresholds from ``config`` replace the
    like-named rule constants. Moving intervals not longer than
    ``config.moving_min_duration`` are dropped.
    """
    rules = load_rules() if rules is None else rules
    config = config or ThresholdConfig()
    _check_vocabulary(narrative, rules)
    rules = rules.with_consts(config.constants())
    errors = [d for d in validate_rules(rules) if d.severity == "error"]
    if errors:
        raise RuleError(errors)

    events, initial = derive_boundary_events(tracks, appearance)
    if "kind" in rules.fluents:
        initial |= entity_kinds(narrative, tracks)
    full = narrative.merged(events, initial)
    ec = EventCalculus(full, rules, spatial=Scene(tracks, context),
                       symmetric=symmetric, max_gap=config.max_gap)

    behaviours = {n for n, d in rules.fluents.items() if d.boolean}
    min_len = {"moving": config.moving_min_duration}
    out = {}
    for fa in ec.assignments():
        if fa.fluent not in behaviours or fa.value != "true":
            continue
        ivs = ec.holds_for(fa)
        floor = min_len.get(fa.fluent)
        if floor is not None:
            ivs = [iv for iv in ivs
                   if iv.closed_at(full.horizon).end - iv.start > floor]
        if ivs:
            out[(fa.fluent, fa.args)] = ivs
    return RecognitionResult(out, full.horizon)

"""Event Calculus over a finite, fully loaded narrative.

Two evaluation routes share the clause matcher but nothing else:

* :meth:`EventCalculus.holds_for` materialises the narrative in one forward
  sweep, collecting start and end points per fluent assignment and handing
  them to :func:`compute_intervals`.
* :meth:`EventCalculus.holds_at` and :meth:`EventCalculus.broken` answer point
  queries straight from the axioms: a value holds at ``t`` when it held
  initially or was initiated at some ``t' < t``, and no terminating event
  occurred in between (the initiation frame itself included).

A fluent therefore does not hold at the frame it is initiated but does hold at
the frame it is terminated. Time is integer video frames.
"""

from __future__ import annotations

import bisect
import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .dsl import (BinOp, Close, Compare, ConstRef, DurationRun, FarFromAll,
                  HoldsAt, Happens, Num, RuleSet, SometimeBefore, Sym,
                  TimeRef, Var)

__all__ = [
    "Action", "FluentAssignment", "Interval", "Narrative", "EventRun",
    "EventCalculus", "VocabularyError", "StateError", "ContractError",
    "holds_at", "broken", "holds_for", "compute_intervals",
    "exclusivity_terminations", "event_intervals",
]


class VocabularyError(ValueError):
    """A fluent or value that the rule set does not declare."""


class StateError(RuntimeError):
    """The narrative is used before it is sealed, or mutated after."""


class ContractError(ValueError):
    """A precondition of a kernel operation does not hold."""


class Action(NamedTuple):
    name: str
    args: tuple = ()

    def __str__(self):
        return f"{self.name}({', '.join(self.args)})"


class FluentAssignment(NamedTuple):
    fluent: str
    args: tuple
    value: str

    @property
    def key(self):
        return self.fluent, self.args

    def __str__(self):
        return f"{self.fluent}({', '.join(self.args)})={self.value}"


@dataclass(frozen=True, order=True)
class Interval:
    """``(start, end]`` or, when ``end`` is None, ``since(start)``."""

    start: int
    end: Optional[int] = None

    def __post_init__(self):
        if self.end is not None and not self.start < self.end:
            raise ContractError(f"empty interval ({self.start}, {self.end}]")

    @classmethod
    def since(cls, start: int) -> "Interval":
        return cls(start, None)

    @property
    def open_ended(self) -> bool:
        return self.end is None

    def __contains__(self, t: int) -> bool:
        return self.start < t and (self.end is None or t <= self.end)

    def closed_at(self, horizon: int) -> "Interval":
        """Bounded copy; open-ended intervals are cut at ``horizon``."""
        if self.end is not None:
            return self
        return Interval(self.start, max(horizon, self.start + 1))

    def __str__(self):
        if self.end is None:
            return f"since({self.start})"
        return f"({self.start}, {self.end}]"

    __repr__ = __str__


class EventRun(NamedTuple):
    first: int
    last: int
    frames: tuple


class Narrative:
    """Event occurrences plus initial fluent values; immutable once sealed."""

    def __init__(self, events=(), initial=(), horizon: int = 0):
        self._events = defaultdict(set)
        self._initial = set()
        self._horizon = horizon
        self.sealed = False
        for t, action in events:
            self.happens(action, t)
        for fa in initial:
            self.initially(fa)

    def happens(self, action: Action, t: int) -> None:
        if self.sealed:
            raise StateError("narrative is sealed")
        if not isinstance(t, int) or t < 0:
            raise ContractError(f"time-points are non-negative integers, got {t!r}")
        self._events[t].add(Action(action[0], tuple(action[1])))
        self._horizon = max(self._horizon, t)

    def initially(self, fa: FluentAssignment) -> None:
        if self.sealed:
            raise StateError("narrative is sealed")
        self._initial.add(FluentAssignment(fa[0], tuple(fa[1]), fa[2]))

    def seal(self) -> "Narrative":
        if not self.sealed:
            self._events = {t: frozenset(acts) for t, acts in self._events.items()}
            self._initial = frozenset(self._initial)
            self._frames = sorted(self._events)
            self.sealed = True
        return self

    def merged(self, events=(), initial=()) -> "Narrative":
        """New sealed narrative with extra events and initial values."""
        out = Narrative(horizon=self._horizon)
        for t, acts in self._events.items():
            for a in acts:
                out.happens(a, t)
        for fa in self._initial:
            out.initially(fa)
        for t, a in events:
            out.happens(a, t)
        for fa in initial:
            out.initially(fa)
        return out.seal()

    @property
    def horizon(self) -> int:
        return self._horizon

    @property
    def initial(self) -> frozenset:
        return frozenset(self._initial)

    @property
    def frames(self) -> list:
        """Sorted frames at which at least one event occurs."""
        self._need_sealed()
        return self._frames

    def events_at(self, t: int) -> frozenset:
        return self._events.get(t, frozenset())

    def occurrences(self):
        """Yield ``(t, action)`` in time order, actions sorted within a frame."""
        for t in sorted(self._events):
            for a in sorted(self._events[t]):
                yield t, a

    def entities(self) -> set:
        ents = {e for acts in self._events.values() for a in acts for e in a.args}
        ents.update(e for fa in self._initial for e in fa.args)
        return ents

    def _need_sealed(self):
        if not self.sealed:
            raise StateError("narrative must be sealed before querying")

    def __eq__(self, other):
        if not isinstance(other, Narrative):
            return NotImplemented
        return (dict(self._events) == dict(other._events)
                and set(self._initial) == set(other._initial)
                and self._horizon == other._horizon)

    def __repr__(self):
        n = sum(len(a) for a in self._events.values())
        return f"<Narrative {n} events, horizon {self._horizon}>"


# ---------------------------------------------------------------------------
# interval primitives

def _check_sorted(points, what):
    for a, b in zip(points, points[1:]):
        if not a < b:
            raise ContractError(f"{what} must be sorted ascending without "
                                f"duplicates: {a} then {b}")


def compute_intervals(start_pts, end_pts) -> list:
    """Pair start and end points into maximal intervals.

    Each start is paired with the least unconsumed end strictly after it.
    Starts falling inside an already open run are absorbed, ends with no
    open run are ignored, and a final unmatched start yields ``since``.

    >>> compute_intervals([3, 12], [10])
    [(3, 10], since(12)]
    >>> compute_intervals([3, 5], [10])
    [(3, 10]]
    """
    start_pts, end_pts = list(start_pts), list(end_pts)
    _check_sorted(start_pts, "start points")
    _check_sorted(end_pts, "end points")
    out = []
    i = j = 0
    while i < len(start_pts):
        s = start_pts[i]
        while j < len(end_pts) and end_pts[j] <= s:
            j += 1
        if j == len(end_pts):
            out.append(Interval.since(s))
            break
        e = end_pts[j]
        out.append(Interval(s, e))
        j += 1
        while i < len(start_pts) and start_pts[i] < e:
            i += 1
    return out


def exclusivity_terminations(initiations: Iterable, domains) -> set:
    """Terminations implied by a fluent holding at most one value at a time.

    ``initiations`` holds ``(action, fluent_assignment, t)`` triples and
    ``domains`` maps a fluent name to its value domain. Initiating ``F=V'``
    terminates ``F=V`` for every other ``V``.
    """
    out = set()
    for act, fa, t in initiations:
        for v in domains[fa.fluent]:
            if v != fa.value:
                out.add((act, FluentAssignment(fa.fluent, fa.args, v), t))
    return out


def event_intervals(narrative: Narrative, action: Action, max_gap: int = 1) -> list:
    """Maximal runs of an instantaneous event, gaps of at most ``max_gap``."""
    if max_gap < 1:
        raise ContractError(f"max_gap must be >= 1, got {max_gap}")
    action = Action(action[0], tuple(action[1]))
    times = [t for t in sorted(narrative._events) if action in narrative._events[t]]
    return _runs(times, max_gap)


def _runs(times, max_gap) -> list:
    runs, cur = [], []
    for t in times:
        if cur and t - cur[-1] > max_gap:
            runs.append(EventRun(cur[0], cur[-1], tuple(cur)))
            cur = []
        cur.append(t)
    if cur:
        runs.append(EventRun(cur[0], cur[-1], tuple(cur)))
    return runs


# ---------------------------------------------------------------------------
# clause matching, shared by both evaluation routes

class _Index:
    """Per-action-instance occurrence times, used by past/duration conditions."""

    def __init__(self, narrative: Narrative, max_gap: int):
        self.times = defaultdict(list)
        self.by_name = defaultdict(set)
        self.at = defaultdict(dict)         # t -> name -> sorted actions
        for t, a in narrative.occurrences():
            self.times[a].append(t)
            self.by_name[a.name].add(a)
            self.at[t].setdefault(a.name, []).append(a)
        self.by_name = {k: sorted(v) for k, v in self.by_name.items()}
        self.max_gap = max_gap
        self._run_starts = {}

    def run_from(self, action, t):
        """Last frame of the maximal run that starts exactly at ``t``, or None."""
        starts = self._run_starts.get(action)
        if starts is None:
            starts = {r.first: r.last
                      for r in _runs(self.times.get(action, ()), self.max_gap)}
            self._run_starts[action] = starts
        return starts.get(t)

    def named(self, t, name):
        return self.at.get(t, {}).get(name, ())

    def first_time(self, action):
        times = self.times.get(action)
        return times[0] if times else None


def _rule_symbols(rules):
    terms = []
    for clause in rules.clauses:
        terms.extend(clause.trigger.args + clause.target.args)
        for c in clause.conditions:
            if isinstance(c, (Happens, DurationRun, SometimeBefore)):
                terms.extend(c.pattern.args)
            elif isinstance(c, HoldsAt):
                terms.extend(c.fluent.args)
            elif isinstance(c, Close):
                terms.extend((c.a, c.b))
            elif isinstance(c, FarFromAll):
                terms.append(c.entity)
    return {t.name for t in terms if isinstance(t, Sym)}


def _unify(args, ground, binding):
    """Extend ``binding`` so that ``args`` matches ``ground``, or None."""
    out = binding
    for term, value in zip(args, ground):
        if type(term) is Sym:
            if term.name != value:
                return None
            continue
        bound = out.get(term.name)
        if bound is None:
            if out is binding:
                out = dict(binding)
            out[term.name] = value
        elif bound != value:
            return None
    return out


def _ground(args, binding):
    return tuple(a.name if isinstance(a, Sym) else binding[a.name] for a in args)


def _is_ground(args, binding):
    return all(isinstance(a, Sym) or a.name in binding for a in args)


class _World:
    """What the clause matcher may ask about the world at one frame.

    Subclasses answer ``holds`` (ground fluent assignment at ``t``) and
    ``fluent_candidates`` (ground keys that may satisfy a non-ground holdsAt).
    """

    def __init__(self, ec: "EventCalculus"):
        self.ec = ec

    def holds(self, fa, t):
        raise NotImplementedError

    def fluent_candidates(self, name, t, known):
        """Argument tuples worth trying; each must contain every entity in
        ``known``."""
        raise NotImplementedError


class EventCalculus:
    """Recognition over one sealed narrative and one rule set.

    ``spatial`` supplies the coordinate-based built-ins: an object with
    ``close(a, b, d, t)``, ``far_from_all(e, place_class, d, t)`` and
    ``entities_at(t)``. ``symmetric`` names two-argument fluents whose
    argument order is irrelevant; they are stored under sorted arguments.
    """

    def __init__(self, narrative: Narrative, rules: RuleSet, *, spatial=None,
                 symmetric=(), max_gap: int = 1):
        if not narrative.sealed:
            raise StateError("narrative must be sealed before querying")
        if max_gap < 1:
            raise ContractError(f"max_gap must be >= 1, got {max_gap}")
        self.narrative = narrative
        self.rules = rules
        self.spatial = spatial
        self.symmetric = frozenset(symmetric)
        self.domains = {name: d.values for name, d in rules.fluents.items()}
        self._index = _Index(narrative, max_gap)
        self._by_trigger = defaultdict(list)
        for clause in rules.clauses:
            compiled = tuple(self._compile(c) for c in clause.conditions)
            key = clause.trigger.name, len(clause.trigger.args)
            self._by_trigger[key].append((clause, compiled))
        self._entities = sorted(narrative.entities() | _rule_symbols(rules))
        self._initial = {}
        for fa in narrative.initial:
            fa = self.canonical(fa)
            self._check_vocab(fa)
            if self._initial.get(fa.key, fa.value) != fa.value:
                raise ContractError(f"conflicting initial values for "
                                    f"{fa.fluent}{fa.args}")
            self._initial[fa.key] = fa.value
        self._materialised = None
        self._query = None

    # -- helpers -----------------------------------------------------------
    def canonical(self, fa):
        name, args, value = fa
        if name in self.symmetric and len(args) == 2 and args[0] > args[1]:
            return FluentAssignment(name, (args[1], args[0]), value)
        return FluentAssignment(name, tuple(args), value)

    def _check_vocab(self, fa):
        decl = self.rules.fluents.get(fa.fluent)
        if decl is None:
            raise VocabularyError(f"unknown fluent '{fa.fluent}'")
        if fa.value not in decl.values:
            raise VocabularyError(f"unknown value '{fa.value}' for fluent "
                                  f"'{fa.fluent}'")
        if len(fa.args) != decl.arity:
            raise VocabularyError(f"fluent '{fa.fluent}' takes {decl.arity} "
                                  f"argument(s)")

    def _num(self, expr, t):
        if isinstance(expr, Num):
            return expr.value
        if isinstance(expr, ConstRef):
            return self.rules.consts[expr.name]
        if isinstance(expr, TimeRef):
            return t
        if isinstance(expr, BinOp):
            left, right = self._num(expr.left, t), self._num(expr.right, t)
            return left + right if expr.op == "+" else left - right
        raise TypeError(expr)

    def _need_spatial(self, cond):
        if self.spatial is None:
            raise ContractError(f"'{cond}' needs coordinates but no spatial "
                                f"context was given")
        return self.spatial

    # -- clause matcher ------------------------------------------------------
    # Each condition compiles once into a function
    # ``(binding, t, world) -> list of extended bindings``.

    def _numfn(self, expr):
        if isinstance(expr, Num):
            value = expr.value
            return lambda t: value
        if isinstance(expr, ConstRef):
            value = self.rules.consts[expr.name]
            return lambda t: value
        if isinstance(expr, TimeRef):
            return lambda t: t
        if isinstance(expr, BinOp):
            left, right = self._numfn(expr.left), self._numfn(expr.right)
            if expr.op == "+":
                return lambda t: left(t) + right(t)
            return lambda t: left(t) - right(t)
        raise TypeError(expr)

    def _compile(self, cond):
        index = self._index
        if isinstance(cond, Happens):
            name, args = cond.pattern.name, cond.pattern.args
            n = len(args)
            if cond.negated:
                def not_happens(binding, t, world):
                    act = Action(name, _ground(args, binding))
                    return [] if act in index.named(t, name) else [binding]
                return not_happens

            def happens(binding, t, world):
                out = []
                for act in index.named(t, name):
                    if len(act.args) == n:
                        b = _unify(args, act.args, binding)
                        if b is not None:
                            out.append(b)
                return out
            return happens

        if isinstance(cond, HoldsAt):
            name, args, value = cond.fluent.name, cond.fluent.args, cond.fluent.value
            negated = cond.negated
            sym = name in self.symmetric and len(args) == 2
            canonical = self.canonical

            def holds_at(binding, t, world):
                ground, known = [], []
                for a in args:
                    v = a.name if type(a) is Sym else binding.get(a.name)
                    ground.append(v)
                    if v is not None:
                        known.append(v)
                if len(known) == len(args):
                    if sym and ground[0] > ground[1]:
                        ground.reverse()
                    fa = FluentAssignment(name, tuple(ground), value)
                    return [binding] if world.holds(fa, t) != negated else []
                out = []
                for cand in world.fluent_candidates(name, t, known):
                    orders = ((cand, cand[::-1]) if sym and cand[0] != cand[1]
                              else (cand,))
                    for ordered in orders:
                        b = _unify(args, ordered, binding)
                        if b is not None and world.holds(
                                canonical((name, ordered, value)), t):
                            out.append(b)
                return out
            return holds_at

        if isinstance(cond, Close):
            return self._compile_close(cond)

        if isinstance(cond, FarFromAll):
            entity, place_class = cond.entity, cond.place_class
            dist, negated = self._numfn(cond.distance), cond.negated

            def far(binding, t, world):
                sp = self._need_spatial(cond)
                e = _ground((entity,), binding)[0]
                ok = sp.far_from_all(e, place_class, dist(t), t) != negated
                return [binding] if ok else []
            return far

        if isinstance(cond, DurationRun):
            name, args = cond.pattern.name, cond.pattern.args
            n, need = len(args), self._numfn(cond.min_len)

            def duration_run(binding, t, world):
                out = []
                for act in index.named(t, name):
                    if len(act.args) != n:
                        continue
                    b = _unify(args, act.args, binding)
                    if b is None:
                        continue
                    last = index.run_from(act, t)
                    if last is not None and last > t + need(t):
                        out.append(b)
                return out
            return duration_run

        if isinstance(cond, SometimeBefore):
            name, args = cond.pattern.name, cond.pattern.args
            n = len(args)

            def sometime_before(binding, t, world):
                out = []
                for act in index.by_name.get(name, ()):
                    if len(act.args) == n and index.first_time(act) < t:
                        b = _unify(args, act.args, binding)
                        if b is not None:
                            out.append(b)
                return out
            return sometime_before

        if isinstance(cond, Compare):
            left, right = self._numfn(cond.left), self._numfn(cond.right)
            op = _COMPARE[cond.op]
            return lambda binding, t, world: [binding] if op(left(t), right(t)) else []

        raise TypeError(f"unknown condition {cond!r}")

    def _compile_close(self, cond):
        a, b = cond.a, cond.b
        dist, negated = self._numfn(cond.distance), cond.negated

        def close(binding, t, world):
            sp = self._need_spatial(cond)
            d = dist(t)
            a_bound = type(a) is Sym or a.name in binding
            b_bound = type(b) is Sym or b.name in binding
            if a_bound and b_bound:
                ea, eb = _ground((a, b), binding)
                ok = (ea != eb and sp.close(ea, eb, d, t)) != negated
                return [binding] if ok else []
            present = sorted(sp.entities_at(t))
            out = []
            for ea, eb in itertools.product(
                    _ground((a,), binding) if a_bound else present,
                    _ground((b,), binding) if b_bound else present):
                if ea == eb or not sp.close(ea, eb, d, t):
                    continue
                nb = _unify((a, b), (ea, eb), binding)
                if nb is not None:
                    out.append(nb)
            return out
        return close

    @staticmethod
    def _solve(compiled, binding, t, world):
        frontier = [binding]
        for fn in compiled:
            nxt = []
            for b in frontier:
                nxt.extend(fn(b, t, world))
            if not nxt:
                return nxt
            frontier = nxt
        return frontier

    def _effects_at(self, t, world):
        """Initiated and terminated assignments at ``t``, exclusivity included."""
        inits, terms = set(), set()
        for act in sorted(self.narrative.events_at(t)):
            for clause, compiled in self._by_trigger.get((act.name, len(act.args)), ()):
                b0 = _unify(clause.trigger.args, act.args, {})
                if b0 is None:
                    continue
                for b in self._solve(compiled, b0, t, world):
                    fa = self.canonical((clause.target.name,
                                         _ground(clause.target.args, b),
                                         clause.target.value))
                    if clause.polarity == "initiates":
                        inits.add((act, fa, t))
                    else:
                        terms.add((act, fa, t))
        terms |= exclusivity_terminations(inits, self.domains)
        return {fa for _, fa, _ in inits}, {fa for _, fa, _ in terms}

    # -- route 1: forward materialisation ------------------------------------
    def _materialise(self):
        if self._materialised is not None:
            return self._materialised
        state = dict(self._initial)                 # key -> value holding now
        by_entity = defaultdict(set)                # (fluent, entity) -> {args}
        by_name = defaultdict(set)                  # fluent -> {args}
        starts, ends = defaultdict(list), defaultdict(list)

        def hold(name, args):
            by_name[name].add(args)
            for e in args:
                by_entity[name, e].add(args)

        def release(name, args):
            by_name[name].discard(args)
            for e in args:
                by_entity[name, e].discard(args)

        for (name, args), value in self._initial.items():
            hold(name, args)
            starts[FluentAssignment(name, args, value)].append(0)

        ec = self

        class Forward(_World):
            def holds(self, fa, t):
                return state.get((fa[0], fa[1])) == fa[2]

            def fluent_candidates(self, name, t, known):
                if not known:
                    return sorted(by_name.get(name, ()))
                pool = by_entity.get((name, known[0]))
                if not pool:
                    return ()
                if len(known) == 1:
                    return sorted(pool)
                return sorted(pool.intersection(
                    *(by_entity.get((name, e), ()) for e in known[1:])))

        world = Forward(self)
        for t in self.narrative.frames:
            inits, terms = ec._effects_at(t, world)
            for fa in sorted(terms):
                ends[fa].append(t)
                if state.get(fa.key) == fa.value:
                    del state[fa.key]
                    release(fa.fluent, fa.args)
                    if starts[fa] and starts[fa][-1] == t:
                        starts[fa].pop()  # held initially, broken at frame 0
            for fa in sorted(inits - terms):
                if state.get(fa.key) != fa.value:
                    starts[fa].append(t)
                state[fa.key] = fa.value
                hold(fa.fluent, fa.args)
        self._materialised = (dict(starts), dict(ends))
        return self._materialised

    def holds_for(self, fa) -> list:
        """Maximal intervals in which ``fa`` holds."""
        fa = self.canonical(fa)
        self._check_vocab(fa)
        starts, ends = self._materialise()
        return compute_intervals(starts.get(fa, []), ends.get(fa, []))

    def assignments(self) -> list:
        """Every fluent assignment that is ever initiated or held initially."""
        starts, _ = self._materialise()
        return sorted(fa for fa, pts in starts.items() if pts)

    def intervals(self) -> dict:
        """``{fluent_assignment: intervals}`` for every assignment that holds."""
        out = {}
        for fa in self.assignments():
            ivs = self.holds_for(fa)
            if ivs:
                out[fa] = ivs
        return out

    # -- route 2: axiomatic point queries -----------------------------------
    def _query_state(self):
        if self._query is None:
            self._query = _AxiomQueries(self)
        return self._query

    def holds_at(self, fa, t: int) -> bool:
        """Whether ``fa`` holds at ``t``, evaluated directly from the axioms."""
        fa = self.canonical(fa)
        self._check_vocab(fa)
        return self._query_state().holds_at(fa, t)

    def broken(self, fa, t1: int, t3: int) -> bool:
        """Whether ``fa`` is terminated at some ``t2`` with ``t1 <= t2 < t3``."""
        if t1 > t3:
            raise ContractError(f"broken needs t1 <= t3, got {t1} > {t3}")
        fa = self.canonical(fa)
        self._check_vocab(fa)
        return self._query_state().broken(fa, t1, t3)


_COMPARE = {
    "<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
    "=": lambda a, b: a == b, "!=": lambda a, b: a != b,
}


class _AxiomQueries(_World):
    # Effects per frame are computed on demand, in time order, with holdsAt
    # conditions answered by holds_at itself.

    def __init__(self, ec: EventCalculus):
        super().__init__(ec)
        self.frames = ec.narrative.frames
        self.done = 0                       # frames[:done] have known effects
        self.init_pts = defaultdict(list)
        self.term_pts = defaultdict(list)

    def _ensure_before(self, t):
        while self.done < len(self.frames) and self.frames[self.done] < t:
            f = self.frames[self.done]
            inits, terms = self.ec._effects_at(f, self)
            for fa in inits:
                self.init_pts[fa].append(f)
            for fa in terms:
                self.term_pts[fa].append(f)
            self.done += 1

    def broken(self, fa, t1, t3):
        self._ensure_before(t3)
        pts = self.term_pts.get(fa, ())
        i = bisect.bisect_left(pts, t1)
        return i < len(pts) and pts[i] < t3

    def holds_at(self, fa, t):
        self._ensure_before(t)
        if self.ec._initial.get(fa.key) == fa.value and not self.broken(fa, 0, t):
            return True
        for t0 in self.init_pts.get(fa, ()):
            if t0 >= t:
                break
            if not self.broken(fa, t0, t):
                return True
        return False

    holds = holds_at

    def fluent_candidates(self, name, t, known):
        arity = self.ec.rules.fluents[name].arity
        return [args for args in itertools.product(self.ec._entities, repeat=arity)
                if set(known) <= set(args)]


# ---------------------------------------------------------------------------
# functional front end

def holds_at(narrative, rules, fa, t, **kw) -> bool:
    return EventCalculus(narrative, rules, **kw).holds_at(fa, t)


def broken(narrative, rules, fa, t1, t3, **kw) -> bool:
    return EventCalculus(narrative, rules, **kw).broken(fa, t1, t3)


def holds_for(narrative, rules, fa, **kw) -> list:
    return EventCalculus(narrative, rules, **kw).holds_for(fa)

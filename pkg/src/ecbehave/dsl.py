"""Textual rule language for initiation/termination clauses.

A rule file declares its vocabulary (actions, fluents with value domains,
named numeric constants, place classes) and then lists clauses::

    action inactive/1
    fluent immobile/1 values true, false
    const immobile_min = 54
    places shop

    initiates inactive(P) -> immobile(P)=true
        when duration_run(inactive(P), immobile_min),
             far_from_all(P, shop, shop_far_distance),
             sometime_before(active(P));

Capitalised identifiers are variables. ``T`` is reserved for the implicit
time of the triggering event and may only appear in arithmetic. ``%``
starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

__all__ = [
    "Var", "Sym", "Pattern", "FluentPattern",
    "Num", "ConstRef", "TimeRef", "BinOp",
    "Happens", "HoldsAt", "Close", "FarFromAll", "DurationRun",
    "SometimeBefore", "Compare", "Clause", "FluentDecl", "RuleSet",
    "Span", "Diagnostic", "RuleError",
    "parse_rules", "validate_rules", "format_rules", "check_rules",
    "TIME_VAR",
]

TIME_VAR = "T"


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Span:
    line: int
    col: int
    length: int = 1

    def __str__(self):
        return f"{self.line}:{self.col}"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Sym:
    name: str

    def __str__(self):
        return self.name


Term = Union[Var, Sym]


@dataclass(frozen=True)
class Pattern:
    name: str
    args: tuple
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def variables(self) -> set:
        return {a.name for a in self.args if isinstance(a, Var)}

    def __str__(self):
        return f"{self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class FluentPattern:
    name: str
    args: tuple
    value: str
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def variables(self) -> set:
        return {a.name for a in self.args if isinstance(a, Var)}

    def __str__(self):
        return f"{self.name}({', '.join(map(str, self.args))})={self.value}"


@dataclass(frozen=True)
class Num:
    value: Union[int, float]

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class ConstRef:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TimeRef:
    def __str__(self):
        return TIME_VAR


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


NumExpr = Union[Num, ConstRef, TimeRef, BinOp]


def _not(negated: bool) -> str:
    return "not " if negated else ""


@dataclass(frozen=True)
class Happens:
    pattern: Pattern
    negated: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"{_not(self.negated)}happens({self.pattern})"


@dataclass(frozen=True)
class HoldsAt:
    fluent: FluentPattern
    negated: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"{_not(self.negated)}holdsAt({self.fluent})"


@dataclass(frozen=True)
class Close:
    a: Term
    b: Term
    distance: NumExpr
    negated: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"{_not(self.negated)}close({self.a}, {self.b}, {self.distance})"


@dataclass(frozen=True)
class FarFromAll:
    entity: Term
    place_class: str
    distance: NumExpr
    negated: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        return (f"{_not(self.negated)}far_from_all({self.entity}, "
                f"{self.place_class}, {self.distance})")


@dataclass(frozen=True)
class DurationRun:
    pattern: Pattern
    min_len: NumExpr
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"duration_run({self.pattern}, {self.min_len})"


@dataclass(frozen=True)
class SometimeBefore:
    pattern: Pattern
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"sometime_before({self.pattern})"


@dataclass(frozen=True)
class Compare:
    left: NumExpr
    op: str
    right: NumExpr
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


Condition = Union[Happens, HoldsAt, Close, FarFromAll, DurationRun,
                  SometimeBefore, Compare]


@dataclass(frozen=True)
class Clause:
    polarity: str  # "initiates" | "terminates"
    trigger: Pattern
    target: FluentPattern
    conditions: tuple = ()
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __str__(self):
        head = f"{self.polarity} {self.trigger} -> {self.target}"
        if self.conditions:
            head += " when " + ", ".join(map(str, self.conditions))
        return head + ";"


@dataclass(frozen=True)
class FluentDecl:
    arity: int
    values: tuple

    @property
    def boolean(self) -> bool:
        return set(self.values) == {"true", "false"}


@dataclass(frozen=True)
class RuleSet:
    actions: dict = field(default_factory=dict)      # name -> arity
    fluents: dict = field(default_factory=dict)      # name -> FluentDecl
    consts: dict = field(default_factory=dict)       # name -> number
    places: tuple = ()
    clauses: tuple = ()

    def with_consts(self, overrides: dict) -> "RuleSet":
        """Copy with the named constants replaced; unknown names are ignored."""
        consts = dict(self.consts)
        for name, value in overrides.items():
            if name in consts:
                consts[name] = value
        return RuleSet(self.actions, self.fluents, consts, self.places,
                       self.clauses)

    def domain(self, fluent: str) -> tuple:
        return self.fluents[fluent].values


# ---------------------------------------------------------------------------
# diagnostics

@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    span: Span
    message: str

    def __str__(self):
        return f"{self.span}: {self.severity}: {self.message}"


class RuleError(Exception):
    """Raised by :func:`parse_rules` when the text has errors."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(map(str, self.diagnostics)))


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<op>->|<=|>=|!=|[-+<>=(),;/])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | var | number | op | eof
    value: str
    span: Span


def tokenize(text: str):
    """Return ``(tokens, diagnostics)``; bad characters are reported and skipped."""
    tokens, diags = [], []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            diags.append(Diagnostic("error", Span(line, pos - line_start + 1),
                                    f"unexpected character {text[pos]!r}"))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(),
                                Span(line, pos - line_start + 1,
                                     m.end() - pos)))
        pos = m.end()
    tokens.append(Token("eof", "", Span(line, pos - line_start + 1, 0)))
    return tokens, diags


# ---------------------------------------------------------------------------
# parser

_DECL_WORDS = {"action", "fluent", "const", "places"}
_CLAUSE_WORDS = {"initiates", "terminates"}
_BUILTINS = {"happens", "holdsAt", "close", "far_from_all", "duration_run",
             "sometime_before"}
_NEGATABLE = {"happens", "holdsAt", "close", "far_from_all"}
_CMP = {"<", "<=", ">", ">=", "=", "!="}


class _SyntaxFail(Exception):
    pass


class _Parser:
    def __init__(self, text):
        self.tokens, self.diags = tokenize(text)
        self.i = 0
        self.actions, self.fluents, self.consts = {}, {}, {}
        self.places = []
        self.clauses = []

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, span, message):
        self.diags.append(Diagnostic("error", span, message))

    def fail(self, message, tok=None):
        tok = tok or self.tok
        shown = tok.value or "end of input"
        self.error(tok.span, f"{message}, found {shown!r}")
        raise _SyntaxFail

    def expect(self, kind, value=None) -> Token:
        tok = self.tok
        if tok.kind != kind or (value is not None and tok.value != value):
            self.fail(f"expected {value or kind}")
        self.i += 1
        return tok

    def accept(self, kind, value=None) -> Optional[Token]:
        tok = self.tok
        if tok.kind == kind and (value is None or tok.value == value):
            self.i += 1
            return tok
        return None

    def recover(self):
        # skip to just after ';' or to the next top-level keyword
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.kind == "op" and tok.value == ";":
                self.i += 1
                return
            if (tok.kind == "ident" and tok.span.col == 1
                    and tok.value in _DECL_WORDS | _CLAUSE_WORDS):
                return
            self.i += 1

    # top level
    def parse(self) -> RuleSet:
        while self.tok.kind != "eof":
            start = self.i
            try:
                tok = self.tok
                if tok.kind == "ident" and tok.value in _DECL_WORDS:
                    self.declaration()
                elif tok.kind == "ident" and tok.value in _CLAUSE_WORDS:
                    self.clause()
                else:
                    self.fail("expected a declaration or clause")
            except _SyntaxFail:
                if self.i == start:
                    self.i += 1
                self.recover()
        return RuleSet(self.actions, self.fluents, self.consts,
                       tuple(self.places), tuple(self.clauses))

    def declaration(self):
        word = self.expect("ident").value
        if word == "action":
            name = self.expect("ident")
            self.expect("op", "/")
            arity = self.expect("number")
            self.check_fresh(name)
            self.actions[name.value] = self.integer(arity)
        elif word == "fluent":
            name = self.expect("ident")
            self.expect("op", "/")
            arity = self.expect("number")
            self.expect("ident", "values")
            values = [self.expect("ident").value]
            while self.accept("op", ","):
                values.append(self.expect("ident").value)
            if len(set(values)) != len(values):
                self.error(name.span, f"duplicate value in domain of fluent "
                                      f"'{name.value}'")
            self.check_fresh(name)
            self.fluents[name.value] = FluentDecl(self.integer(arity),
                                                  tuple(values))
        elif word == "const":
            name = self.expect("ident")
            self.expect("op", "=")
            neg = bool(self.accept("op", "-"))
            value = self.number(self.expect("number"))
            if name.value in self.consts:
                self.error(name.span, f"constant '{name.value}' declared twice")
            self.consts[name.value] = -value if neg else value
        else:
            name = self.expect("ident")
            if name.value in self.places:
                self.error(name.span, f"place class '{name.value}' declared twice")
            else:
                self.places.append(name.value)

    def check_fresh(self, name: Token):
        if name.value in self.actions or name.value in self.fluents:
            self.error(name.span, f"'{name.value}' declared twice")

    def integer(self, tok: Token) -> int:
        if not tok.value.isdigit():
            self.error(tok.span, f"expected an integer arity, found {tok.value!r}")
            raise _SyntaxFail
        return int(tok.value)

    @staticmethod
    def number(tok: Token):
        text = tok.value
        if text.isdigit():
            return int(text)
        return float(text)

    # clauses
    def clause(self):
        kw = self.expect("ident")
        trigger = self.pattern()
        self.expect("op", "->")
        target = self.fassign()
        conds = []
        if self.accept("ident", "when"):
            conds.append(self.condition())
            while self.accept("op", ","):
                conds.append(self.condition())
        self.expect("op", ";")
        clause = Clause(kw.value, trigger, target, tuple(conds), kw.span)
        self.check_bindings(clause)
        self.clauses.append(clause)

    def args(self):
        self.expect("op", "(")
        args = []
        if not self.accept("op", ")"):
            args.append(self.term())
            while self.accept("op", ","):
                args.append(self.term())
            self.expect("op", ")")
        return tuple(args)

    def term(self) -> Term:
        tok = self.tok
        if tok.kind == "var":
            self.i += 1
            if tok.value == TIME_VAR:
                self.error(tok.span, f"'{TIME_VAR}' is reserved for time and "
                                     f"cannot be an entity argument")
            return Var(tok.value)
        if tok.kind == "ident":
            self.i += 1
            return Sym(tok.value)
        self.fail("expected a variable or entity name")

    def pattern(self) -> Pattern:
        name = self.expect("ident")
        if name.value not in self.actions:
            self.error(name.span, f"undeclared action '{name.value}'")
        return Pattern(name.value, self.args(), name.span)

    def fassign(self) -> FluentPattern:
        name = self.expect("ident")
        if name.value not in self.fluents:
            self.error(name.span, f"undeclared fluent '{name.value}'")
        args = self.args()
        self.expect("op", "=")
        value = self.tok
        if value.kind != "ident":
            self.fail("expected a fluent value (lower-case identifier)")
        self.i += 1
        return FluentPattern(name.value, args, value.value, name.span)

    def condition(self) -> Condition:
        start = self.tok
        negated = False
        if (start.kind == "ident" and start.value == "not"
                and self.peek().kind == "ident"
                and self.peek(2).value == "("):
            negated = True
            self.i += 1
        tok = self.tok
        if (tok.kind == "ident" and tok.value in _BUILTINS
                and self.peek().value == "("):
            if negated and tok.value not in _NEGATABLE:
                self.fail(f"'{tok.value}' cannot be negated", start)
            self.i += 1
            return getattr(self, "cond_" + tok.value)(negated, start.span)
        if negated:
            self.fail("expected happens, holdsAt, close or far_from_all "
                      "after 'not'")
        left = self.numexpr()
        op = self.tok
        if op.kind != "op" or op.value not in _CMP:
            self.fail("expected a comparison operator")
        self.i += 1
        right = self.numexpr()
        return Compare(left, op.value, right, start.span)

    def cond_happens(self, negated, span):
        self.expect("op", "(")
        p = self.pattern()
        self.expect("op", ")")
        return Happens(p, negated, span)

    def cond_holdsAt(self, negated, span):
        self.expect("op", "(")
        f = self.fassign()
        self.expect("op", ")")
        return HoldsAt(f, negated, span)

    def cond_close(self, negated, span):
        self.expect("op", "(")
        a = self.term()
        self.expect("op", ",")
        b = self.term()
        self.expect("op", ",")
        d = self.numexpr()
        self.expect("op", ")")
        return Close(a, b, d, negated, span)

    def cond_far_from_all(self, negated, span):
        self.expect("op", "(")
        e = self.term()
        self.expect("op", ",")
        cls = self.expect("ident")
        if cls.value not in self.places:
            self.error(cls.span, f"undeclared place class '{cls.value}'")
        self.expect("op", ",")
        d = self.numexpr()
        self.expect("op", ")")
        return FarFromAll(e, cls.value, d, negated, span)

    def cond_duration_run(self, negated, span):
        self.expect("op", "(")
        p = self.pattern()
        self.expect("op", ",")
        d = self.numexpr()
        self.expect("op", ")")
        return DurationRun(p, d, span)

    def cond_sometime_before(self, negated, span):
        self.expect("op", "(")
        p = self.pattern()
        self.expect("op", ")")
        return SometimeBefore(p, span)

    # arithmetic: term (('+'|'-') term)*
    def numexpr(self):
        left = self.numterm()
        while self.tok.kind == "op" and self.tok.value in ("+", "-"):
            op = self.tok.value
            self.i += 1
            left = BinOp(op, left, self.numterm())
        return left

    def numterm(self):
        tok = self.tok
        if tok.kind == "op" and tok.value == "-" and self.peek().kind == "number":
            self.i += 2
            return Num(-self.number(self.tokens[self.i - 1]))
        if tok.kind == "number":
            self.i += 1
            return Num(self.number(tok))
        if tok.kind == "ident":
            self.i += 1
            if tok.value not in self.consts:
                self.error(tok.span, f"undeclared constant '{tok.value}'")
            return ConstRef(tok.value)
        if tok.kind == "var":
            self.i += 1
            if tok.value != TIME_VAR:
                self.error(tok.span, f"entity variable '{tok.value}' used in "
                                     f"arithmetic; only '{TIME_VAR}' is numeric")
            return TimeRef()
        self.fail("expected a number, constant or 'T'")

    # variable safety: conditions are solved left to right
    def check_bindings(self, clause: Clause):
        bound = clause.trigger.variables()
        for cond in clause.conditions:
            needs, binds = _condition_vars(cond)
            missing = sorted(needs - bound)
            for name in missing:
                self.error(cond.span or clause.span,
                           f"unbound variable '{name}' in '{cond}'")
            bound |= binds
        for name in sorted(clause.target.variables() - bound):
            self.error(clause.target.span or clause.span,
                       f"unbound variable '{name}' in target '{clause.target}'")


def _term_vars(terms) -> set:
    return {t.name for t in terms if isinstance(t, Var)}


def _condition_vars(cond):
    """Return ``(must_be_bound, newly_bound)`` variable names for a condition."""
    if isinstance(cond, (Happens, HoldsAt)):
        names = (cond.pattern if isinstance(cond, Happens)
                 else cond.fluent).variables()
        return (names, set()) if cond.negated else (set(), names)
    if isinstance(cond, Close):
        names = _term_vars((cond.a, cond.b))
        return (names, set()) if cond.negated else (set(), names)
    if isinstance(cond, FarFromAll):
        return _term_vars((cond.entity,)), set()
    if isinstance(cond, (DurationRun, SometimeBefore)):
        return set(), cond.pattern.variables()
    return set(), set()


def parse_rules(text: str) -> RuleSet:
    """Parse rule text. Raises :class:`RuleError` carrying every diagnostic."""
    parser = _Parser(text)
    rules = parser.parse()
    errors = [d for d in parser.diags if d.severity == "error"]
    if errors:
        raise RuleError(sorted(errors, key=lambda d: (d.span.line, d.span.col)))
    return rules


# ---------------------------------------------------------------------------
# validation

def _numexprs(cond):
    if isinstance(cond, (Close, FarFromAll)):
        return [cond.distance]
    if isinstance(cond, DurationRun):
        return [cond.min_len]
    if isinstance(cond, Compare):
        return [cond.left, cond.right]
    return []


def _const_value(expr, consts):
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, ConstRef):
        return consts.get(expr.name)
    return None


def validate_rules(rules: RuleSet) -> list:
    """Check arities, value domains, threshold positivity and stratification.

    Returns a list of :class:`Diagnostic`; an empty list means the rules are
    fit for evaluation.
    """
    diags = []
    nowhere = Span(1, 1, 0)

    def err(node, msg):
        diags.append(Diagnostic("error", getattr(node, "span", None) or nowhere,
                                msg))

    for name, value in rules.consts.items():
        if not value > 0:
            err(None, f"constant '{name}' must be positive, got {value}")

    def check_action(p: Pattern):
        arity = rules.actions.get(p.name)
        if arity is None:
            err(p, f"undeclared action '{p.name}'")
        elif arity != len(p.args):
            err(p, f"action '{p.name}' takes {arity} argument(s), "
                   f"got {len(p.args)}")

    def check_fluent(f: FluentPattern):
        decl = rules.fluents.get(f.name)
        if decl is None:
            err(f, f"undeclared fluent '{f.name}'")
            return
        if decl.arity != len(f.args):
            err(f, f"fluent '{f.name}' takes {decl.arity} argument(s), "
                   f"got {len(f.args)}")
        if f.value not in decl.values:
            err(f, f"'{f.value}' is not a value of fluent '{f.name}' "
                   f"(values: {', '.join(decl.values)})")

    seen = set()
    edges = {}  # (fluent, value) -> {(fluent, value, holdsAt condition)}
    for clause in rules.clauses:
        if clause in seen:
            err(clause, f"duplicate clause '{clause}'")
        seen.add(clause)
        check_action(clause.trigger)
        check_fluent(clause.target)
        node = (clause.target.name, clause.target.value)
        for cond in clause.conditions:
            if isinstance(cond, (Happens, DurationRun, SometimeBefore)):
                check_action(cond.pattern)
            elif isinstance(cond, HoldsAt):
                check_fluent(cond.fluent)
                dep = (cond.fluent.name, cond.fluent.value)
                edges.setdefault(node, []).append((dep, cond))
            elif isinstance(cond, FarFromAll) and cond.place_class not in rules.places:
                err(cond, f"undeclared place class '{cond.place_class}'")
            if isinstance(cond, (Close, FarFromAll, DurationRun)):
                for expr in _numexprs(cond):
                    value = _const_value(expr, rules.consts)
                    if value is None and not isinstance(expr, ConstRef):
                        err(cond, f"threshold in '{cond}' must be a number "
                                  f"or constant")
                    elif value is not None and not value > 0:
                        err(cond, f"threshold in '{cond}' must be positive, "
                                  f"got {value}")
            for expr in _numexprs(cond):
                for ref in _const_refs(expr):
                    if ref not in rules.consts:
                        err(cond, f"undeclared constant '{ref}'")

    diags.extend(_stratification(edges))
    return diags


def _const_refs(expr):
    if isinstance(expr, ConstRef):
        yield expr.name
    elif isinstance(expr, BinOp):
        yield from _const_refs(expr.left)
        yield from _const_refs(expr.right)


def _stratification(edges):
    # a cycle among fluent assignments linked by holdsAt conditions
    diags, state = [], {}

    def visit(node, path):
        state[node] = "open"
        for dep, cond in edges.get(node, ()):
            if state.get(dep) == "open":
                cycle = path[path.index(dep):] + [dep] if dep in path else [node, dep]
                shown = " -> ".join(f"{f}={v}" for f, v in cycle)
                diags.append(Diagnostic(
                    "error", cond.span or Span(1, 1, 0),
                    f"stratification: '{cond.fluent}' depends on itself "
                    f"({shown})"))
            elif dep not in state:
                visit(dep, path + [dep])
        state[node] = "done"

    for node in sorted(edges):
        if node not in state:
            visit(node, [node])
    return diags


def check_rules(text: str) -> list:
    """Parse and validate; never raises for bad input."""
    try:
        rules = parse_rules(text)
    except RuleError as exc:
        return exc.diagnostics
    return validate_rules(rules)


# ---------------------------------------------------------------------------
# formatting

def format_rules(rules: RuleSet) -> str:
    """Canonical text form; ``parse_rules(format_rules(r)) == r``."""
    out = ["% event calculus rules"]
    for name, arity in rules.actions.items():
        out.append(f"action {name}/{arity}")
    for name, decl in rules.fluents.items():
        out.append(f"fluent {name}/{decl.arity} values {', '.join(decl.values)}")
    for name, value in rules.consts.items():
        out.append(f"const {name} = {_format_number(value)}")
    for name in rules.places:
        out.append(f"places {name}")
    if rules.clauses:
        out.append("")
    for clause in rules.clauses:
        out.append(_format_clause(clause))
    return "\n".join(out) + "\n"


def _format_number(value) -> str:
    return repr(value)


def _format_clause(clause: Clause) -> str:
    head = f"{clause.polarity} {clause.trigger} -> {clause.target}"
    if not clause.conditions:
        return head + ";"
    conds = [str(c) for c in clause.conditions]
    return head + "\n    when " + ",\n         ".join(conds) + ";"


def iter_conditions(rules: RuleSet) -> Iterator:
    for clause in rules.clauses:
        yield from clause.conditions

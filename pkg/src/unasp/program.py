"""Abstract syntax, text format and grounding of weighted programs.

Surface syntax::

    % comment
    r11: p :- q, r @ [0.7,0.9].
    r14: -p :- t.
    s @ [1,1].
    q(X) <- e(X, Y), not b(Y), [0.5,0.5].

``-`` is classical negation, ``not`` negation as failure, ``@`` attaches the
rule weight (default ``[1,1]``).  Unlabelled rules are numbered ``r1, r2, ...``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .interval import TRUE, TruthInterval, format_number, interval


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GroundingError(ValueError):
    pass


def is_variable(term: str) -> bool:
    return term[:1].isupper() or term[:1] == "_"


@dataclass(frozen=True, order=True)
class Atom:
    predicate: str
    args: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.predicate:
            raise ValueError("atom needs a predicate name")

    @property
    def is_ground(self) -> bool:
        return not any(is_variable(t) for t in self.args)

    def substitute(self, binding: Mapping[str, str]) -> "Atom":
        return Atom(self.predicate, tuple(binding.get(t, t) for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


@dataclass(frozen=True, order=True)
class Literal:
    atom: Atom
    negated: bool = False

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.negated)

    def __str__(self) -> str:
        return ("-" if self.negated else "") + str(self.atom)


LITERAL = "literal"
NAF = "naf"
CONSTANT = "constant"


@dataclass(frozen=True)
class BodyElement:
    kind: str
    literal: Literal | None = None
    constant: TruthInterval | None = None

    def __post_init__(self) -> None:
        if self.kind in (LITERAL, NAF):
            ok = self.literal is not None and self.constant is None
        elif self.kind == CONSTANT:
            ok = self.constant is not None and self.literal is None
        else:
            raise ValueError(f"unknown body element kind {self.kind!r}")
        if not ok:
            raise ValueError(f"malformed {self.kind} body element")

    @classmethod
    def lit(cls, literal: Literal) -> "BodyElement":
        return cls(LITERAL, literal=literal)

    @classmethod
    def naf(cls, literal: Literal) -> "BodyElement":
        return cls(NAF, literal=literal)

    @classmethod
    def const(cls, value: TruthInterval) -> "BodyElement":
        return cls(CONSTANT, constant=value)

    def __str__(self) -> str:
        if self.kind == CONSTANT:
            return str(self.constant)
        prefix = "not " if self.kind == NAF else ""
        return prefix + str(self.literal)


@dataclass(frozen=True)
class Rule:
    id: str
    head: Literal
    body: tuple[BodyElement, ...] = ()
    weight: TruthInterval = TRUE

    def __post_init__(self) -> None:
        if not self.weight.is_regular:
            raise ValueError(f"rule {self.id}: weight must be a regular interval")

    @property
    def is_fact(self) -> bool:
        return all(e.kind == CONSTANT for e in self.body)

    @property
    def is_positive(self) -> bool:
        return all(e.kind != NAF for e in self.body)

    def atoms(self) -> Iterator[Atom]:
        yield self.head.atom
        for e in self.body:
            if e.literal is not None:
                yield e.literal.atom

    def literals(self) -> Iterator[Literal]:
        yield self.head
        for e in self.body:
            if e.literal is not None:
                yield e.literal

    def with_weight(self, weight: TruthInterval) -> "Rule":
        return Rule(self.id, self.head, self.body, weight)

    def with_id(self, rule_id: str) -> "Rule":
        return Rule(rule_id, self.head, self.body, self.weight)

    def same_shape(self, other: "Rule") -> bool:
        return (self.id, self.head, self.body) == (other.id, other.head, other.body)

    def __str__(self) -> str:
        text = f"{self.id}: {self.head}"
        if self.body:
            text += " :- " + ", ".join(str(e) for e in self.body)
        return text + f" @ {self.weight}."


@dataclass(frozen=True)
class Program:
    """An ordered, label-indexed collection of rules.

    ``provenance`` maps rule ids to a tag naming the base the rule came from;
    it is only populated on combined programs.
    """

    rules: tuple[Rule, ...] = ()
    provenance: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        seen = set()
        for r in self.rules:
            if r.id in seen:
                raise ValueError(f"duplicate rule id {r.id!r}")
            seen.add(r.id)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, rule_id: object) -> bool:
        return rule_id in self.ids

    def __getitem__(self, rule_id: str) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.rules)

    def tag(self, rule_id: str) -> str | None:
        return dict(self.provenance).get(rule_id)

    def tagged(self, tag: str) -> "Program":
        tags = dict(self.provenance)
        return Program(tuple(r for r in self.rules if tags.get(r.id) == tag))

    def without(self, rule_ids: Iterable[str]) -> "Program":
        drop = set(rule_ids)
        tags = tuple(t for t in self.provenance if t[0] not in drop)
        return Program(tuple(r for r in self.rules if r.id not in drop), tags)

    def restricted(self, rule_ids: Iterable[str]) -> "Program":
        keep = set(rule_ids)
        return self.without(i for i in self.ids if i not in keep)

    def union(self, other: "Program") -> "Program":
        """Set union by rule identity; a clash of ids with different content is an error."""
        mine = {r.id: r for r in self.rules}
        extra = []
        for r in other.rules:
            if r.id in mine:
                if mine[r.id] != r:
                    raise ValueError(f"rule id {r.id!r} names two different rules")
                continue
            extra.append(r)
        return Program(self.rules + tuple(extra))

    def rule_set(self) -> frozenset[Rule]:
        return frozenset(self.rules)

    def atoms_in_order(self) -> list[Atom]:
        seen: dict[Atom, None] = {}
        for r in self.rules:
            for a in r.atoms():
                seen.setdefault(a)
        return list(seen)

    def atom_base(self) -> frozenset[Atom]:
        return frozenset(self.atoms_in_order())

    def literals(self) -> frozenset[Literal]:
        base = self.atom_base()
        return frozenset(Literal(a, n) for a in base for n in (False, True))

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for r in self.rules for a in r.atoms())

    @property
    def is_positive(self) -> bool:
        return all(r.is_positive for r in self.rules)

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)


def atom_base(program: Program) -> frozenset[Atom]:
    return program.atom_base()


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<arrow>:-|<-)
  | (?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[:,.@\[\]()\-+])
""", re.VERBOSE)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> _Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("punct", "arrow"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def ident(self, what: str) -> str:
        if self.tok.kind != "ident":
            raise self.error(f"expected {what}, found {self.tok.text or 'end of input'!r}")
        text = self.tok.text
        self.i += 1
        return text

    def program(self) -> Program:
        parsed: list[tuple[str | None, Literal, tuple[BodyElement, ...], TruthInterval]] = []
        seen: set[str] = set()
        while self.tok.kind != "eof":
            start = self.tok
            label = None
            if self.tok.kind == "ident" and self.peek().text == ":" and self.peek().kind == "punct":
                label = self.tok.text
                if label in seen:
                    raise self.error(f"duplicate rule label {label!r}", start)
                seen.add(label)
                self.i += 2
            head = self.literal()
            body: list[BodyElement] = []
            if self.tok.kind == "arrow":
                self.i += 1
                body.append(self.element())
                while self.accept(","):
                    body.append(self.element())
            weight = TRUE
            if self.accept("@"):
                weight = self.interval()
            self.expect(".")
            parsed.append((label, head, tuple(body), weight))
        # unlabelled rules are numbered afterwards so they never take an explicit label
        counter = 0
        rules = []
        for label, head, body, weight in parsed:
            if label is None:
                counter += 1
                while f"r{counter}" in seen:
                    counter += 1
                label = f"r{counter}"
            rules.append(Rule(label, head, body, weight))
        return Program(tuple(rules))

    def literal(self) -> Literal:
        negated = self.accept("-")
        tok = self.tok
        name = self.ident("predicate name")
        if name == "not" or is_variable(name):
            raise self.error(f"{name!r} cannot be used as a predicate", tok)
        args: list[str] = []
        if self.accept("("):
            args.append(self.term())
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
        return Literal(Atom(name, tuple(args)), negated)

    def term(self) -> str:
        if self.tok.kind in ("ident", "num"):
            text = self.tok.text
            self.i += 1
            return text
        raise self.error(f"expected a term, found {self.tok.text or 'end of input'!r}")

    def element(self) -> BodyElement:
        if self.tok.text == "[" and self.tok.kind == "punct":
            return BodyElement.const(self.interval())
        if self.tok.kind == "ident" and self.tok.text == "not" and self.peek().text != "(":
            self.i += 1
            return BodyElement.naf(self.literal())
        return BodyElement.lit(self.literal())

    def number(self) -> float:
        sign = -1.0 if self.accept("-") else 1.0
        if not sign < 0:
            self.accept("+")
        if self.tok.kind != "num":
            raise self.error(f"expected a number, found {self.tok.text or 'end of input'!r}")
        value = sign * float(self.tok.text)
        self.i += 1
        return value

    def interval(self) -> TruthInterval:
        start = self.tok
        self.expect("[")
        lo = self.number()
        self.expect(",")
        hi = self.number()
        self.expect("]")
        try:
            return interval(lo, hi)
        except ValueError as exc:
            raise self.error(str(exc), start) from None


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_interval(text: str) -> TruthInterval:
    p = _Parser(text)
    value = p.interval()
    if p.tok.kind != "eof":
        raise p.error("trailing input after interval")
    return value


def format_program(program: Program) -> str:
    return str(program)


# -- grounding --------------------------------------------------------------

def _rule_variables(rule: Rule) -> list[str]:
    seen: dict[str, None] = {}
    for a in rule.atoms():
        for t in a.args:
            if is_variable(t):
                seen.setdefault(t)
    return list(seen)


def _substitute(rule: Rule, binding: Mapping[str, str], rule_id: str) -> Rule:
    def lit(l: Literal) -> Literal:
        return Literal(l.atom.substitute(binding), l.negated)

    body = tuple(
        e if e.literal is None else BodyElement(e.kind, literal=lit(e.literal))
        for e in rule.body
    )
    return Rule(rule_id, lit(rule.head), body, rule.weight)


def ground(program: Program, constants: Iterable[str] = ()) -> Program:
    """Replace every rule by all its instances over ``constants``.

    Constants already occurring in the program are always included.
    """
    universe = set(constants)
    for r in program:
        for a in r.atoms():
            universe.update(t for t in a.args if not is_variable(t))
    universe_sorted = sorted(universe)
    out: list[Rule] = []
    for r in program:
        variables = _rule_variables(r)
        if not variables:
            out.append(r)
            continue
        if not universe_sorted:
            raise GroundingError(f"rule {r.id} has variables but there are no constants")
        for combo in itertools.product(universe_sorted, repeat=len(variables)):
            out.append(_substitute(r, dict(zip(variables, combo)), f"{r.id}_{'_'.join(combo)}"))
    try:
        return Program(tuple(out), program.provenance)
    except ValueError as exc:
        raise GroundingError(str(exc)) from None


def rule_text(rule: Rule) -> str:
    return str(rule)


__all__ = [
    "Atom", "Literal", "BodyElement", "Rule", "Program", "ParseError", "GroundingError",
    "parse_program", "parse_interval", "format_program", "ground", "atom_base",
    "LITERAL", "NAF", "CONSTANT", "format_number",
]

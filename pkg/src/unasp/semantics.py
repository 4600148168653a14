"""Interpretations, the k-minimal model of a reduced program, and answer sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from . import interval as iv
from .interval import EPS, TruthInterval
from .program import CONSTANT, NAF, Atom, BodyElement, Literal, Program, Rule
from .transform import TransformedProgram, eval_expr, transform

INNER_TOL = 1e-9
OUTER_TOL = 1e-6
MAX_SWEEPS = 10_000
MAX_OUTER = 1_000


class NonConvergence(RuntimeError):
    def __init__(self, unstable: Iterable[Atom]):
        self.unstable = frozenset(unstable)
        names = ", ".join(sorted(str(a) for a in self.unstable))
        super().__init__(f"fixpoint iteration did not converge; unstable atoms: {names}")


class NoAnswerSet(RuntimeError):
    """The reduct iteration oscillates; the program has no answer set."""

    def __init__(self, period: int | None = None):
        self.period = period
        super().__init__("no answer set found (reduct iteration oscillates)")


class Interpretation(Mapping[Literal, TruthInterval]):
    """Total assignment of truth intervals to literals.

    Literals that were never assigned read as [0,1].
    """

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[Literal, TruthInterval] | None = None):
        self._values = dict(values or {})

    @classmethod
    def from_atoms(cls, values: Mapping[Atom, TruthInterval]) -> "Interpretation":
        """Positive values given per atom; negative literals get the classical negation."""
        out = {}
        for atom, v in values.items():
            out[Literal(atom)] = v
            out[Literal(atom, True)] = iv.cneg(v)
        return cls(out)

    def __getitem__(self, literal: Literal) -> TruthInterval:
        return self._values.get(literal, iv.UNKNOWN)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return f"Interpretation({self.to_json()})"

    def atoms(self) -> frozenset[Atom]:
        return frozenset(l.atom for l in self._values)

    def value(self, atom: Atom) -> TruthInterval:
        return self[Literal(atom)]

    def close_to(self, other: "Interpretation", tol: float = OUTER_TOL) -> bool:
        keys = set(self._values) | set(other._values)
        return all(self[k].close_to(other[k], tol) for k in keys)

    def max_change(self, other: "Interpretation") -> float:
        keys = set(self._values) | set(other._values)
        return max((max(abs(self[k].lo - other[k].lo), abs(self[k].hi - other[k].hi))
                    for k in keys), default=0.0)

    def to_json(self) -> dict[str, list[float]]:
        return {str(l): self[l].to_json() for l in sorted(self._values)}


def all_unknown(atoms: Iterable[Atom]) -> Interpretation:
    return Interpretation.from_atoms({a: iv.UNKNOWN for a in atoms})


def is_inconsistent(interp: Interpretation, eps: float = EPS) -> bool:
    """Some atom and its negation are equally certain but not complementary in truth."""
    for atom in interp.atoms():
        a, na = interp[Literal(atom)], interp[Literal(atom, True)]
        if not (a.is_regular and na.is_regular):
            return True
        if abs(a.width - na.width) <= eps and abs(a.midpoint - (1 - na.midpoint)) > eps:
            return True
    return False


def contradiction_atoms(interp: Interpretation) -> frozenset[Atom]:
    return frozenset(l.atom for l, v in interp.items() if not v.is_regular)


def element_value(el: BodyElement, interp: Mapping[Literal, TruthInterval]) -> TruthInterval:
    if el.kind == CONSTANT:
        return el.constant
    if el.kind == NAF:
        return iv.naf(interp[el.literal])
    return interp[el.literal]


def body_value(rule: Rule, interp: Mapping[Literal, TruthInterval]) -> TruthInterval:
    return iv.tnorm_all(element_value(e, interp) for e in rule.body)


def satisfies(interp: Interpretation, rule: Rule, eps: float = EPS) -> bool:
    """Head equals, is strictly more certain than, or strictly truer than body ∧ weight."""
    head = interp[rule.head]
    derived = iv.tnorm(body_value(rule, interp), rule.weight)
    if not (head.is_regular and derived.is_regular):
        return False
    if head.close_to(derived, eps):
        return True
    if head.width < derived.width - eps:
        return True
    return head.midpoint > derived.midpoint + eps


def is_model(interp: Interpretation, program: Program) -> bool:
    return all(satisfies(interp, r) for r in program)


def reduct(program: Program, interp: Interpretation) -> Program:
    """Replace each ``not b`` by the constant ``not I(b)``."""
    if program.is_positive:
        return program
    rules = []
    for r in program:
        if r.is_positive:
            rules.append(r)
            continue
        body = tuple(
            BodyElement.const(iv.naf(interp[e.literal])) if e.kind == NAF else e
            for e in r.body
        )
        rules.append(Rule(r.id, r.head, body, r.weight))
    return Program(tuple(rules), program.provenance)


def _sweep(tp: TransformedProgram, current: Interpretation, xi: float) -> Interpretation:
    values = {}
    for eq in tp.equations:
        v = eval_expr(eq.expr, current.__getitem__, xi)
        values[eq.head] = v
        values[eq.head.complement()] = iv.cneg(v)
    return Interpretation(values)


def k_minimal_model(tp: TransformedProgram, xi: float = iv.XI,
                    tol: float = INNER_TOL, max_sweeps: int = MAX_SWEEPS) -> Interpretation:
    """Jacobi iteration of the equation system from the all-[0,1] interpretation."""
    if tp.has_naf:
        raise ValueError("k_minimal_model needs a reduced (naf-free) program")
    current = all_unknown(tp.atoms())
    for _ in range(max_sweeps):
        nxt = _sweep(tp, current, xi)
        if nxt.max_change(current) < tol:
            return nxt
        current = nxt
    last = _sweep(tp, current, xi)
    unstable = {l.atom for l in last if not last[l].close_to(current[l], tol)}
    raise NonConvergence(unstable)


@dataclass(frozen=True)
class AnswerSet:
    interpretation: Interpretation
    consistent: bool
    contradiction_atoms: frozenset[Atom]

    def __getitem__(self, literal: Literal) -> TruthInterval:
        return self.interpretation[literal]

    def value(self, atom: Atom) -> TruthInterval:
        return self.interpretation.value(atom)

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "values": self.interpretation.to_json(),
            "contradictions": sorted(str(a) for a in self.contradiction_atoms),
        }


def _answer_set(program: Program, xi: float) -> AnswerSet:
    atoms = program.atoms_in_order()
    current = all_unknown(atoms)
    history = [current]
    for _ in range(MAX_OUTER):
        tp, _table = transform(reduct(program, current))
        nxt = k_minimal_model(tp, xi)
        if nxt.close_to(current, OUTER_TOL):
            bad = contradiction_atoms(nxt)
            return AnswerSet(nxt, not bad and not is_inconsistent(nxt), bad)
        for k, old in enumerate(history[:-1]):
            if nxt.close_to(old, OUTER_TOL):
                raise NoAnswerSet(period=len(history) - k)
        history.append(nxt)
        current = nxt
    raise NoAnswerSet()


@lru_cache(maxsize=65536)
def _cached(program: Program, xi: float) -> AnswerSet | NoAnswerSet:
    try:
        return _answer_set(program, xi)
    except NoAnswerSet as exc:
        return exc


def answer_sets(program: Program, xi: float = iv.XI) -> AnswerSet:
    """The answer set of a ground program.

    Raises :class:`NoAnswerSet` when the reduct iteration has no fixpoint.
    """
    result = _cached(program, xi)
    if isinstance(result, NoAnswerSet):
        raise NoAnswerSet(result.period)
    return result


def is_consistent(program: Program, xi: float = iv.XI) -> bool:
    try:
        return answer_sets(program, xi).consistent
    except (NoAnswerSet, NonConvergence):
        return False


def supportedness_residual(program: Program, interp: Interpretation,
                           xi: float = iv.XI) -> float:
    """Largest gap between a literal's value and its equation evaluated at ``interp``."""
    tp, _ = transform(reduct(program, interp))
    worst = 0.0
    for eq in tp.equations:
        v = eval_expr(eq.expr, interp.__getitem__, xi)
        for lit, expect in ((eq.head, v), (eq.head.complement(), iv.cneg(v))):
            got = interp[lit]
            worst = max(worst, abs(got.lo - expect.lo), abs(got.hi - expect.hi))
    return worst

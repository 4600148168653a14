"""Equation form of a program, its transformation table, and resolution trees.

Every atom of the program gets exactly one equation.  Rules sharing a head
are combined with the t-conorm; if both an atom and its classical negation
head rules, the two sides meet in the knowledge aggregation, with the
negative side negated first.  Atoms that head no rule are pinned to [0,1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from . import interval as iv
from .interval import TruthInterval
from .program import CONSTANT, NAF, Atom, Literal, Program, Rule


# -- expressions ------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: TruthInterval

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Ref:
    literal: Literal

    def __str__(self) -> str:
        return str(self.literal)


@dataclass(frozen=True)
class And:
    children: tuple

    def __str__(self) -> str:
        return " ∧ ".join(_wrap(c) for c in self.children)


@dataclass(frozen=True)
class Or:
    children: tuple

    def __str__(self) -> str:
        return " ∨ ".join(_wrap(c) for c in self.children)


@dataclass(frozen=True)
class KAgg:
    left: object
    right: object

    def __str__(self) -> str:
        return f"{_wrap(self.left)} ⊗k {_wrap(self.right)}"


@dataclass(frozen=True)
class CNeg:
    child: object

    def __str__(self) -> str:
        return "¬" + _wrap(self.child)


@dataclass(frozen=True)
class Naf:
    child: object

    def __str__(self) -> str:
        return "not " + _wrap(self.child)


BodyExpr = Const | Ref | And | Or | KAgg | CNeg | Naf


def _wrap(e) -> str:
    if isinstance(e, (And, Or, KAgg)):
        return f"({e})"
    return str(e)


def eval_expr(e, lookup: Callable[[Literal], TruthInterval] | Mapping,
              xi: float = iv.XI) -> TruthInterval:
    """Evaluate bottom-up; ``lookup`` maps literals to values (callable or mapping)."""
    get = lookup if callable(lookup) else lookup.__getitem__
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Ref):
        return get(e.literal)
    if isinstance(e, And):
        return iv.tnorm_all(eval_expr(c, get, xi) for c in e.children)
    if isinstance(e, Or):
        return iv.tconorm_all(eval_expr(c, get, xi) for c in e.children)
    if isinstance(e, KAgg):
        return iv.k_aggregate(eval_expr(e.left, get, xi), eval_expr(e.right, get, xi), xi)
    if isinstance(e, CNeg):
        return iv.cneg(eval_expr(e.child, get, xi))
    if isinstance(e, Naf):
        return iv.naf(eval_expr(e.child, get, xi))
    raise TypeError(f"not an expression: {e!r}")


def literal_refs(e) -> list[Literal]:
    """Literal references in left-to-right order."""
    if isinstance(e, Ref):
        return [e.literal]
    if isinstance(e, (And, Or)):
        return [l for c in e.children for l in literal_refs(c)]
    if isinstance(e, KAgg):
        return literal_refs(e.left) + literal_refs(e.right)
    if isinstance(e, (CNeg, Naf)):
        return literal_refs(e.child)
    return []


def substitute(e, replace: Callable[[Literal], object]):
    if isinstance(e, Ref):
        return replace(e.literal)
    if isinstance(e, And):
        return And(tuple(substitute(c, replace) for c in e.children))
    if isinstance(e, Or):
        return Or(tuple(substitute(c, replace) for c in e.children))
    if isinstance(e, KAgg):
        return KAgg(substitute(e.left, replace), substitute(e.right, replace))
    if isinstance(e, CNeg):
        return CNeg(substitute(e.child, replace))
    if isinstance(e, Naf):
        return Naf(substitute(e.child, replace))
    return e


def rule_expr(rule: Rule):
    """``weight ∧ body``; a [1,1] weight in front of a non-empty body is left out."""
    parts = []
    if not rule.body or rule.weight != iv.TRUE:
        parts.append(Const(rule.weight))
    for el in rule.body:
        if el.kind == CONSTANT:
            parts.append(Const(el.constant))
        elif el.kind == NAF:
            parts.append(Naf(Ref(el.literal)))
        else:
            parts.append(Ref(el.literal))
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _disjunction(rules: list[Rule]):
    exprs = [rule_expr(r) for r in rules]
    return exprs[0] if len(exprs) == 1 else Or(tuple(exprs))


# -- transformed program ----------------------------------------------------

@dataclass(frozen=True)
class Equation:
    id: str
    head: Literal
    expr: object
    sources: tuple[str, ...]
    case: str

    def __str__(self) -> str:
        return f"{self.id}: {self.head} ⟵ {self.expr}"


@dataclass(frozen=True)
class TransformationTable:
    rows: tuple[tuple[str, frozenset[str]], ...]

    def sources(self, equation_id: str) -> frozenset[str]:
        for eid, src in self.rows:
            if eid == equation_id:
                return src
        raise KeyError(equation_id)

    def __str__(self) -> str:
        return "\n".join(f"{eid}\t{', '.join(sorted(src)) or '-'}" for eid, src in self.rows)


@dataclass(frozen=True)
class TransformedProgram:
    """One equation per atom, keyed by atom.

    The equation computes ``head``; the complementary literal of the same
    atom always takes the classical negation of that value.
    """

    equations: tuple[Equation, ...]
    _by_atom: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_atom", {eq.head.atom: eq for eq in self.equations})

    def equation_for(self, target: Literal | Atom) -> Equation:
        atom = target.atom if isinstance(target, Literal) else target
        return self._by_atom[atom]

    def __contains__(self, target) -> bool:
        atom = target.atom if isinstance(target, Literal) else target
        return atom in self._by_atom

    def atoms(self) -> list[Atom]:
        return [eq.head.atom for eq in self.equations]

    @property
    def has_naf(self) -> bool:
        return any(isinstance(n, Naf) for eq in self.equations for n in _walk(eq.expr))

    def __str__(self) -> str:
        return "\n".join(str(eq) for eq in self.equations)


def _walk(e):
    yield e
    if isinstance(e, (And, Or)):
        for c in e.children:
            yield from _walk(c)
    elif isinstance(e, KAgg):
        yield from _walk(e.left)
        yield from _walk(e.right)
    elif isinstance(e, (CNeg, Naf)):
        yield from _walk(e.child)


def transform(program: Program) -> tuple[TransformedProgram, TransformationTable]:
    pos: dict[Atom, list[Rule]] = {}
    neg: dict[Atom, list[Rule]] = {}
    head_order: dict[Atom, None] = {}
    for r in program:
        (neg if r.head.negated else pos).setdefault(r.head.atom, []).append(r)
        head_order.setdefault(r.head.atom)
    order = list(head_order) + [a for a in program.atoms_in_order() if a not in head_order]

    equations = []
    for n, atom in enumerate(order, start=1):
        eid = f"r{n}T"
        p_rules, n_rules = pos.get(atom, []), neg.get(atom, [])
        if p_rules and n_rules:
            expr = KAgg(_disjunction(p_rules), CNeg(_disjunction(n_rules)))
            eq = Equation(eid, Literal(atom), expr, tuple(r.id for r in p_rules + n_rules), "iii")
        elif p_rules or n_rules:
            rules = p_rules or n_rules
            case = "i" if len(rules) == 1 else "ii"
            eq = Equation(eid, Literal(atom, not p_rules), _disjunction(rules),
                          tuple(r.id for r in rules), case)
        else:
            eq = Equation(eid, Literal(atom), Const(iv.UNKNOWN), (), "iv")
        equations.append(eq)
    table = TransformationTable(tuple((eq.id, frozenset(eq.sources)) for eq in equations))
    return TransformedProgram(tuple(equations)), table


# -- resolution trees -------------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    atom: Atom
    equation_id: str | None
    expr: object
    children: tuple["TreeNode", ...] = ()
    cycle: bool = False
    head_negated: bool = False

    def expanded(self):
        """The node's expression with every literal replaced by its subtree."""
        if self.cycle:
            return self.expr
        subs = {c.atom: c for c in self.children}

        def replace(lit: Literal):
            child = subs.get(lit.atom)
            if child is None or child.cycle:
                return Ref(lit)
            inner = child.expanded()
            return inner if lit.negated == child.head_negated else CNeg(inner)

        return substitute(self.expr, replace)

    @property
    def literal(self) -> Literal:
        return Literal(self.atom, self.head_negated)

    def to_json(self) -> dict:
        return {
            "literal": str(self.literal),
            "equation": self.equation_id,
            "expr": "cycle" if self.cycle else str(self.expr),
            "children": [c.to_json() for c in self.children],
        }

    def lines(self, depth: int = 0) -> list[str]:
        pad = "  " * depth
        if self.cycle:
            out = [f"{pad}{self.atom} ↺ (cycle)"]
        else:
            out = [f"{pad}{self.equation_id}: {self.literal} ⟵ {self.expr}"]
        for c in self.children:
            out.extend(c.lines(depth + 1))
        return out


@dataclass(frozen=True)
class ResolutionTree:
    root: TreeNode
    used: frozenset[str]

    def text(self) -> str:
        return "\n".join(self.root.lines())

    def to_json(self) -> dict:
        return self.root.to_json()

    def leaf_expression(self):
        return self.root.expanded()


def resolution_tree(tp: TransformedProgram, target: Literal | Atom) -> ResolutionTree:
    """Expand the target's equation depth-first, left to right, until only
    constants or cycle markers remain."""
    if target not in tp:
        raise KeyError(f"no equation for {target}")
    memo: dict[Atom, tuple[TreeNode, frozenset[str], bool]] = {}

    def build(atom: Atom, ancestors: frozenset[Atom]) -> tuple[TreeNode, frozenset[str], bool]:
        if atom in ancestors:
            return TreeNode(atom, None, Ref(Literal(atom)), cycle=True), frozenset(), True
        if atom in memo:
            return memo[atom]
        eq = tp.equation_for(atom)
        children = []
        used = {eq.id}
        cyclic = False
        seen: set[Atom] = set()
        for lit in literal_refs(eq.expr):
            if lit.atom in seen:
                continue
            seen.add(lit.atom)
            child, child_used, child_cyclic = build(lit.atom, ancestors | {atom})
            children.append(child)
            used |= child_used
            cyclic = cyclic or child_cyclic
        node = TreeNode(atom, eq.id, eq.expr, tuple(children), head_negated=eq.head.negated)
        result = (node, frozenset(used), cyclic)
        if not cyclic:
            memo[atom] = result
        return result

    atom = target.atom if isinstance(target, Literal) else target
    root, used, _ = build(atom, frozenset())
    return ResolutionTree(root, used)


def rules_in_derivation(tree: ResolutionTree, table: TransformationTable) -> frozenset[str]:
    out: set[str] = set()
    for eid in tree.used:
        out |= table.sources(eid)
    return frozenset(out)


def reachable_equations(tp: TransformedProgram, target: Literal | Atom) -> frozenset[str]:
    """Equation ids reachable from ``target`` in the dependency graph (plain DFS)."""
    start = target.atom if isinstance(target, Literal) else target
    stack, seen = [start], set()
    while stack:
        a = stack.pop()
        if a in seen:
            continue
        seen.add(a)
        stack.extend(l.atom for l in literal_refs(tp.equation_for(a).expr))
    return frozenset(tp.equation_for(a).id for a in seen)


def used_equations(trees: Iterable[ResolutionTree]) -> frozenset[str]:
    out: set[str] = set()
    for t in trees:
        out |= t.used
    return frozenset(out)

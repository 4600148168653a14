"""Base revision by removed sets.

``revise(p, q)`` keeps every rule of the new base ``q`` and deletes a small
set of rules from the old base ``p`` so that the combined program has a
consistent answer set.  Rules of ``p`` and ``q`` are combined with
:func:`modified_union`, which widens the weights of rules that gain
exceptions from the other base.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import interval as iv
from .interval import CORRECTED, DISTANCE_VARIANTS, EPS, TruthInterval
from .program import Atom, Program, Rule
from .semantics import (AnswerSet, Interpretation, NoAnswerSet, NonConvergence,
                        answer_sets)
from .transform import resolution_tree, rules_in_derivation, transform

P_TAG = "P"
Q_TAG = "Q"
EXHAUSTIVE_LIMIT = 12
MAX_COMBINATIONS = 4096


class EmptyPRS(RuntimeError):
    def __init__(self, atom: Atom, cap: int):
        self.atom = atom
        self.cap = cap
        super().__init__(f"no removal of at most {cap} rules of the old base "
                         f"resolves the contradiction on {atom}")


class RevisionFailure(RuntimeError):
    def __init__(self, message: str, cause: Exception | None = None):
        super().__init__(message)
        self.cause = cause


@dataclass(frozen=True)
class RevisionConfig:
    delta: float = 0.1
    distance_variant: str = CORRECTED
    prs_cardinality_cap: int = 3
    xi: float = iv.XI
    eps: float = EPS

    def __post_init__(self) -> None:
        if not 0 <= self.delta <= 1:
            raise ValueError("delta must lie in [0,1]")
        if self.prs_cardinality_cap < 1:
            raise ValueError("prs_cardinality_cap must be at least 1")
        if self.distance_variant not in DISTANCE_VARIANTS:
            raise ValueError(f"distance_variant must be one of {DISTANCE_VARIANTS}")


DEFAULT_CONFIG = RevisionConfig()


# -- modified union ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class DispositionLink:
    disposition: str
    exceptions: frozenset[str]


def find_disposition_links(p: Program, q: Program, eps: float = EPS) -> frozenset[DispositionLink]:
    """Weighted rules of either base paired with the other base's rules for the complementary head."""
    links = set()
    for own, other in ((p, q), (q, p)):
        for r in own:
            if r.weight.width <= eps:
                continue
            target = r.head.complement()
            exceptions = frozenset(o.id for o in other if o.head == target)
            if exceptions:
                links.add(DispositionLink(r.id, exceptions))
    return frozenset(links)


def update_weight(w: TruthInterval, new_exceptions: int, delta: float) -> TruthInterval:
    if new_exceptions < 0:
        raise ValueError("exception count cannot be negative")
    if new_exceptions == 0:
        return w
    spread = delta * new_exceptions
    return TruthInterval(round(max(0.0, w.lo - spread), 12), round(min(1.0, w.hi + spread), 12))


def relabel_apart(p: Program, q: Program) -> Program:
    """Rename rules of ``p`` whose ids also occur in ``q`` (``q`` keeps its labels)."""
    taken = set(p.ids) | set(q.ids)
    rules = []
    for r in p:
        if r.id in q:
            new = r.id + "'"
            while new in taken:
                new += "'"
            taken.add(new)
            r = r.with_id(new)
        rules.append(r)
    return Program(tuple(rules))


def modified_union(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> Program:
    p = relabel_apart(p, q)
    counts = {l.disposition: len(l.exceptions) for l in find_disposition_links(p, q, cfg.eps)}
    rules = tuple(r.with_weight(update_weight(r.weight, counts.get(r.id, 0), cfg.delta))
                  for r in p.rules + q.rules)
    provenance = tuple((r.id, P_TAG) for r in p) + tuple((r.id, Q_TAG) for r in q)
    return Program(rules, provenance)


# -- contradiction detection ------------------------------------------------

def _answer(program: Program, cfg: RevisionConfig) -> AnswerSet | None:
    try:
        return answer_sets(program, cfg.xi)
    except (NoAnswerSet, NonConvergence):
        return None


def consistent(program: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> bool:
    ans = _answer(program, cfg)
    return ans is not None and ans.consistent


def contradiction_set(u: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> frozenset[Atom]:
    """Shared atoms of the two bases that receive the contradiction value."""
    ans = _answer(u, cfg)
    if ans is None:
        return frozenset()
    shared = u.tagged(P_TAG).atom_base() & u.tagged(Q_TAG).atom_base()
    return ans.contradiction_atoms & shared


# -- potential removed sets -------------------------------------------------

@dataclass(frozen=True)
class PotentialRemovedSets:
    atom: Atom
    candidates: tuple[frozenset[str], ...]
    pool: tuple[str, ...] = ()

    def rules(self) -> frozenset[str]:
        return frozenset().union(*self.candidates) if self.candidates else frozenset()


def _consistent_wrt(program: Program, atom: Atom | None, cfg: RevisionConfig) -> bool:
    ans = _answer(program, cfg)
    if ans is None:
        return False
    if atom is None:
        return ans.consistent
    return atom not in ans.contradiction_atoms


def derivation_pool(u: Program, atom: Atom, p: Program) -> tuple[str, ...]:
    """Rules of ``p`` that take part in the derivation of ``atom`` in ``u``."""
    tp, table = transform(u)
    used = rules_in_derivation(resolution_tree(tp, atom), table)
    return tuple(rid for rid in p.ids if rid in used)


def potential_removed_sets(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG,
                           targets: Iterable[Atom] | None = None) -> dict[Atom, PotentialRemovedSets]:
    """Subset-minimal removals from ``p`` restoring consistency on each contradiction atom.

    ``targets`` defaults to every atom carrying the contradiction value in
    the modified union.  Raises :class:`EmptyPRS` if some atom cannot be
    repaired within the cardinality cap.
    """
    p = relabel_apart(p, q)
    u = modified_union(p, q, cfg)
    if targets is None:
        ans = _answer(u, cfg)
        targets = ans.contradiction_atoms if ans is not None else ()
    out = {}
    for atom in sorted(targets):
        pool = derivation_pool(u, atom, p)
        found: list[frozenset[str]] = []
        for k in range(1, min(cfg.prs_cardinality_cap, len(pool)) + 1):
            for combo in itertools.combinations(pool, k):
                x = frozenset(combo)
                if any(c <= x for c in found):
                    continue
                if _consistent_wrt(modified_union(p.without(x), q, cfg), atom, cfg):
                    found.append(x)
        if not found:
            raise EmptyPRS(atom, cfg.prs_cardinality_cap)
        out[atom] = PotentialRemovedSets(atom, tuple(found), pool)
    return out


# -- distances --------------------------------------------------------------

def _value_distance(x: TruthInterval, y: TruthInterval, variant: str) -> float:
    if x.is_regular and y.is_regular:
        return iv.interval_distance(x, y, variant)
    # a contradiction is maximally far from any regular value
    return 0.0 if x.is_regular == y.is_regular else 1.0


def interpretation_distance(i: Interpretation, j: Interpretation, base: Iterable[Atom],
                            variant: str = CORRECTED) -> float:
    return sum(_value_distance(i.value(a), j.value(a), variant) for a in base)


def set_distance(first: Sequence[Interpretation], second: Sequence[Interpretation],
                 base: Iterable[Atom], variant: str = CORRECTED) -> float:
    base = list(base)
    if not first and not second:
        return 0.0
    if not first or not second:
        return float(len(base))
    return max(interpretation_distance(i, j, base, variant) for i in first for j in second)


def _models(program: Program, cfg: RevisionConfig) -> list[Interpretation]:
    ans = _answer(program, cfg)
    return [] if ans is None else [ans.interpretation]


def removal_distance(p: Program, x: Iterable[str], cfg: RevisionConfig = DEFAULT_CONFIG) -> float:
    """How far the answer sets of ``p`` move when the rules ``x`` are deleted."""
    return set_distance(_models(p, cfg), _models(p.without(x), cfg), p.atoms_in_order(),
                        cfg.distance_variant)


# -- selection --------------------------------------------------------------

@dataclass(frozen=True)
class RemovedSet:
    rules: frozenset[str] = frozenset()
    justification: Mapping[str, str] = field(default_factory=dict)
    distance: float | None = None

    def __len__(self) -> int:
        return len(self.rules)


def _uncertainty_profile(p: Program, x: Iterable[str]) -> tuple[float, ...]:
    # rounded so that widths equal up to float noise compare equal
    return tuple(sorted((round(p[r].weight.width, 9) for r in x), reverse=True))


def _rank(options: Iterable[frozenset[str]], p: Program, cfg: RevisionConfig
          ) -> tuple[frozenset[str], bool, float | None]:
    """Pick the option of fewest rules, then least certain; break ties by distance, then ids.

    Returns the pick, whether the distance criterion was needed, and the distance.
    """
    options = sorted(set(options), key=lambda x: sorted(x))
    fewest = min(len(x) for x in options)
    options = [x for x in options if len(x) == fewest]
    best = max(_uncertainty_profile(p, x) for x in options)
    tied = [x for x in options if _uncertainty_profile(p, x) == best]
    if len(tied) == 1:
        return tied[0], False, None
    scored = sorted(((round(removal_distance(p, x, cfg), 12), sorted(x), x) for x in tied))
    return scored[0][2], True, scored[0][0]


def _groups(prs: Mapping[Atom, PotentialRemovedSets]) -> list[list[Atom]]:
    """Contradiction atoms clustered by overlapping candidate pools."""
    atoms = sorted(prs)
    parent = {a: a for a in atoms}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in itertools.combinations(atoms, 2):
        if prs[a].rules() & prs[b].rules():
            parent[find(a)] = find(b)
    clusters: dict[Atom, list[Atom]] = {}
    for a in atoms:
        clusters.setdefault(find(a), []).append(a)
    return list(clusters.values())


def choose_removed_set(prs: Mapping[Atom, PotentialRemovedSets], p: Program, q: Program,
                       cfg: RevisionConfig = DEFAULT_CONFIG) -> RemovedSet:
    """Assemble one removed set from the per-atom candidates.

    Atoms whose pools are disjoint from all others contribute their least
    certain candidate.  Overlapping atoms prefer a candidate they share.
    Ties in certainty go to the candidate whose deletion moves the answer
    set of ``p`` the least, and after that to the smallest id sequence.
    """
    p = relabel_apart(p, q)
    for atom, entry in prs.items():
        if not entry.candidates:
            raise EmptyPRS(atom, cfg.prs_cardinality_cap)
    chosen: set[str] = set()
    justification: dict[str, str] = {}
    distance = None
    for group in _groups(prs):
        if len(group) == 1:
            options, step = list(prs[group[0]].candidates), "1"
        else:
            common = set.intersection(*(set(prs[a].candidates) for a in group))
            if common:
                options, step = list(common), "2"
            else:
                families = [prs[a].candidates for a in group]
                options = []
                for combo in itertools.islice(itertools.product(*families), MAX_COMBINATIONS):
                    options.append(frozenset().union(*combo))
                step = "2"
        pick, used_distance, d = _rank(options, p, cfg)
        if used_distance:
            step, distance = "3", d
        chosen |= pick
        for rid in pick:
            justification.setdefault(rid, step)
    if distance is None and chosen:
        distance = removal_distance(p, chosen, cfg)
    return RemovedSet(frozenset(chosen), justification, distance)


def _minimal_subset(x: frozenset[str], p: Program, q: Program, cfg: RevisionConfig
                    ) -> frozenset[str]:
    """Shrink ``x`` to a subset-minimal repair if a proper subset already works."""
    if len(x) <= 1:
        return x
    if len(x) > EXHAUSTIVE_LIMIT:
        current = set(x)
        for rid in sorted(x, key=lambda r: (p[r].weight.width, r)):
            trial = frozenset(current - {rid})
            if consistent(modified_union(p.without(trial), q, cfg), cfg):
                current = set(trial)
        return frozenset(current)
    ordered = sorted(x)
    for k in range(0, len(x)):
        working = [frozenset(c) for c in itertools.combinations(ordered, k)
                   if consistent(modified_union(p.without(c), q, cfg), cfg)]
        if working:
            if k == 0:
                return frozenset()
            return _rank(working, p, cfg)[0]
    return x


def _global_search(p: Program, q: Program, cfg: RevisionConfig) -> frozenset[str]:
    """Fallback when the per-atom route gives no answer: smallest repairs over all of ``p``."""
    ids = p.ids
    for k in range(1, min(cfg.prs_cardinality_cap, len(ids)) + 1):
        working = [frozenset(c) for c in itertools.combinations(ids, k)
                   if consistent(modified_union(p.without(c), q, cfg), cfg)]
        if working:
            return _rank(working, p, cfg)[0]
    raise RevisionFailure("no removal from the old base restores consistency")


# -- the operator -----------------------------------------------------------

@dataclass(frozen=True)
class Revision:
    """Outcome of revising ``base`` by ``new``, with the evidence behind it."""

    program: Program
    union: Program
    removed: RemovedSet
    contradiction_set: frozenset[Atom]
    contradictions: frozenset[Atom]
    prs: Mapping[Atom, PotentialRemovedSets]
    base: Program

    def to_json(self) -> dict:
        return {
            "removed": sorted(self.removed.rules),
            "contradiction_set": sorted(str(a) for a in self.contradiction_set),
            "prs": {str(a): sorted(sorted(c) for c in self.prs[a].candidates)
                    for a in sorted(self.prs)},
            "distance": self.removed.distance,
            "program": str(self.program),
        }


def revise(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> Revision:
    """Revise ``p`` by ``q``: ``(p minus the chosen removed set)`` modified-union ``q``."""
    p = relabel_apart(p, q)
    union = modified_union(p, q, cfg)
    ans = _answer(union, cfg)
    if ans is not None and ans.consistent:
        return Revision(union, union, RemovedSet(), frozenset(), frozenset(), {}, p)

    cs = contradiction_set(union, cfg)
    contradictions = ans.contradiction_atoms if ans is not None else frozenset()
    first_prs: dict[Atom, PotentialRemovedSets] = {}
    removed: frozenset[str] = frozenset()
    justification: dict[str, str] = {}
    try:
        if ans is None:
            removed = _global_search(p, q, cfg)
            justification = {r: "search" for r in removed}
        else:
            for round_no in range(len(p) + 1):
                remaining = p.without(removed)
                if consistent(modified_union(remaining, q, cfg), cfg):
                    break
                try:
                    prs = potential_removed_sets(remaining, q, cfg)
                except EmptyPRS:
                    if round_no == 0:
                        raise
                    removed = _global_search(p, q, cfg)
                    justification = {r: "search" for r in removed}
                    break
                if round_no == 0:
                    first_prs = prs
                if not prs:
                    removed = _global_search(p, q, cfg)
                    justification = {r: "search" for r in removed}
                    break
                pick = choose_removed_set(prs, remaining, q, cfg)
                removed |= pick.rules
                for rid, step in pick.justification.items():
                    justification.setdefault(rid, step)
            else:
                removed = _global_search(p, q, cfg)
                justification = {r: "search" for r in removed}
    except EmptyPRS as exc:
        raise RevisionFailure(str(exc), exc) from exc

    removed = _minimal_subset(removed, p, q, cfg)
    result = modified_union(p.without(removed), q, cfg)
    if not consistent(result, cfg):
        raise RevisionFailure("no consistent revision found")
    justification = {r: justification.get(r, "minimised") for r in sorted(removed)}
    chosen = RemovedSet(removed, justification,
                        removal_distance(p, removed, cfg) if removed else None)
    return Revision(result, union, chosen, cs, contradictions, first_prs, p)

"""Executable checks of the seven base-revision postulates for ``revise``.

Each check returns a :class:`CheckResult`; a violation always carries a
witness from which the case can be replayed (programs as text plus the
removed sets that were computed).
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field

from ..program import Atom, Program, Rule
from ..revision import (DEFAULT_CONFIG, Revision, RevisionConfig, RevisionFailure,
                        consistent, find_disposition_links, modified_union,
                        relabel_apart, revise)

EXHAUSTIVE_LIMIT = 12
SAMPLES = 1000


class Status(str, enum.Enum):
    HOLDS = "holds"
    HOLDS_MODIFIED = "holds-modified"
    VIOLATED = "violated"
    PRECONDITION_UNMET = "precondition-unmet"

    def __str__(self) -> str:
        return self.value


@dataclass
class CheckResult:
    postulate: str
    status: Status
    witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != Status.VIOLATED

    def to_json(self) -> dict:
        out = {"postulate": self.postulate, "status": self.status.value}
        if self.notes:
            out["notes"] = list(self.notes)
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _witness(**programs) -> dict:
    out = {}
    for name, value in programs.items():
        if isinstance(value, Program):
            out[name] = str(value)
        elif isinstance(value, Revision):
            out[name] = sorted(value.removed.rules)
        else:
            out[name] = value
    return out


def _try_revise(p: Program, q: Program, cfg: RevisionConfig) -> Revision | None:
    try:
        return revise(p, q, cfg)
    except RevisionFailure:
        return None


def _subsets(ids: tuple[str, ...], limit: int = EXHAUSTIVE_LIMIT, samples: int = SAMPLES,
             seed: int = 0):
    """All subsets when small, otherwise a fixed-seed sample. Second value: exhaustive?"""
    if len(ids) <= limit:
        return (frozenset(c) for k in range(len(ids) + 1)
                for c in itertools.combinations(ids, k)), True
    rng = random.Random(seed)
    return (frozenset(i for i in ids if rng.random() < 0.5) for _ in range(samples)), False


def _atoms(rule: Rule) -> set[Atom]:
    return set(rule.atoms())


def program_atoms(program: Program) -> set[Atom]:
    return set(program.atom_base())


def split_components(program: Program) -> list[Program]:
    """Split into sub-programs that share no atoms, in order of first rule."""
    groups: list[tuple[set[Atom], list[Rule]]] = []
    for r in program:
        atoms = _atoms(r)
        merged = [g for g in groups if g[0] & atoms]
        keep = [g for g in groups if not g[0] & atoms]
        new_atoms = set(atoms)
        new_rules: list[Rule] = []
        for g in merged:
            new_atoms |= g[0]
            new_rules += g[1]
        new_rules.append(r)
        groups = keep + [(new_atoms, new_rules)]
    order = {r.id: i for i, r in enumerate(program)}
    comps = [sorted(rules, key=lambda r: order[r.id]) for _, rules in groups]
    comps.sort(key=lambda rules: order[rules[0].id])
    return [Program(tuple(rules)) for rules in comps]


# -- the postulates ---------------------------------------------------------

def check_success(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> CheckResult:
    rev = _try_revise(p, q, cfg)
    if rev is None:
        return CheckResult("success", Status.PRECONDITION_UNMET, notes=["revision undefined"])
    modified = []
    for r in q:
        if r.id not in rev.program:
            return CheckResult("success", Status.VIOLATED,
                               _witness(p=p, q=q, removed=rev, missing=r.id))
        got = rev.program[r.id]
        if got == r:
            continue
        if got.same_shape(r):
            modified.append(r.id)
        else:
            return CheckResult("success", Status.VIOLATED, _witness(p=p, q=q, removed=rev, changed=r.id))
    if modified:
        return CheckResult("success", Status.HOLDS_MODIFIED,
                           notes=[f"weights updated by the modified union: {', '.join(modified)}"])
    return CheckResult("success", Status.HOLDS)


def check_inclusion(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> CheckResult:
    """Every rule of the revision occurs in the modified union.

    A rule occurs when its label, head and body match; its weight may be
    any value between its original weight and its weight in the union,
    since deleting old rules can only drop exceptions.
    """
    notes = ["checked against the modified union rather than the plain union"]
    rev = _try_revise(p, q, cfg)
    if rev is None:
        return CheckResult("inclusion", Status.PRECONDITION_UNMET, notes=notes + ["revision undefined"])
    sources = {r.id: r for r in rev.base} | {r.id: r for r in q}
    recomputed = []
    for r in rev.program:
        u = rev.union[r.id] if r.id in rev.union else None
        if u is None or not u.same_shape(r):
            return CheckResult("inclusion", Status.VIOLATED, _witness(p=p, q=q, removed=rev, rule=r.id))
        if u.weight == r.weight:
            continue
        orig = sources[r.id].weight
        inside = (u.weight.lo - cfg.eps <= r.weight.lo <= orig.lo + cfg.eps
                  and orig.hi - cfg.eps <= r.weight.hi <= u.weight.hi + cfg.eps)
        if not inside:
            return CheckResult("inclusion", Status.VIOLATED, _witness(p=p, q=q, removed=rev, rule=r.id))
        recomputed.append(r.id)
    if recomputed:
        notes.append(f"weights recomputed after removal: {', '.join(recomputed)}")
    return CheckResult("inclusion", Status.HOLDS, notes=notes)


def consistent_extension_exists(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG
                                ) -> tuple[bool, bool]:
    """Is there a consistent X with Q ⊆ X ⊆ P ∪* Q, dropping at most ``cap`` rules of P?

    The bound matches the operator, which never removes more than the cap
    per contradiction.  Second value: the search was exhaustive.
    """
    p = relabel_apart(p, q)
    subsets, exhaustive = _subsets(p.ids, limit=max(0, EXHAUSTIVE_LIMIT - len(q)))
    for keep in subsets:
        if len(p) - len(keep) > cfg.prs_cardinality_cap:
            continue
        if consistent(modified_union(p.restricted(keep), q, cfg), cfg):
            return True, exhaustive
    return False, exhaustive


def check_nm_consistency(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> CheckResult:
    exists, exhaustive = consistent_extension_exists(p, q, cfg)
    notes = [] if exhaustive else [f"consistent extensions sampled ({SAMPLES} subsets)"]
    rev = _try_revise(p, q, cfg)
    if not exists:
        notes.append(f"no consistent extension within {cfg.prs_cardinality_cap} removals")
        if rev is None:
            notes.append("revision undefined")
        return CheckResult("nm-consistency", Status.PRECONDITION_UNMET, notes=notes)
    if rev is None or not consistent(rev.program, cfg):
        return CheckResult("nm-consistency", Status.VIOLATED,
                           _witness(p=p, q=q, removed=rev if rev else "revision failed"), notes)
    return CheckResult("nm-consistency", Status.HOLDS, notes=notes)


def check_fullness(p: Program, q: Program, cfg: RevisionConfig = DEFAULT_CONFIG) -> CheckResult:
    """Each deleted rule, put back, makes the revision inconsistent again."""
    rev = _try_revise(p, q, cfg)
    if rev is None:
        return CheckResult("fullness", Status.PRECONDITION_UNMET, notes=["revision undefined"])
    if not consistent(rev.program, cfg):
        return CheckResult("fullness", Status.VIOLATED, _witness(p=p, q=q, removed=rev))
    dropped = [rid for rid in rev.union.ids if rid not in rev.program]
    for rid in dropped:
        back = rev.removed.rules - {rid}
        if consistent(modified_union(rev.base.without(back), q, cfg), cfg):
            return CheckResult("fullness", Status.VIOLATED, _witness(p=p, q=q, removed=rev, readded=rid))
    notes = [] if dropped else ["nothing removed; holds vacuously"]
    return CheckResult("fullness", Status.HOLDS, notes=notes)


def check_uniformity(p: Program, q: Program, r: Program,
                     cfg: RevisionConfig = DEFAULT_CONFIG) -> CheckResult:
    base = relabel_apart(relabel_apart(p, q), r)
    subsets, exhaustive = _subsets(base.ids)
    notes = [] if exhaustive else [f"premise sampled over {SAMPLES} subsets"]
    for keep in subsets:
        sub = base.restricted(keep)
        if consistent(modified_union(sub, q, cfg), cfg) != consistent(modified_union(sub, r, cfg), cfg):
            return CheckResult("uniformity", Status.PRECONDITION_UNMET,
                               notes=notes + [f"premise fails for subset {sorted(keep)}"])
    rq, rr = _try_revise(base, q, cfg), _try_revise(base, r, cfg)
    if rq is None and rr is None:
        return CheckResult("uniformity", Status.HOLDS, notes=notes + ["both revisions undefined"])
    if rq is None or rr is None:
        return CheckResult("uniformity", Status.VIOLATED,
                           _witness(p=base, q=q, r=r, detail="only one revision is defined"), notes)
    kept_q = set(base.ids) & set(rq.program.ids)
    kept_r = set(base.ids) & set(rr.program.ids)
    if kept_q != kept_r:
        return CheckResult("uniformity", Status.VIOLATED,
                           _witness(p=base, q=q, r=r, removed_q=rq, removed_r=rr), notes)
    return CheckResult("uniformity", Status.HOLDS, notes=notes)


def _touches_both(rule: Rule, first: set[Atom], second: set[Atom]) -> bool:
    atoms = _atoms(rule)
    return bool(atoms & first) and bool(atoms & second)


def check_weak_disjunction(p1: Program, p2: Program, q: Program,
                           cfg: RevisionConfig = DEFAULT_CONFIG) -> CheckResult:
    a1, a2 = program_atoms(p1), program_atoms(p2)
    if a1 & a2 or set(p1.ids) & set(p2.ids):
        return CheckResult("weak-disjunction", Status.PRECONDITION_UNMET, notes=["parts share atoms"])
    if any(_touches_both(r, a1, a2) for r in q):
        return CheckResult("weak-disjunction", Status.PRECONDITION_UNMET,
                           notes=["a rule of the new base touches both parts"])
    p = p1.union(p2)
    whole, left, right = (_try_revise(x, q, cfg) for x in (p, p1, p2))
    if whole is None:
        if left is None or right is None:
            return CheckResult("weak-disjunction", Status.PRECONDITION_UNMET, notes=["revision undefined"])
        return CheckResult("weak-disjunction", Status.VIOLATED,
                           _witness(p1=p1, p2=p2, q=q, detail="whole revision undefined"))
    if left is None or right is None:
        return CheckResult("weak-disjunction", Status.PRECONDITION_UNMET,
                           notes=["revision of one part undefined"])
    q_ids = set(q.ids)
    updates = any(l.disposition in q_ids for l in find_disposition_links(p, q, cfg.eps))
    witness = _witness(p1=p1, p2=p2, q=q, removed=whole, removed_1=left, removed_2=right)
    if not updates:
        rhs = left.program.rule_set() | right.program.rule_set()
        if whole.program.rule_set() == rhs:
            return CheckResult("weak-disjunction", Status.HOLDS)
        return CheckResult("weak-disjunction", Status.VIOLATED, witness)
    if whole.removed.rules == left.removed.rules | right.removed.rules:
        return CheckResult("weak-disjunction", Status.HOLDS_MODIFIED,
                           notes=["new base has dispositions with exceptions in the old base; "
                                  "checked the removed-set identity"])
    return CheckResult("weak-disjunction", Status.VIOLATED, witness)


def check_weak_parallelism(p: Program, q1: Program, q2: Program,
                           cfg: RevisionConfig = DEFAULT_CONFIG) -> CheckResult:
    """Literal program identity gives ``holds``; if only the removed sets
    decompose (``X = X1 ∪ X2``) the result is ``holds-modified``."""
    a1, a2 = program_atoms(q1), program_atoms(q2)
    if a1 & a2 or set(q1.ids) & set(q2.ids):
        return CheckResult("weak-parallelism", Status.PRECONDITION_UNMET, notes=["new bases share atoms"])
    if any(_touches_both(r, a1, a2) for r in p):
        return CheckResult("weak-parallelism", Status.PRECONDITION_UNMET,
                           notes=["a rule of the old base touches both new bases"])
    if not consistent(p, cfg):
        # conflicts internal to P are repaired by every revision, so they do not split by block
        return CheckResult("weak-parallelism", Status.PRECONDITION_UNMET,
                           notes=["old base is inconsistent on its own"])
    whole, left, right = (_try_revise(p, x, cfg) for x in (q1.union(q2), q1, q2))
    if whole is None:
        if left is None or right is None:
            return CheckResult("weak-parallelism", Status.PRECONDITION_UNMET, notes=["revision undefined"])
        return CheckResult("weak-parallelism", Status.VIOLATED,
                           _witness(p=p, q1=q1, q2=q2, detail="whole revision undefined"))
    if left is None or right is None:
        return CheckResult("weak-parallelism", Status.PRECONDITION_UNMET,
                           notes=["revision by one part undefined"])
    if whole.program.rule_set() == left.program.rule_set() | right.program.rule_set():
        return CheckResult("weak-parallelism", Status.HOLDS)
    witness = _witness(p=p, q1=q1, q2=q2, removed=whole, removed_1=left, removed_2=right)
    if whole.removed.rules != left.removed.rules | right.removed.rules:
        return CheckResult("weak-parallelism", Status.VIOLATED, witness)
    block = block_revision(p, q1, q2, cfg)
    if block is not None and whole.program.rule_set() == block.rule_set():
        return CheckResult("weak-parallelism", Status.HOLDS_MODIFIED,
                           notes=["equal to the block-wise revision (P1*Q1) ∪ (P2*Q2); "
                                  "removed sets decompose"])
    return CheckResult("weak-parallelism", Status.HOLDS_MODIFIED,
                       notes=["removed sets decompose; the block-wise union differs"])


def block_partition(p: Program, q1: Program, q2: Program) -> tuple[Program, Program]:
    """Rules of ``p`` not touching ``q2``'s atoms, and those not touching ``q1``'s.

    Rules touching neither land in both parts.
    """
    a1, a2 = program_atoms(q1), program_atoms(q2)
    return (Program(tuple(r for r in p if not _atoms(r) & a2)),
            Program(tuple(r for r in p if not _atoms(r) & a1)))


def block_revision(p: Program, q1: Program, q2: Program,
                   cfg: RevisionConfig = DEFAULT_CONFIG) -> Program | None:
    """``(P1 * Q1) ∪ (P2 * Q2)`` over the block partition of ``p``; None if either fails."""
    p1, p2 = block_partition(p, q1, q2)
    first, second = _try_revise(p1, q1, cfg), _try_revise(p2, q2, cfg)
    if first is None or second is None:
        return None
    return Program(tuple(sorted(first.program.rule_set() | second.program.rule_set(),
                                key=lambda r: r.id)))


POSTULATES = ("success", "inclusion", "nm", "fullness", "uniformity", "disjunction", "parallelism")


@dataclass
class PostulateReport:
    results: dict[str, CheckResult]
    notes: list[str] = field(default_factory=list)

    @property
    def violated(self) -> list[CheckResult]:
        return [r for r in self.results.values() if r.status == Status.VIOLATED]

    @property
    def ok(self) -> bool:
        return not self.violated

    def to_json(self) -> dict:
        return {"results": {k: v.to_json() for k, v in self.results.items()},
                "notes": list(self.notes)}


def relabelled(program: Program, prefix: str) -> Program:
    return Program(tuple(r.with_id(prefix + r.id) for r in program))


def check_all(p: Program, q: Program, r: Program | None = None,
              cfg: RevisionConfig = DEFAULT_CONFIG, which=POSTULATES) -> PostulateReport:
    """Run the selected checks on one pair.

    Uniformity compares against ``r`` (a relabelled copy of ``q`` when not
    given); weak disjunction splits ``p`` and weak parallelism splits ``q``
    into atom-disjoint components.
    """
    which = POSTULATES if which in ("all", None) else tuple(which)
    out: dict[str, CheckResult] = {}
    notes = ["inclusion is checked in its modified-union form"]
    if "success" in which:
        out["success"] = check_success(p, q, cfg)
    if "inclusion" in which:
        out["inclusion"] = check_inclusion(p, q, cfg)
    if "nm" in which:
        out["nm"] = check_nm_consistency(p, q, cfg)
    if "fullness" in which:
        out["fullness"] = check_fullness(p, q, cfg)
    if "uniformity" in which:
        if r is None:
            r = relabelled(q, "u_")
            notes.append("uniformity compared against a relabelled copy of the new base")
        out["uniformity"] = check_uniformity(p, q, r, cfg)
    if "disjunction" in which:
        parts = split_components(p)
        if len(parts) < 2:
            out["disjunction"] = CheckResult("weak-disjunction", Status.PRECONDITION_UNMET,
                                             notes=["old base does not split"])
        else:
            rest = Program(tuple(x for x in p if x.id not in parts[0]))
            out["disjunction"] = check_weak_disjunction(parts[0], rest, q, cfg)
    if "parallelism" in which:
        parts = split_components(q)
        if len(parts) < 2:
            out["parallelism"] = CheckResult("weak-parallelism", Status.PRECONDITION_UNMET,
                                             notes=["new base does not split"])
        else:
            rest = Program(tuple(x for x in q if x.id not in parts[0]))
            out["parallelism"] = check_weak_parallelism(p, parts[0], rest, cfg)
    return PostulateReport(out, notes)

"""Seeded postulate campaigns over random program pairs."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field, replace

from ..revision import DEFAULT_CONFIG, RevisionConfig
from .generator import GeneratorSpec, generate_pair
from .postulates import POSTULATES, Status, check_all


@dataclass
class FuzzSummary:
    cases: int = 0
    counts: dict[str, Counter] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    revisions_with_removal: int = 0
    elapsed: float = 0.0

    def record(self, name: str, status: Status) -> None:
        self.counts.setdefault(name, Counter())[status.value] += 1

    def fraction(self, name: str, *statuses: Status) -> float:
        c = self.counts.get(name, Counter())
        total = sum(c.values())
        return sum(c[s.value] for s in statuses) / total if total else 1.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "cases": self.cases,
            "counts": {k: dict(sorted(v.items())) for k, v in sorted(self.counts.items())},
            "violations": self.violations,
            "revisions_with_removal": self.revisions_with_removal,
            "elapsed_seconds": round(self.elapsed, 3),
        }


def run_fuzz(seed: int = 0, cases: int = 200, atoms: int = 4, rules: int = 5,
             cfg: RevisionConfig = DEFAULT_CONFIG, spec: GeneratorSpec | None = None,
             which=POSTULATES) -> FuzzSummary:
    """Check the postulates on ``cases`` pairs drawn with seeds ``seed, seed+1, ...``."""
    from ..revision import revise, RevisionFailure

    base = spec or GeneratorSpec(atoms=atoms, rules=rules)
    summary = FuzzSummary()
    start = time.perf_counter()
    for k in range(cases):
        case_spec = replace(base, seed=seed + k)
        p, q = generate_pair(case_spec)
        report = check_all(p, q, cfg=cfg, which=which)
        summary.cases += 1
        for name, result in report.results.items():
            summary.record(name, result.status)
            if result.status == Status.VIOLATED:
                summary.violations.append({"seed": case_spec.seed, "postulate": name,
                                           "witness": result.witness, "notes": result.notes})
        try:
            if revise(p, q, cfg).removed.rules:
                summary.revisions_with_removal += 1
        except RevisionFailure:
            pass
    summary.elapsed = time.perf_counter() - start
    return summary

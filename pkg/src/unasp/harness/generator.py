"""Seeded random program pairs for property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from ..interval import TruthInterval
from ..program import Atom, BodyElement, Literal, Program, Rule
from ..revision import consistent


@dataclass(frozen=True)
class GeneratorSpec:
    atoms: int = 4
    rules: int = 5
    max_width: float = 0.3
    exact_probability: float = 0.5
    naf_probability: float = 0.15
    negation_probability: float = 0.3
    max_body: int = 2
    seed: int = 0
    consistent_new: bool = True

    def __post_init__(self) -> None:
        if self.atoms < 1 and self.rules > 0:
            raise ValueError("need at least one atom to build rules")
        if not 0 <= self.max_width <= 1:
            raise ValueError("max_width must lie in [0,1]")


def _weight(rng: random.Random, spec: GeneratorSpec) -> TruthInterval:
    if rng.random() < spec.exact_probability:
        v = rng.choice([0.0, 0.5, 1.0, round(rng.random(), 2)])
        return TruthInterval(v, v)
    width = round(rng.uniform(0.05, max(spec.max_width, 0.05)), 2)
    lo = round(rng.uniform(0, 1 - width), 2)
    return TruthInterval(lo, round(min(1.0, lo + width), 2))


def generate_program(rng: random.Random, spec: GeneratorSpec, prefix: str) -> Program:
    """Rules only use lower-numbered atoms in their bodies, so there are no cycles."""
    atoms = [Atom(f"a{i}") for i in range(spec.atoms)]
    rules = []
    for k in range(spec.rules):
        h = rng.randrange(spec.atoms)
        size = 0 if h == 0 else rng.randint(0, min(spec.max_body, h))
        body = []
        for b in rng.sample(range(h), size):
            lit = Literal(atoms[b], rng.random() < spec.negation_probability)
            if rng.random() < spec.naf_probability:
                body.append(BodyElement.naf(lit))
            else:
                body.append(BodyElement.lit(lit))
        head = Literal(atoms[h], rng.random() < spec.negation_probability)
        rules.append(Rule(f"{prefix}{k + 1}", head, tuple(body), _weight(rng, spec)))
    return Program(tuple(rules))


def generate_pair(spec: GeneratorSpec) -> tuple[Program, Program]:
    """A (base, new) pair; identical specs give identical pairs.

    With ``consistent_new`` the new base is redrawn until it is consistent
    on its own (up to 100 draws).
    """
    rng = random.Random(spec.seed)
    p = generate_program(rng, spec, "p")
    q = generate_program(rng, spec, "q")
    if spec.consistent_new:
        for _ in range(100):
            if consistent(q):
                break
            q = generate_program(rng, spec, "q")
    return p, q


def generate_positive(spec: GeneratorSpec) -> Program:
    return generate_program(random.Random(spec.seed), replace(spec, naf_probability=0.0), "r")

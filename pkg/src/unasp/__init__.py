"""Interval-valued answer set programs and a removed-set revision operator."""

from .interval import (CONTRADICTION, CORRECTED, EPS, FALSE, PAPER_LITERAL, TRUE, UNKNOWN, XI,
                       TruthInterval, cneg, interval_distance, k_aggregate,
                       knowledge_le, naf, tconorm, tnorm, truth_le)
from .program import (Atom, BodyElement, GroundingError, Literal, ParseError, Program, Rule,
                      atom_base, ground, parse_interval, parse_program)
from .revision import (DEFAULT_CONFIG, EmptyPRS, Revision, RevisionConfig, RevisionFailure,
                       modified_union, potential_removed_sets, revise)
from .semantics import (AnswerSet, Interpretation, NoAnswerSet, NonConvergence, answer_sets,
                        k_minimal_model, reduct, satisfies)
from .transform import resolution_tree, rules_in_derivation, transform

__version__ = "0.1.0"

__all__ = [
    "CONTRADICTION", "CORRECTED", "EPS", "FALSE", "PAPER_LITERAL", "TRUE", "UNKNOWN", "XI",
    "TruthInterval", "cneg", "interval_distance", "k_aggregate", "knowledge_le",
    "naf", "tconorm", "tnorm", "truth_le",
    "Atom", "BodyElement", "GroundingError", "Literal", "ParseError", "Program", "Rule",
    "atom_base", "ground", "parse_interval", "parse_program",
    "DEFAULT_CONFIG", "EmptyPRS", "Revision", "RevisionConfig", "RevisionFailure",
    "modified_union", "potential_removed_sets", "revise",
    "AnswerSet", "Interpretation", "NoAnswerSet", "NonConvergence", "answer_sets",
    "k_minimal_model", "reduct", "satisfies",
    "resolution_tree", "rules_in_derivation", "transform",
]

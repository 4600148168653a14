"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and by ``python3 tests/test_acceptance.py``.
"""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from unasp import interval as iv
from unasp import semantics
from unasp.interval import (TruthInterval, cneg, interval_distance, knowledge_le, tconorm,
                            tnorm, truth_le)
from unasp.harness.fuzz import run_fuzz
from unasp.harness.generator import GeneratorSpec, generate_pair, generate_positive
from unasp.harness.postulates import (Status, block_revision, check_nm_consistency,
                                      check_weak_disjunction, check_weak_parallelism)
from unasp.program import Atom, Program, parse_program
from unasp.revision import (RevisionFailure, modified_union, potential_removed_sets, revise)
from unasp.semantics import NonConvergence, answer_sets, satisfies, supportedness_residual
from unasp.transform import resolution_tree, rules_in_derivation, transform

sys.path.insert(0, str(Path(__file__).parent))
from conftest import P1_TEXT, P2_TEXT  # noqa: E402

RESULTS: dict[int, str] = {}
TOL = 1e-12


def record(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    RESULTS[number] = line
    print(line)


def _close(x, y, tol=TOL):
    return abs(x.lo - y.lo) <= tol and abs(x.hi - y.hi) <= tol


# -- 1. worked example -------------------------------------------------------

TABLE_1 = [
    ("r1T", "p ⟵ ([0.7,0.9] ∧ q ∧ r) ⊗k ¬t", {"r11", "r14"}),
    ("r2T", "r ⟵ [0.8,0.9] ∧ s", {"r12"}),
    ("r3T", "q ⟵ [0.75,0.9]", {"r13"}),
    ("r4T", "s ⟵ [1,1]", {"r15"}),
    ("r5T", "t ⟵ [0,1]", set()),
]


def criterion_1():
    semantics._cached.cache_clear()
    start = time.perf_counter()
    p1, p2 = parse_program(P1_TEXT), parse_program(P2_TEXT)
    tp, table = transform(p1)
    got = [(eq.id, f"{eq.head} ⟵ {eq.expr}", set(table.sources(eq.id))) for eq in tp.equations]
    a = got == TABLE_1
    tree = resolution_tree(tp, Atom("p"))
    b = tree.used == {"r1T", "r2T", "r3T", "r4T", "r5T"} and \
        rules_in_derivation(tree, table) == {"r11", "r12", "r13", "r14", "r15"}
    prs = potential_removed_sets(p1, p2)
    c = set(prs) == {Atom("p")} and set(prs[Atom("p")].candidates) == \
        {frozenset({r}) for r in ("r11", "r14", "r12", "r13", "r15")}
    rev = revise(p1, p2)
    expected = modified_union(p1.without(["r11"]), p2)
    d = rev.removed.rules == {"r11"} and rev.program.rules == expected.rules
    elapsed = time.perf_counter() - start
    ok = a and b and c and d and elapsed < 1.0
    return ok, (f"table={a} tree={b} prs={c} removed/result={d} "
                f"runtime={elapsed:.3f}s (<1s)")


# -- 2. interval algebra ----------------------------------------------------

def _random_interval(rng):
    a, b = rng.random(), rng.random()
    return TruthInterval(min(a, b), max(a, b))


def criterion_2():
    start = time.perf_counter()
    rng = random.Random(20240601)
    xs = [_random_interval(rng) for _ in range(10_000)]
    failures: dict[str, int] = {}
    example: dict[str, tuple] = {}

    def fail(name, *witness):
        failures[name] = failures.get(name, 0) + 1
        example.setdefault(name, witness)

    for k in range(len(xs)):
        x, y, z = xs[k], xs[(k + 1) % len(xs)], xs[(k + 7) % len(xs)]
        x2, y2 = xs[(k + 3) % len(xs)], xs[(k + 5) % len(xs)]
        if not _close(tnorm(x, y), tnorm(y, x)) or not _close(tconorm(x, y), tconorm(y, x)):
            fail("commutativity", x, y)
        if not _close(tnorm(tnorm(x, y), z), tnorm(x, tnorm(y, z))):
            fail("tnorm associativity", x, y, z)
        if not _close(tconorm(tconorm(x, y), z), tconorm(x, tconorm(y, z))):
            fail("tconorm associativity", x, y, z)
        if truth_le(x, x2) and truth_le(y, y2):
            if not truth_le(tnorm(x, y), tnorm(x2, y2)):
                fail("tnorm monotonicity (truth order)", x, x2, y, y2)
            if not truth_le(tconorm(x, y), tconorm(x2, y2)):
                fail("tconorm monotonicity (truth order)", x, x2, y, y2)
        lo, hi = TruthInterval(min(x.lo, x2.lo), min(x.hi, x2.hi)), \
            TruthInterval(max(x.lo, x2.lo), max(x.hi, x2.hi))
        for op in (tnorm, tconorm):
            small, big = op(lo, y), op(hi, y)
            if small.lo > big.lo + TOL or small.hi > big.hi + TOL:
                fail("componentwise monotonicity", lo, hi, y)
        if not _close(cneg(tnorm(x, y)), tconorm(cneg(x), cneg(y))):
            fail("De Morgan", x, y)
        if not _close(cneg(cneg(x)), x):
            fail("cneg involution", x)
        if not (knowledge_le(x, y) or knowledge_le(y, x)) or not knowledge_le(x, x):
            fail("knowledge order totality", x, y)
        if knowledge_le(x, y) and knowledge_le(y, z) and not knowledge_le(x, z):
            fail("knowledge order transitivity", x, y, z)
        dxy, dyz, dxz = interval_distance(x, y), interval_distance(y, z), interval_distance(x, z)
        if abs(dxy - interval_distance(y, x)) > TOL or interval_distance(x, x) != 0 \
                or dxz > dxy + dyz + TOL or (dxy == 0 and not _close(x, y)):
            fail("distance metric", x, y, z)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 5.0
    detail = f"{len(xs)} intervals, runtime={elapsed:.2f}s (<5s)"
    if "componentwise monotonicity" not in failures:
        detail += "; diagnostic: componentwise (lo and hi separately) monotonicity has 0 failures"
    if failures:
        parts = []
        for name, count in failures.items():
            witness = ", ".join(str(w) for w in example[name])
            parts.append(f"{name}: {count} failures, e.g. {witness}")
        detail += "; " + "; ".join(parts)
    return ok, detail


# -- 3. semantics -------------------------------------------------------------

def _programs(n=500):
    for seed in range(n):
        rng = random.Random(seed)
        spec = GeneratorSpec(atoms=rng.randint(1, 10), rules=rng.randint(0, 15), seed=seed)
        yield seed, generate_positive(spec)


def criterion_3():
    start = time.perf_counter()
    stats = dict(programs=0, consistent=0, contradictory=0, unsatisfied_programs=0,
                 unsatisfied_rules=0, unsatisfied_outside_kagg=0, residual=0,
                 permutation=0, lemma=0, errors=0)
    for seed, prog in _programs():
        stats["programs"] += 1
        try:
            ans = answer_sets(prog)
        except NonConvergence:
            stats["errors"] += 1
            continue
        tp, _ = transform(prog)
        if ans.consistent:
            stats["consistent"] += 1
            bad = [r for r in prog if not satisfies(ans.interpretation, r)]
            if bad:
                stats["unsatisfied_programs"] += 1
                stats["unsatisfied_rules"] += len(bad)
                stats["unsatisfied_outside_kagg"] += sum(
                    tp.equation_for(r.head.atom).case != "iii" for r in bad)
            if supportedness_residual(prog, ans.interpretation) >= 1e-6:
                stats["residual"] += 1
        else:
            stats["contradictory"] += 1
            cs = ans.contradiction_atoms
            for r in prog:
                if any(l.atom in cs for l in r.literals()) and r.head.atom not in cs:
                    stats["lemma"] += 1
        rules = list(prog.rules)
        random.Random(seed).shuffle(rules)
        again = answer_sets(Program(tuple(rules)))
        if not again.interpretation.close_to(ans.interpretation, 1e-9):
            stats["permutation"] += 1
    elapsed = time.perf_counter() - start
    ok = all(stats[k] == 0 for k in ("unsatisfied_programs", "residual", "permutation",
                                      "lemma", "errors"))
    detail = (f"{stats['programs']} programs ({stats['consistent']} consistent, "
              f"{stats['contradictory']} with contradictions), runtime={elapsed:.1f}s; "
              f"rule satisfaction failures: {stats['unsatisfied_rules']} rules in "
              f"{stats['unsatisfied_programs']} programs "
              f"({stats['unsatisfied_outside_kagg']} outside atoms with both polarities); "
              f"residual>=1e-6: {stats['residual']}; permutation changes: "
              f"{stats['permutation']}; propagation failures: {stats['lemma']}; "
              f"non-convergent: {stats['errors']}")
    return ok, detail


# -- 4. postulate campaign --------------------------------------------------

def criterion_4():
    summary = run_fuzz(seed=0, cases=200)
    frac = summary.fraction
    inclusion = frac("inclusion", Status.HOLDS) == 1
    fullness = frac("fullness", Status.HOLDS) == 1
    success = frac("success", Status.HOLDS, Status.HOLDS_MODIFIED) == 1
    nm = summary.counts["nm"].get(Status.VIOLATED.value, 0) == 0
    uniform = frac("uniformity", Status.HOLDS) == 1
    ok = (inclusion and fullness and success and nm and uniform and summary.ok
          and summary.elapsed < 120)
    counts = {k: dict(v) for k, v in sorted(summary.counts.items())}
    return ok, (f"{summary.cases} pairs, {summary.revisions_with_removal} with removals, "
                f"{len(summary.violations)} violations, runtime={summary.elapsed:.1f}s (<120s); "
                f"{json.dumps(counts, sort_keys=True)}")


# -- 5. theorem fixtures ------------------------------------------------------

def criterion_5():
    checks = {}
    # event (1): a weight of the new base is widened by an exception in the old one
    p, q = parse_program("x: -a @ [0,0]."), parse_program("q1: a @ [0.6,0.8]. q2: -a @ [0.6,0.8].")
    checks["event 1"] = check_nm_consistency(p, q).status == Status.HOLDS
    # event (2): the old base adds support y to a, giving (x ∨ y) ⊗k ¬x
    p = parse_program("y: a @ [0.5,0.5].")
    q = parse_program("a @ [0.6,0.8]. c @ [0.6,0.8]. -a :- c.")
    checks["event 2"] = check_nm_consistency(p, q).status == Status.HOLDS
    # x = [1,1] cannot be repaired from the old base
    p, q = parse_program("x: a @ [0.5,0.5]."), parse_program("a @ [1,1]. -a @ [1,1].")
    unmet = check_nm_consistency(p, q).status == Status.PRECONDITION_UNMET
    try:
        revise(p, q)
        fails = False
    except RevisionFailure:
        fails = True
    checks["x=[1,1]"] = unmet and fails
    # weak disjunction: P = P1 ∪ P2 on disjoint atoms, no dispositions linked
    p1 = parse_program("p1: a @ [1,1]. p2: b :- a @ [0.5,0.7].")
    p2 = parse_program("p3: c @ [1,1].")
    q = parse_program("q1: -a @ [1,1]. q2: -c @ [1,1].")
    whole = revise(p1.union(p2), q).program.rule_set()
    parts = revise(p1, q).program.rule_set() | revise(p2, q).program.rule_set()
    checks["weak disjunction"] = (whole == parts and
                                  check_weak_disjunction(p1, p2, q).status == Status.HOLDS)
    # weak parallelism: Q = Q1 ∪ Q2 on disjoint atoms, compared block-wise
    p = parse_program("p1: a @ [1,1]. p2: b @ [1,1]. p3: c :- a @ [0.5,0.6]. "
                      "p4: d :- b @ [0.5,0.6].")
    q1, q2 = parse_program("q1: -a @ [1,1]."), parse_program("q2: -b @ [1,1].")
    whole = revise(p, q1.union(q2)).program.rule_set()
    checks["weak parallelism"] = (whole == block_revision(p, q1, q2).rule_set() and
                                  check_weak_parallelism(p, q1, q2).status != Status.VIOLATED)
    ok = all(checks.values())
    return ok, ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in checks.items())


# -- 6. determinism -----------------------------------------------------------

def criterion_6(tmp: Path):
    (tmp / "p1.ulp").write_text(P1_TEXT)
    (tmp / "p2.ulp").write_text(P2_TEXT)
    cmd = [sys.executable, "-m", "unasp.cli", "revise", str(tmp / "p1.ulp"),
           str(tmp / "p2.ulp"), "--json"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(3)]
    same_cli = len(set(runs)) == 1
    same_lib = True
    for seed in range(30):
        p, q = generate_pair(GeneratorSpec(seed=seed))
        try:
            first = json.dumps(revise(p, q).to_json(), sort_keys=True)
        except RevisionFailure:
            continue
        semantics._cached.cache_clear()
        again = json.dumps(revise(parse_program(str(p)), parse_program(str(q))).to_json(),
                           sort_keys=True)
        same_lib = same_lib and first == again
    ok = same_cli and same_lib
    return ok, f"CLI runs identical={same_cli}, library runs on 30 pairs identical={same_lib}"


# -- pytest entry points ----------------------------------------------------

def _run(number, fn, *args):
    ok, detail = fn(*args)
    record(number, ok, detail)
    assert ok, RESULTS[number]


def test_criterion_1_worked_example():
    _run(1, criterion_1)


def test_criterion_2_interval_laws():
    _run(2, criterion_2)


def test_criterion_3_semantics():
    _run(3, criterion_3)


def test_criterion_4_postulate_campaign():
    _run(4, criterion_4)


def test_criterion_5_theorem_fixtures():
    _run(5, criterion_5)


def test_criterion_6_determinism(tmp_path):
    _run(6, criterion_6, tmp_path)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        for n, fn, args in [(1, criterion_1, ()), (2, criterion_2, ()), (3, criterion_3, ()),
                            (4, criterion_4, ()), (5, criterion_5, ()),
                            (6, criterion_6, (Path(d),))]:
            ok, detail = fn(*args)
            record(n, ok, detail)
    sys.exit(0 if all(l.startswith("PASS") for l in RESULTS.values()) else 1)

import pytest

from unasp.program import parse_program

# Base of the worked example with the concrete weights used throughout.
P1_TEXT = """\
r11: p :- q, r @ [0.7,0.9].
r12: r :- s @ [0.8,0.9].
r13: q @ [0.75,0.9].
r14: -p :- t @ [1,1].
r15: s @ [1,1].
"""

# New base; r25 gives d a value so that r24 can fire against p.
P2_TEXT = """\
r21: p :- a, b @ [0.5,0.9].
r22: a :- c @ [0.9,1].
r23: b @ [0.9,1].
r24: -p :- d.
r25: d @ [0.36,0.36].
"""


@pytest.fixture
def p1():
    return parse_program(P1_TEXT)


@pytest.fixture
def p2():
    return parse_program(P2_TEXT)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

import math

import pytest
from hypothesis import given, strategies as st

from unasp import interval as iv
from unasp.interval import (CORRECTED, PAPER_LITERAL, XI, SentinelError, TruthInterval,
                            cneg, interval, interval_distance, k_aggregate, knowledge_le,
                            naf, tconorm, tnorm, truth_le)

I = TruthInterval
SENT = iv.CONTRADICTION


def close(x, y, tol=1e-12):
    return abs(x.lo - y.lo) <= tol and abs(x.hi - y.hi) <= tol


unit = st.floats(0, 1, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = draw(unit), draw(unit)
    return I(min(a, b), max(a, b))


def test_properties():
    x = I(0.2, 0.6)
    assert x.width == pytest.approx(0.4)
    assert x.midpoint == pytest.approx(0.4)
    assert x.is_regular
    assert not SENT.is_regular
    assert str(I(0.7, 0.9)) == "[0.7,0.9]"
    assert str(iv.TRUE) == "[1,1]"
    assert I(0.2, 0.6).to_json() == [0.2, 0.6]


def test_interval_constructor_validates():
    with pytest.raises(ValueError):
        interval(0.6, 0.2)
    with pytest.raises(ValueError):
        interval(-0.1, 0.5)
    assert interval(0, 1) == iv.UNKNOWN


@pytest.mark.parametrize("x, y, expected", [
    (I(0.2, 0.4), I(0.1, 0.6), True),
    (I(0.3, 0.3), I(0.3, 0.3), True),
    (I(0.5, 0.9), I(0.1, 0.3), False),
])
def test_truth_le(x, y, expected):
    assert truth_le(x, y) is expected


@pytest.mark.parametrize("x, y, expected", [
    (I(0.1, 0.9), I(0.4, 0.5), True),
    (I(0, 1), I(0.2, 0.2), True),
    (I(0.4, 0.5), I(0.1, 0.9), False),
])
def test_knowledge_le(x, y, expected):
    assert knowledge_le(x, y) is expected


def test_orderings_reject_sentinel():
    with pytest.raises(SentinelError, match="sentinel not ordered"):
        truth_le(SENT, iv.TRUE)
    with pytest.raises(SentinelError):
        knowledge_le(iv.TRUE, SENT)


def test_tnorm_and_tconorm():
    assert close(tnorm(I(0.5, 0.8), I(0.5, 1.0)), I(0.25, 0.8))
    assert close(tconorm(I(0.5, 0.8), I(0.5, 1.0)), I(0.75, 1.0))
    x = I(0.3, 0.65)
    assert close(tnorm(x, iv.TRUE), x)
    assert close(tnorm(x, iv.FALSE), iv.FALSE)
    assert close(tconorm(x, iv.FALSE), x)
    assert close(tconorm(x, iv.TRUE), iv.TRUE)


def test_negations():
    assert close(cneg(I(0.3, 0.7)), I(0.3, 0.7))
    assert cneg(iv.TRUE) == iv.FALSE
    assert naf(iv.UNKNOWN) == iv.TRUE
    assert naf(iv.TRUE) == iv.FALSE
    assert close(naf(I(0.3, 0.7)), I(0.7, 0.7))


def test_k_aggregate():
    assert k_aggregate(I(0.8, 0.9), I(0.1, 0.5)) == I(0.8, 0.9)
    assert k_aggregate(I(0.1, 0.5), I(0.8, 0.9)) == I(0.8, 0.9)
    assert k_aggregate(I(0.2, 0.4), I(0.2, 0.4)) == I(0.2, 0.4)
    assert k_aggregate(iv.TRUE, iv.FALSE) == I(XI, XI)
    assert k_aggregate(iv.TRUE, iv.FALSE, xi=50.0) == I(50.0, 50.0)


def test_sentinel_propagates():
    for op in (tnorm, tconorm, k_aggregate):
        assert not op(SENT, I(0.2, 0.3)).is_regular
        assert not op(I(0.2, 0.3), SENT).is_regular
    assert not cneg(SENT).is_regular
    assert not naf(SENT).is_regular
    assert not iv.tnorm_all([iv.TRUE, SENT, iv.FALSE]).is_regular


def test_distance_variants():
    x = I(0.2, 0.6)
    assert interval_distance(x, x) == 0
    assert interval_distance(iv.FALSE, iv.TRUE) == 1
    # the printed variant only sees widths, so it is nonzero on equal arguments
    assert interval_distance(x, x, PAPER_LITERAL) == pytest.approx(0.4)
    with pytest.raises(ValueError):
        interval_distance(x, x, "euclid")
    with pytest.raises(SentinelError):
        interval_distance(x, SENT)


@given(intervals(), intervals(), intervals())
def test_algebra_laws(x, y, z):
    assert close(tnorm(x, y), tnorm(y, x))
    assert close(tconorm(x, y), tconorm(y, x))
    assert close(tnorm(tnorm(x, y), z), tnorm(x, tnorm(y, z)))
    assert close(tconorm(tconorm(x, y), z), tconorm(x, tconorm(y, z)))
    assert close(cneg(tnorm(x, y)), tconorm(cneg(x), cneg(y)))
    assert close(cneg(cneg(x)), x)
    assert close(naf(naf(x)), I(x.lo, x.lo))
    # ties within eps return the first operand, so symmetry holds up to eps
    assert close(k_aggregate(x, y), k_aggregate(y, x), iv.EPS)


@given(intervals(), intervals(), intervals())
def test_knowledge_order_is_total_preorder(x, y, z):
    assert knowledge_le(x, x)
    assert knowledge_le(x, y) or knowledge_le(y, x)
    if knowledge_le(x, y) and knowledge_le(y, z):
        assert knowledge_le(x, z)
    assert knowledge_le(iv.UNKNOWN, x)
    assert knowledge_le(x, I(x.lo, x.lo))


@given(intervals(), intervals(), intervals())
def test_corrected_distance_is_metric(x, y, z):
    d = interval_distance
    assert d(x, y) == pytest.approx(d(y, x))
    assert 0 <= d(x, y) <= 1
    assert d(x, z) <= d(x, y) + d(y, z) + 1e-12
    if d(x, y) == 0:
        assert close(x, y)
    assert 0 <= interval_distance(x, y, PAPER_LITERAL) <= 1

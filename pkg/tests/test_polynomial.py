import pytest
from hypothesis import given
from hypothesis import strategies as st

from artinrun.polynomial import Polynomial, PolynomialRangeError, eval_poly

from .conftest import RECORD_F, RECORD_H, RECORD_SHIFT


def test_eval_examples():
    f = Polynomial((3, 2))
    assert f(0) == 3 and f(5) == 13
    assert eval_poly(RECORD_F, 0) == 182215381147285848449


def test_record_identity():
    assert 32 * 620651**2 + 182215368820640606817 == 182215381147285848449
    assert 64 * 620651 == 39721664


def test_record_depressed_form():
    s, h = RECORD_F.depressed()
    assert s == RECORD_SHIFT
    assert h == RECORD_H
    for x in (0, 1, 53, 10**6, 1128633):
        assert RECORD_F(x) == RECORD_H(x + RECORD_SHIFT)


def test_depressing_shift_absent():
    assert Polynomial((1, 1)).depressing_shift() == 0
    assert Polynomial((1, 1, 1)).depressing_shift() == 0  # 1/2 not integral
    assert Polynomial((1, -4, 1)).depressing_shift() == 0  # would be negative
    assert Polynomial((0, 0, 6, 2)).depressing_shift() == 1


coeffs = st.integers(-(10**6), 10**6)
polys = st.lists(coeffs, min_size=2, max_size=4).filter(lambda c: c[-1] != 0).map(
    lambda c: Polynomial(tuple(c))
)


@given(polys, st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_taylor_shift(f, t, x):
    assert f.taylor_shift(t)(x) == f(x + t)


@given(polys, st.integers(0, 200), st.integers(0, 60))
def test_increments_sign_matches_brute_force(f, start, width):
    stop = start + width
    diffs = [f(n + 1) - f(n) for n in range(start, stop - 1)]
    if all(d > 0 for d in diffs):
        expected = 1
    elif all(d < 0 for d in diffs):
        expected = -1
    else:
        expected = 0
    assert f.increments_sign(start, stop) == expected


@given(polys)
def test_parse_spec_round_trip(f):
    assert Polynomial.parse(f.spec()) == f


def test_str():
    assert str(RECORD_F) == "32*X^2 + 39721664*X + 182215381147285848449"
    assert str(Polynomial((-1, 0, -1))) == "-X^2 - 1"
    assert str(Polynomial((0, 1))) == "X"


@pytest.mark.parametrize("text", ["", "1,", ",1", "1,,2", "a,b", "5", "1,2,3,4,5", "1,0"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        Polynomial.parse(text)


def test_coefficient_width():
    with pytest.raises(ValueError):
        Polynomial((1 << 70, 1))


def test_eval_range_error():
    with pytest.raises(PolynomialRangeError):
        eval_poly(RECORD_H, 10**11)
    with pytest.raises(ValueError):
        eval_poly(RECORD_H, -1)

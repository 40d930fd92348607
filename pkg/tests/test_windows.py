from math import comb

import pytest
from hypothesis import given, strategies as st

from qring import windows as W
from qring.errors import InvalidWindow
from qring.rings import Integers, Modular, Polynomial


def _poly_window_size(nvars, max_degree, ncoeffs, max_terms):
    # monomials of total degree <= d in k variables, then choose up to max_terms of them
    monos = comb(max_degree + nvars, nvars)
    return sum(comb(monos, t) * ncoeffs ** t for t in range(max_terms + 1))


@given(st.integers(1, 3), st.integers(0, 3), st.lists(st.integers(-3, 3).filter(bool), min_size=1, max_size=3, unique=True))
def test_poly_window_is_closed_and_counted(nvars, deg, coeffs):
    coeffs = sorted(set(coeffs) | {-c for c in coeffs} | {1, -1})
    R = Polynomial(["X", "Y", "Z"][:nvars])
    w = W.poly_window(R, deg, coeffs)
    els = list(w)
    assert len(els) == _poly_window_size(nvars, deg, len(coeffs), 2)
    assert len(set(els)) == len(els)
    s = set(els)
    assert R.zero() in s and R.one() in s
    assert all(R.neg(f) in s for f in els)
    assert all(R.degree(f) <= deg for f in els if f)


def test_sec3_window_size():
    R = Polynomial(["X", "Y"])
    assert len(W.poly_window(R, 3, [-2, -1, 1, 2])) == 761


def test_poly_window_order_starts_small():
    R = Polynomial(["X"])
    w = W.poly_window(R, 1, [2, -1, 1, -2])
    assert [R.format(f) for f in list(w)[:5]] == ["0", "1", "-1", "2", "-2"]


@given(st.integers(1, 30))
def test_interval_windows(k):
    w = W.interval(Integers(), -k, k)
    assert list(w) == list(range(-k, k + 1))
    assert not w.exhaustive


@given(st.integers(-30, -1), st.integers(1, 30))
def test_asymmetric_interval_is_not_closed_under_negation(lo, hi):
    if lo != -hi:
        with pytest.raises(InvalidWindow, match="negation"):
            W.interval(Integers(), lo, hi)


def test_full_window_is_exhaustive():
    w = W.full(Modular(5))
    assert w.exhaustive and list(w) == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("elements, message", [
    ([0, 1, 2], "-1"),
    ([1, -1, 2, -2], "0"),
    ([0, 1, -1, 0], "duplicate"),
])
def test_explicit_window_validation(elements, message):
    with pytest.raises(InvalidWindow, match=message):
        W.explicit(Integers(), elements)


def test_invalid_interval_and_kind_mismatch():
    with pytest.raises(InvalidWindow):
        W.interval(Integers(), 0, 5)
    with pytest.raises(InvalidWindow):
        W.interval(Polynomial(["X"]), -1, 1)
    with pytest.raises(InvalidWindow):
        W.poly_window(Integers(), 2, [1])
    with pytest.raises(InvalidWindow):
        W.default_window(Integers())


def test_window_describe():
    assert W.interval(Integers(), -3, 3).describe() == {"kind": "interval", "lo": -3, "hi": 3}
    d = W.poly_window(Polynomial(["X"]), 2, [-1, 1]).describe()
    assert d["kind"] == "poly" and d["max_degree"] == 2

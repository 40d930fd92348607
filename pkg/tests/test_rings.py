import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qring.errors import InvalidIdeal, StructuralError
from qring.rings import Ideal, Integers, Modular, Polynomial, Product, TableRing, is_prime_ideal

from conftest import distinct_prime_divisors


def finite_rings():
    return st.one_of(
        st.integers(2, 15).map(Modular),
        st.tuples(st.integers(2, 4), st.integers(2, 4)).map(lambda t: Product([Modular(t[0]), Modular(t[1])])),
    )


@given(finite_rings(), st.data())
def test_finite_ring_axioms(R, data):
    els = R.elements()
    a, b, c = (data.draw(st.sampled_from(els)) for _ in range(3))
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, b) == R.mul(b, a)
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == R.zero()
    assert R.mul(a, R.one()) == a


coeffs = st.integers(-3, 3) | st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def polys(draw, R):
    f = R.zero()
    for _ in range(draw(st.integers(0, 3))):
        exps = tuple(draw(st.integers(0, 3)) for _ in R.variables)
        f = R.add(f, R.monomial(exps, draw(coeffs)))
    return f


XY = Polynomial(["X", "Y"])


@given(polys(XY), polys(XY), polys(XY))
def test_polynomial_ring_axioms(f, g, h):
    R = XY
    assert R.add(f, g) == R.add(g, f)
    assert R.mul(f, g) == R.mul(g, f)
    assert R.mul(f, R.add(g, h)) == R.add(R.mul(f, g), R.mul(f, h))
    assert R.is_zero(R.sub(f, f))
    if not R.is_zero(f) and not R.is_zero(g):
        assert R.degree(R.mul(f, g)) == R.degree(f) + R.degree(g)


@given(polys(XY))
def test_polynomial_json_and_text_roundtrip(f):
    assert XY.from_json(XY.to_json(f)) == f
    assert XY.parse(XY.format(f)) == f


def test_polynomial_format_examples():
    R = XY
    X, Y = R.var("X"), R.var("Y")
    assert R.format(R.mul(X, X)) == "X^2"
    assert R.format(R.sub(Y, R.mul(X, Y))) == "-X*Y + Y"
    assert R.parse("1/2*X^2 - 3") == R.add(R.monomial((2, 0), Fraction(1, 2)), R.const(-3))


def test_elements_outside_the_ring_are_rejected():
    with pytest.raises(StructuralError):
        Modular(6).add(7, 1)
    with pytest.raises(StructuralError):
        Integers().add(1.5, 1)


def test_table_ring_from_tables_matches_z2():
    R = TableRing([[0, 1], [1, 0]], [[0, 0], [0, 1]])
    assert R.size == 2 and R.is_field()
    with pytest.raises(StructuralError):
        TableRing([[0, 1], [0, 1]], [[0, 0], [0, 1]])


@pytest.mark.parametrize("n", range(2, 31))
def test_prime_ideals_of_zmod_are_generated_by_prime_divisors(n):
    R = Modular(n)
    for g in range(n):
        I = Ideal(R, [g])
        ok, _ = is_prime_ideal(R, I)
        # (g) = (gcd(g, n)); prime iff that gcd is a prime divisor, or n itself is prime and g = 0
        d = math.gcd(g, n)
        expected = d in distinct_prime_divisors(n) or (d == n and n in distinct_prime_divisors(n))
        assert ok == expected, (n, g)


def test_non_prime_ideal_has_a_witness():
    R = Modular(12)
    ok, wit = is_prime_ideal(R, Ideal(R, [4]))
    assert not ok
    a, b = wit
    assert R.mul(a, b) % 4 == 0 and a % 4 and b % 4


def test_integer_ideals():
    Z = Integers()
    assert is_prime_ideal(Z, Ideal(Z, [0]))[0]
    assert is_prime_ideal(Z, Ideal(Z, [7]))[0]
    assert not is_prime_ideal(Z, Ideal(Z, [6]))[0]
    assert not is_prime_ideal(Z, Ideal(Z, [1]))[0]
    assert Ideal(Z, [4, 6]).contains(-2)


def test_polynomial_variable_ideal_is_prime():
    R = XY
    I = Ideal(R, [R.var("X")])
    assert is_prime_ideal(R, I)[0]
    assert I.contains(R.mul(R.var("X"), R.var("Y")))
    assert not I.contains(R.var("Y"))


def test_from_elements_rejects_non_ideal_set():
    with pytest.raises(InvalidIdeal) as info:
        Ideal.from_elements(Modular(6), [0, 1, 2])
    assert info.value.witness[0] in ("sum", "product")


def test_from_elements_finds_a_single_generator():
    I = Ideal.from_elements(Modular(12), [0, 3, 6, 9])
    assert I.generators == (3,)

from hypothesis import given
from hypothesis import strategies as st

from glkac.qpoly import ONE, Q, ZERO, QPolynomial, inverse_power_series, minus_q_power

polys = st.lists(st.integers(-5, 5), max_size=6).map(QPolynomial)


def test_trimming_and_str():
    p = QPolynomial([1, -3, 1, 0, 0])
    assert p.coeffs == (1, -3, 1)
    assert p.degree == 2
    assert str(p) == "1 - 3q + q^2"
    assert str(ZERO) == "0"
    assert str(minus_q_power(1)) == "-q"
    assert ZERO.degree == -1 or ZERO.degree is None or ZERO.degree < 0


def test_equality_with_ints():
    assert QPolynomial([4]) == 4
    assert ZERO == 0
    assert Q != 1


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys, st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


def test_powers():
    assert (ONE - Q) ** 3 == QPolynomial([1, -3, 3, -1])
    assert minus_q_power(3) == QPolynomial([0, 0, 0, -1])
    assert QPolynomial.monomial(2, 5) == QPolynomial([0, 0, 5])


@given(st.integers(0, 5), st.integers(0, 8))
def test_inverse_power_series(r, degree):
    inv = inverse_power_series(r, degree)
    assert ((ONE - Q) ** r * inv).truncate(degree) == ONE

import itertools

import pytest
from hypothesis import given, settings

from conftest import any_weights, dominant_weights
from glkac.errors import CapExceededError, OrderError, ShapeError, WeightParseError
from glkac.weights import (
    Superalgebra,
    Weight,
    bilinear_form,
    dominant_rep,
    dot_dominant,
    enumerate_interval,
    format_weight,
    height,
    is_dominant,
    linear_extension_key,
    lowest_weight,
    odd_root_weight,
    order_window,
    parse_weight,
    partial_leq,
    rho_tilde,
    simple_root_coords,
    two_rho_one,
)


def test_rho_and_two_rho_one():
    assert rho_tilde(4, 5) == Weight((3, 2, 1, 0), (0, -1, -2, -3, -4))
    assert two_rho_one(2, 3) == Weight((3, 3), (-2, -2, -2))
    # 2 rho_1 is the sum of the odd positive roots
    total = Weight.from_vector([0] * 5, 2)
    for i in (1, 2):
        for j in (1, 2, 3):
            total = total + odd_root_weight(2, 3, i, j)
    assert total == two_rho_one(2, 3)


def test_odd_root_pairing_convention():
    x = Weight((5, 7), (11, 13, 17))
    b = odd_root_weight(2, 3, 2, 3)
    assert b == Weight((0, 1), (0, 0, -1))
    # (x, beta_ij) = x_i + x'_j
    assert bilinear_form(x, b) == 7 + 17


def test_superalgebra_roots():
    g = Superalgebra(2, 2)
    assert len(g.odd_roots()) == 4
    assert len(g.even_positive_roots()) == 2
    assert len(g.simple_roots()) == 3
    assert g.beta(1, 2) == odd_root_weight(2, 2, 1, 2)
    with pytest.raises(ValueError):
        Superalgebra(0, 2)


def test_weight_arithmetic_shapes():
    a = Weight((1, 0), (0,))
    with pytest.raises(ShapeError):
        a + Weight((1,), (0, 0))
    assert a * 3 - a == a * 2
    assert -a + a == Weight((0, 0), (0,))
    assert Weight.from_json(a.to_json()) == a


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2,1,0,0|0,-2,-2,-2,-2", Weight((2, 1, 0, 0), (0, -2, -2, -2, -2))),
        ("(2,1; -1,-2)", Weight((2, 1), (-1, -2))),
        (" 0 | 0 ", Weight((0,), (0,))),
    ],
)
def test_parse_weight(text, expected):
    assert parse_weight(text) == expected


@pytest.mark.parametrize("bad", ["", "1,2", "1,x|0", "|1", "1|", "1|2|3"])
def test_parse_weight_rejects(bad):
    with pytest.raises(WeightParseError):
        parse_weight(bad)


def test_parse_weight_arity():
    with pytest.raises(WeightParseError):
        parse_weight("1,0|0", (2, 2))


@given(any_weights(3, 2))
def test_format_parse_roundtrip(w):
    assert parse_weight(format_weight(w)) == w
    assert parse_weight(format_weight(w, "tuple")) == w


def _brute_leq(a, b):
    # b - a is a nonnegative integer combination of the simple roots
    diff = [y - x for x, y in zip(a.vector, b.vector)]
    if sum(diff):
        return False
    pref = list(itertools.accumulate(diff))[:-1]
    return all(p >= 0 for p in pref)


@given(any_weights(2, 2, -2, 2), any_weights(2, 2, -2, 2), any_weights(2, 2, -2, 2))
def test_partial_order_axioms(a, b, c):
    assert partial_leq(a, a)
    if partial_leq(a, b) and partial_leq(b, a):
        assert a == b
    if partial_leq(a, b) and partial_leq(b, c):
        assert partial_leq(a, c)
    if partial_leq(a, b):
        assert height(a, b) >= 0
        assert sum(simple_root_coords(b - a)) == height(a, b)


def test_simple_root_coords_non_root_lattice():
    assert simple_root_coords(Weight((1, 0), (0, 0))) is None


@settings(max_examples=25)
@given(dominant_weights(shapes=((1, 1), (2, 1), (1, 2)), lo=-2, hi=2))
def test_enumerate_interval_matches_brute_force(hi):
    lo = lowest_weight(hi) - two_rho_one(*hi.shape)
    got = enumerate_interval(lo, hi)
    m, n = hi.shape
    both = lo.vector + hi.vector
    pad = height(lo, hi)
    rng = range(min(both) - pad, max(both) + pad + 1)
    brute = []
    for vec in itertools.product(rng, repeat=m + n):
        w = Weight.from_vector(vec, m)
        if is_dominant(w) and _brute_leq(lo, w) and _brute_leq(w, hi):
            brute.append(w)
    assert set(got) == set(brute)
    assert len(got) == len(set(got))
    # linear extension: never a larger weight after a smaller one
    for x, y in itertools.combinations(got, 2):
        assert not (partial_leq(x, y) and x != y)
    assert got == sorted(got, key=linear_extension_key)


def test_enumerate_interval_errors():
    hi = Weight((0, 0), (0, 0))
    with pytest.raises(OrderError):
        enumerate_interval(hi, Weight((-1, -1), (1, 1)))
    with pytest.raises(CapExceededError):
        enumerate_interval(Weight((-5, -5), (5, 5)), hi, cap=3)


def test_order_window_is_union():
    bottoms = [Weight((-1, -1), (1, 1)), Weight((0, -2), (2, 0))]
    top = Weight((0, 0), (0, 0))
    win = order_window(bottoms, [top])
    assert set(win) == set(enumerate_interval(bottoms[0], top)) | set(enumerate_interval(bottoms[1], top))


@given(dominant_weights())
def test_dot_dominant_fixes_dominant(w):
    assert dot_dominant(w) == w


@given(any_weights(2, 3))
def test_dot_dominant_result(w):
    out = dot_dominant(w)
    if out is not None:
        assert is_dominant(out)
        # the dot action preserves the bilinear pairing with 2 rho_1 up to the W-invariant part
        assert sum(out.eps) == sum(w.eps) and sum(out.delta) == sum(w.delta)
    assert is_dominant(dominant_rep(w))


def test_dot_dominant_tie_is_undefined():
    # eps + rho has a repeated entry -> singular
    assert dot_dominant(Weight((0, 1), (0,))) is None
    assert dot_dominant(Weight((-1, 1), (0,))) == Weight((0, 0), (0,))

import itertools
from collections import Counter

import pytest
from hypothesis import given, settings

from conftest import blocks, dominant_weights
from glkac.atypicality import nabla_profile
from glkac.characters import (
    CharacterMap,
    block_character,
    char_g0,
    char_kac,
    char_simple,
    convolve,
    decompose_g0,
    linear_combination,
    odd_factor,
    smallest_constituent,
    verify_kac_decomposition,
    weyl_dimension,
)
from glkac.config import override
from glkac.errors import CapExceededError, NotDominantError
from glkac.weights import Weight, lowest_weight, two_rho_one


def _gt_brute(top):
    """Weights of a gl(k) module by listing every Gelfand-Tsetlin pattern."""
    k = len(top)
    out = Counter()

    def rec(rows):
        cur = rows[-1]
        if len(cur) == 1:
            sums = [sum(r) for r in rows] + [0]
            out[tuple(sums[k - 1 - i] - sums[k - i] for i in range(k))] += 1
            return
        for nxt in itertools.product(*[range(cur[i + 1], cur[i] + 1) for i in range(len(cur) - 1)]):
            rec(rows + [nxt])

    rec([tuple(top)])
    return dict(out)


@pytest.mark.parametrize("top", [(2, 1, 0), (3, 1, 1), (2, 2, 0, -1), (1, 0)])
def test_block_character_matches_patterns(top):
    w, c = block_character(top)
    got = {tuple(x): int(y) for x, y in zip(w.tolist(), c.tolist())}
    assert got == _gt_brute(top)


def test_kostka_number():
    w, c = block_character((2, 1, 0))
    got = {tuple(x): int(y) for x, y in zip(w.tolist(), c.tolist())}
    assert got[(1, 1, 1)] == 2
    assert sum(got.values()) == 8


@settings(max_examples=30)
@given(blocks(3, -3, 3))
def test_weyl_dimension(top):
    w, c = block_character(top)
    assert int(c.sum()) == weyl_dimension(top)


def test_block_character_rejects_nondominant():
    with pytest.raises(NotDominantError):
        block_character((0, 1))


def test_pattern_cap():
    with override(patterns=5):
        with pytest.raises(CapExceededError):
            block_character((3, 0, 0))


def test_odd_factor_and_kac_dimension():
    assert odd_factor(2, 2).total() == 16
    lam = Weight((2, 1), (0, -1))
    assert char_kac(lam).total() == 16 * char_g0(lam).total()
    with override(odd_factor=8):
        odd_factor.cache_clear()
        with pytest.raises(CapExceededError):
            odd_factor(2, 2)
    odd_factor.cache_clear()


def test_gl11_kac_module():
    assert char_kac(Weight((0,), (0,))).to_dict() == {Weight((0,), (0,)): 1, Weight((-1,), (1,)): 1}


@pytest.mark.parametrize("a", range(-5, 6))
def test_gl11_simple_is_one_dimensional(a):
    mu = Weight((a,), (-a,))
    assert char_simple(mu).to_dict() == {mu: 1}


@settings(max_examples=20)
@given(dominant_weights(shapes=((1, 1), (2, 1), (1, 2)), lo=-3, hi=3))
def test_typical_simple_equals_kac(mu):
    if nabla_profile(mu).typical:
        assert char_simple(mu) == char_kac(mu)


@settings(max_examples=20)
@given(dominant_weights(shapes=((1, 1), (2, 1), (1, 2), (2, 2)), lo=-2, hi=2))
def test_simple_character_properties(mu):
    chi = char_simple(mu)
    assert chi.nonnegative
    assert chi[mu] == 1
    dec = decompose_g0(chi)
    assert all(c > 0 for c in dec.values())
    low = smallest_constituent(dec)
    assert low == nabla_profile(mu).mu_zero
    assert dec[low] == 1
    # every weight lies between the lowest Kac weight and mu
    lo = lowest_weight(mu) - two_rho_one(*mu.shape)
    assert chi.restrict_above(lo) == chi


@settings(max_examples=20)
@given(dominant_weights(shapes=((1, 1), (2, 1), (1, 2)), lo=-2, hi=2))
def test_kac_decomposition(lam):
    rep = verify_kac_decomposition(lam)
    assert rep.equal, rep.mismatches


def test_decompose_g0_roundtrip():
    a = Weight((2, 0), (1, -1))
    b = Weight((1, 1), (0, 0))
    chi = linear_combination([(2, char_g0(a)), (1, char_g0(b))])
    assert decompose_g0(chi) == {a: 2, b: 1}


def test_character_map_algebra():
    m, n = 1, 1
    x = CharacterMap.from_dict(m, n, {Weight((1,), (0,)): 2, Weight((0,), (1,)): -1})
    y = CharacterMap.from_dict(m, n, {Weight((0,), (0,)): 1, Weight((-1,), (1,)): 1})
    assert (x - x).total() == 0 and len(x - x) == 0
    assert (x + x) == x.scaled(2)
    prod = convolve(x, y)
    assert prod.to_dict() == {
        Weight((1,), (0,)): 2,
        Weight((0,), (1,)): 1,
        Weight((-1,), (2,)): -1,
    }
    assert not prod.nonnegative
    assert CharacterMap.from_json(m, n, prod.to_json()) == prod
    js = prod.to_json()
    assert js["exact"] is True and [t["mult"] for t in js["terms"]]


def test_arrays_are_read_only():
    chi = char_g0(Weight((1, 0), (0,)))
    with pytest.raises(ValueError):
        chi.mults[0] = 7

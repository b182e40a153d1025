import pytest
from hypothesis import given, settings

from conftest import atypical_weights, dominant_weights
from glkac.atypicality import (
    OddRoot,
    atypicality_matrix,
    connectedness,
    degree_of_atypicality,
    delta_set,
    delta_set_oracle,
    gamma_chain,
    mu_zero,
    nabla_profile,
    odd_reflection_walk,
    root_leq,
    root_pairing,
    walk_final_rho,
)
from glkac.errors import CapExceededError, NotDominantError
from glkac.weights import Weight, bilinear_form, is_dominant, odd_root_weight, parse_weight, rho_tilde

MU = parse_weight("2,1,0,0|0,-2,-2,-2,-2")
R = OddRoot


def test_worked_example_matrix():
    assert atypicality_matrix(MU).tolist() == [
        [5, 2, 1, 0, -1],
        [3, 0, -1, -2, -3],
        [1, -2, -3, -4, -5],
        [0, -3, -4, -5, -6],
    ]


def test_worked_example_profile():
    p = nabla_profile(MU)
    assert p.gamma == (R(4, 1), R(2, 2), R(1, 4))
    assert set(p.delta_sets[0]) == {R(4, 1), R(3, 1), R(2, 2), R(2, 3), R(2, 4), R(2, 5), R(1, 3), R(1, 4), R(1, 5)}
    assert set(p.delta_sets[1]) == {R(2, 2), R(2, 3), R(2, 4), R(2, 5), R(1, 3), R(1, 4), R(1, 5)}
    assert set(p.delta_sets[2]) == {R(1, 4), R(1, 5)}
    assert set(p.nabla_sets[0]) == {R(4, 1), R(3, 1)}
    assert set(p.nabla_sets[1]) == {R(2, 2), R(2, 3), R(2, 4), R(2, 5), R(1, 3)}
    assert set(p.nabla_sets[2]) == {R(1, 4), R(1, 5)}
    assert p.k == (2, 5, 2)
    assert p.mu_zero == parse_weight("0,0,-4,-4|2,1,0,0,0")
    assert not p.connected[0][1] and not p.connected[0][2] and p.connected[1][2]
    assert connectedness(MU) == p.connected


def test_worked_example_walk():
    final, steps = odd_reflection_walk(MU)
    assert final == parse_weight("0,0,-4,-4|2,1,0,0,0")
    assert len(steps) == 20
    assert steps[-1].rho == walk_final_rho(4, 5)


def test_matrix_is_pairing_with_shifted_weight():
    shifted = MU + rho_tilde(4, 5)
    mat = atypicality_matrix(MU)
    for i in range(1, 5):
        for j in range(1, 6):
            assert mat[i - 1, j - 1] == bilinear_form(shifted, odd_root_weight(4, 5, i, j))


def test_root_order_and_pairing():
    assert root_leq(R(2, 2), R(1, 4))
    assert not root_leq(R(1, 4), R(2, 2))
    assert root_pairing(R(1, 2), R(1, 3)) == 1
    assert root_pairing(R(1, 2), R(2, 2)) == -1
    assert root_pairing(R(1, 2), R(1, 2)) == 0


def test_typical_and_gl11():
    p = nabla_profile(Weight((3,), (1,)))
    # no Delta set, so every odd root is subtracted: mu_0 = mu - 2 rho_1
    assert p.typical and p.r == 0 and p.mu_zero == Weight((2,), (2,))
    q = nabla_profile(Weight((2,), (-2,)))
    assert q.gamma == (R(1, 1),) and q.k == (1,)


def test_requires_dominant():
    with pytest.raises(NotDominantError):
        nabla_profile(Weight((0, 1), (0, 0)))


def test_oracle_cap():
    with pytest.raises(CapExceededError):
        delta_set_oracle(MU, R(4, 1), cap=2)


@given(atypical_weights())
def test_rule_matches_oracle(mu):
    for g in gamma_chain(mu):
        rule = delta_set(mu, g)
        oracle = delta_set_oracle(mu, g)
        assert set(rule) == set(oracle)
        assert rule[0] == g


@given(dominant_weights())
def test_profile_invariants(mu):
    p = nabla_profile(mu)
    m, n = mu.shape
    assert p.r == degree_of_atypicality(mu) <= min(m, n)
    # gamma chain strictly increasing in the root order
    for a, b in zip(p.gamma, p.gamma[1:]):
        assert root_leq(a, b) and a != b
    shifted = mu + rho_tilde(m, n)
    for g in p.gamma:
        assert bilinear_form(shifted, g.weight(m, n)) == 0
    # Delta sets are nested and the nabla sets are their successive differences
    for i, d in enumerate(p.delta_sets):
        nxt = set(p.delta_sets[i + 1]) if i + 1 < p.r else set()
        assert nxt <= set(d)
        assert set(p.nabla_sets[i]) == set(d) - nxt
        assert p.k[i] == len(p.nabla_sets[i])
    assert is_dominant(p.mu_zero)


@settings(max_examples=100)
@given(dominant_weights())
def test_mu_zero_agrees_with_walk(mu):
    assert mu_zero(mu) == odd_reflection_walk(mu)[0]


def test_json_shape():
    js = nabla_profile(MU).to_json()
    assert js["gamma"] == [[4, 1], [2, 2], [1, 4]]
    assert js["k"] == [2, 5, 2]
    assert js["mu_zero"] == parse_weight("0,0,-4,-4|2,1,0,0,0").to_json()

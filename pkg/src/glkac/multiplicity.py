"""Composition-factor columns: for dominant mu, the weights lambda with [V_lambda : L_mu] != 0.

The column of mu is indexed by theta in {0,1}^r.  Each theta gives the
weight ``dot_dominant(mu + sum theta_i k_i gamma_i)``, with multiplicity 1
and q-coefficient ``(-q)^|theta|``.  Anything inconsistent (undefined dot
map, non-dominant or colliding weights, weights outside [mu, mu_0 + 2 rho_1])
raises ConjectureFalsified instead of being dropped.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

from .atypicality import AtypicalityProfile, nabla_profile
from .errors import ConjectureFalsified, NotDominantError
from .qpoly import ONE, QPolynomial, minus_q_power
from .weights import (
    Weight,
    dot_dominant,
    enumerate_interval,
    is_dominant,
    lowest_weight,
    partial_leq,
    two_rho_one,
)


@dataclass(frozen=True)
class ColumnEntry:
    theta: tuple[int, ...]
    mu_theta: Weight
    lambda_theta: Weight
    coeff: QPolynomial


@dataclass(frozen=True)
class MultiplicityColumn:
    mu: Weight
    entries: tuple[ColumnEntry, ...]
    profile: AtypicalityProfile

    def __len__(self):
        return len(self.entries)

    def as_dict(self) -> dict[Weight, QPolynomial]:
        return {e.lambda_theta: e.coeff for e in self.entries}

    def weights(self) -> list[Weight]:
        return [e.lambda_theta for e in self.entries]

    def coefficient_sum(self) -> QPolynomial:
        total = QPolynomial()
        for e in self.entries:
            total = total + e.coeff
        return total

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "r": self.profile.r,
            "k": list(self.profile.k),
            "entries": [
                {
                    "theta": list(e.theta),
                    "mu_theta": e.mu_theta.to_json(),
                    "lambda_theta": e.lambda_theta.to_json(),
                    "coeff": e.coeff.to_list(),
                }
                for e in self.entries
            ],
        }


def thetas(r: int):
    """All theta in {0,1}^r, ordered by |theta| then lexicographically descending.

    For r = 3 this is (000), (100), (010), (001), (110), (101), (011), (111).
    """
    return sorted(itertools.product((0, 1), repeat=r), key=lambda t: (sum(t), [-x for x in t]))


def mu_theta(mu: Weight, theta: Sequence[int], profile: AtypicalityProfile | None = None) -> Weight:
    profile = profile or nabla_profile(mu)
    if len(theta) != profile.r:
        raise ValueError(f"theta has length {len(theta)}, expected r = {profile.r}")
    m, n = mu.shape
    w = mu
    for t, k, g in zip(theta, profile.k, profile.gamma):
        if t:
            w = w + k * g.weight(m, n)
    return w


def lambda_theta(mu: Weight, theta: Sequence[int], profile: AtypicalityProfile | None = None) -> Weight:
    """dot_dominant(mu + sum theta_i k_i gamma_i)."""
    if not is_dominant(mu):
        raise NotDominantError(f"{mu} is not dominant")
    theta = tuple(int(t) for t in theta)
    if any(t not in (0, 1) for t in theta):
        raise ValueError(f"theta must be a 0/1 sequence, got {theta}")
    src = mu_theta(mu, theta, profile)
    lam = dot_dominant(src)
    if lam is None:
        raise ConjectureFalsified("dot_dominant undefined", mu, theta, f"mu_theta = {src}")
    if not is_dominant(lam):
        raise ConjectureFalsified("lambda_theta not dominant", mu, theta, str(lam))
    return lam


def _build(mu: Weight, profile: AtypicalityProfile, unit: bool) -> MultiplicityColumn:
    top = profile.mu_zero + two_rho_one(*mu.shape)
    entries = []
    seen: dict[Weight, tuple[int, ...]] = {}
    for theta in thetas(profile.r):
        lam = lambda_theta(mu, theta, profile)
        if lam in seen:
            raise ConjectureFalsified(
                "lambda_theta collision", mu, theta, f"{lam} also from theta={seen[lam]}"
            )
        seen[lam] = theta
        if not (partial_leq(mu, lam) and partial_leq(lam, top)):
            raise ConjectureFalsified(
                "lambda_theta outside [mu, mu_0 + 2 rho_1]", mu, theta, f"{lam} vs top {top}"
            )
        coeff = ONE if unit else minus_q_power(sum(theta))
        entries.append(ColumnEntry(theta, mu_theta(mu, theta, profile), lam, coeff))
    return MultiplicityColumn(mu, tuple(entries), profile)


@functools.lru_cache(maxsize=65536)
def column(mu: Weight) -> MultiplicityColumn:
    """Column with every coefficient 1 (the q = 1 multiplicities)."""
    if not is_dominant(mu):
        raise NotDominantError(f"{mu} is not dominant")
    return _build(mu, nabla_profile(mu), unit=True)


@functools.lru_cache(maxsize=65536)
def column_q(mu: Weight) -> MultiplicityColumn:
    """Column with coefficients (-q)^|theta|."""
    if not is_dominant(mu):
        raise NotDominantError(f"{mu} is not dominant")
    return _build(mu, nabla_profile(mu), unit=False)


def row_window(lam: Weight) -> list[Weight]:
    """Dominant weights between the lowest weight of V_lambda and lambda."""
    lo = lowest_weight(lam) - two_rho_one(*lam.shape)
    return enumerate_interval(lo, lam, dominant_only=True)


def row(lam: Weight) -> dict[Weight, QPolynomial]:
    """Nonzero a_{lambda,mu}(q) for fixed lambda, read off the columns.

    Every composition factor L_mu of V_lambda has mu among the weights of
    V_lambda, so scanning the dominant weights of [w0 lambda - 2 rho_1, lambda]
    is exhaustive.
    """
    if not is_dominant(lam):
        raise NotDominantError(f"{lam} is not dominant")
    out = {}
    for mu in row_window(lam):
        coeff = column_q(mu).as_dict().get(lam)
        if coeff:
            out[mu] = coeff
    return out

"""Atypicality data of a dominant weight: the gamma-chain, Delta/nabla sets, k and mu_0."""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .config import caps
from .errors import CapExceededError, GlkacError, NotDominantError
from .weights import Weight, is_dominant, odd_root_weight, rho_tilde, two_rho_one


class InternalInconsistency(GlkacError):
    """A structural fact that should always hold did not (a bug or a counterexample)."""


class OddRoot(NamedTuple):
    """beta_{ij} = eps_i - delta_j, 1-based."""

    i: int
    j: int

    def weight(self, m: int, n: int) -> Weight:
        return odd_root_weight(m, n, self.i, self.j)

    def __str__(self):
        return f"b{self.i},{self.j}"


def root_leq(a: OddRoot, b: OddRoot) -> bool:
    """``a <= b`` in the root order: b - a is a sum of positive roots."""
    return b.i <= a.i and b.j >= a.j


def root_lt(a: OddRoot, b: OddRoot) -> bool:
    return a != b and root_leq(a, b)


def root_pairing(a: OddRoot, b: OddRoot) -> int:
    """(beta_a, beta_b) under the invariant form."""
    return (a.i == b.i) - (a.j == b.j)


def _require_dominant(mu: Weight):
    if not is_dominant(mu):
        raise NotDominantError(f"{mu} is not dominant")


def _shifted(mu: Weight) -> tuple[list[int], list[int]]:
    s = mu + rho_tilde(mu.m, mu.n)
    return list(s.eps), list(s.delta)


def atypicality_matrix(mu: Weight) -> np.ndarray:
    """m x n array of (mu + rho, beta_ij)."""
    _require_dominant(mu)
    e, d = _shifted(mu)
    return np.add.outer(np.array(e, dtype=np.int64), np.array(d, dtype=np.int64))


def gamma_chain(mu: Weight) -> tuple[OddRoot, ...]:
    """Atypical roots of ``mu``, increasing in the root order."""
    mat = atypicality_matrix(mu)
    zeros = [OddRoot(int(i) + 1, int(j) + 1) for i, j in zip(*np.nonzero(mat == 0))]
    # smallest root = largest row, then smallest column
    zeros.sort(key=lambda r: (-r.i, r.j))
    for a, b in zip(zeros, zeros[1:]):
        if not root_lt(a, b):
            raise InternalInconsistency(f"atypical roots of {mu} do not form a chain: {a}, {b}")
    return tuple(zeros)


def degree_of_atypicality(mu: Weight) -> int:
    """#mu.  Any integral weight is accepted; the count uses mu + rho as is."""
    e, d = _shifted(mu)
    return sum(1 for x in e for y in d if x + y == 0)


def _candidates(e, d, gamma: OddRoot, chosen: set) -> list[OddRoot]:
    return [
        OddRoot(i, j)
        for i in range(1, gamma.i + 1)
        for j in range(gamma.j, len(d) + 1)
        if (i, j) != tuple(gamma)
        and OddRoot(i, j) not in chosen
        and e[i - 1] + d[j - 1] == 0
    ]


def _apply(e, d, root: OddRoot, sign: int = 1):
    e[root.i - 1] += sign
    d[root.j - 1] -= sign


def _check_start(mu: Weight, gamma: OddRoot):
    _require_dominant(mu)
    e, d = _shifted(mu)
    if e[gamma.i - 1] + d[gamma.j - 1] != 0:
        raise ValueError(f"{gamma} is not an atypical root of {mu}")
    return e, d


def _closure_is_dominant(mu: Weight, roots) -> bool:
    w = mu
    for r in roots:
        w = w + r.weight(mu.m, mu.n)
    return is_dominant(w)


def delta_set(mu: Weight, gamma: OddRoot) -> tuple[OddRoot, ...]:
    """Maximal admissible chain of odd roots starting at ``gamma``, in insertion order.

    Each step adds the not-yet-chosen root above ``gamma`` with vanishing
    shifted pairing against the running weight, preferring the largest row
    and then the smallest column.
    """
    gamma = OddRoot(*gamma)
    e, d = _check_start(mu, gamma)
    chosen = [gamma]
    chosen_set = {gamma}
    _apply(e, d, gamma)
    while True:
        cands = _candidates(e, d, gamma, chosen_set)
        if not cands:
            break
        pick = min(cands, key=lambda r: (-r.i, r.j))
        chosen.append(pick)
        chosen_set.add(pick)
        _apply(e, d, pick)
    if not _closure_is_dominant(mu, chosen):
        warnings.warn(
            f"selection rule gave a non-dominant closure for {mu} at {gamma}; using exhaustive search",
            RuntimeWarning,
            stacklevel=2,
        )
        return delta_set_oracle(mu, gamma)
    return tuple(chosen)


def delta_set_oracle(mu: Weight, gamma: OddRoot, cap: int | None = None) -> tuple[OddRoot, ...]:
    """Exhaustive search over every admissible insertion order.

    Returns one insertion sequence realising the largest reachable set; raises
    if two different sets share the largest size (that would contradict the
    uniqueness of the maximal set).
    """
    gamma = OddRoot(*gamma)
    e0, d0 = _check_start(mu, gamma)
    cap = caps().oracle_states if cap is None else cap
    start = frozenset([gamma])
    parent: dict[frozenset, tuple[frozenset, OddRoot] | None] = {start: None}
    terminal = []
    stack = [start]
    while stack:
        state = stack.pop()
        e, d = list(e0), list(d0)
        for r in state:
            _apply(e, d, r)
        cands = _candidates(e, d, gamma, state)
        if not cands:
            terminal.append(state)
            continue
        for c in cands:
            nxt = state | {c}
            if nxt not in parent:
                if len(parent) >= cap:
                    raise CapExceededError(f"oracle search for {mu} at {gamma} exceeded {cap} states")
                parent[nxt] = (state, c)
                stack.append(nxt)
    best = max(len(s) for s in terminal)
    winners = {s for s in terminal if len(s) == best}
    if len(winners) > 1:
        raise InternalInconsistency(
            f"{len(winners)} distinct maximal sets of size {best} for {mu} at {gamma}"
        )
    (state,) = winners
    path = []
    while parent[state] is not None:
        prev, root = parent[state]
        path.append(root)
        state = prev
    path.append(gamma)
    return tuple(reversed(path))


@dataclass(frozen=True)
class AtypicalityProfile:
    mu: Weight
    gamma: tuple[OddRoot, ...]
    delta_sets: tuple[tuple[OddRoot, ...], ...]
    nabla_sets: tuple[tuple[OddRoot, ...], ...]
    k: tuple[int, ...]
    mu_zero: Weight
    connected: tuple[tuple[bool, ...], ...] = field(default=(), repr=False)

    @property
    def r(self) -> int:
        return len(self.gamma)

    @property
    def typical(self) -> bool:
        return not self.gamma

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "gamma": [list(g) for g in self.gamma],
            "delta_sets": [[list(a) for a in s] for s in self.delta_sets],
            "nabla_sets": [[list(a) for a in s] for s in self.nabla_sets],
            "k": list(self.k),
            "mu_zero": self.mu_zero.to_json(),
            "connected": [list(row) for row in self.connected],
        }


def _sum_roots(m: int, n: int, roots) -> Weight:
    e = [0] * m
    d = [0] * n
    for r in roots:
        e[r.i - 1] += 1
        d[r.j - 1] -= 1
    return Weight(tuple(e), tuple(d))


def _mu_zero_from(mu: Weight, delta1) -> Weight:
    m, n = mu.shape
    inside = set(delta1)
    outside = [OddRoot(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if (i, j) not in inside]
    return mu - _sum_roots(m, n, outside)


def _connectedness(nablas) -> tuple[tuple[bool, ...], ...]:
    r = len(nablas)
    rows = []
    for a in range(r):
        row = []
        for b in range(r):
            if a == b:
                row.append(True)
            else:
                row.append(any(root_pairing(x, y) != 0 for x in nablas[a] for y in nablas[b]))
        rows.append(tuple(row))
    return tuple(rows)


@functools.lru_cache(maxsize=65536)
def nabla_profile(mu: Weight) -> AtypicalityProfile:
    gammas = gamma_chain(mu)
    deltas = tuple(delta_set(mu, g) for g in gammas)
    for big, small in zip(deltas, deltas[1:]):
        if not set(small) < set(big):
            raise InternalInconsistency(f"Delta sets of {mu} are not strictly nested")
    nablas = []
    for i, ds in enumerate(deltas):
        nxt = set(deltas[i + 1]) if i + 1 < len(deltas) else set()
        nablas.append(tuple(a for a in ds if a not in nxt))
    nablas = tuple(nablas)
    return AtypicalityProfile(
        mu=mu,
        gamma=gammas,
        delta_sets=deltas,
        nabla_sets=nablas,
        k=tuple(len(s) for s in nablas),
        mu_zero=_mu_zero_from(mu, deltas[0] if deltas else ()),
        connected=_connectedness(nablas),
    )


def connectedness(mu: Weight) -> tuple[tuple[bool, ...], ...]:
    """Symmetric r x r relation; diagonal entries are True by convention."""
    return nabla_profile(mu).connected


def mu_zero(mu: Weight) -> Weight:
    """mu minus every odd positive root outside Delta(gamma_1)."""
    return nabla_profile(mu).mu_zero


class WalkStep(NamedTuple):
    root: OddRoot
    pairing: int
    subtracted: bool
    weight: Weight
    rho: Weight


def odd_reflection_walk(mu: Weight) -> tuple[Weight, list[WalkStep]]:
    """Track the highest weight of L_mu through the fixed chain of odd reflections.

    Roots are visited as b_{m,1..n}, b_{m-1,1..n}, ..., b_{1,1..n}.
    """
    _require_dominant(mu)
    m, n = mu.shape
    lam = mu
    rho = rho_tilde(m, n)
    steps = []
    for i in range(m, 0, -1):
        for j in range(1, n + 1):
            root = OddRoot(i, j)
            alpha = root.weight(m, n)
            s = lam + rho
            p = s.eps[i - 1] + s.delta[j - 1]
            if p != 0:
                lam = lam - alpha
            rho = rho + alpha
            steps.append(WalkStep(root, p, p != 0, lam, rho))
    return lam, steps


def walk_final_rho(m: int, n: int) -> Weight:
    return rho_tilde(m, n) + two_rho_one(m, n)

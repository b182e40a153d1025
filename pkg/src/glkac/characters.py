"""Exact characters of even irreducibles, Kac modules and simple modules.

A CharacterMap keeps its support as an int64 array of weight vectors with
a parallel multiplicity array, sorted lexicographically.  Products and sums
go through the kernels in ``_kernels`` by packing each weight vector into a
single integer key inside a bounding box; the packing is linear, so adding
keys adds weights.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import caps
from .errors import CapExceededError, ConjectureFalsified, NotDominantError
from .klmatrix import assemble_Aq, inverse_row, window_between
from .multiplicity import row
from .weights import (
    Weight,
    is_dominant,
    lowest_weight,
    odd_root_weight,
    order_functional,
    partial_leq,
    two_rho_one,
)

_KEY_LIMIT = 1 << 62


@dataclass(frozen=True, eq=False)
class CharacterMap:
    m: int
    n: int
    weights: np.ndarray
    mults: np.ndarray
    region: tuple[Weight, Weight] | None = None
    exact_everywhere: bool = True

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.int64).reshape(-1, self.m + self.n)
        k = np.asarray(self.mults, dtype=np.int64).reshape(-1)
        keep = k != 0
        w, k = w[keep], k[keep]
        order = np.lexsort(w.T[::-1]) if len(w) else np.arange(0)
        w, k = w[order], k[order]
        w.flags.writeable = False
        k.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "mults", k)

    @classmethod
    def from_dict(cls, m: int, n: int, terms: dict, **kw) -> "CharacterMap":
        items = [(w.vector if isinstance(w, Weight) else tuple(w), c) for w, c in terms.items()]
        if not items:
            return cls(m, n, np.zeros((0, m + n), dtype=np.int64), np.zeros(0, dtype=np.int64), **kw)
        return cls(m, n, np.array([v for v, _ in items]), np.array([c for _, c in items]), **kw)

    def __len__(self):
        return len(self.mults)

    def __getitem__(self, w: Weight) -> int:
        hit = np.all(self.weights == np.asarray(w.vector), axis=1)
        return int(self.mults[hit].sum())

    def __eq__(self, other):
        if not isinstance(other, CharacterMap):
            return NotImplemented
        return (
            (self.m, self.n) == (other.m, other.n)
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.mults, other.mults)
        )

    def to_dict(self) -> dict[Weight, int]:
        return {Weight.from_vector(v, self.m): int(c) for v, c in zip(self.weights.tolist(), self.mults.tolist())}

    def total(self) -> int:
        """Sum of multiplicities (the dimension, for a genuine character)."""
        return int(self.mults.sum())

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self.mults >= 0))

    def scaled(self, c: int) -> "CharacterMap":
        return CharacterMap(self.m, self.n, self.weights, self.mults * c, self.region, self.exact_everywhere)

    def __add__(self, other: "CharacterMap") -> "CharacterMap":
        return linear_combination([(1, self), (1, other)])

    def __sub__(self, other: "CharacterMap") -> "CharacterMap":
        return linear_combination([(1, self), (-1, other)])

    def restrict_above(self, lo: Weight) -> "CharacterMap":
        """Terms at weights ``eta >= lo``."""
        diff = self.weights - np.asarray(lo.vector, dtype=np.int64)[None, :]
        pref = np.cumsum(diff, axis=1)
        keep = np.all(pref[:, :-1] >= 0, axis=1) & (pref[:, -1] == 0)
        return CharacterMap(self.m, self.n, self.weights[keep], self.mults[keep], self.region, self.exact_everywhere)

    def to_json(self) -> dict:
        terms = [
            {"weight": Weight.from_vector(v, self.m).to_json(), "mult": int(c)}
            for v, c in zip(self.weights.tolist(), self.mults.tolist())
        ]
        out: dict = {"terms": terms}
        if self.exact_everywhere:
            out["exact"] = True
        else:
            lo, hi = self.region
            out["region"] = {"lo": lo.to_json(), "hi": hi.to_json()}
        return out

    @classmethod
    def from_json(cls, m: int, n: int, obj: dict) -> "CharacterMap":
        terms = {Weight.from_json(t["weight"]): int(t["mult"]) for t in obj["terms"]}
        if obj.get("exact"):
            return cls.from_dict(m, n, terms)
        reg = obj["region"]
        region = (Weight.from_json(reg["lo"]), Weight.from_json(reg["hi"]))
        return cls.from_dict(m, n, terms, region=region, exact_everywhere=False)


def _box(arrays):
    lo = np.min([a.min(axis=0) for a in arrays if len(a)], axis=0)
    hi = np.max([a.max(axis=0) for a in arrays if len(a)], axis=0)
    return lo, hi


def _strides(size: np.ndarray) -> np.ndarray:
    total = 1
    for s in size.tolist():
        total *= s
        if total >= _KEY_LIMIT:
            raise CapExceededError("weight box too large to pack into 64-bit keys")
    strides = np.ones(len(size), dtype=np.int64)
    for k in range(len(size) - 2, -1, -1):
        strides[k] = strides[k + 1] * size[k + 1]
    return strides


def _unpack(keys, lo, size, strides):
    return lo[None, :] + (keys[:, None] // strides[None, :]) % size[None, :]


def _exactness(chis):
    exact = all(c.exact_everywhere for c in chis)
    if exact:
        return None, True
    # conservative: keep the region of the first non-exact operand
    region = next(c.region for c in chis if not c.exact_everywhere)
    return region, False


def convolve(a: CharacterMap, b: CharacterMap) -> CharacterMap:
    """Product of two formal characters."""
    if (a.m, a.n) != (b.m, b.n):
        raise ValueError("characters of different algebras")
    region, exact = _exactness([a, b])
    if not len(a) or not len(b):
        return CharacterMap.from_dict(a.m, a.n, {}, region=region, exact_everywhere=exact)
    la, ha = _box([a.weights])
    lb, hb = _box([b.weights])
    lo = la + lb
    size = (ha + hb) - lo + 1
    strides = _strides(size)
    bound = int(np.abs(a.mults).sum()) * int(np.abs(b.mults).sum())
    if bound >= _KEY_LIMIT:
        raise CapExceededError("multiplicities too large for the int64 kernels")
    ka = (a.weights - la[None, :]) @ strides
    kb = (b.weights - lb[None, :]) @ strides
    keys, mults = _kernels.convolve_keys(ka, a.mults, kb, b.mults)
    return CharacterMap(a.m, a.n, _unpack(keys, lo, size, strides), mults, region, exact)


def linear_combination(terms) -> CharacterMap:
    """sum c_i chi_i over a list of (c_i, chi_i)."""
    terms = [(int(c), chi) for c, chi in terms if c]
    if not terms:
        raise ValueError("empty linear combination has no shape")
    m, n = terms[0][1].m, terms[0][1].n
    region, exact = _exactness([chi for _, chi in terms])
    arrays = [chi.weights for _, chi in terms if len(chi)]
    if not arrays:
        return CharacterMap.from_dict(m, n, {}, region=region, exact_everywhere=exact)
    lo, hi = _box(arrays)
    size = hi - lo + 1
    strides = _strides(size)
    keys = np.concatenate([(chi.weights - lo[None, :]) @ strides for _, chi in terms])
    mults = np.concatenate([chi.mults * c for c, chi in terms])
    keys, mults = _kernels.reduce_keys(keys, mults)
    return CharacterMap(m, n, _unpack(keys, lo, size, strides), mults, region, exact)


def weyl_dimension(block: tuple[int, ...]) -> int:
    """Dimension of the gl(k) irreducible with highest weight ``block``."""
    k = len(block)
    num = 1
    den = 1
    for i in range(k):
        for j in range(i + 1, k):
            num *= block[i] - block[j] + j - i
            den *= j - i
    return num // den


@functools.lru_cache(maxsize=4096)
def _gt_character(top: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Weight multiplicities of the gl(k) irreducible via Gelfand-Tsetlin patterns.

    Rows interlace downwards; the weight's i-th entry is |row_i| - |row_{i-1}|.
    ``top`` must be weakly decreasing; memoised per row.
    """
    k = len(top)
    if k == 0:
        return (((), 1),)
    if k == 1:
        return (((top[0],), 1),)
    acc: dict[tuple[int, ...], int] = {}
    total = sum(top)

    def rows(pos, prefix):
        if pos == k - 1:
            yield tuple(prefix)
            return
        for x in range(top[pos + 1], top[pos] + 1):
            prefix.append(x)
            yield from rows(pos + 1, prefix)
            prefix.pop()

    for sub in rows(0, []):
        last = total - sum(sub)
        for wt, c in _gt_character(sub):
            key = wt + (last,)
            acc[key] = acc.get(key, 0) + c
    return tuple(sorted(acc.items()))


def block_character(top: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Character of one gl(k) block, as (weights, mults) arrays."""
    top = tuple(top)
    if any(top[i] < top[i + 1] for i in range(len(top) - 1)):
        raise NotDominantError(f"{top} is not a dominant gl({len(top)}) weight")
    if weyl_dimension(top) > caps().patterns:
        raise CapExceededError(f"gl({len(top)}) module {top} has more than {caps().patterns} patterns")
    # the character is shift-equivariant; shifting to a zero last entry shares the cache
    shift = top[-1] if top else 0
    items = _gt_character(tuple(x - shift for x in top))
    w = np.array([wt for wt, _ in items], dtype=np.int64).reshape(len(items), len(top)) + shift
    c = np.array([c for _, c in items], dtype=np.int64)
    return w, c


def char_g0(lam: Weight) -> CharacterMap:
    if not is_dominant(lam):
        raise NotDominantError(f"{lam} is not dominant")
    we, ce = block_character(lam.eps)
    wd, cd = block_character(lam.delta)
    ne, nd = len(ce), len(cd)
    weights = np.concatenate([np.repeat(we, nd, axis=0), np.tile(wd, (ne, 1))], axis=1)
    mults = np.repeat(ce, nd) * np.tile(cd, ne)
    return CharacterMap(lam.m, lam.n, weights, mults)


@functools.lru_cache(maxsize=64)
def odd_factor(m: int, n: int) -> CharacterMap:
    """prod over odd positive roots of (1 + e^{-beta})."""
    if (1 << (m * n)) > caps().odd_factor:
        raise CapExceededError(f"odd factor of gl({m}/{n}) exceeds cap {caps().odd_factor}")
    zero = np.zeros((1, m + n), dtype=np.int64)
    chi = CharacterMap(m, n, zero, np.ones(1, dtype=np.int64))
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            beta = np.asarray(odd_root_weight(m, n, i, j).vector, dtype=np.int64)
            factor = CharacterMap(m, n, np.stack([zero[0], -beta]), np.ones(2, dtype=np.int64))
            chi = convolve(chi, factor)
    return chi


@functools.lru_cache(maxsize=4096)
def char_kac(lam: Weight) -> CharacterMap:
    return convolve(odd_factor(lam.m, lam.n), char_g0(lam))


def kac_lowest_weight(mu: Weight) -> Weight:
    return lowest_weight(mu) - two_rho_one(*mu.shape)


@functools.lru_cache(maxsize=1024)
def simple_b_row(mu: Weight) -> dict[Weight, int]:
    """b_{mu,nu} = K_{mu,nu}(-1) for dominant nu between the lowest weight of V_mu and mu."""
    window = window_between(kac_lowest_weight(mu), mu)
    A = assemble_Aq(window, check_convex=False)
    return {nu: p(-1) for nu, p in inverse_row(A, mu).items() if p(-1)}


@functools.lru_cache(maxsize=1024)
def char_simple(mu: Weight) -> CharacterMap:
    """Character of L_mu as a finite alternating sum of Kac characters.

    Every weight of L_mu lies in [lo, mu] with lo the lowest weight of V_mu.
    The Kac modules V_nu that reach into that interval all have nu in the
    window [lo, mu], so truncating the sum to the window and keeping only
    weights >= lo is exact.
    """
    if not is_dominant(mu):
        raise NotDominantError(f"{mu} is not dominant")
    lo = kac_lowest_weight(mu)
    b = simple_b_row(mu)
    partial = linear_combination([(c, char_kac(nu)) for nu, c in b.items()])
    # the truncated sum is only trustworthy on [lo, mu] ...
    partial = CharacterMap(partial.m, partial.n, partial.weights, partial.mults, (lo, mu), False)
    chi = partial.restrict_above(lo)
    # ... and L_mu has no weights outside it, so the restriction is the whole character
    chi = CharacterMap(chi.m, chi.n, chi.weights, chi.mults, (lo, mu), True)
    if not chi.nonnegative:
        bad = [(str(w), c) for w, c in chi.to_dict().items() if c < 0][:5]
        raise ConjectureFalsified("negative multiplicity in simple character", mu, None, str(bad))
    if chi[mu] != 1:
        raise ConjectureFalsified("highest weight multiplicity is not 1", mu, None, str(chi[mu]))
    return chi


def decompose_g0(chi: CharacterMap) -> dict[Weight, int]:
    """Branch a finite character into even irreducibles by peeling off maximal weights."""
    if not chi.exact_everywhere:
        raise ValueError("decompose_g0 needs a character that is exact everywhere")
    rest = chi.to_dict()
    out: dict[Weight, int] = {}
    while rest:
        top = max(rest, key=lambda w: (order_functional(w), w.vector))
        if not is_dominant(top):
            raise NotDominantError(f"maximal weight {top} of the remainder is not dominant")
        c = rest[top]
        out[top] = c
        for w, k in char_g0(top).to_dict().items():
            v = rest.get(w, 0) - c * k
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
    return out


def smallest_constituent(decomp: dict[Weight, int]) -> Weight | None:
    """The unique constituent below all others, or None if there is none."""
    for w in decomp:
        if all(partial_leq(w, v) for v in decomp):
            return w
    return None


@dataclass
class KacDecompositionReport:
    lam: Weight
    row: dict
    equal: bool
    mismatches: list[tuple[Weight, int, int]]


def verify_kac_decomposition(lam: Weight) -> KacDecompositionReport:
    """Check ch V_lam = sum_mu a_{lam,mu} ch L_mu exactly.

    The plain multiplicities are the q-coefficients at q = -1, where
    (-q)^|theta| becomes 1.
    """
    a = {mu: p(-1) for mu, p in row(lam).items()}
    lhs = char_kac(lam)
    rhs = linear_combination([(c, char_simple(mu)) for mu, c in a.items()])
    mism = []
    if lhs != rhs:
        l, r = lhs.to_dict(), rhs.to_dict()
        for w in sorted(set(l) | set(r), key=lambda w: w.vector):
            if l.get(w, 0) != r.get(w, 0):
                mism.append((w, l.get(w, 0), r.get(w, 0)))
    return KacDecompositionReport(lam, a, not mism, mism)

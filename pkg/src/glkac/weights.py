"""Weights, roots and the partial order for gl(m/n).

A weight is stored in the standard basis as two integer blocks,
``(eps_1..eps_m | delta_1..delta_n)``.  Because every simple root is
``e_p - e_{p+1}`` in the concatenated coordinates, ``a <= b`` holds exactly
when ``b - a`` has total sum zero and nonnegative prefix sums; the prefix
sums are the simple-root coefficients.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .config import caps
from .errors import CapExceededError, OrderError, ShapeError, WeightParseError


@dataclass(frozen=True, slots=True)
class Weight:
    eps: tuple[int, ...]
    delta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(int(x) for x in self.eps))
        object.__setattr__(self, "delta", tuple(int(x) for x in self.delta))

    @classmethod
    def from_vector(cls, vec: Sequence[int], m: int) -> "Weight":
        vec = [int(x) for x in vec]
        return cls(tuple(vec[:m]), tuple(vec[m:]))

    @property
    def m(self) -> int:
        return len(self.eps)

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.eps), len(self.delta)

    @property
    def vector(self) -> tuple[int, ...]:
        return self.eps + self.delta

    def _check(self, other: "Weight"):
        if not isinstance(other, Weight):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Weight(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            tuple(a + b for a, b in zip(self.delta, other.delta)),
        )

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Weight(
            tuple(a - b for a, b in zip(self.eps, other.eps)),
            tuple(a - b for a, b in zip(self.delta, other.delta)),
        )

    def __neg__(self):
        return Weight(tuple(-a for a in self.eps), tuple(-a for a in self.delta))

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return Weight(tuple(k * a for a in self.eps), tuple(k * a for a in self.delta))

    __rmul__ = __mul__

    def __str__(self):
        return format_weight(self)

    def to_json(self) -> dict:
        return {"eps": list(self.eps), "delta": list(self.delta)}

    @classmethod
    def from_json(cls, obj: dict) -> "Weight":
        try:
            return cls(tuple(obj["eps"]), tuple(obj["delta"]))
        except (KeyError, TypeError) as exc:
            raise WeightParseError(f"bad weight object {obj!r}") from exc


@dataclass(frozen=True)
class Superalgebra:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"gl({self.m}/{self.n}): both block sizes must be >= 1")
        if self.m * self.n > caps().max_mn:
            raise CapExceededError(
                f"gl({self.m}/{self.n}) exceeds the size guard m*n <= {caps().max_mn}"
            )

    def __str__(self):
        return f"gl({self.m}/{self.n})"

    def zero(self) -> Weight:
        return Weight((0,) * self.m, (0,) * self.n)

    def weight(self, eps: Iterable[int], delta: Iterable[int]) -> Weight:
        w = Weight(tuple(eps), tuple(delta))
        if w.shape != (self.m, self.n):
            raise ShapeError(f"expected shape {(self.m, self.n)}, got {w.shape}")
        return w

    def beta(self, i: int, j: int) -> Weight:
        """The odd root eps_i - delta_j (1-based indices)."""
        return odd_root_weight(self.m, self.n, i, j)

    def odd_roots(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def even_positive_roots(self) -> list[Weight]:
        roots = []
        N = self.m + self.n
        for p in range(N):
            for q in range(p + 1, N):
                if (p < self.m) == (q < self.m):
                    v = [0] * N
                    v[p], v[q] = 1, -1
                    roots.append(Weight.from_vector(v, self.m))
        return roots

    def simple_roots(self) -> list[Weight]:
        N = self.m + self.n
        out = []
        for p in range(N - 1):
            v = [0] * N
            v[p], v[p + 1] = 1, -1
            out.append(Weight.from_vector(v, self.m))
        return out

    def rho_tilde(self) -> Weight:
        return rho_tilde(self.m, self.n)

    def two_rho_one(self) -> Weight:
        return two_rho_one(self.m, self.n)


def algebra_of(w: Weight) -> Superalgebra:
    return Superalgebra(w.m, w.n)


@functools.lru_cache(maxsize=None)
def odd_root_weight(m: int, n: int, i: int, j: int) -> Weight:
    if not (1 <= i <= m and 1 <= j <= n):
        raise ValueError(f"odd root index ({i},{j}) out of range for gl({m}/{n})")
    eps = [0] * m
    delta = [0] * n
    eps[i - 1] = 1
    delta[j - 1] = -1
    return Weight(tuple(eps), tuple(delta))


@functools.lru_cache(maxsize=None)
def rho_tilde(m: int, n: int) -> Weight:
    """Integral rho shift (m-1, ..., 0 | 0, ..., 1-n).

    Differs from rho_0 - rho_1 by a multiple of (sum eps - sum delta), which
    pairs to zero with every root, so all pairings and the dot action agree.
    """
    return Weight(tuple(range(m - 1, -1, -1)), tuple(range(0, -n, -1)))


@functools.lru_cache(maxsize=None)
def two_rho_one(m: int, n: int) -> Weight:
    return Weight((n,) * m, (-m,) * n)


def bilinear_form(x: Weight, y: Weight) -> int:
    if x.shape != y.shape:
        raise ShapeError(f"shape mismatch {x.shape} vs {y.shape}")
    return sum(a * b for a, b in zip(x.eps, y.eps)) - sum(a * b for a, b in zip(x.delta, y.delta))


def is_dominant(w: Weight) -> bool:
    e, d = w.eps, w.delta
    return all(e[i] >= e[i + 1] for i in range(len(e) - 1)) and all(
        d[j] >= d[j + 1] for j in range(len(d) - 1)
    )


def simple_root_coords(diff: Weight) -> tuple[int, ...] | None:
    """Coefficients of ``diff`` over the simple roots, or None if not in the root lattice."""
    vec = diff.vector
    if sum(vec) != 0:
        return None
    out = []
    acc = 0
    for x in vec[:-1]:
        acc += x
        out.append(acc)
    return tuple(out)


def partial_leq(a: Weight, b: Weight) -> bool:
    """``a <= b``: ``b - a`` is a nonnegative integer combination of positive roots."""
    c = simple_root_coords(b - a)
    return c is not None and all(x >= 0 for x in c)


def height(a: Weight, b: Weight) -> int:
    """Sum of simple-root coefficients of ``b - a`` (requires a <= b)."""
    c = simple_root_coords(b - a)
    if c is None:
        raise OrderError(f"{a} and {b} are not comparable")
    return sum(c)


def dominant_rep(w: Weight) -> Weight:
    return Weight(tuple(sorted(w.eps, reverse=True)), tuple(sorted(w.delta, reverse=True)))


def lowest_weight(w: Weight) -> Weight:
    """Reverse each block: the lowest weight of the even irreducible with highest weight ``w``."""
    return Weight(w.eps[::-1], w.delta[::-1])


def dot_dominant(w: Weight) -> Weight | None:
    """``d(w + rho) - rho`` when that is dominant, else None."""
    rho = rho_tilde(w.m, w.n)
    shifted = dominant_rep(w + rho)
    for block in (shifted.eps, shifted.delta):
        if any(block[i] == block[i + 1] for i in range(len(block) - 1)):
            return None
    return shifted - rho


def order_functional(w: Weight) -> int:
    """Linear functional that strictly increases along every positive root.

    For ``w <= top`` the height of ``top - w`` is ``f(top) - f(w)``.
    """
    N = len(w.vector)
    return sum((N - 1 - p) * x for p, x in enumerate(w.vector))


def linear_extension_key(w: Weight):
    """Sort key placing higher weights first; ties broken lexicographically."""
    return (-order_functional(w), w.vector)


def enumerate_interval(
    lo: Weight, hi: Weight, dominant_only: bool = True, cap: int | None = None
) -> list[Weight]:
    """All weights between ``lo`` and ``hi``, top first.

    The interval is the box of simple-root coefficient vectors bounded by
    the coefficients of ``hi - lo``; output is sorted by height below ``hi``
    and then lexicographically, which is a linear extension of the order.
    """
    bounds = simple_root_coords(hi - lo)
    if bounds is None or any(b < 0 for b in bounds):
        raise OrderError(f"empty interval: {lo} is not <= {hi}")
    cap = caps().window if cap is None else cap
    size = 1
    for b in bounds:
        size *= b + 1
        if size > cap:
            raise CapExceededError(f"interval [{lo}, {hi}] has more than {cap} weights")
    m, n = hi.shape
    pts = _interval_array(hi, bounds)
    if dominant_only:
        pts = pts[_kernels.dominant_mask(pts, m)]
    N = m + n
    f = pts @ np.arange(N - 1, -1, -1, dtype=np.int64)
    order = np.lexsort(tuple(pts[:, k] for k in range(N - 1, -1, -1)) + (-f,))
    return [Weight.from_vector(row, m) for row in pts[order].tolist()]


def _interval_array(hi: Weight, bounds: Sequence[int]) -> np.ndarray:
    N = len(hi.vector)
    simple = np.zeros((N - 1, N), dtype=np.int64)
    for p in range(N - 1):
        simple[p, p] = 1
        simple[p, p + 1] = -1
    return _kernels.interval_points(np.asarray(hi.vector, dtype=np.int64), simple, np.asarray(bounds, dtype=np.int64))


def order_window(bottoms: Iterable[Weight], tops: Iterable[Weight], cap: int | None = None) -> list[Weight]:
    """Dominant weights lying between some bottom and some top.

    A union of intervals over all comparable (bottom, top) pairs is
    order-convex, so the result is a valid window for triangular inversion.
    """
    bottoms = list(bottoms)
    tops = list(tops)
    if not bottoms or not tops:
        raise ValueError("need at least one bottom and one top")
    seen: dict[Weight, None] = {}
    for t in tops:
        for b in bottoms:
            if partial_leq(b, t):
                for w in enumerate_interval(b, t, True, cap):
                    seen[w] = None
    if not seen:
        raise OrderError("no bottom lies below any top")
    return sorted(seen, key=linear_extension_key)


_WEIGHT_RE = re.compile(r"^\s*\(?\s*([^|;()]*?)\s*[|;]\s*([^|;()]*?)\s*\)?\s*$")


def parse_weight(text: str, alg: Superalgebra | tuple[int, int] | None = None) -> Weight:
    """Parse ``"2,1,0,0|0,-2,-2,-2,-2"``; parentheses, spaces and ``;`` are accepted."""
    if not isinstance(text, str):
        raise WeightParseError(f"expected text, got {type(text).__name__}")
    match = _WEIGHT_RE.match(text)
    if not match:
        raise WeightParseError(f"malformed weight {text!r}: expected 'a,b,...|c,d,...'")
    blocks = []
    for part in match.groups():
        items = [s.strip() for s in part.split(",")] if part.strip() else []
        try:
            blocks.append(tuple(int(s) for s in items))
        except ValueError as exc:
            raise WeightParseError(f"malformed weight {text!r}: {exc}") from None
    w = Weight(blocks[0], blocks[1])
    if w.m == 0 or w.n == 0:
        raise WeightParseError(f"malformed weight {text!r}: empty block")
    if alg is not None:
        m, n = (alg.m, alg.n) if isinstance(alg, Superalgebra) else alg
        if w.shape != (m, n):
            raise WeightParseError(
                f"weight {text!r} has arity {w.shape}, expected ({m}, {n})"
            )
    return w


def format_weight(w: Weight, style: str = "plain") -> str:
    left = ",".join(str(x) for x in w.eps)
    right = ",".join(str(x) for x in w.delta)
    if style == "tuple":
        return f"({left}; {right})"
    return f"{left}|{right}"

"""Triangular q-matrices on finite order-convex windows and their exact inverses.

``assemble_Aq`` fills in the conjectured columns ``a_{lambda,mu}(q)``;
``invert_unitriangular`` returns the Kazhdan-Lusztig matrix ``K_q`` on the
same window.  Inversion inside a convex window is exact: an entry (lambda, mu)
only involves weights between mu and lambda, all of which are present.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .atypicality import degree_of_atypicality
from .errors import OrderError
from .multiplicity import column_q
from .qpoly import ONE, ZERO, QPolynomial, inverse_power_series
from .weights import (
    Weight,
    enumerate_interval,
    is_dominant,
    linear_extension_key,
    order_window,
    partial_leq,
)


@dataclass(frozen=True)
class TriangularQMatrix:
    """Sparse lower-triangular matrix indexed by a window of dominant weights.

    ``window`` is stored top-first (a linear extension read downwards), and
    ``entries`` maps (row, col) to a nonzero polynomial with col <= row.
    """

    window: tuple[Weight, ...]
    entries: dict[tuple[Weight, Weight], QPolynomial] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: k for k, w in enumerate(self.window)})

    def __contains__(self, w: Weight) -> bool:
        return w in self._index

    def __getitem__(self, key: tuple[Weight, Weight]) -> QPolynomial:
        return self.entries.get(key, ZERO)

    def __eq__(self, other):
        if not isinstance(other, TriangularQMatrix):
            return NotImplemented
        return self.window == other.window and self.entries == other.entries

    def index(self, w: Weight) -> int:
        return self._index[w]

    def row(self, lam: Weight) -> dict[Weight, QPolynomial]:
        return {c: p for (r, c), p in self.entries.items() if r == lam}

    def column(self, mu: Weight) -> dict[Weight, QPolynomial]:
        return {r: p for (r, c), p in self.entries.items() if c == mu}

    def rows_sparse(self) -> dict[Weight, list[tuple[Weight, QPolynomial]]]:
        out: dict[Weight, list] = {w: [] for w in self.window}
        for (r, c), p in self.entries.items():
            out[r].append((c, p))
        return out

    def cols_sparse(self) -> dict[Weight, list[tuple[Weight, QPolynomial]]]:
        out: dict[Weight, list] = {w: [] for w in self.window}
        for (r, c), p in self.entries.items():
            out[c].append((r, p))
        return out

    def check(self):
        """Validate triangularity and the unit diagonal; raises OrderError."""
        for w in self.window:
            if self.entries.get((w, w)) != ONE:
                raise OrderError(f"diagonal entry at {w} is {self[w, w]}, expected 1")
        for (r, c), p in self.entries.items():
            if r not in self._index or c not in self._index:
                raise OrderError(f"entry ({r}, {c}) outside the window")
            if not p:
                raise OrderError(f"explicit zero stored at ({r}, {c})")
            if not partial_leq(c, r):
                raise OrderError(f"entry ({r}, {c}) violates col <= row")

    def to_json(self) -> dict:
        idx = self._index
        items = sorted(self.entries.items(), key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]]))
        return {
            "window": [w.to_json() for w in self.window],
            "entries": [
                {"row": r.to_json(), "col": c.to_json(), "poly": p.to_list()} for (r, c), p in items
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TriangularQMatrix":
        window = tuple(Weight.from_json(w) for w in obj["window"])
        entries = {
            (Weight.from_json(e["row"]), Weight.from_json(e["col"])): QPolynomial(e["poly"])
            for e in obj["entries"]
        }
        return cls(window, entries)


def _sorted_window(window) -> tuple[Weight, ...]:
    ws = list(dict.fromkeys(window))
    for w in ws:
        if not is_dominant(w):
            raise OrderError(f"window weight {w} is not dominant")
    return tuple(sorted(ws, key=linear_extension_key))


def _extremes(window: tuple[Weight, ...]):
    minimal = [w for w in window if not any(v != w and partial_leq(v, w) for v in window)]
    maximal = [w for w in window if not any(v != w and partial_leq(w, v) for v in window)]
    return minimal, maximal


def is_order_convex(window) -> bool:
    """True iff every dominant weight between two members is a member.

    It suffices to test intervals between minimal and maximal members.
    """
    window = _sorted_window(window)
    members = set(window)
    minimal, maximal = _extremes(window)
    for lo in minimal:
        for hi in maximal:
            if partial_leq(lo, hi):
                if any(w not in members for w in enumerate_interval(lo, hi, True)):
                    return False
    return True


def window_between(lo: Weight, hi: Weight) -> tuple[Weight, ...]:
    return tuple(enumerate_interval(lo, hi, dominant_only=True))


def window_union(bottoms, tops) -> tuple[Weight, ...]:
    return tuple(order_window(bottoms, tops))


def assemble_Aq(window, check_convex: bool = True) -> TriangularQMatrix:
    """a_{lambda,mu}(q) for all lambda, mu in the window."""
    win = _sorted_window(window)
    if check_convex and not is_order_convex(win):
        raise OrderError("window is not order-convex")
    members = set(win)
    entries = {}
    for mu in win:
        for lam, coeff in column_q(mu).as_dict().items():
            if lam in members:
                entries[lam, mu] = coeff
    M = TriangularQMatrix(win, entries)
    M.check()
    return M


def invert_unitriangular(M: TriangularQMatrix) -> TriangularQMatrix:
    """Exact inverse by forward substitution, one column at a time.

    Solves ``M X = I``: ``X[lam, mu] = -sum_{mu <= nu < lam} M[lam, nu] X[nu, mu]``,
    filling each column from the bottom of the window upwards.
    """
    M.check()
    rows = M.rows_sparse()
    pos = {w: k for k, w in enumerate(M.window)}
    bottom_up = list(reversed(M.window))
    inv = {}
    for mu in M.window:
        col = {mu: ONE}
        start = pos[mu]
        for lam in bottom_up[len(bottom_up) - start :]:
            acc = ZERO
            for nu, a in rows[lam]:
                if nu != lam:
                    x = col.get(nu)
                    if x is not None:
                        acc = acc + a * x
            if acc:
                col[lam] = -acc
        for lam, p in col.items():
            inv[lam, mu] = p
    out = TriangularQMatrix(M.window, inv)
    out.check()
    return out


def inverse_row(M: TriangularQMatrix, lam: Weight) -> dict[Weight, QPolynomial]:
    """Row ``lam`` of ``M^-1`` only, by solving ``x M = e_lam`` from the top down."""
    M.check()
    cols = M.cols_sparse()
    start = M.index(lam)
    x = {lam: ONE}
    for nu in M.window[start + 1 :]:
        acc = ZERO
        for kappa, a in cols[nu]:
            if kappa != nu:
                y = x.get(kappa)
                if y is not None:
                    acc = acc + y * a
        if acc:
            x[nu] = -acc
    return x


def matmul(A: TriangularQMatrix, B: TriangularQMatrix) -> dict[tuple[Weight, Weight], QPolynomial]:
    if A.window != B.window:
        raise OrderError("windows differ")
    brows = B.rows_sparse()
    out: dict[tuple[Weight, Weight], QPolynomial] = {}
    for (r, k), a in A.entries.items():
        for c, b in brows[k]:
            out[r, c] = out.get((r, c), ZERO) + a * b
    return {key: p for key, p in out.items() if p}


def is_identity_product(prod: dict, window) -> bool:
    want = {(w, w): ONE for w in window}
    return prod == want


def specialize(M: TriangularQMatrix, value: int) -> dict[tuple[Weight, Weight], int]:
    """Evaluate every entry at ``q = value``; zero results are dropped."""
    out = {}
    for key, p in M.entries.items():
        v = p(value)
        if v:
            out[key] = v
    return out


def to_dense(window, entries: dict) -> list[list]:
    """Dense list-of-rows view in window order (zeros filled in)."""
    idx = {w: k for k, w in enumerate(window)}
    zero = ZERO if entries and isinstance(next(iter(entries.values())), QPolynomial) else 0
    grid = [[zero] * len(window) for _ in window]
    for (r, c), v in entries.items():
        grid[idx[r]][idx[c]] = v
    return grid


def _partitions(total: int, parts: int, largest: int | None = None):
    """Weakly decreasing sequences of ``parts`` nonnegative ints summing to ``total``."""
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _sigma_weight(m: int, n: int, sigma: tuple[int, ...]) -> Weight:
    p = len(sigma)
    eps = (0,) * (m - p) + tuple(-s for s in reversed(sigma))
    delta = tuple(sigma) + (0,) * (n - p)
    return Weight(eps, delta)


def sym_decomposition(m: int, n: int, i: int) -> list[Weight]:
    """Highest weights of the even irreducibles in Sym^i of the negative odd part.

    One summand per partition sigma of i with at most min(m, n) parts, of
    weight (0..0, -sigma_p, ..., -sigma_1 | sigma_1, ..., sigma_p, 0..0).  For
    m <= n this is the familiar (-sigma_m..-sigma_1 | sigma_1..sigma_m, 0..0).
    """
    if i < 0:
        raise ValueError("negative degree")
    p = min(m, n)
    return [_sigma_weight(m, n, s) for s in _partitions(i, p)]


def sigma_of(mu: Weight) -> tuple[int, ...] | None:
    """The partition sigma with mu = (0.., -sigma reversed | sigma, 0..), if any."""
    m, n = mu.shape
    p = min(m, n)
    if any(mu.eps[: m - p]) or any(mu.delta[p:]):
        return None
    sigma = mu.delta[:p]
    if tuple(-x for x in reversed(mu.eps[m - p :])) != sigma:
        return None
    if any(sigma[k] < sigma[k + 1] for k in range(p - 1)) or (sigma and sigma[-1] < 0):
        return None
    return sigma


def kl_zero_closed_form(mu: Weight) -> QPolynomial:
    """K_{0,mu}(q): q^|sigma| on the Sym pattern, 0 elsewhere."""
    sigma = sigma_of(mu)
    if sigma is None:
        return ZERO
    return QPolynomial.monomial(sum(sigma))


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""
    falsification: bool = False


@dataclass
class IdentityReport:
    checks: list[IdentityCheck]
    coefficient_range: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]


def exit_degree(mu: Weight, members) -> int | None:
    """Least total |theta| along a column path from ``mu`` to a weight outside the window.

    Every nonzero A_q entry below the diagonal has q-degree |theta| >= 1, so
    K_{lambda,mu} for any lambda outside the window has no terms below this
    degree.  None means no path leaves the window.
    """
    best = {mu: 0}
    heap = [(0, 0, mu)]
    tie = itertools.count(1)
    while heap:
        dist, _, w = heapq.heappop(heap)
        if dist > best.get(w, dist):
            continue
        if w not in members:
            return dist
        for e in column_q(w).entries:
            step = sum(e.theta)
            if step == 0:
                continue
            nd = dist + step
            lam = e.lambda_theta
            if nd < best.get(lam, nd + 1):
                best[lam] = nd
                heapq.heappush(heap, (nd, next(tie), lam))
    return None


def verify_identities(window, A: TriangularQMatrix | None = None, K: TriangularQMatrix | None = None) -> IdentityReport:
    A = A if A is not None else assemble_Aq(window)
    K = K if K is not None else invert_unitriangular(A)
    win = A.window
    members = set(win)
    checks = []

    checks.append(IdentityCheck("A_q K_q = I", is_identity_product(matmul(A, K), win)))
    checks.append(IdentityCheck("K_q A_q = I", is_identity_product(matmul(K, A), win)))

    bad = []
    for mu in win:
        col = column_q(mu)
        r = col.profile.r
        if col.coefficient_sum() != QPolynomial((1, -1)) ** r:
            bad.append(str(mu))
    checks.append(IdentityCheck("column sums = (1-q)^#mu", not bad, ", ".join(bad[:5])))

    deg = {w: degree_of_atypicality(w) for w in win}
    cross = [
        f"{name}[{r}, {c}]"
        for name, M in (("A", A), ("K", K))
        for (r, c) in M.entries
        if deg[r] != deg[c]
    ]
    checks.append(IdentityCheck("no entries across atypicality degrees", not cross, ", ".join(cross[:5])))

    cols = K.cols_sparse()
    bad = []
    for mu in win:
        total = ZERO
        for _, p in cols[mu]:
            total = total + p
        r = deg[mu]
        ed = exit_degree(mu, members)
        if ed is None:
            if r != 0 or total != ONE:
                bad.append(f"{mu}: sum {total} with no exit")
            continue
        D = ed - 1
        if D < 0:
            continue
        if total.truncate(D) != inverse_power_series(r, D):
            bad.append(f"{mu}: through q^{D} got {total.truncate(D)}")
    checks.append(IdentityCheck("partial sums of K match 1/(1-q)^#mu", not bad, "; ".join(bad[:5])))

    neg = [f"K[{r}, {c}] = {p}" for (r, c), p in K.entries.items() if any(x < 0 for x in p.coeffs)]
    checks.append(
        IdentityCheck("K coefficients nonnegative", not neg, "; ".join(neg[:5]), falsification=bool(neg))
    )
    all_coeffs = [x for p in K.entries.values() for x in p.coeffs if x]
    rng = (min(all_coeffs), max(all_coeffs)) if all_coeffs else None
    return IdentityReport(checks, rng)

"""Verification harness: reproduces the worked examples and runs the identity suites.

Each check returns a CheckResult with status ``pass``, ``fail`` or
``falsification-candidate`` (the conjectured rule produced something
inconsistent).  ``run_all`` collects them into a VerificationReport.
"""

from __future__ import annotations

import dataclasses
import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .atypicality import (
    atypicality_matrix,
    degree_of_atypicality,
    delta_set,
    delta_set_oracle,
    nabla_profile,
    odd_reflection_walk,
)
from .cache import load_matrix, store_matrix
from .characters import (
    char_simple,
    decompose_g0,
    smallest_constituent,
    verify_kac_decomposition,
)
from .errors import ConjectureFalsified
from .klmatrix import assemble_Aq, invert_unitriangular, window_between, window_union
from .multiplicity import column_q, mu_theta, row
from .qpoly import ONE, QPolynomial, minus_q_power
from .weights import Weight, dot_dominant, is_dominant, parse_weight, two_rho_one

PASS = "pass"
FAIL = "fail"
FALSIFIED = "falsification-candidate"

FAULTS = ("flip-k",)


@dataclass
class CheckResult:
    name: str
    anchor: str
    status: str
    expected: object = None
    actual: object = None
    seconds: float = 0.0
    limit: float | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
        }
        if timings:
            out["seconds"] = round(self.seconds, 4)
            out["limit"] = self.limit
        return out


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return 1
        if FALSIFIED in statuses:
            return 3
        return 0

    def to_json(self, timings: bool = False) -> dict:
        return {"checks": [c.to_json(timings) for c in self.checks], "exit_code": self.exit_code}

    def lines(self) -> list[str]:
        return [
            f"[{c.status.upper():>4}] {c.name} ({c.seconds:.2f}s) -- {c.anchor}" for c in self.checks
        ]


# ----------------------------------------------------------- reference data

EX_MU = "2,1,0,0|0,-2,-2,-2,-2"
EX_MATRIX = [
    [5, 2, 1, 0, -1],
    [3, 0, -1, -2, -3],
    [1, -2, -3, -4, -5],
    [0, -3, -4, -5, -6],
]
EX_GAMMA = [(4, 1), (2, 2), (1, 4)]
EX_DELTA = [
    [(4, 1), (3, 1), (2, 2), (2, 3), (2, 4), (2, 5), (1, 3), (1, 4), (1, 5)],
    [(2, 2), (2, 3), (2, 4), (2, 5), (1, 3), (1, 4), (1, 5)],
    [(1, 4), (1, 5)],
]
EX_NABLA = [
    [(4, 1), (3, 1)],
    [(2, 2), (2, 3), (2, 4), (2, 5), (1, 3)],
    [(1, 4), (1, 5)],
]
EX_K = [2, 5, 2]
# off-diagonal pairs (1-based) that are connected; all others disconnected
EX_CONNECTED = [(2, 3)]
EX_MU_ZERO = "0,0,-4,-4|2,1,0,0,0"
EX_SHIFTED = "4,6,0,2|-2,-7,-2,-4,-2"
EX_TOP = "5,5,1,1|-2,-3,-4,-4,-4"
EX_TABLE = [
    ((0, 0, 0), "2,1,0,0|0,-2,-2,-2,-2", "2,1,0,0|0,-2,-2,-2,-2"),
    ((1, 0, 0), "2,1,0,2|-2,-2,-2,-2,-2", "2,1,1,1|-2,-2,-2,-2,-2"),
    ((0, 1, 0), "2,6,0,0|0,-7,-2,-2,-2", "5,3,0,0|0,-3,-3,-3,-4"),
    ((0, 0, 1), "4,1,0,0|0,-2,-2,-4,-2", "4,1,0,0|0,-2,-2,-3,-3"),
    ((1, 1, 0), "2,6,0,2|-2,-7,-2,-2,-2", "5,3,1,1|-2,-3,-3,-3,-4"),
    ((1, 0, 1), "4,1,0,2|-2,-2,-2,-4,-2", "4,1,1,1|-2,-2,-2,-3,-3"),
    ((0, 1, 1), "4,6,0,0|0,-7,-2,-4,-2", "5,5,0,0|0,-3,-4,-4,-4"),
    ((1, 1, 1), "4,6,0,2|-2,-7,-2,-4,-2", "5,5,1,1|-2,-3,-4,-4,-4"),
]
GL22_ROW_CASES = [(3, 3), (3, 2), (4, 1), (1, 0), (2, 1), (2, 2)]


def gl22(x: int, y: int) -> Weight:
    return Weight((x, y), (-y, -x))


def gl22_expected_row(x: int, y: int) -> dict[Weight, QPolynomial]:
    """The three published case lists for lambda = (x, y | -y, -x)."""
    mq = minus_q_power(1)
    q2 = minus_q_power(2)
    if x == y:
        return {gl22(x, y): ONE, gl22(x, y - 1): mq, gl22(x - 2, y - 2): q2}
    if x == y + 1:
        return {
            gl22(x, y): ONE,
            gl22(x, y - 1): mq,
            gl22(x - 1, y): mq,
            gl22(x - 2, y - 1): mq,
            gl22(x - 1, y - 1): q2,
        }
    if x >= y + 2:
        return {gl22(x, y): ONE, gl22(x - 1, y): mq, gl22(x, y - 1): mq, gl22(x - 1, y - 1): q2}
    raise ValueError("need x >= y")


def kl_zero_window_bottoms(max_total: int = 6) -> list[Weight]:
    return [
        Weight((-x, -y), (y, x))
        for y in range(max_total + 1)
        for x in range(y + 1)
        if x + y <= max_total
    ]


STABILITY_WINDOWS = [
    ("-1,-1|1,1", "1,1|-1,-1"),
    ("-2,-2|2,2", "2,1|-1,-2"),
    ("-3,-3|3,3", "2,2|-2,-2"),
]


def sample_dominant(m: int, n: int, count: int, lo: int, hi: int, rng: np.random.Generator) -> list[Weight]:
    out = []
    for _ in range(count):
        e = sorted(rng.integers(lo, hi + 1, size=m).tolist(), reverse=True)
        d = sorted(rng.integers(lo, hi + 1, size=n).tolist(), reverse=True)
        out.append(Weight(tuple(e), tuple(d)))
    return out


def identity_samples(per_algebra: int = 100, seed: int = 20240601) -> list[Weight]:
    rng = np.random.default_rng(seed)
    out = []
    for m, n in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        out.extend(sample_dominant(m, n, per_algebra, -5, 5, rng))
    return out


def _fmt_roots(roots) -> list[list[int]]:
    return [list(r) for r in roots]


def _faulty(profile, fault):
    if fault == "flip-k" and profile.r:
        k = list(profile.k)
        k[0] += 1
        return dataclasses.replace(profile, k=tuple(k))
    return profile


def top_weight_image(mu: Weight, fault: str | None = None) -> Weight | None:
    """dot_dominant(mu + sum k_i gamma_i), with an optional injected fault."""
    profile = _faulty(nabla_profile(mu), fault)
    return dot_dominant(mu_theta(mu, (1,) * profile.r, profile))


# ----------------------------------------------------------- checks

def check_worked_example(fault=None):
    mu = parse_weight(EX_MU)
    p = nabla_profile(mu)
    conn = [(a + 1, b + 1) for a in range(p.r) for b in range(a + 1, p.r) if p.connected[a][b]]
    top = top_weight_image(mu, fault)
    actual = {
        "matrix": atypicality_matrix(mu).tolist(),
        "gamma": _fmt_roots(p.gamma),
        "delta_sets": [_fmt_roots(s) for s in p.delta_sets],
        "nabla_sets": [_fmt_roots(s) for s in p.nabla_sets],
        "k": list(p.k),
        "connected_pairs": [list(c) for c in conn],
        "mu_zero": str(p.mu_zero),
        "shifted": str(mu_theta(mu, (1,) * p.r, _faulty(p, fault))),
        "dot_dominant": str(top) if top is not None else None,
    }
    expected = {
        "matrix": EX_MATRIX,
        "gamma": [list(g) for g in EX_GAMMA],
        "delta_sets": [[list(a) for a in s] for s in EX_DELTA],
        "nabla_sets": [[list(a) for a in s] for s in EX_NABLA],
        "k": EX_K,
        "connected_pairs": [list(c) for c in EX_CONNECTED],
        "mu_zero": EX_MU_ZERO,
        "shifted": EX_SHIFTED,
        "dot_dominant": EX_TOP,
    }
    return actual == expected, expected, actual


def check_theta_table():
    mu = parse_weight(EX_MU)
    col = column_q(mu)
    actual = [[list(e.theta), str(e.mu_theta), str(e.lambda_theta)] for e in col.entries]
    expected = [[list(t), a, b] for t, a, b in EX_TABLE]
    return actual == expected, expected, actual


def check_gl22_rows():
    bad = []
    for x, y in GL22_ROW_CASES:
        got = row(gl22(x, y))
        want = gl22_expected_row(x, y)
        if got != want:
            bad.append({"lambda": [x, y], "got": {str(k): str(v) for k, v in got.items()}})
    return not bad, "all six rows match the case lists", bad or "all six rows match the case lists"


def _cached_inverse(lo_list, hi, cache_dir):
    win = window_union(lo_list, [hi])
    key_lo = min(win, key=lambda w: w.vector)  # stable identifier for the union window
    if cache_dir is not None:
        K = load_matrix(cache_dir, "K:" + ";".join(str(b) for b in lo_list), key_lo, hi)
        if K is not None and set(K.window) == set(win):
            return K
    K = invert_unitriangular(assemble_Aq(win))
    if cache_dir is not None:
        store_matrix(cache_dir, "K:" + ";".join(str(b) for b in lo_list), key_lo, hi, K)
    return K


def check_kl_zero_row(cache_dir=None):
    zero = Weight((0, 0), (0, 0))
    bottoms = kl_zero_window_bottoms(6)
    K = _cached_inverse(bottoms, zero, cache_dir)
    got = K.row(zero)
    want = {b: QPolynomial.monomial(-sum(b.eps)) for b in bottoms}
    return (
        got == want,
        {str(k): str(v) for k, v in want.items()},
        {str(k): str(v) for k, v in got.items()},
    )


def check_identity_suite(samples, fault=None):
    failures = []
    for mu in samples:
        p = nabla_profile(mu)
        try:
            col = column_q(mu)
        except ConjectureFalsified as exc:
            failures.append(f"{mu}: {exc}")
            continue
        if col.coefficient_sum() != QPolynomial((1, -1)) ** p.r:
            failures.append(f"{mu}: coefficient sum {col.coefficient_sum()}")
        top = top_weight_image(mu, fault)
        if top != p.mu_zero + two_rho_one(*mu.shape):
            failures.append(f"{mu}: dot_dominant(mu + sum k gamma) = {top}, mu_0 + 2rho_1 = {p.mu_zero + two_rho_one(*mu.shape)}")
        lams = col.weights()
        if len(set(lams)) != len(lams) or not all(is_dominant(w) for w in lams):
            failures.append(f"{mu}: lambda_theta not distinct/dominant")
        if any(degree_of_atypicality(w) != p.r for w in lams):
            failures.append(f"{mu}: atypicality degree not preserved")
        for g in p.gamma:
            if set(delta_set(mu, g)) != set(delta_set_oracle(mu, g)):
                failures.append(f"{mu}: Delta({g}) rule/oracle mismatch")
    return not failures, 0, failures or 0


def check_mu_zero_dual(samples):
    bad = [str(mu) for mu in samples if nabla_profile(mu).mu_zero != odd_reflection_walk(mu)[0]]
    return not bad, 0, bad or 0


def check_simple_characters(bound: int = 3):
    bad = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, x + 1):
            mu = gl22(x, y)
            chi = char_simple(mu)
            dec = decompose_g0(chi)
            low = smallest_constituent(dec)
            p = nabla_profile(mu)
            if not chi.nonnegative or chi[mu] != 1:
                bad.append(f"{mu}: multiplicities")
            if low != p.mu_zero or dec.get(low) != 1 or any(c <= 0 for c in dec.values()):
                bad.append(f"{mu}: smallest constituent {low}, expected {p.mu_zero}")
    return not bad, 0, bad or 0


def _dominant_box(m, n, lo, hi):
    for e in itertools.combinations_with_replacement(range(hi, lo - 1, -1), m):
        for d in itertools.combinations_with_replacement(range(hi, lo - 1, -1), n):
            yield Weight(e, d)


KAC_GL22 = ["1,1|-1,-1", "2,1|-1,-2", "1,0|0,-1"]


def check_kac_decompositions():
    bad = []
    lams = [w for m, n in [(1, 1), (2, 1), (1, 2)] for w in _dominant_box(m, n, -2, 2)]
    lams += [parse_weight(s) for s in KAC_GL22]
    for lam in lams:
        rep = verify_kac_decomposition(lam)
        if not rep.equal:
            bad.append(f"{lam}: {len(rep.mismatches)} mismatching weights")
    return not bad, len(lams), bad or len(lams)


def check_gl11_simple(bound: int = 5):
    bad = []
    for a in range(-bound, bound + 1):
        mu = Weight((a,), (-a,))
        if char_simple(mu).to_dict() != {mu: 1}:
            bad.append(str(mu))
    return not bad, 0, bad or 0


def check_window_stability():
    windows = [window_between(parse_weight(lo), parse_weight(hi)) for lo, hi in STABILITY_WINDOWS]
    inverses = [invert_unitriangular(assemble_Aq(w)) for w in windows]
    bad = []
    for a, b in [(0, 1), (1, 2), (0, 2)]:
        small = set(windows[a])
        if not small <= set(windows[b]):
            bad.append(f"window {a} not inside window {b}")
            continue
        for lam in windows[a]:
            for mu in windows[a]:
                if inverses[a][lam, mu] != inverses[b][lam, mu]:
                    bad.append(f"K[{lam}, {mu}] differs between windows {a} and {b}")
    return not bad, 0, bad or 0


CHECKS = [
    ("worked example gl(4/5): matrix, gamma, Delta, nabla, k, mu_0, top weight",
     "gl(4/5) worked example with mu = (2,1,0,0; 0,-2,-2,-2,-2)", 1.0),
    ("theta table for the gl(4/5) example", "table of mu_theta and lambda_theta for the same mu", 1.0),
    ("gl(2/2) q-multiplicity rows", "gl(2/2) case lists x = y, x = y + 1, x >= y + 2", 5.0),
    ("K_{0,mu} by inversion", "K_{0,(-x,-y;y,x)} = q^{x+y} from the Sym decomposition of the odd part", 30.0),
    ("column identities on random weights",
     "sum_lambda a_{lambda,mu}(q) = (1-q)^{#mu}; dot_dominant(mu + sum k_i gamma_i) = mu_0 + 2 rho_1; unique maximal Delta set", 60.0),
    ("mu_0 formula vs odd reflection walk", "mu_0 = mu - sum of odd roots outside Delta(gamma_1), via odd reflections", None),
    ("simple characters of gl(2/2) and their smallest even constituent",
     "ch L = sum b ch V; unique smallest even highest weight mu_0 with multiplicity 1", 120.0),
    ("Kac characters decompose into simple characters", "ch V_lambda = sum_mu a_{lambda,mu} ch L_mu", 120.0),
    ("gl(1/1) simple characters are one-dimensional", "ch L = sum b ch V with b = K(-1)", None),
    ("K entries stable under window growth", "A_q and K_q are mutually inverse lower-triangular matrices", None),
]


def run_all(quick: bool = False, fault: str | None = None, cache_dir=None, only=None) -> VerificationReport:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {FAULTS}")
    _kernels.warmup()
    samples = identity_samples(10 if quick else 100)
    runners = [
        lambda: check_worked_example(fault),
        check_theta_table,
        check_gl22_rows,
        lambda: check_kl_zero_row(cache_dir),
        lambda: check_identity_suite(samples, fault),
        lambda: check_mu_zero_dual(samples),
        lambda: check_simple_characters(1 if quick else 3),
        check_kac_decompositions,
        check_gl11_simple,
        check_window_stability,
    ]
    report = VerificationReport()
    for idx, ((name, anchor, limit), fn) in enumerate(zip(CHECKS, runners), start=1):
        if only is not None and idx not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, expected, actual = fn()
            status = PASS if ok else FAIL
        except ConjectureFalsified as exc:
            status, expected, actual = FALSIFIED, None, str(exc)
        dt = time.perf_counter() - t0
        if status == PASS and limit is not None and dt > limit:
            status = FAIL
            actual = f"runtime {dt:.2f}s over limit {limit}s"
        report.checks.append(CheckResult(f"{idx}. {name}", anchor, status, expected, actual, dt, limit))
    return report

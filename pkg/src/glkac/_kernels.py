"""Numeric inner loops with a numba path and a pure-numpy path.

Set ``GLKAC_NUMBA=0`` in the environment before import to force the numpy
implementations.  Both paths return identical arrays; the test-suite and
``benchmarks/bench_kernels.py`` compare them directly.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("GLKAC_NUMBA", "1") not in ("0", "false", "no")


# ---------------------------------------------------------------- numpy paths

def interval_points_np(hi, simple, bounds):
    """All ``hi - c @ simple`` for integer vectors ``0 <= c <= bounds``.

    Rows come out in odometer order with the last coefficient varying fastest.
    """
    hi = np.asarray(hi, dtype=np.int64)
    if len(bounds) == 0:
        return hi[None, :].copy()
    grids = np.meshgrid(*[np.arange(b + 1, dtype=np.int64) for b in bounds], indexing="ij")
    coeffs = np.stack([g.ravel() for g in grids], axis=1)
    return hi[None, :] - coeffs @ np.asarray(simple, dtype=np.int64)


def dominant_mask_np(points, m):
    points = np.asarray(points)
    ok = np.ones(len(points), dtype=bool)
    if m > 1:
        ok &= np.all(points[:, : m - 1] >= points[:, 1:m], axis=1)
    if points.shape[1] - m > 1:
        ok &= np.all(points[:, m:-1] >= points[:, m + 1 :], axis=1)
    return ok


def reduce_keys_np(keys, mults):
    """Sort by key, sum multiplicities of equal keys and drop zeros."""
    keys = np.asarray(keys, dtype=np.int64)
    mults = np.asarray(mults, dtype=np.int64)
    if len(keys) == 0:
        return keys, mults
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    mults = mults[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    out_k = keys[starts]
    out_m = np.add.reduceat(mults, starts)
    nz = out_m != 0
    return out_k[nz], out_m[nz]


def convolve_keys_np(ka, ma, kb, mb):
    keys = np.add.outer(np.asarray(ka, dtype=np.int64), np.asarray(kb, dtype=np.int64)).ravel()
    mults = np.multiply.outer(np.asarray(ma, dtype=np.int64), np.asarray(mb, dtype=np.int64)).ravel()
    return reduce_keys_np(keys, mults)


# ---------------------------------------------------------------- numba paths

if numba is not None:

    @numba.njit(cache=True)
    def interval_points_nb(hi, simple, bounds):
        k = bounds.shape[0]
        dim = hi.shape[0]
        total = 1
        for b in bounds:
            total *= b + 1
        out = np.empty((total, dim), dtype=np.int64)
        c = np.zeros(k, dtype=np.int64)
        cur = hi.copy()
        for row in range(total):
            out[row, :] = cur
            # odometer step, last coefficient fastest
            pos = k - 1
            while pos >= 0:
                if c[pos] < bounds[pos]:
                    c[pos] += 1
                    cur -= simple[pos]
                    break
                cur += c[pos] * simple[pos]
                c[pos] = 0
                pos -= 1
        return out

    @numba.njit(cache=True)
    def dominant_mask_nb(points, m):
        p, dim = points.shape
        ok = np.ones(p, dtype=np.bool_)
        for r in range(p):
            for i in range(m - 1):
                if points[r, i] < points[r, i + 1]:
                    ok[r] = False
                    break
            if ok[r]:
                for j in range(m, dim - 1):
                    if points[r, j] < points[r, j + 1]:
                        ok[r] = False
                        break
        return ok

    @numba.njit(cache=True)
    def _reduce_sorted_nb(keys, mults):
        n = keys.shape[0]
        out_k = np.empty(n, dtype=np.int64)
        out_m = np.empty(n, dtype=np.int64)
        count = 0
        i = 0
        while i < n:
            key = keys[i]
            acc = 0
            while i < n and keys[i] == key:
                acc += mults[i]
                i += 1
            if acc != 0:
                out_k[count] = key
                out_m[count] = acc
                count += 1
        return out_k[:count], out_m[:count]

    @numba.njit(cache=True)
    def _reduce_dense_nb(keys, mults, lo, span):
        acc = np.zeros(span, dtype=np.int64)
        for i in range(keys.shape[0]):
            acc[keys[i] - lo] += mults[i]
        count = 0
        for t in range(span):
            if acc[t] != 0:
                count += 1
        out_k = np.empty(count, dtype=np.int64)
        out_m = np.empty(count, dtype=np.int64)
        count = 0
        for t in range(span):
            if acc[t] != 0:
                out_k[count] = t + lo
                out_m[count] = acc[t]
                count += 1
        return out_k, out_m

    @numba.njit(cache=True)
    def reduce_keys_nb(keys, mults):
        if keys.shape[0] == 0:
            return keys.copy(), mults.copy()
        lo = keys.min()
        span = keys.max() - lo + 1
        # dense accumulation when the key range is comparable to the input size
        if span <= 4 * keys.shape[0] + 4096:
            return _reduce_dense_nb(keys, mults, lo, span)
        order = np.argsort(keys)
        return _reduce_sorted_nb(keys[order], mults[order])

    @numba.njit(cache=True)
    def convolve_keys_nb(ka, ma, kb, mb):
        na = ka.shape[0]
        nb = kb.shape[0]
        keys = np.empty(na * nb, dtype=np.int64)
        mults = np.empty(na * nb, dtype=np.int64)
        idx = 0
        for i in range(na):
            for j in range(nb):
                keys[idx] = ka[i] + kb[j]
                mults[idx] = ma[i] * mb[j]
                idx += 1
        return reduce_keys_nb(keys, mults)


# ---------------------------------------------------------------- dispatch

def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def interval_points(hi, simple, bounds):
    if USE_NUMBA:
        return interval_points_nb(_i64(hi), _i64(simple).reshape(len(bounds), len(hi)), _i64(bounds))
    return interval_points_np(hi, simple, bounds)


def dominant_mask(points, m):
    if USE_NUMBA:
        return dominant_mask_nb(_i64(points), m)
    return dominant_mask_np(points, m)


def reduce_keys(keys, mults):
    if USE_NUMBA:
        return reduce_keys_nb(_i64(keys), _i64(mults))
    return reduce_keys_np(keys, mults)


def convolve_keys(ka, ma, kb, mb):
    if USE_NUMBA:
        return convolve_keys_nb(_i64(ka), _i64(ma), _i64(kb), _i64(mb))
    return convolve_keys_np(ka, ma, kb, mb)


def warmup():
    """Trigger JIT compilation so later timings measure the algorithms only."""
    if not USE_NUMBA:
        return
    simple = np.array([[1, -1]], dtype=np.int64)
    pts = interval_points(np.array([1, 0]), simple, np.array([1]))
    dominant_mask(pts, 1)
    k = np.array([0, 1], dtype=np.int64)
    convolve_keys(k, k, k, k)
    reduce_keys(k, k)

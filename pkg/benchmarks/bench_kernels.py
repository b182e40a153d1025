"""Compare the numba and numpy kernel paths on representative inputs.

Run with ``python3 benchmarks/bench_kernels.py``.  Outputs of both paths are
checked for equality before anything is timed.
"""

import argparse
import timeit

import numpy as np

from glkac import _kernels as K


def interval_case(k: int, bound: int):
    dim = k + 1
    simple = np.zeros((k, dim), dtype=np.int64)
    for p in range(k):
        simple[p, p], simple[p, p + 1] = 1, -1
    hi = np.arange(dim, 0, -1, dtype=np.int64) * 3
    return hi, simple, np.full(k, bound, dtype=np.int64)


def convolve_case(na: int, nb: int, seed: int = 0, spread: int = 4):
    rng = np.random.default_rng(seed)
    ka = rng.integers(0, spread * na, na)
    kb = rng.integers(0, spread * nb, nb)
    return ka, rng.integers(-3, 4, na), kb, rng.integers(-3, 4, nb)


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def bench(name, f_np, f_nb, args, repeat):
    if not same(f_np(*args), f_nb(*args)):
        raise SystemExit(f"{name}: numba and numpy paths disagree")
    t_np = min(timeit.repeat(lambda: f_np(*args), number=1, repeat=repeat))
    t_nb = min(timeit.repeat(lambda: f_nb(*args), number=1, repeat=repeat))
    print(f"{name:<28} numpy {t_np * 1e3:9.3f} ms   numba {t_nb * 1e3:9.3f} ms   x{t_np / t_nb:6.2f}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if K.numba is None:
        raise SystemExit("numba is not installed")

    i64 = lambda a: np.ascontiguousarray(a, dtype=np.int64)  # noqa: E731
    for k, bound in [(3, 6), (5, 5), (7, 4)]:
        hi, simple, bounds = interval_case(k, bound)
        bench(f"interval_points k={k} b={bound}", K.interval_points_np, K.interval_points_nb,
              (i64(hi), i64(simple), i64(bounds)), args.repeat)
        pts = K.interval_points_np(hi, simple, bounds)
        bench(f"dominant_mask rows={len(pts)}", K.dominant_mask_np, K.dominant_mask_nb,
              (pts, (k + 1) // 2), args.repeat)
    for na, nb in [(200, 200), (1000, 2000), (4000, 4000)]:
        case = tuple(i64(a) for a in convolve_case(na, nb))
        bench(f"convolve_keys {na}x{nb}", K.convolve_keys_np, K.convolve_keys_nb, case, args.repeat)
    # wide key range: exercises the sorting fallback instead of dense accumulation
    case = tuple(i64(a) for a in convolve_case(1000, 1000, spread=10**9))
    bench("convolve_keys sparse 1000x1000", K.convolve_keys_np, K.convolve_keys_nb, case, args.repeat)


if __name__ == "__main__":
    main()

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from glkac import _kernels as K

pytestmark = pytest.mark.skipif(K.numba is None, reason="numba not installed")

i64 = lambda a: np.ascontiguousarray(a, dtype=np.int64)  # noqa: E731


def _simple(k):
    s = np.zeros((k, k + 1), dtype=np.int64)
    for p in range(k):
        s[p, p], s[p, p + 1] = 1, -1
    return s


@given(st.integers(1, 4), st.data())
def test_interval_points_agree(k, data):
    bounds = i64(data.draw(st.lists(st.integers(0, 3), min_size=k, max_size=k)))
    hi = i64(data.draw(st.lists(st.integers(-4, 4), min_size=k + 1, max_size=k + 1)))
    a = K.interval_points_np(hi, _simple(k), bounds)
    b = K.interval_points_nb(hi, _simple(k), bounds)
    assert np.array_equal(a, b)
    assert len(a) == int(np.prod(bounds + 1))


@given(hnp.arrays(np.int64, st.tuples(st.integers(0, 30), st.integers(2, 5)), elements=st.integers(-3, 3)),
       st.integers(1, 2))
def test_dominant_mask_agree(points, m):
    m = min(m, points.shape[1] - 1)
    assert np.array_equal(K.dominant_mask_np(points, m), K.dominant_mask_nb(i64(points), m))


keys = hnp.arrays(np.int64, st.integers(0, 60), elements=st.integers(-10**12, 10**12))
small_keys = hnp.arrays(np.int64, st.integers(0, 60), elements=st.integers(-20, 20))


@given(st.one_of(keys, small_keys), st.data())
def test_reduce_keys_agree(k, data):
    mults = i64(data.draw(hnp.arrays(np.int64, k.shape, elements=st.integers(-3, 3))))
    a = K.reduce_keys_np(k, mults)
    b = K.reduce_keys_nb(i64(k), mults)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    assert np.all(np.diff(a[0]) > 0) and np.all(a[1] != 0)


@given(small_keys, small_keys, st.data())
def test_convolve_keys_agree(ka, kb, data):
    ma = i64(data.draw(hnp.arrays(np.int64, ka.shape, elements=st.integers(-3, 3))))
    mb = i64(data.draw(hnp.arrays(np.int64, kb.shape, elements=st.integers(-3, 3))))
    a = K.convolve_keys_np(ka, ma, kb, mb)
    b = K.convolve_keys_nb(i64(ka), ma, i64(kb), mb)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_numpy_fallback_via_env():
    code = (
        "from glkac import _kernels, char_simple, parse_weight;"
        "assert _kernels.USE_NUMBA is {};"
        "print(char_simple(parse_weight('2,1|-1,-2')).to_json())"
    )
    outs = []
    for flag, expect in (("0", False), ("1", True)):
        res = subprocess.run(
            [sys.executable, "-c", code.format(expect)],
            env={**os.environ, "GLKAC_NUMBA": flag},
            capture_output=True,
            text=True,
            check=True,
        )
        outs.append(res.stdout)
    assert outs[0] == outs[1]

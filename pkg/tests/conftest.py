import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from glkac import _kernels
from glkac.weights import Weight

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def _jit_warm():
    # compile the numba kernels once so runtime assertions time the algorithms
    _kernels.warmup()


def blocks(size, lo=-4, hi=4):
    return st.lists(st.integers(lo, hi), min_size=size, max_size=size).map(
        lambda xs: tuple(sorted(xs, reverse=True))
    )


@st.composite
def dominant_weights(draw, shapes=((1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3), (3, 3)), lo=-4, hi=4):
    m, n = draw(st.sampled_from(shapes))
    return Weight(draw(blocks(m, lo, hi)), draw(blocks(n, lo, hi)))


@st.composite
def atypical_weights(draw, shapes=((2, 2), (3, 2), (2, 3), (3, 3), (2, 4))):
    """Dominant weights built so that at least one odd root pairs to zero."""
    m, n = draw(st.sampled_from(shapes))
    eps = draw(blocks(m, -3, 3))
    delta = list(draw(blocks(n, -3, 3)))
    # shifted eps_i = eps_i + m - i, shifted delta_j = delta_j + 1 - j; force a zero pairing
    i = draw(st.integers(1, m))
    j = draw(st.integers(1, n))
    delta[j - 1] = -(eps[i - 1] + m - i) - (1 - j)
    delta = tuple(sorted(delta, reverse=True))
    return Weight(eps, delta)


@st.composite
def any_weights(draw, m=2, n=2, lo=-4, hi=4):
    ints = st.integers(lo, hi)
    return Weight(
        tuple(draw(st.lists(ints, min_size=m, max_size=m))),
        tuple(draw(st.lists(ints, min_size=n, max_size=n))),
    )

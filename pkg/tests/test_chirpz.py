import numpy as np
from hypothesis import given, settings, strategies as st

from fresnel_radon._chirpz import dtft, dtft_direct


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(1, 300),
    m=st.integers(1, 300),
    omega0=st.floats(-20, 20),
    domega=st.floats(-3, 3),
    seed=st.integers(0, 2**31),
)
def test_matches_direct_sum(n, m, omega0, domega, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    fast = dtft(c, omega0, domega, m)
    ref = dtft_direct(c, omega0, domega, m)
    assert np.max(np.abs(fast - ref)) <= 1e-10 * max(1.0, np.abs(ref).max())


def test_reduces_to_fft():
    c = np.arange(16) + 1j
    np.testing.assert_allclose(dtft(c, 0.0, 2 * np.pi / 16, 16), np.fft.fft(c), atol=1e-11)


def test_batched_rows():
    rng = np.random.default_rng(1)
    c = rng.normal(size=(5, 64)) + 0j
    out = dtft(c, 0.1, 0.05, 30)
    for row, expected in zip(c, out):
        np.testing.assert_allclose(dtft_direct(row, 0.1, 0.05, 30), expected, atol=1e-11)

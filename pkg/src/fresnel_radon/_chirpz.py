"""Bluestein evaluation of a DTFT on an arbitrary uniform frequency lattice."""

import numpy as np
from scipy import fft as sfft


def dtft(c, omega0, domega, m, workers=None):
    """Return ``X[..., j] = sum_k c[..., k] * exp(-1j * k * (omega0 + j * domega))``.

    ``j`` runs over ``0..m-1`` and the sum is along the last axis of ``c``.
    The result equals direct summation up to rounding; ``domega`` may be any
    real number (no relation to ``2*pi/n`` is required).
    """
    c = np.asarray(c, dtype=complex)
    n = c.shape[-1]
    if m < 1:
        raise ValueError("m must be positive")
    k = np.arange(n, dtype=float)
    j = np.arange(m, dtype=float)
    # k*j = (k^2 + j^2 - (j-k)^2) / 2
    half = 0.5 * domega
    a = c * np.exp(-1j * (omega0 * k + half * k * k))
    lag = np.arange(-(n - 1), m, dtype=float)
    b = np.exp(1j * half * lag * lag)
    size = sfft.next_fast_len(n + m - 1)
    fa = sfft.fft(a, size, axis=-1, workers=workers)
    fb = sfft.fft(b, size)
    conv = sfft.ifft(fa * fb, axis=-1, workers=workers)
    return conv[..., n - 1:n - 1 + m] * np.exp(-1j * half * j * j)


def dtft_direct(c, omega0, domega, m):
    """O(n*m) reference for :func:`dtft`."""
    c = np.asarray(c, dtype=complex)
    k = np.arange(c.shape[-1])
    omega = omega0 + domega * np.arange(m)
    return c @ np.exp(-1j * np.outer(k, omega))

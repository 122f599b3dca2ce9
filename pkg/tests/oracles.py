"""Independent reference computations used only by the tests.

None of these share code paths with the package implementations they check.
"""

import math

import numpy as np
from scipy.integrate import quad


def direct_ft(samples, x, nu, sign=-1):
    """(2 pi)^-1/2 sum_k s_k exp(sign i x_k nu_j) dx by explicit matrix."""
    dx = x[1] - x[0]
    return np.exp(sign * 1j * np.outer(nu, x)) @ samples * dx / math.sqrt(2 * math.pi)


def wigner_point_quad(psi, nu, x, limit=40.0):
    """W(nu, x) from adaptive quadrature of the defining u-integral."""
    def integrand(u, part):
        v = np.conj(psi(x + u / 2)) * psi(x - u / 2) * np.exp(1j * nu * u) / (2 * math.pi)
        return v.real if part == 0 else v.imag
    re = quad(integrand, -limit, limit, args=(0,), epsabs=1e-13, limit=400)[0]
    im = quad(integrand, -limit, limit, args=(1,), epsabs=1e-13, limit=400)[0]
    return complex(re, im)


def radon_gaussian_delta(values, x, nu, p_pos, p_freq, y, cells=2.0):
    """sum_ij g(y - p_pos x_i - p_freq nu_j) W_ij dx dnu with a narrow
    Gaussian g standing in for the delta function (width = ``cells`` grid cells
    measured along the output coordinate)."""
    dx, dnu = x[1] - x[0], nu[1] - nu[0]
    sigma = cells * max(abs(p_pos) * dx, abs(p_freq) * dnu)
    arg = y - p_pos * x[:, None] - p_freq * nu[None, :]
    g = np.exp(-0.5 * (arg / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
    return float(np.sum(g * values) * dx * dnu)


def collins_quad(psi, a, b, d, x, limit=30.0):
    """Collins integral at one output point by adaptive quadrature (b != 0)."""
    pref = 1 / np.sqrt(2j * math.pi * b)

    def integrand(xp, part):
        v = pref * np.exp(1j / (2 * b) * (a * xp * xp - 2 * xp * x + d * x * x)) * psi(xp)
        return v.real if part == 0 else v.imag
    re = quad(integrand, -limit, limit, args=(0,), epsabs=1e-13, limit=1000)[0]
    im = quad(integrand, -limit, limit, args=(1,), epsabs=1e-13, limit=1000)[0]
    return complex(re, im)


def hermite_gauss_scipy(order, x):
    """Hermite-Gauss mode from scipy's physicists' Hermite polynomials."""
    from scipy.special import eval_hermite
    norm = 1.0 / math.sqrt(2.0 ** order * math.factorial(order) * math.sqrt(math.pi))
    return norm * eval_hermite(order, x) * np.exp(-x * x / 2)

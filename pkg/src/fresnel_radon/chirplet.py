"""Closed forms for the Gaussian chirplet

    psi0(x) = (eps/pi)^(1/4) exp(-(eps - i beta) x^2 / 2),   eps > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import Domain, sample_function


@dataclass(frozen=True)
class ChirpletParams:
    epsilon: float
    beta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"chirplet epsilon must be > 0, got {self.epsilon!r}")
        if not math.isfinite(self.beta):
            raise ValueError(f"chirplet beta must be finite, got {self.beta!r}")


def chirplet_field(p, x):
    x = np.asarray(x, dtype=float)
    return (p.epsilon / math.pi) ** 0.25 * np.exp(-(p.epsilon - 1j * p.beta) * x * x / 2)


def chirplet_sampled(p, grid):
    return sample_function(grid, lambda x: chirplet_field(p, x), Domain.SPACE)


def chirplet_wigner(p, nu, x):
    """(1/pi) exp(-[eps x^2 + (nu - beta x)^2 / eps]); ridge along nu = beta x."""
    nu = np.asarray(nu, dtype=float)
    x = np.asarray(x, dtype=float)
    return np.exp(-(p.epsilon * x * x + (nu - p.beta * x) ** 2 / p.epsilon)) / math.pi


def _spread(p, D, B):
    return (D - B * p.beta) ** 2 + (B * p.epsilon) ** 2


def chirplet_radon(p, D, B, x):
    """Projection of the chirplet Wigner function on lines x = D x' - B nu'."""
    if D == 0 and B == 0:
        raise ValueError("degenerate line family: D and B are both zero")
    s = _spread(p, D, B)
    x = np.asarray(x, dtype=float)
    return np.sqrt(p.epsilon / math.pi / s) * np.exp(-p.epsilon * x * x / s)


def chirplet_fresnel_intensity(p, m, x):
    """|phi0(x)|^2 after the [D, -B, -C, A] system.

    Only the intensity is exposed; A and C enter the output as a pure phase.
    """
    if m.b == 0:
        raise ValueError("B = 0: use chirplet_radon(p, D, 0, x), the exact marginal")
    return chirplet_radon(p, m.d, m.b, x)


def width_identity_terms(p, D, B):
    """Both sides of the Gaussian-width identity

        1/(2B(B eps + iD - i beta B)) + c.c. = eps / ((D - B beta)^2 + B^2 eps^2)
    """
    z = 1.0 / (2 * B * (B * p.epsilon + 1j * D - 1j * p.beta * B))
    lhs = z + z.conjugate()
    return lhs, p.epsilon / _spread(p, D, B)

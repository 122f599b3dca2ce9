"""Uniform grids, sampled complex fields and the unitary Fourier transform.

Fourier convention used throughout the package::

    forward (Space -> Frequency):   psi~(nu) = (2 pi)^-1/2 Int psi(x) exp(-i x nu) dx
    inverse (Frequency -> Space):   psi(x)   = (2 pi)^-1/2 Int psi~(nu) exp(+i x nu) dnu

With this sign the frequency marginal of the Wigner function is |psi~|^2 and a
chirp exp(i beta x^2 / 2) has local frequency +beta x.  All integrals are
evaluated with the rectangle rule on the sampling lattice.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from ._chirpz import dtft

__all__ = [
    "Domain",
    "Grid1D",
    "NyquistError",
    "SampledField",
    "make_centered_grid",
    "sample_function",
    "l2_norm",
    "inner",
    "normalize",
    "unitary_ft",
    "hermite_gauss",
    "boundary_ratio",
    "support_extent",
    "MAX_HG_ORDER",
]

MAX_HG_ORDER = 20


class Domain(enum.Enum):
    SPACE = "space"
    FREQUENCY = "frequency"


class NyquistError(ValueError):
    """Raised when a requested lattice cannot be represented by the sampling."""

    def __init__(self, message, max_frequency=None, min_n=None):
        super().__init__(message)
        self.max_frequency = max_frequency
        self.min_n = min_n


@dataclass(frozen=True)
class Grid1D:
    """Uniform lattice ``x_k = x0 + k*dx`` for ``k = 0..n-1``."""

    n: int
    dx: float
    x0: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise ValueError(f"grid needs an integer n >= 2, got {self.n!r}")
        if not (math.isfinite(self.dx) and self.dx > 0):
            raise ValueError(f"grid spacing must be finite and positive, got {self.dx!r}")
        if not math.isfinite(self.x0):
            raise ValueError(f"grid origin must be finite, got {self.x0!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "dx", float(self.dx))
        object.__setattr__(self, "x0", float(self.x0))

    @property
    def coords(self):
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def span(self):
        return self.n * self.dx

    @property
    def last(self):
        return self.x0 + (self.n - 1) * self.dx

    @property
    def half_width(self):
        """Largest coordinate magnitude on the lattice."""
        return max(abs(self.x0), abs(self.last))

    def index_of(self, x):
        """Fractional index of coordinate(s) ``x``."""
        return (np.asarray(x, dtype=float) - self.x0) / self.dx

    def nearest(self, x):
        return int(np.clip(np.rint(self.index_of(x)), 0, self.n - 1))


def make_centered_grid(n, half_width):
    """Even-sized grid on ``[-half_width, half_width)`` with index ``n/2`` at 0."""
    if isinstance(n, bool) or int(n) != n or n < 2 or n % 2:
        raise ValueError(f"centered grid needs an even n >= 2, got {n!r}")
    if not (math.isfinite(half_width) and half_width > 0):
        raise ValueError(f"half_width must be positive, got {half_width!r}")
    n = int(n)
    dx = 2.0 * half_width / n
    # x0 = -(n/2)*dx keeps the node at index n/2 exactly on zero
    grid = Grid1D(n, dx, -(n // 2) * dx)
    assert grid.x0 + (n // 2) * grid.dx == 0.0
    return grid


@dataclass(frozen=True, eq=False)
class SampledField:
    """Complex samples of psi (``Domain.SPACE``) or psi~ (``Domain.FREQUENCY``)."""

    grid: Grid1D
    samples: np.ndarray = dc_field(repr=False)
    domain: Domain = Domain.SPACE

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex).reshape(-1)
        if s.shape[0] != self.grid.n:
            raise ValueError(f"expected {self.grid.n} samples, got {s.shape[0]}")
        if not np.all(np.isfinite(s)):
            bad = int(np.flatnonzero(~np.isfinite(s))[0])
            raise ValueError(f"non-finite sample at coordinate {self.grid.coords[bad]!r}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "domain", Domain(self.domain))

    @property
    def coords(self):
        return self.grid.coords

    @property
    def intensity(self):
        return np.abs(self.samples) ** 2

    def with_samples(self, samples):
        return SampledField(self.grid, samples, self.domain)

    def __add__(self, other):
        _check_compatible(self, other)
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other):
        _check_compatible(self, other)
        return self.with_samples(self.samples - other.samples)

    def __mul__(self, scalar):
        return self.with_samples(complex(scalar) * self.samples)

    __rmul__ = __mul__


def _check_compatible(f, g):
    if f.grid != g.grid or f.domain != g.domain:
        raise ValueError("fields live on different grids or domains")


def sample_function(grid, f, tag=Domain.SPACE):
    """Evaluate ``f`` at every grid coordinate."""
    x = grid.coords
    try:
        values = np.asarray(f(x), dtype=complex)
        if values.shape != x.shape:
            raise TypeError
    except (TypeError, ValueError):
        values = np.array([complex(f(float(xi))) for xi in x])
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise ValueError(f"function is not finite at coordinate {x[bad]!r}")
    return SampledField(grid, values, tag)


def l2_norm(field):
    return math.sqrt(float(np.sum(np.abs(field.samples) ** 2)) * field.grid.dx)


def inner(f, g):
    """<f, g> = sum conj(f) g dx."""
    _check_compatible(f, g)
    return complex(np.vdot(f.samples, g.samples)) * f.grid.dx


def normalize(field):
    norm = l2_norm(field)
    if norm == 0:
        raise ValueError("cannot normalize a zero field")
    return field.with_samples(field.samples / norm)


def boundary_ratio(field):
    """Edge-sample magnitude relative to the peak; large values mean the
    window truncates the field."""
    peak = np.max(np.abs(field.samples))
    if peak == 0:
        return 0.0
    edge = max(abs(field.samples[0]), abs(field.samples[-1]))
    return float(edge / peak)


def support_extent(samples, coords, rel=1e-8):
    """(lo, hi) coordinates of the samples whose magnitude exceeds ``rel`` of
    the peak, or ``None`` for an all-zero array."""
    mag = np.abs(samples)
    peak = mag.max() if mag.size else 0.0
    if peak == 0:
        return None
    idx = np.flatnonzero(mag >= rel * peak)
    return float(coords[idx[0]]), float(coords[idx[-1]])


def _lattice_sum(samples, grid, target, sign):
    # sum_k s_k exp(sign * i * x_k * y_j) dx  for every target node y_j
    omega0 = -sign * grid.dx * target.x0
    domega = -sign * grid.dx * target.dx
    out = dtft(samples, omega0, domega, target.n)
    return out * np.exp(sign * 1j * grid.x0 * target.coords) * grid.dx


def unitary_ft(field, target_grid):
    """Unitary continuous Fourier transform evaluated on ``target_grid``.

    A ``SPACE`` field is transformed forward (kernel exp(-i x nu)); a
    ``FREQUENCY`` field is transformed back with the conjugate kernel.
    """
    limit = math.pi / field.grid.dx
    if target_grid.half_width > limit * (1 + 1e-12):
        raise NyquistError(
            f"target half-width {target_grid.half_width:g} exceeds the maximum "
            f"representable frequency {limit:g}",
            max_frequency=limit,
        )
    if field.domain is Domain.SPACE:
        sign, out_domain = -1, Domain.FREQUENCY
    else:
        sign, out_domain = 1, Domain.SPACE
    values = _lattice_sum(field.samples, field.grid, target_grid, sign) / math.sqrt(2 * math.pi)
    return SampledField(target_grid, values, out_domain)


def dual_grid(grid):
    """Full-bandwidth reciprocal lattice: same n, spacing 2 pi/(n dx), centered."""
    dnu = 2 * math.pi / (grid.n * grid.dx)
    return Grid1D(grid.n, dnu, -(grid.n // 2) * dnu)


def hermite_gauss_values(x, order):
    """Orthonormal Hermite-Gauss function of the given order at ``x``."""
    x = np.asarray(x, dtype=float)
    h_prev = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if order == 0:
        return h_prev
    h = math.sqrt(2.0) * x * h_prev
    for k in range(1, order):
        h, h_prev = math.sqrt(2.0 / (k + 1)) * x * h - math.sqrt(k / (k + 1)) * h_prev, h
    return h


def hermite_gauss(grid, order, tag=Domain.SPACE):
    """Sampled Hermite-Gauss mode, renormalized to unit discrete norm.

    The Hermite-Gauss functions are eigenfunctions of ``unitary_ft`` with
    eigenvalue ``(-i)**order``, so the same call also yields spectra.
    """
    if isinstance(order, bool) or int(order) != order or not 0 <= order <= MAX_HG_ORDER:
        raise ValueError(f"Hermite-Gauss order must be in 0..{MAX_HG_ORDER}, got {order!r}")
    values = hermite_gauss_values(grid.coords, int(order))
    return normalize(SampledField(grid, values, tag))

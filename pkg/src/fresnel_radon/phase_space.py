"""Wigner distributions, their marginals, and Radon projections of phase space.

Array layout: ``W.values[i, j]`` is W(nu_j, x_i), rows along position.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from ._chirpz import dtft
from .fields import Domain, Grid1D, NyquistError, SampledField, boundary_ratio

log = logging.getLogger(__name__)

__all__ = [
    "WignerDistribution",
    "RadonMode",
    "RadonProjection",
    "wigner_from_spatial",
    "wigner_from_spectrum",
    "marginal_space",
    "marginal_frequency",
    "radon_spatial",
    "radon_frequency",
]

IMAG_RESIDUE_TOL = 1e-10
BOUNDARY_LEAK_TOL = 1e-8
NEGATIVE_DENSITY_TOL = 1e-6
# rows per block when building the correlation matrix
_ROW_BLOCK = 256


@dataclass(frozen=True, eq=False)
class WignerDistribution:
    x_grid: Grid1D
    nu_grid: Grid1D
    values: np.ndarray = dc_field(repr=False)
    imag_residue: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.x_grid.n, self.nu_grid.n):
            raise ValueError(f"values shape {v.shape} does not match grids "
                             f"({self.x_grid.n}, {self.nu_grid.n})")
        if not np.all(np.isfinite(v)):
            raise ValueError("Wigner values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def mass(self):
        return float(self.values.sum() * self.x_grid.dx * self.nu_grid.dx)

    def at(self, nu, x):
        """Value at the lattice node nearest to (nu, x)."""
        return float(self.values[self.x_grid.nearest(x), self.nu_grid.nearest(nu)])


class RadonMode(enum.Enum):
    SPATIAL = "spatial"
    FREQUENCY = "frequency"


@dataclass(frozen=True, eq=False)
class RadonProjection:
    out_grid: Grid1D
    density: np.ndarray = dc_field(repr=False)
    line_params: tuple = (1.0, 0.0)
    mode: RadonMode = RadonMode.SPATIAL

    def __post_init__(self):
        d = np.asarray(self.density, dtype=float).reshape(-1)
        if d.shape[0] != self.out_grid.n:
            raise ValueError(f"expected {self.out_grid.n} density values, got {d.shape[0]}")
        d.setflags(write=False)
        object.__setattr__(self, "density", d)
        object.__setattr__(self, "line_params", tuple(float(p) for p in self.line_params))
        object.__setattr__(self, "mode", RadonMode(self.mode))

    def mass(self):
        return float(self.density.sum() * self.out_grid.dx)

    @property
    def negative_excess(self):
        """True when quadrature noise pushed the density below tolerance."""
        return bool(self.density.min(initial=0.0) < -NEGATIVE_DENSITY_TOL)


def _wigner_core(samples, step, out_grid, sign):
    """(step/pi) * sum_k conj(s[i+k]) s[i-k] exp(sign*2i*y_j*k*step) for all i, j.

    Returns the complex (n_samples, out_grid.n) array.
    """
    n = samples.shape[0]
    half = (n - 1) // 2
    lags = np.arange(-half, half + 1)
    # exp(sign*2i*y*(m-half)*step) with m = lag index 0..2*half
    omega0 = -sign * 2.0 * step * out_grid.x0
    domega = -sign * 2.0 * step * out_grid.dx
    shift = np.exp(-sign * 2j * out_grid.coords * half * step)
    out = np.empty((n, out_grid.n), dtype=complex)
    padded = np.concatenate([np.zeros(half, complex), samples, np.zeros(half, complex)])
    for start in range(0, n, _ROW_BLOCK):
        rows = np.arange(start, min(start + _ROW_BLOCK, n))
        plus = padded[rows[:, None] + lags[None, :] + half]
        minus = padded[rows[:, None] - lags[None, :] + half]
        corr = np.conj(plus) * minus
        out[rows] = dtft(corr, omega0, domega, out_grid.n) * shift
    return out * (step / math.pi)


def _finish(raw, x_grid, nu_grid):
    peak = float(np.max(np.abs(raw.real))) if raw.size else 0.0
    residue = float(np.max(np.abs(raw.imag))) if raw.size else 0.0
    rel = residue / peak if peak > 0 else 0.0
    if rel > IMAG_RESIDUE_TOL:
        log.warning("Wigner imaginary residue %.3g of peak exceeds %.0e", rel, IMAG_RESIDUE_TOL)
    return WignerDistribution(x_grid, nu_grid, raw.real, imag_residue=rel)


def _check_half_sample_band(field_grid, target, what):
    limit = math.pi / (2 * field_grid.dx)
    if target.half_width > limit * (1 + 1e-12):
        raise NyquistError(
            f"{what} half-width {target.half_width:g} exceeds the half-sample "
            f"Wigner bandwidth pi/(2*d) = {limit:g}",
            max_frequency=limit,
        )


def _leak_diagnostic(field):
    ratio = boundary_ratio(field)
    if ratio > BOUNDARY_LEAK_TOL:
        log.info("field edge samples reach %.3g of peak; window may truncate it", ratio)


def wigner_from_spatial(field, nu_grid):
    """W(nu', x') = Int du/(2 pi) e^{i nu' u} psi*(x'+u/2) psi(x'-u/2).

    ``u`` runs over even multiples of the sampling step so both arguments fall
    on lattice nodes; samples outside the window count as zero.
    """
    if field.domain is not Domain.SPACE:
        raise ValueError("wigner_from_spatial needs a SPACE field")
    _check_half_sample_band(field.grid, nu_grid, "nu_grid")
    _leak_diagnostic(field)
    raw = _wigner_core(field.samples, field.grid.dx, nu_grid, sign=1)
    return _finish(raw, field.grid, nu_grid)


def wigner_from_spectrum(spectrum, x_grid):
    """W(nu', x') = Int ds/(2 pi) e^{-i x' s} psi~*(nu'+s/2) psi~(nu'-s/2)."""
    if spectrum.domain is not Domain.FREQUENCY:
        raise ValueError("wigner_from_spectrum needs a FREQUENCY field")
    _check_half_sample_band(spectrum.grid, x_grid, "x_grid")
    _leak_diagnostic(spectrum)
    raw = _wigner_core(spectrum.samples, spectrum.grid.dx, x_grid, sign=-1)
    return _finish(raw.T, x_grid, spectrum.grid)


def marginal_space(W):
    return W.values.sum(axis=1) * W.nu_grid.dx


def marginal_frequency(W):
    return W.values.sum(axis=0) * W.x_grid.dx


def _linear(values, grid, points):
    """Linear interpolation of lattice ``values`` at ``points``; zero beyond
    the first missing neighbour on either side."""
    t = grid.index_of(points)
    padded = np.concatenate([[0.0], values, [0.0]])
    t = t + 1.0
    inside = (t >= 0) & (t <= values.shape[0] + 1)
    t = np.clip(t, 0, values.shape[0] + 1)
    i0 = np.minimum(np.floor(t).astype(int), values.shape[0])
    w = t - i0
    out = (1 - w) * padded[i0] + w * padded[i0 + 1]
    return np.where(inside, out, 0.0)


def _bilinear(values, ri, cj):
    """Bilinear interpolation at fractional (row, column) indices, with the
    array treated as zero outside its lattice."""
    rows, cols = values.shape
    padded = np.zeros((rows + 2, cols + 2))
    padded[1:-1, 1:-1] = values
    r = ri + 1.0
    c = cj + 1.0
    inside = (r >= 0) & (r <= rows + 1) & (c >= 0) & (c <= cols + 1)
    r = np.clip(r, 0, rows + 1)
    c = np.clip(c, 0, cols + 1)
    r0 = np.minimum(np.floor(r).astype(int), rows)
    c0 = np.minimum(np.floor(c).astype(int), cols)
    wr = r - r0
    wc = c - c0
    out = ((1 - wr) * (1 - wc) * padded[r0, c0] + (1 - wr) * wc * padded[r0, c0 + 1]
           + wr * (1 - wc) * padded[r0 + 1, c0] + wr * wc * padded[r0 + 1, c0 + 1])
    return np.where(inside, out, 0.0)


def _scaled_marginal(marginal, grid, scale, out_grid):
    # delta(y - scale*s) collapses the line integral to marginal(y/scale)/|scale|
    if scale == 1.0 and out_grid == grid:
        return marginal.copy()
    return _linear(marginal, grid, out_grid.coords / scale) / abs(scale)


def _line_integral(W, out, p_pos, p_freq, along_position):
    """Int over the line out = p_pos*x' + p_freq*nu' (delta-function Radon).

    ``along_position`` selects x' as the integration variable.
    """
    xg, ng = W.x_grid, W.nu_grid
    y = out.coords[:, None]
    if along_position:
        xs = xg.coords[None, :]
        nu = (y - p_pos * xs) / p_freq
        ri = np.broadcast_to(np.arange(xg.n, dtype=float)[None, :], nu.shape)
        vals = _bilinear(W.values, ri, ng.index_of(nu))
        return vals.sum(axis=1) * xg.dx / abs(p_freq)
    nus = ng.coords[None, :]
    x = (y - p_freq * nus) / p_pos
    cj = np.broadcast_to(np.arange(ng.n, dtype=float)[None, :], x.shape)
    vals = _bilinear(W.values, xg.index_of(x), cj)
    return vals.sum(axis=1) * ng.dx / abs(p_pos)


def radon_spatial(W, D, B, out_grid):
    """R(x) = Int dx' dnu' delta(x - D x' + B nu') W(nu', x')."""
    D, B = float(D), float(B)
    if D == 0 and B == 0:
        raise ValueError("degenerate line family: D and B are both zero")
    if B == 0:
        density = _scaled_marginal(marginal_space(W), W.x_grid, D, out_grid)
    else:
        along_x = abs(B) * W.nu_grid.span >= abs(D) * W.x_grid.span
        density = _line_integral(W, out_grid, D, -B, along_x)
    return RadonProjection(out_grid, density, (D, B), RadonMode.SPATIAL)


def radon_frequency(W, A, C, out_grid):
    """R(nu) = Int dx' dnu' delta(nu - A nu' + C x') W(nu', x')."""
    A, C = float(A), float(C)
    if A == 0 and C == 0:
        raise ValueError("degenerate line family: A and C are both zero")
    if C == 0:
        density = _scaled_marginal(marginal_frequency(W), W.nu_grid, A, out_grid)
    else:
        along_nu = abs(C) * W.x_grid.span >= abs(A) * W.nu_grid.span
        density = _line_integral(W, out_grid, -C, A, not along_nu)
    return RadonProjection(out_grid, density, (A, C), RadonMode.FREQUENCY)

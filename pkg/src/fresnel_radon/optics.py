"""Ray-transfer matrices and Collins diffraction integrals.

Collins kernel for a system (a, b, c, d), ad - bc = 1::

    K(x, x') = (2 pi i b)^-1/2 exp[(i / 2b)(a x'^2 - 2 x' x + d x^2)]

with the principal square root.  Three evaluation routes are used:

* chirp-transform path: pre-chirp, scaled Fourier sum (Bluestein), post-chirp;
  identical to direct summation up to rounding, valid when the output and its
  lattice aliases (period 2 pi |b| / dx) do not overlap;
* spectral path for small |b|: free propagation by b/a in the Fourier domain
  followed by the exact b = 0 map ``a^-1/2 exp(i c x^2 / 2a) psi(x / a)``;
* ``collins_direct_oracle``: the literal O(N^2) quadrature, kept independent
  of both paths above for validation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._chirpz import dtft
from .fields import (
    Domain,
    NyquistError,
    SampledField,
    dual_grid,
    support_extent,
    unitary_ft,
)

__all__ = [
    "RayMatrix",
    "compose",
    "dual",
    "identity",
    "free_space",
    "thin_lens",
    "fourier_stage",
    "parse_matrix",
    "collins_spatial",
    "collins_dual_spatial",
    "collins_frequency",
    "collins_direct_oracle",
    "OracleMode",
    "DET_TOL",
    "PARSE_DET_TOL",
]

DET_TOL = 1e-12
PARSE_DET_TOL = 1e-9
B_EPS_FACTOR = 1e-9
ORACLE_MAX_N = 4096
SUPPORT_REL = 1e-8


@dataclass(frozen=True)
class RayMatrix:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in "abcd":
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"matrix entry {name} is not finite")
            object.__setattr__(self, name, v)
        if abs(self.det - 1.0) > DET_TOL:
            raise ValueError(f"ray matrix must be unimodular; determinant is {self.det!r}")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def as_array(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=float)
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])

    def __str__(self):
        return f"({self.a:g}, {self.b:g}, {self.c:g}, {self.d:g})"


def compose(m1, m2):
    """Cascade: ``m1`` acts first, then ``m2`` (matrix product m2 @ m1)."""
    return RayMatrix(
        m2.a * m1.a + m2.b * m1.c,
        m2.a * m1.b + m2.b * m1.d,
        m2.c * m1.a + m2.d * m1.c,
        m2.c * m1.b + m2.d * m1.d,
    )


def dual(m):
    """The [D, -B, -C, A] system, i.e. the inverse of ``m``."""
    return RayMatrix(m.d, -m.b, -m.c, m.a)


def identity():
    return RayMatrix(1.0, 0.0, 0.0, 1.0)


def free_space(distance):
    return RayMatrix(1.0, distance, 0.0, 1.0)


def thin_lens(focal_length):
    if focal_length == 0:
        raise ValueError("thin lens focal length must be non-zero")
    return RayMatrix(1.0, 0.0, -1.0 / focal_length, 1.0)


def fourier_stage():
    return RayMatrix(0.0, 1.0, -1.0, 0.0)


def parse_matrix(text, tol=PARSE_DET_TOL):
    """Parse ``"A,B,C,D"``; determinants within ``tol`` of one are rescaled
    onto the unimodular group."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 4:
        raise ValueError(f"matrix needs four comma-separated reals A,B,C,D, got {text!r}")
    try:
        a, b, c, d = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"matrix entries must be real numbers, got {text!r}") from None
    det = a * d - b * c
    if not math.isfinite(det) or abs(det - 1.0) > tol:
        raise ValueError(f"matrix {text!r} has determinant {det:.12g}; AD-BC must equal 1")
    s = 1.0 / math.sqrt(det)
    return RayMatrix(a * s, b * s, c * s, d * s)


# --- Collins integral, shared engine -------------------------------------

def _principal_sqrt(z):
    return np.sqrt(complex(z))


def _fast_alias_ok(extent_in, bandwidth, grid, a, b, out_grid):
    # output support of a window-contained field is bounded by |a| X + |b| K;
    # lattice aliases of the output repeat with period 2 pi |b| / dx
    period = 2 * math.pi * abs(b) / grid.dx
    reach = abs(a) * extent_in + abs(b) * bandwidth
    return period >= out_grid.half_width + reach, reach


def _spectral_ok(extent_in, bandwidth, grid, t):
    return extent_in + abs(t) * bandwidth <= grid.half_width


def _field_extents(samples, grid):
    ext = support_extent(samples, grid.coords, SUPPORT_REL)
    if ext is None:
        return None
    x_ext = max(abs(ext[0]), abs(ext[1]))
    spectrum = unitary_ft(SampledField(grid, samples, Domain.SPACE), dual_grid(grid))
    kext = support_extent(spectrum.samples, spectrum.grid.coords, SUPPORT_REL)
    return x_ext, max(abs(kext[0]), abs(kext[1])), spectrum


def _chirp_path(samples, grid, a, b, d, out_grid):
    x = grid.coords
    y = out_grid.coords
    pre = samples * np.exp(1j * a * x * x / (2 * b))
    # sum_k pre_k exp(-i x_k y_j / b) with x_k = x0 + k dx
    s = dtft(pre, grid.dx * out_grid.x0 / b, grid.dx * out_grid.dx / b, out_grid.n)
    s *= np.exp(-1j * grid.x0 * y / b)
    return s * grid.dx * np.exp(1j * d * y * y / (2 * b)) / _principal_sqrt(2j * math.pi * b)


def _spectral_path(spectrum, grid, a, b, c, out_grid):
    # (a,b,c,d) = (a,0,c,1/a) . free_space(b/a)
    t = b / a
    nu = spectrum.grid.coords
    prop = spectrum.samples * np.exp(-0.5j * t * nu * nu)
    y0, dy = out_grid.x0 / a, out_grid.dx / a
    # psi_t(y) = (2 pi)^-1/2 sum_j prop_j exp(i nu_j y) dnu
    s = dtft(prop, -spectrum.grid.dx * y0, -spectrum.grid.dx * dy, out_grid.n)
    y = y0 + dy * np.arange(out_grid.n)
    s *= np.exp(1j * spectrum.grid.x0 * y) * spectrum.grid.dx / math.sqrt(2 * math.pi)
    # the trigonometric interpolant is periodic; the field is zero outside its window
    lo, hi = grid.x0 - 0.5 * grid.dx, grid.last + 0.5 * grid.dx
    s = np.where((y >= lo) & (y <= hi), s, 0.0)
    xo = out_grid.coords
    return s * np.exp(1j * c * xo * xo / (2 * a)) / _principal_sqrt(a)


def select_path(samples, grid, a, b, c, d, out_grid):
    """Choose ``'zero'``, ``'degenerate'``, ``'chirp'`` or ``'spectral'``.

    Returns (path, spectrum or None).  Raises NyquistError when neither the
    chirp-transform nor the spectral route is alias-free on this lattice.
    """
    b_eps = B_EPS_FACTOR * grid.dx ** 2
    if abs(b) <= b_eps:
        if abs(a) <= 1e-12:
            raise ValueError("degenerate system with |b| and |a| both ~0 cannot be unimodular")
        ext = _field_extents(samples, grid)
        return ("zero", None) if ext is None else ("degenerate", ext[2])
    ext = _field_extents(samples, grid)
    if ext is None:
        return "zero", None
    x_ext, k_ext, spectrum = ext
    ok, reach = _fast_alias_ok(x_ext, k_ext, grid, a, b, out_grid)
    if ok:
        return "chirp", None
    if abs(a) > 1e-12 and _spectral_ok(x_ext, k_ext, grid, b / a):
        return "spectral", spectrum
    needed = (out_grid.half_width + reach) / (2 * math.pi * abs(b))
    min_n = int(math.ceil(grid.span * needed))
    raise NyquistError(
        f"chirp rates a/(2b)={a / (2 * b):.4g}, d/(2b)={d / (2 * b):.4g} are not resolvable "
        f"with dx={grid.dx:.4g}: the output aliases repeat every {2 * math.pi * abs(b) / grid.dx:.4g} "
        f"but must clear {out_grid.half_width + reach:.4g}; use n >= {min_n} on this window",
        min_n=min_n,
    )


def _lct(samples, grid, a, b, c, d, out_grid):
    path, spectrum = select_path(samples, grid, a, b, c, d, out_grid)
    if path == "zero":
        return np.zeros(out_grid.n, dtype=complex)
    if path == "chirp":
        return _chirp_path(samples, grid, a, b, d, out_grid)
    return _spectral_path(spectrum, grid, a, b, c, out_grid)


def collins_spatial(field, m, out_grid):
    """phi(x) = Int K(x, x') psi(x') dx' for the system ``m``."""
    if field.domain is not Domain.SPACE:
        raise ValueError("collins_spatial needs a SPACE field")
    out = _lct(field.samples, field.grid, m.a, m.b, m.c, m.d, out_grid)
    return SampledField(out_grid, out, Domain.SPACE)


def collins_dual_spatial(field, m, out_grid):
    """Propagation through the [D, -B, -C, A] system: kernel
    (-2 pi i B)^-1/2 exp[(-i / 2B)(D x'^2 - 2 x' x + A x^2)]."""
    if field.domain is not Domain.SPACE:
        raise ValueError("collins_dual_spatial needs a SPACE field")
    out = _lct(field.samples, field.grid, m.d, -m.b, -m.c, m.a, out_grid)
    return SampledField(out_grid, out, Domain.SPACE)


def collins_frequency(spectrum, m, out_grid):
    """Angular-spectrum form of the [D, -B, -C, A] system: kernel
    (2 pi i C)^-1/2 exp[(i / 2C)(D nu^2 - 2 nu' nu + A nu'^2)].

    In the frequency lattice this is a Collins map with matrix (A, C, B, D);
    for C -> 0 it tends to ``A^-1/2 exp(i B nu^2 / 2A) psi~(nu / A)``.
    """
    if spectrum.domain is not Domain.FREQUENCY:
        raise ValueError("collins_frequency needs a FREQUENCY field")
    out = _lct(spectrum.samples, spectrum.grid, m.a, m.c, m.b, m.d, out_grid)
    return SampledField(out_grid, out, Domain.FREQUENCY)


# --- literal quadrature oracle -------------------------------------------

class OracleMode(enum.Enum):
    SPATIAL = "spatial"
    DUAL = "dual"
    FREQUENCY = "frequency"


def collins_direct_oracle(field, m, out_grid, mode):
    """Rectangle-rule sum of the chosen kernel at every output node, O(N^2)."""
    mode = OracleMode(mode)
    if max(field.grid.n, out_grid.n) > ORACLE_MAX_N:
        raise ValueError(f"direct oracle limited to N <= {ORACLE_MAX_N}")
    xp = field.grid.coords[None, :]
    x = out_grid.coords[:, None]
    A, B, C, D = m.a, m.b, m.c, m.d
    if mode is OracleMode.FREQUENCY:
        if field.domain is not Domain.FREQUENCY:
            raise ValueError("frequency oracle needs a FREQUENCY field")
        if abs(C) <= B_EPS_FACTOR * field.grid.dx ** 2:
            raise ValueError("frequency oracle needs |C| > c_eps")
        kernel = np.exp(1j / (2 * C) * (D * x * x - 2 * xp * x + A * xp * xp))
        kernel /= np.sqrt(2j * np.pi * C + 0j)
        domain = Domain.FREQUENCY
    else:
        if field.domain is not Domain.SPACE:
            raise ValueError(f"{mode.name} oracle needs a SPACE field")
        if abs(B) <= B_EPS_FACTOR * field.grid.dx ** 2:
            raise ValueError(f"{mode.name} oracle needs |B| > b_eps")
        if mode is OracleMode.SPATIAL:
            kernel = np.exp(1j / (2 * B) * (A * xp * xp - 2 * xp * x + D * x * x))
            kernel /= np.sqrt(2j * np.pi * B + 0j)
        else:
            kernel = np.exp(-1j / (2 * B) * (D * xp * xp - 2 * xp * x + A * x * x))
            kernel /= np.sqrt(-2j * np.pi * B + 0j)
        domain = Domain.SPACE
    out = kernel @ field.samples * field.grid.dx
    return SampledField(out_grid, out, domain)

"""Both sides of the Fresnel/Radon theorem, computed independently.

Spatial form: |collins_dual_spatial(psi, m)|^2  vs  radon_spatial(W_psi, D, B).
Frequency form: |collins_frequency(psi~, m)|^2  vs  radon_frequency(W_psi~, A, C).
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .fields import Domain, l2_norm
from .optics import (
    RayMatrix,
    collins_dual_spatial,
    collins_frequency,
    compose,
    free_space,
    thin_lens,
)
from .phase_space import (
    RadonMode,
    RadonProjection,
    radon_frequency,
    radon_spatial,
    wigner_from_spatial,
    wigner_from_spectrum,
)

log = logging.getLogger(__name__)

MASS_TOL = 2e-3
DEFAULT_TOLERANCE = 1e-3
THREADS_ENV = "FRESNEL_RADON_THREADS"


@dataclass(eq=False)
class TheoremReport:
    mode: RadonMode
    matrix: RayMatrix
    lhs: Optional[RadonProjection]
    rhs: Optional[RadonProjection]
    err_linf: float = float("nan")
    err_l1: float = float("nan")
    masses: tuple = (float("nan"), float("nan"))
    tolerance: float = DEFAULT_TOLERANCE
    flags: list = dc_field(default_factory=list)
    error: Optional[str] = None
    label: str = ""

    @property
    def passed(self):
        return self.error is None and self.err_linf <= self.tolerance


def _report(mode, m, lhs_values, rhs, source_norm, tolerance, window=None):
    out = rhs.out_grid
    lhs = RadonProjection(out, lhs_values, rhs.line_params, mode)
    diff = np.abs(lhs.density - rhs.density)
    if window is not None:
        diff = np.where(np.abs(out.coords) <= window, diff, 0.0)
    masses = (lhs.mass(), rhs.mass())
    flags = []
    if abs(source_norm - 1.0) <= 1e-6 and any(abs(mm - 1.0) > MASS_TOL for mm in masses):
        flags.append("window-leak")
    if rhs.negative_excess:
        flags.append("negative-density")
    return TheoremReport(
        mode=mode, matrix=m, lhs=lhs, rhs=rhs,
        err_linf=float(diff.max()), err_l1=float(diff.sum() * out.dx),
        masses=masses, tolerance=tolerance, flags=flags,
    )


def verify_spatial(field, m, nu_grid, out_grid, tolerance=DEFAULT_TOLERANCE, window=None,
                   wigner=None):
    """Compare output intensity of the dual system with the (D, B) projection.

    ``window`` optionally restricts the error metrics to |x| <= window;
    ``wigner`` may carry a precomputed W of ``field`` on ``nu_grid``.
    """
    if field.domain is not Domain.SPACE:
        raise ValueError("verify_spatial needs a SPACE field")
    if wigner is None:
        wigner = wigner_from_spatial(field, nu_grid)
    lhs = collins_dual_spatial(field, m, out_grid).intensity
    rhs = radon_spatial(wigner, m.d, m.b, out_grid)
    return _report(RadonMode.SPATIAL, m, lhs, rhs, l2_norm(field), tolerance, window)


def verify_frequency(spectrum, m, x_grid, out_grid, tolerance=DEFAULT_TOLERANCE, window=None,
                     wigner=None):
    """Compare the angular-spectrum output intensity with the (A, C) projection."""
    if spectrum.domain is not Domain.FREQUENCY:
        raise ValueError("verify_frequency needs a FREQUENCY field")
    if wigner is None:
        wigner = wigner_from_spectrum(spectrum, x_grid)
    lhs = collins_frequency(spectrum, m, out_grid).intensity
    rhs = radon_frequency(wigner, m.a, m.c, out_grid)
    return _report(RadonMode.FREQUENCY, m, lhs, rhs, l2_norm(spectrum), tolerance, window)


def thread_count():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def sweep(fields, matrices, phase_grid, out_grid, mode="spatial",
          tolerance=DEFAULT_TOLERANCE, labels=None, window=None):
    """Every (field, matrix) pair, field-major; failures are recorded per case.

    ``phase_grid`` is the nu grid (spatial mode) or x grid (frequency mode).
    """
    fields = list(fields)
    matrices = list(matrices)
    if not fields:
        raise ValueError("sweep needs at least one field")
    if not matrices:
        raise ValueError("sweep needs at least one matrix")
    mode = RadonMode(mode)
    labels = list(labels) if labels is not None else [str(i) for i in range(len(fields))]
    if mode is RadonMode.SPATIAL:
        verify, transform = verify_spatial, wigner_from_spatial
    else:
        verify, transform = verify_frequency, wigner_from_spectrum
    cases = [(label, f, m) for label, f in zip(labels, fields) for m in matrices]
    # W depends only on the field; computed once per field, lazily
    cache = {}

    def wigner_of(f):
        key = id(f)
        if key not in cache:
            try:
                cache[key] = transform(f, phase_grid)
            except Exception as exc:
                cache[key] = exc
        if isinstance(cache[key], Exception):
            raise cache[key]
        return cache[key]

    def run(case):
        label, f, m = case
        try:
            rep = verify(f, m, phase_grid, out_grid, tolerance, window, wigner=wigner_of(f))
        except Exception as exc:  # recorded, sweep continues
            log.error("case %s %s failed: %s", label, m, exc)
            rep = TheoremReport(mode, m, None, None, tolerance=tolerance,
                                error=f"{type(exc).__name__}: {exc}")
        rep.label = label
        return rep

    workers = thread_count()
    if workers == 1:
        return [run(c) for c in cases]
    for f in fields:
        try:
            wigner_of(f)
        except Exception:
            pass
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, cases))


def random_matrices(count, rng, kind="B", lo=0.1, hi=3.0, max_power=1.0):
    """Unimodular matrices built from free_space/thin_lens elements.

    ``kind='B'``: lens . free(d) . lens with |B| = |d| in [lo, hi].
    ``kind='C'``: free . lens(f) . free with |C| = 1/|f| in [lo, hi].
    Lens powers / propagation lengths of the outer elements are drawn from
    [-max_power, max_power].
    """
    out = []
    for _ in range(count):
        core = rng.uniform(lo, hi) * rng.choice([-1.0, 1.0])
        p1, p2 = rng.uniform(-max_power, max_power, size=2)
        if kind == "B":
            parts = [_lens_power(p1), free_space(core), _lens_power(p2)]
        elif kind == "C":
            parts = [free_space(p1), thin_lens(-1.0 / core), free_space(p2)]
        else:
            raise ValueError(f"kind must be 'B' or 'C', got {kind!r}")
        m = parts[0]
        for p in parts[1:]:
            m = compose(m, p)
        out.append(m)
    return out


def _lens_power(power):
    return RayMatrix(1.0, 0.0, -power, 1.0)

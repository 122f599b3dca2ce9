"""CSV / JSON serialization of fields, Wigner arrays, projections and reports.

Every float is written with 17 significant digits so that reading a file back
reproduces the in-memory doubles exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile

import numpy as np

from .fields import Grid1D
from .phase_space import RadonMode, RadonProjection, WignerDistribution

REPORT_VERSION = 1


def fmt(value):
    return format(float(value), ".17g")


def _csv_text(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def wigner_csv(W):
    """Row 0: ``x\\nu`` then the nu coordinates; row i: x'_i then W(nu_j, x'_i)."""
    rows = [["x\\nu"] + [fmt(v) for v in W.nu_grid.coords]]
    for x, row in zip(W.x_grid.coords, W.values):
        rows.append([fmt(x)] + [fmt(v) for v in row])
    return _csv_text(rows)


def projection_csv(P, value_name="density"):
    """Two rows: coordinate name plus coordinates, value name plus values."""
    coord = "x" if P.mode is RadonMode.SPATIAL else "nu"
    return _csv_text([
        [coord] + [fmt(v) for v in P.out_grid.coords],
        [value_name] + [fmt(v) for v in P.density],
    ])


def columns_csv(header, columns):
    rows = [list(header)]
    for values in zip(*columns):
        rows.append([fmt(v) for v in values])
    return _csv_text(rows)


def field_csv(field):
    s = field.samples
    return columns_csv(["x", "re", "im", "intensity"],
                       [field.coords, s.real, s.imag, np.abs(s) ** 2])


def _grid_from_coords(coords):
    coords = np.asarray(coords, dtype=float)
    n = coords.size
    dx = (coords[-1] - coords[0]) / (n - 1)
    return Grid1D(n, dx, coords[0])


def read_wigner_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    nu = np.array([float(v) for v in rows[0][1:]])
    x = np.array([float(r[0]) for r in rows[1:]])
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return WignerDistribution(_grid_from_coords(x), _grid_from_coords(nu), values)


def read_projection_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    mode = RadonMode.SPATIAL if rows[0][0] == "x" else RadonMode.FREQUENCY
    coords = np.array([float(v) for v in rows[0][1:]])
    density = np.array([float(v) for v in rows[1][1:]])
    return RadonProjection(_grid_from_coords(coords), density, (math.nan, math.nan), mode)


def read_columns_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    return {name: data[:, k] for k, name in enumerate(header)}


def _finite_or_none(v):
    v = float(v)
    return v if math.isfinite(v) else None


def report_case(rep, n, half_width):
    case = {
        "mode": rep.mode.value,
        "matrix": list(rep.matrix.as_tuple()),
        "n": int(n),
        "half_width": float(half_width),
        "err_linf": _finite_or_none(rep.err_linf),
        "err_l1": _finite_or_none(rep.err_l1),
        "mass_lhs": _finite_or_none(rep.masses[0]),
        "mass_rhs": _finite_or_none(rep.masses[1]),
        "pass": bool(rep.passed),
        "field": rep.label,
        "flags": list(rep.flags),
    }
    if rep.error is not None:
        case["error"] = rep.error
    return case


def report_json(cases):
    return json.dumps({"version": REPORT_VERSION, "cases": cases}, indent=2) + "\n"


def write_outputs(out_dir, files):
    """Write ``{name: text}`` into ``out_dir``; each file lands via rename."""
    os.makedirs(out_dir, exist_ok=True)
    for name, text in files.items():
        fd, tmp = tempfile.mkstemp(prefix=f".{name}.", dir=out_dir)
        try:
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            os.replace(tmp, os.path.join(out_dir, name))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

"""Run configuration: a YAML document with nested sections.

Grammar (all sections optional; defaults shown)::

    field:                      # or `fields:` with a list of these
      type: chirplet            # chirplet | hermite | superposition
      epsilon: 1.0
      beta: 0.5
      # hermite:        order: 2
      # superposition:  terms: [{order: 0, weight: 1}, {order: 2, weight: "0.5j"}]
      #                 normalize: true
    grid:
      n: 1024                   # even
      half_width: 8.0
      nu_n: <n>
      nu_half_width: <min(half_width, pi / (2 dx))>
    matrices:                   # each entry is one system
      - "1,0.7,0,1"             # explicit A,B,C,D
      - [1.5, 0.5, 1, 1]
      - "free:0.7 lens:2.0"     # elements applied left to right
      - "fourier"
      - {random: {count: 5, kind: B, lo: 0.1, hi: 3.0}}
    mode: spatial               # spatial | frequency | both
    out_dir: out
    tolerance: 1.0e-3
    window: null                # restrict error metrics to |x| <= window
    seed: 0                     # seeds `random` matrix entries
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np
import yaml

from .chirplet import ChirpletParams, chirplet_sampled
from .fields import (
    MAX_HG_ORDER,
    hermite_gauss,
    make_centered_grid,
    normalize,
)
from .optics import (
    RayMatrix,
    compose,
    fourier_stage,
    free_space,
    identity,
    parse_matrix,
    thin_lens,
)
from .theorem import DEFAULT_TOLERANCE, random_matrices

MODES = ("spatial", "frequency", "both")


class ConfigError(ValueError):
    pass


@dataclass
class FieldSpec:
    kind: str
    params: dict
    label: str

    def build(self, grid):
        if self.kind == "chirplet":
            return chirplet_sampled(ChirpletParams(self.params["epsilon"], self.params["beta"]), grid)
        if self.kind == "hermite":
            return hermite_gauss(grid, self.params["order"])
        total = None
        for order, weight in self.params["terms"]:
            term = hermite_gauss(grid, order) * weight
            total = term if total is None else total + term
        return normalize(total) if self.params["normalize"] else total


@dataclass
class GridSpec:
    n: int = 1024
    half_width: float = 8.0
    nu_n: Optional[int] = None
    nu_half_width: Optional[float] = None

    def x_grid(self):
        return make_centered_grid(self.n, self.half_width)

    def nu_grid(self):
        dx = 2 * self.half_width / self.n
        hw = self.nu_half_width
        if hw is None:
            hw = min(self.half_width, math.pi / (2 * dx))
        return make_centered_grid(self.nu_n or self.n, hw)

    def wigner_x_grid(self):
        """Position axis for the spectral Wigner function (frequency mode)."""
        nu = self.nu_grid()
        return make_centered_grid(self.n, min(self.half_width, math.pi / (2 * nu.dx)))


@dataclass
class RunConfig:
    fields: list = dc_field(default_factory=list)
    grid: GridSpec = dc_field(default_factory=GridSpec)
    matrices: list = dc_field(default_factory=list)
    matrix_sources: list = dc_field(default_factory=list)
    mode: str = "spatial"
    out_dir: str = "out"
    tolerance: float = DEFAULT_TOLERANCE
    window: Optional[float] = None
    seed: int = 0


def _real(value, where, positive=False):
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a real number, got {value!r}")
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a real number, got {value!r}") from None
    if not math.isfinite(v) or (positive and v <= 0):
        raise ConfigError(f"{where}: expected a {'positive ' if positive else ''}finite number, got {value!r}")
    return v


def _int(value, where, minimum=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}, got {value!r}")
    return int(value)


def _complex(value, where):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(_real(value[0], where), _real(value[1], where))
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a complex weight, got {value!r}")
    try:
        return complex(str(value).replace(" ", "")) if isinstance(value, str) else complex(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a complex weight like 0.5j or [re, im], got {value!r}") from None


def _order(value, where):
    order = _int(value, where, 0)
    if order > MAX_HG_ORDER:
        raise ConfigError(f"{where}: Hermite-Gauss order must be <= {MAX_HG_ORDER}")
    return order


def parse_field(raw, where):
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected a mapping with a `type` key")
    kind = raw.get("type", "chirplet")
    if kind == "chirplet":
        eps = _real(raw.get("epsilon", 1.0), f"{where}.epsilon", positive=True)
        beta = _real(raw.get("beta", 0.5), f"{where}.beta")
        return FieldSpec("chirplet", {"epsilon": eps, "beta": beta},
                         raw.get("label", f"chirplet(eps={eps:g},beta={beta:g})"))
    if kind == "hermite":
        order = _order(raw.get("order", 0), f"{where}.order")
        return FieldSpec("hermite", {"order": order}, raw.get("label", f"HG{order}"))
    if kind == "superposition":
        terms = raw.get("terms")
        if not isinstance(terms, list) or not terms:
            raise ConfigError(f"{where}.terms: expected a non-empty list")
        parsed = []
        for k, t in enumerate(terms):
            if not isinstance(t, dict):
                raise ConfigError(f"{where}.terms[{k}]: expected {{order, weight}}")
            parsed.append((_order(t.get("order", 0), f"{where}.terms[{k}].order"),
                           _complex(t.get("weight", 1.0), f"{where}.terms[{k}].weight")))
        if all(w == 0 for _, w in parsed):
            raise ConfigError(f"{where}.terms: all weights are zero")
        label = raw.get("label", "+".join(f"({w:g})HG{o}" for o, w in parsed))
        return FieldSpec("superposition", {"terms": parsed, "normalize": bool(raw.get("normalize", True))},
                         label)
    raise ConfigError(f"{where}.type: unknown field type {kind!r} (chirplet|hermite|superposition)")


_ELEMENTS = {
    "free": lambda v: free_space(v),
    "lens": lambda v: thin_lens(v),
}


def parse_elements(text, where):
    """Compose ``"free:0.7 lens:2.0 fourier"`` left to right."""
    tokens = text.replace("*", " ").split()
    if not tokens:
        raise ConfigError(f"{where}: empty element string")
    m = identity()
    for tok in tokens:
        name, _, arg = tok.partition(":")
        name = name.lower()
        if name in ("fourier", "identity"):
            if arg:
                raise ConfigError(f"{where}: element {name!r} takes no argument")
            el = fourier_stage() if name == "fourier" else identity()
        elif name in _ELEMENTS:
            value = _real(arg, f"{where}: {name}")
            try:
                el = _ELEMENTS[name](value)
            except ValueError as exc:
                raise ConfigError(f"{where}: {exc}") from None
        else:
            raise ConfigError(f"{where}: unknown element {tok!r} (free:d, lens:f, fourier, identity)")
        m = compose(m, el)
    return m


def parse_matrix_entry(raw, where, rng):
    """Returns a list of (RayMatrix, source string)."""
    if isinstance(raw, dict):
        spec = raw.get("random")
        if not isinstance(spec, dict):
            raise ConfigError(f"{where}: mapping entries must be {{random: {{...}}}}")
        count = _int(spec.get("count", 1), f"{where}.random.count", 1)
        kind = spec.get("kind", "B")
        if kind not in ("B", "C"):
            raise ConfigError(f"{where}.random.kind: must be B or C")
        lo = _real(spec.get("lo", 0.1), f"{where}.random.lo", positive=True)
        hi = _real(spec.get("hi", 3.0), f"{where}.random.hi", positive=True)
        if hi < lo:
            raise ConfigError(f"{where}.random: hi < lo")
        ms = random_matrices(count, rng, kind=kind, lo=lo, hi=hi)
        return [(m, f"random[{kind}]") for m in ms]
    if isinstance(raw, (list, tuple)):
        if len(raw) != 4:
            raise ConfigError(f"{where}: expected four entries A,B,C,D")
        text = ",".join(str(_real(v, where)) for v in raw)
    elif isinstance(raw, str):
        text = raw.strip()
    else:
        raise ConfigError(f"{where}: unsupported matrix entry {raw!r}")
    if "," in text:
        try:
            return [(parse_matrix(text), text)]
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    return [(parse_elements(text, where), text)]


def build_config(raw, source="config"):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: top level must be a mapping")
    known = {"field", "fields", "grid", "matrices", "mode", "out_dir", "tolerance", "window", "seed"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"{source}: unknown key(s) {', '.join(unknown)}")
    cfg = RunConfig()
    if "fields" in raw and "field" in raw:
        raise ConfigError(f"{source}: give either `field` or `fields`, not both")
    if "fields" in raw:
        if not isinstance(raw["fields"], list) or not raw["fields"]:
            raise ConfigError(f"{source}: fields: expected a non-empty list")
        cfg.fields = [parse_field(f, f"fields[{k}]") for k, f in enumerate(raw["fields"])]
    else:
        cfg.fields = [parse_field(raw.get("field", {}), "field")]

    g = raw.get("grid", {}) or {}
    if not isinstance(g, dict):
        raise ConfigError("grid: expected a mapping")
    n = _int(g.get("n", 1024), "grid.n", 2)
    if n % 2:
        raise ConfigError(f"grid.n: must be even, got {n}")
    cfg.grid = GridSpec(
        n=n,
        half_width=_real(g.get("half_width", 8.0), "grid.half_width", positive=True),
        nu_n=_int(g["nu_n"], "grid.nu_n", 2) if g.get("nu_n") is not None else None,
        nu_half_width=(_real(g["nu_half_width"], "grid.nu_half_width", positive=True)
                       if g.get("nu_half_width") is not None else None),
    )
    if cfg.grid.nu_n is not None and cfg.grid.nu_n % 2:
        raise ConfigError("grid.nu_n: must be even")

    cfg.seed = _int(raw.get("seed", 0), "seed")
    rng = np.random.default_rng(cfg.seed)
    mats = raw.get("matrices", ["1,0.7,0,1"])
    if not isinstance(mats, list):
        raise ConfigError("matrices: expected a list")
    if not mats:
        raise ConfigError("matrices: the matrix list is empty")
    for k, entry in enumerate(mats):
        for m, src in parse_matrix_entry(entry, f"matrices[{k}]", rng):
            cfg.matrices.append(m)
            cfg.matrix_sources.append(src)

    cfg.mode = raw.get("mode", "spatial")
    if cfg.mode not in MODES:
        raise ConfigError(f"mode: must be one of {', '.join(MODES)}, got {cfg.mode!r}")
    cfg.out_dir = str(raw.get("out_dir", "out"))
    cfg.tolerance = _real(raw.get("tolerance", DEFAULT_TOLERANCE), "tolerance", positive=True)
    if raw.get("window") is not None:
        cfg.window = _real(raw["window"], "window", positive=True)
    return cfg


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from None
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{path}:{mark.line + 1}:{mark.column + 1}" if mark else str(path)
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"{where}: YAML syntax error: {problem}") from None
    return build_config(raw, str(path))


def matrix_from_cli(text):
    """``--matrix`` accepts ``A,B,C,D`` or an element string."""
    rng = np.random.default_rng(0)
    return parse_matrix_entry(text, "--matrix", rng)[0][0]


__all__ = [
    "ConfigError",
    "FieldSpec",
    "GridSpec",
    "RunConfig",
    "RayMatrix",
    "build_config",
    "load_config",
    "matrix_from_cli",
    "parse_elements",
]

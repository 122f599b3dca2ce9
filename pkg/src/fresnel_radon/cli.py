"""Command-line front end.

Exit codes: 0 every case within tolerance, 2 a tolerance failure,
1 a configuration or computation error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import sys

import numpy as np

from . import io as fio
from .chirplet import ChirpletParams, chirplet_radon, chirplet_sampled
from .config import ConfigError, build_config, load_config, matrix_from_cli
from .fields import Grid1D, unitary_ft
from .optics import collins_dual_spatial, collins_spatial
from .phase_space import radon_frequency, radon_spatial, wigner_from_spatial, wigner_from_spectrum
from .theorem import sweep

log = logging.getLogger("fresnel_radon")

EXIT_OK, EXIT_ERROR, EXIT_TOLERANCE = 0, 1, 2
DEMO_TOLERANCE = 1e-4
DEMO_WINDOW = 6.0


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors (exit 1); 2 is reserved for tolerance failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(p, tolerance=True):
    p.add_argument("--config", help="YAML run configuration")
    p.add_argument("--out-dir", help="output directory (overrides config)")
    p.add_argument("--n", type=int, help="grid size (overrides config)")
    p.add_argument("--half-width", type=float, help="grid half-width (overrides config)")
    p.add_argument("--matrix", action="append",
                   help="A,B,C,D or element string; repeat for several (replaces config list)")
    if tolerance:
        p.add_argument("--tolerance", type=float, help="pass threshold on err_linf")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = _Parser(
        prog="fresnel-radon",
        description="Wigner/Radon phase-space tools and Collins ABCD propagation for 1-D fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check |dual-system output|^2 against the Radon projection")
    _common(p)
    p.add_argument("--mode", choices=["spatial", "frequency", "both"])

    p = sub.add_parser("wigner", help="Wigner distribution of the configured field")
    _common(p, tolerance=False)

    p = sub.add_parser("radon", help="Radon projection of the configured field's Wigner function")
    _common(p, tolerance=False)
    p.add_argument("--line", help="line parameters D,B (spatial) or A,C (frequency); "
                                  "default taken from the first matrix")
    p.add_argument("--mode", choices=["spatial", "frequency"])

    p = sub.add_parser("propagate", help="Collins propagation of the configured field")
    _common(p, tolerance=False)
    p.add_argument("--dual", action="store_true", help="propagate through [D,-B,-C,A]")

    p = sub.add_parser("chirplet-demo", help="Gaussian chirplet worked example")
    _common(p)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.5)
    return parser


def _load(args):
    cfg = load_config(args.config) if args.config else build_config({})
    if args.n is not None or args.half_width is not None:
        n = args.n if args.n is not None else cfg.grid.n
        hw = args.half_width if args.half_width is not None else cfg.grid.half_width
        raw = {"grid": {"n": n, "half_width": hw}}
        grid = build_config(raw).grid
        cfg.grid = dataclasses.replace(grid, nu_n=cfg.grid.nu_n if args.n is None else None,
                                       nu_half_width=cfg.grid.nu_half_width)
    if args.matrix:
        cfg.matrices = []
        cfg.matrix_sources = []
        for text in args.matrix:
            try:
                cfg.matrices.append(matrix_from_cli(text))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            cfg.matrix_sources.append(text)
    if getattr(args, "tolerance", None) is not None:
        if not (math.isfinite(args.tolerance) and args.tolerance > 0):
            raise ConfigError("--tolerance: must be positive")
        cfg.tolerance = args.tolerance
    if args.out_dir:
        cfg.out_dir = args.out_dir
    if getattr(args, "mode", None):
        cfg.mode = args.mode
    return cfg


def cmd_verify(args):
    cfg = _load(args)
    x_grid, nu_grid = cfg.grid.x_grid(), cfg.grid.nu_grid()
    fields = [spec.build(x_grid) for spec in cfg.fields]
    labels = [spec.label for spec in cfg.fields]
    modes = ["spatial", "frequency"] if cfg.mode == "both" else [cfg.mode]
    reports = []
    for mode in modes:
        if mode == "spatial":
            reports += sweep(fields, cfg.matrices, nu_grid, x_grid, "spatial",
                             cfg.tolerance, labels, cfg.window)
        else:
            spectra = [unitary_ft(f, nu_grid) for f in fields]
            reports += sweep(spectra, cfg.matrices, cfg.grid.wigner_x_grid(), nu_grid,
                             "frequency", cfg.tolerance, labels, cfg.window)
    files = {}
    cases = []
    for i, rep in enumerate(reports):
        cases.append(fio.report_case(rep, cfg.grid.n, cfg.grid.half_width))
        if rep.error is None:
            files[f"case_{i}_lhs.csv"] = fio.projection_csv(rep.lhs, "intensity")
            files[f"case_{i}_rhs.csv"] = fio.projection_csv(rep.rhs, "density")
        status = "ERROR" if rep.error else ("PASS" if rep.passed else "FAIL")
        print(f"case {i} [{rep.mode.value}] {rep.label} m={rep.matrix}: "
              f"err_linf={rep.err_linf:.3e} err_l1={rep.err_l1:.3e} {status}"
              + (f" ({rep.error})" if rep.error else "")
              + (f" flags={','.join(rep.flags)}" if rep.flags else ""))
    files["report.json"] = fio.report_json(cases)
    fio.write_outputs(cfg.out_dir, files)
    if any(r.error for r in reports):
        return EXIT_ERROR
    return EXIT_OK if all(r.passed for r in reports) else EXIT_TOLERANCE


def cmd_wigner(args):
    cfg = _load(args)
    field = cfg.fields[0].build(cfg.grid.x_grid())
    W = wigner_from_spatial(field, cfg.grid.nu_grid())
    fio.write_outputs(cfg.out_dir, {"wigner.csv": fio.wigner_csv(W)})
    print(f"wigner: {W.x_grid.n}x{W.nu_grid.n} mass={W.mass():.12g}")
    return EXIT_OK


def _pair(text, what):
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"--line: expected two reals {what}, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"--line: expected two reals {what}, got {text!r}") from None


def cmd_radon(args):
    cfg = _load(args)
    x_grid, nu_grid = cfg.grid.x_grid(), cfg.grid.nu_grid()
    field = cfg.fields[0].build(x_grid)
    mode = cfg.mode if cfg.mode != "both" else "spatial"
    if mode == "spatial":
        D, B = _pair(args.line, "D,B") if args.line else (cfg.matrices[0].d, cfg.matrices[0].b)
        P = radon_spatial(wigner_from_spatial(field, nu_grid), D, B, x_grid)
    else:
        A, C = _pair(args.line, "A,C") if args.line else (cfg.matrices[0].a, cfg.matrices[0].c)
        spectrum = unitary_ft(field, nu_grid)
        P = radon_frequency(wigner_from_spectrum(spectrum, cfg.grid.wigner_x_grid()), A, C, nu_grid)
    fio.write_outputs(cfg.out_dir, {"radon.csv": fio.projection_csv(P)})
    print(f"radon[{mode}] line={P.line_params} mass={P.mass():.12g}")
    return EXIT_OK


def cmd_propagate(args):
    cfg = _load(args)
    x_grid = cfg.grid.x_grid()
    field = cfg.fields[0].build(x_grid)
    m = cfg.matrices[0]
    out = (collins_dual_spatial if args.dual else collins_spatial)(field, m, x_grid)
    fio.write_outputs(cfg.out_dir, {"propagate.csv": fio.field_csv(out)})
    print(f"propagate m={m}{' (dual)' if args.dual else ''}: "
          f"norm_in={np.sqrt(field.intensity.sum() * x_grid.dx):.12g} "
          f"norm_out={np.sqrt(out.intensity.sum() * x_grid.dx):.12g}")
    return EXIT_OK


def cmd_chirplet_demo(args):
    if not (math.isfinite(args.epsilon) and args.epsilon > 0):
        raise ConfigError(f"--epsilon: must be > 0, got {args.epsilon!r}")
    cfg = _load(args)
    if args.tolerance is None:
        cfg.tolerance = DEMO_TOLERANCE
    p = ChirpletParams(args.epsilon, args.beta)
    m = cfg.matrices[0]
    x_grid, nu_grid = cfg.grid.x_grid(), cfg.grid.nu_grid()
    k0 = int(math.ceil(x_grid.index_of(-DEMO_WINDOW) - 1e-9))
    k1 = int(math.floor(x_grid.index_of(DEMO_WINDOW) + 1e-9))
    out_grid = Grid1D(k1 - k0 + 1, x_grid.dx, x_grid.x0 + k0 * x_grid.dx)
    psi = chirplet_sampled(p, x_grid)
    lhs = collins_dual_spatial(psi, m, out_grid).intensity
    rhs = radon_spatial(wigner_from_spatial(psi, nu_grid), m.d, m.b, out_grid).density
    analytic = chirplet_radon(p, m.d, m.b, out_grid.coords)
    deviation = float(np.max(np.abs(lhs - rhs)))
    passed = deviation <= cfg.tolerance
    summary = {
        "epsilon": p.epsilon,
        "beta": p.beta,
        "matrix": list(m.as_tuple()),
        "n": cfg.grid.n,
        "half_width": cfg.grid.half_width,
        "window": DEMO_WINDOW,
        "max_deviation": deviation,
        "max_deviation_lhs_analytic": float(np.max(np.abs(lhs - analytic))),
        "max_deviation_rhs_analytic": float(np.max(np.abs(rhs - analytic))),
        "tolerance": cfg.tolerance,
        "pass": passed,
    }
    fio.write_outputs(cfg.out_dir, {
        "chirplet_demo.csv": fio.columns_csv(["x", "lhs", "rhs", "analytic"],
                                             [out_grid.coords, lhs, rhs, analytic]),
        "summary.json": json.dumps(summary, indent=2) + "\n",
    })
    print(f"chirplet-demo eps={p.epsilon:g} beta={p.beta:g} m={m}: "
          f"max deviation {deviation:.3e} ({'PASS' if passed else 'FAIL'} at {cfg.tolerance:g})")
    return EXIT_OK if passed else EXIT_TOLERANCE


COMMANDS = {
    "verify": cmd_verify,
    "wigner": cmd_wigner,
    "radon": cmd_radon,
    "propagate": cmd_propagate,
    "chirplet-demo": cmd_chirplet_demo,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

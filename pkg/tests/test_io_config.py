import json
import math

import numpy as np
import pytest

from fresnel_radon import (
    RadonMode,
    RayMatrix,
    hermite_gauss,
    make_centered_grid,
    normalize,
    radon_spatial,
    verify_spatial,
    wigner_from_spatial,
)
from fresnel_radon import io as fio
from fresnel_radon.config import ConfigError, build_config, load_config, matrix_from_cli, parse_elements
from fresnel_radon.optics import compose, fourier_stage, free_space, thin_lens
from fresnel_radon.theorem import TheoremReport


@pytest.fixture(scope="module")
def small():
    g = make_centered_grid(128, 6.0)
    f = hermite_gauss(g, 1) * (0.3 + 0.2j)
    return g, f


# --- serialization ------------------------------------------------------------

def test_fmt_round_trips_doubles(rng):
    for v in np.concatenate([rng.normal(size=200) * 10.0 ** rng.integers(-300, 300, 200),
                             [0.1, 1 / 3, math.pi, 5e-324, 1.7976931348623157e308]]):
        assert float(fio.fmt(v)) == v


def test_wigner_csv_round_trip(tmp_path, small):
    g, f = small
    W = wigner_from_spatial(f, g)
    path = tmp_path / "w.csv"
    path.write_text(fio.wigner_csv(W))
    back = fio.read_wigner_csv(path)
    assert np.array_equal(back.values, W.values)
    assert np.array_equal(back.x_grid.coords, W.x_grid.coords)
    assert path.read_text().splitlines()[0].startswith("x\\nu,")


def test_projection_csv_round_trip(tmp_path, small):
    g, f = small
    P = radon_spatial(wigner_from_spatial(f, g), 0.6, 0.9, g)
    path = tmp_path / "p.csv"
    path.write_text(fio.projection_csv(P))
    back = fio.read_projection_csv(path)
    assert back.mode is RadonMode.SPATIAL
    assert np.array_equal(back.density, P.density)
    assert np.array_equal(back.out_grid.coords, P.out_grid.coords)


def test_field_csv_columns(tmp_path, small):
    g, f = small
    path = tmp_path / "f.csv"
    path.write_text(fio.field_csv(f))
    cols = fio.read_columns_csv(path)
    assert list(cols) == ["x", "re", "im", "intensity"]
    assert np.array_equal(cols["re"] + 1j * cols["im"], f.samples)


def test_report_json_round_trip(small):
    g, f = small
    rep = verify_spatial(normalize(f), RayMatrix(1.0, 0.7, 0.0, 1.0), g, g)
    rep.label = "HG1"
    err = TheoremReport(RadonMode.SPATIAL, free_space(1.0), None, None, error="NyquistError: x")
    text = fio.report_json([fio.report_case(rep, 128, 6.0), fio.report_case(err, 128, 6.0)])
    doc = json.loads(text)
    assert fio.report_json(doc["cases"]) == text
    assert doc["version"] == 1
    case = doc["cases"][0]
    for key in ("mode", "matrix", "n", "half_width", "err_linf", "err_l1", "mass_lhs", "mass_rhs", "pass"):
        assert key in case
    assert case["matrix"] == [1.0, 0.7, 0.0, 1.0]
    assert doc["cases"][1]["err_linf"] is None and doc["cases"][1]["error"]


def test_write_outputs_leaves_no_temporaries(tmp_path):
    out = tmp_path / "nested" / "out"
    fio.write_outputs(str(out), {"a.txt": "1\n", "b.txt": "2\n"})
    assert sorted(p.name for p in out.iterdir()) == ["a.txt", "b.txt"]


# --- configuration ------------------------------------------------------------

def test_defaults():
    cfg = build_config({})
    assert cfg.grid.n == 1024 and cfg.grid.half_width == 8.0
    assert cfg.matrices == [RayMatrix(1.0, 0.7, 0.0, 1.0)]
    assert cfg.fields[0].kind == "chirplet"
    assert cfg.fields[0].params == {"epsilon": 1.0, "beta": 0.5}
    assert cfg.mode == "spatial" and cfg.tolerance == 1e-3


def test_full_grammar(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(
        "fields:\n"
        "  - {type: hermite, order: 2}\n"
        "  - type: superposition\n"
        "    terms: [{order: 0, weight: 1}, {order: 2, weight: 0.5j}]\n"
        "grid: {n: 256, half_width: 6}\n"
        "matrices:\n"
        "  - [1.5, 0.5, 1, 1]\n"
        "  - 'free:0.7 lens:2.0'\n"
        "  - fourier\n"
        "  - {random: {count: 3, kind: C}}\n"
        "mode: both\n"
        "tolerance: 5.0e-4\n"
        "window: 5\n"
        "seed: 11\n"
    )
    cfg = load_config(path)
    assert [f.kind for f in cfg.fields] == ["hermite", "superposition"]
    assert cfg.fields[1].params["terms"] == [(0, 1), (2, 0.5j)]
    assert len(cfg.matrices) == 6
    assert cfg.matrices[1] == compose(free_space(0.7), thin_lens(2.0))
    assert cfg.matrices[2] == fourier_stage()
    assert cfg.mode == "both" and cfg.window == 5.0 and cfg.tolerance == 5e-4
    field = cfg.fields[1].build(cfg.grid.x_grid())
    assert abs(np.sum(field.intensity) * field.grid.dx - 1.0) <= 1e-12
    assert load_config(path).matrices == cfg.matrices


def test_nu_grid_clipped_to_wigner_band():
    cfg = build_config({"grid": {"n": 64, "half_width": 8}})
    assert cfg.grid.nu_grid().half_width == pytest.approx(math.pi / (2 * 0.25))
    assert build_config({}).grid.nu_grid().half_width == 8.0


@pytest.mark.parametrize("raw, needle", [
    ({"matrices": ["1,0.7,0,2"]}, "determinant"),
    ({"matrices": []}, "empty"),
    ({"grid": {"n": 1023}}, "even"),
    ({"mode": "sideways"}, "mode"),
    ({"colour": 1}, "unknown key"),
    ({"field": {"type": "chirplet", "epsilon": 0}}, "epsilon"),
    ({"field": {"type": "hermite", "order": 21}}, "order"),
    ({"field": {"type": "laguerre"}}, "unknown field type"),
    ({"matrices": ["free:x"]}, "free"),
    ({"matrices": ["lens:0"]}, "focal"),
    ({"matrices": ["warp:2"]}, "unknown element"),
    ({"field": {"type": "superposition", "terms": [{"order": 0, "weight": 0}]}}, "zero"),
    ({"tolerance": -1}, "tolerance"),
])
def test_config_errors(raw, needle):
    with pytest.raises(ConfigError, match=needle):
        build_config(raw)


def test_yaml_error_has_line_and_column(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("grid:\n  n: 64\n  half_width: [1, 2\nmode: spatial\n")
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert f"{path}:" in str(info.value)
    assert ":4:" in str(info.value) or ":3:" in str(info.value)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.yaml")


def test_matrix_from_cli():
    assert matrix_from_cli("1,0.7,0,1") == RayMatrix(1.0, 0.7, 0.0, 1.0)
    assert matrix_from_cli("fourier") == fourier_stage()
    assert parse_elements("identity", "x") == RayMatrix(1, 0, 0, 1)
    with pytest.raises(ConfigError):
        matrix_from_cli("1,0.7,0,2")

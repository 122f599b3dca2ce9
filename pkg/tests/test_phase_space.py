import math

import numpy as np
import pytest

from fresnel_radon import (
    ChirpletParams,
    NyquistError,
    SampledField,
    chirplet_radon,
    chirplet_sampled,
    chirplet_wigner,
    hermite_gauss,
    make_centered_grid,
    marginal_frequency,
    marginal_space,
    radon_frequency,
    radon_spatial,
    unitary_ft,
    wigner_from_spatial,
    wigner_from_spectrum,
)
from fresnel_radon.fields import hermite_gauss_values

from oracles import radon_gaussian_delta, wigner_point_quad


@pytest.fixture(scope="module")
def nu_grid():
    return make_centered_grid(1024, 8.0)


@pytest.fixture(scope="module")
def W_chirp(chirp, nu_grid):
    return wigner_from_spatial(chirp, nu_grid)


def test_gaussian_origin_value(grid, nu_grid):
    W = wigner_from_spatial(hermite_gauss(grid, 0), nu_grid)
    assert abs(W.at(0.0, 0.0) - 1 / math.pi) <= 1e-6


def test_first_mode_origin_value(grid, nu_grid):
    W = wigner_from_spatial(hermite_gauss(grid, 1), nu_grid)
    ref = wigner_point_quad(lambda x: hermite_gauss_values(x, 1), 0.0, 0.0)
    assert abs(ref.real + 1 / math.pi) <= 1e-10
    assert abs(W.at(0.0, 0.0) + 1 / math.pi) <= 1e-4


def test_chirplet_matches_closed_form(grid, W_chirp, nu_grid):
    exact = chirplet_wigner(ChirpletParams(1.0, 0.5), nu_grid.coords[None, :], grid.coords[:, None])
    assert np.max(np.abs(W_chirp.values - exact)) <= 1e-10


@pytest.mark.parametrize("nu, x", [(0.3, -0.7), (-1.1, 0.4), (0.0, 1.5)])
def test_pointwise_against_quadrature(grid, nu_grid, nu, x):
    f = hermite_gauss(grid, 2)
    W = wigner_from_spatial(f, nu_grid)
    i, j = grid.nearest(x), nu_grid.nearest(nu)
    ref = wigner_point_quad(lambda s: hermite_gauss_values(s, 2), nu_grid.coords[j], grid.coords[i])
    assert abs(W.values[i, j] - ref.real) <= 1e-8
    assert abs(ref.imag) <= 1e-10


@pytest.mark.parametrize("order", range(0, 6))
def test_spectral_and_spatial_paths_agree(grid, nu_grid, order):
    f = hermite_gauss(grid, order)
    Wx = wigner_from_spatial(f, nu_grid)
    Wn = wigner_from_spectrum(unitary_ft(f, nu_grid), grid)
    assert np.max(np.abs(Wx.values - Wn.values)) <= 1e-5


def test_marginals(grid, nu_grid, W_chirp, chirp):
    assert np.max(np.abs(marginal_space(W_chirp) - chirp.intensity)) <= 1e-4
    spectrum = unitary_ft(chirp, nu_grid)
    assert np.max(np.abs(marginal_frequency(W_chirp) - spectrum.intensity)) <= 1e-4


def test_mass(W_chirp):
    assert abs(W_chirp.mass() - 1.0) <= 2e-3


def test_imaginary_residue_small(W_chirp):
    assert W_chirp.imag_residue <= 1e-10


def test_zero_field(grid, nu_grid):
    W = wigner_from_spatial(SampledField(grid, np.zeros(grid.n)), nu_grid)
    assert np.all(W.values == 0)
    P = radon_spatial(W, 0.7, 0.4, grid)
    assert np.all(P.density == 0)
    assert not P.negative_excess


def test_nu_band_limit(grid):
    limit = math.pi / (2 * grid.dx)
    with pytest.raises(NyquistError):
        wigner_from_spatial(hermite_gauss(grid, 0), make_centered_grid(64, 1.01 * limit))


def test_wrong_domain(grid, nu_grid, chirp):
    with pytest.raises(ValueError):
        wigner_from_spectrum(chirp, grid)
    with pytest.raises(ValueError):
        wigner_from_spatial(unitary_ft(chirp, nu_grid), nu_grid)


def test_translation_covariance(grid, nu_grid):
    shift = 64 * grid.dx
    base = hermite_gauss(grid, 0)
    moved = SampledField(grid, np.roll(base.samples, 64))
    W0 = wigner_from_spatial(base, nu_grid)
    W1 = wigner_from_spatial(moved, nu_grid)
    i0 = np.unravel_index(np.argmax(W0.values), W0.values.shape)
    i1 = np.unravel_index(np.argmax(W1.values), W1.values.shape)
    assert grid.coords[i1[0]] - grid.coords[i0[0]] == pytest.approx(shift)
    assert i1[1] == i0[1]


# --- Radon projections ---------------------------------------------------

def test_radon_identity_line_is_marginal(grid, W_chirp):
    P = radon_spatial(W_chirp, 1.0, 0.0, grid)
    assert np.max(np.abs(P.density - marginal_space(W_chirp))) <= 1e-10


def test_radon_chirplet_example_value(grid, nu_grid):
    p = ChirpletParams(2.0, 1.0)
    W = wigner_from_spatial(chirplet_sampled(p, grid), nu_grid)
    P = radon_spatial(W, 1.0, 0.5, grid)
    assert float(chirplet_radon(p, 1.0, 0.5, 0.0)) == pytest.approx(0.7136496464611084, abs=1e-12)
    assert abs(P.density[grid.nearest(0.0)] - 0.713650) <= 1e-4


@pytest.mark.parametrize("D, B", [(1.0, 0.7), (0.4, 1.3), (2.0, -0.5), (0.0, 1.0), (-1.5, 0.2)])
def test_radon_spatial_against_closed_form(grid, W_chirp, D, B):
    P = radon_spatial(W_chirp, D, B, grid)
    exact = chirplet_radon(ChirpletParams(1.0, 0.5), D, B, grid.coords)
    assert np.max(np.abs(P.density - exact)) <= 1e-4
    assert abs(P.mass() - 1.0) <= 2e-3
    assert not P.negative_excess


@pytest.mark.parametrize("A, C", [(1.0, 0.6), (0.5, -1.2), (0.0, 1.0)])
def test_radon_frequency_against_surrogate(grid, nu_grid, chirp, A, C):
    W = wigner_from_spectrum(unitary_ft(chirp, nu_grid), grid)
    P = radon_frequency(W, A, C, nu_grid)
    for y in (-0.8, 0.0, 0.35):
        j = nu_grid.nearest(y)
        ref = radon_gaussian_delta(W.values, grid.coords, nu_grid.coords, -C, A, nu_grid.coords[j])
        assert abs(P.density[j] - ref) <= 1e-3
    assert abs(P.mass() - 1.0) <= 2e-3


def test_radon_frequency_unit_example(grid, nu_grid):
    W = wigner_from_spectrum(unitary_ft(hermite_gauss(grid, 0), nu_grid), grid)
    P = radon_frequency(W, 1.0, 1.0, nu_grid)
    assert abs(P.density[nu_grid.nearest(0.0)] - 1 / math.sqrt(2 * math.pi)) <= 1e-4


def test_degenerate_line_family(W_chirp, grid):
    with pytest.raises(ValueError, match="degenerate"):
        radon_spatial(W_chirp, 0.0, 0.0, grid)
    with pytest.raises(ValueError, match="degenerate"):
        radon_frequency(W_chirp, 0.0, 0.0, grid)

"""Grid construction, packet preparation and density metrics."""

import numpy as np
import pytest

from freedyn import (
    DegenerateInterval,
    GridMismatch,
    RealField,
    SpinorField,
    ZeroSpinor,
    density,
    gaussian_packet,
    l2_density_error,
    make_grid,
    norm,
    position_expectation,
    spectral_derivative,
    window_mask,
)


def test_grid_basic_geometry():
    g = make_grid(-4.0, 4.0, 256)
    assert g.n_points == 256
    assert g.x[0] == -4.0
    # periodic convention: the right endpoint is excluded
    assert g.x[-1] == pytest.approx(4.0 - g.dx)
    assert g.dx == pytest.approx(8.0 / 256)
    # wavenumbers come in FFT order with the symmetric range
    assert g.k[0] == 0.0
    assert np.max(np.abs(g.k)) == pytest.approx(np.pi / g.dx)


def test_grid_rejects_bad_intervals_and_sizes():
    with pytest.raises(DegenerateInterval):
        make_grid(2.0, 2.0, 64)
    with pytest.raises(DegenerateInterval):
        make_grid(3.0, -3.0, 64)
    with pytest.raises(ValueError):
        make_grid(-1.0, 1.0, 3)


def test_gaussian_packet_is_normalized_and_centered():
    g = make_grid(-8.0, 8.0, 1024)
    f = gaussian_packet(g, 0.7, 0.5, 2.0, (1.0, 1.0j))
    assert isinstance(f, SpinorField)
    assert norm(f) == pytest.approx(1.0, abs=1e-12)
    assert position_expectation(f) == pytest.approx(0.7, abs=1e-9)


def test_gaussian_packet_weights_sign_and_zero():
    g = make_grid(-8.0, 8.0, 512)
    with pytest.raises(ZeroSpinor):
        gaussian_packet(g, 0.0, 0.5, 0.0, (0.0, 0.0))
    four = gaussian_packet(g, 0.0, 0.5, 0.0, (1.0, 0.0, 0.0, 0.0))
    assert four.values.shape == (4, 512)


def test_density_and_norm_consistency():
    g = make_grid(-5.0, 5.0, 512)
    rng = np.random.default_rng(7)
    vals = rng.normal(size=(2, 512)) + 1j * rng.normal(size=(2, 512))
    f = SpinorField(g, vals)
    d = density(f)
    assert isinstance(d, RealField)
    assert np.all(d.values >= 0)
    assert norm(f) ** 2 == pytest.approx(float(np.sum(d.values) * g.dx), rel=1e-12)


def test_window_mask_selects_expected_nodes():
    g = make_grid(-2.0, 2.0, 64)
    m = window_mask(g, (-1.0, 1.0))
    assert m.dtype == bool
    assert np.all(np.abs(g.x[m]) <= 1.0)
    assert np.all(np.abs(g.x[~m]) > 1.0)
    assert np.all(window_mask(g, None))


def test_l2_density_error_trivial_cases():
    g = make_grid(-3.0, 3.0, 256)
    f = gaussian_packet(g, 0.0, 0.5, 0.0, (1.0, 0.0))
    d = density(f)
    assert l2_density_error(d, d) == 0.0
    doubled = RealField(g, 2.0 * d.values)
    # ||2 rho - rho|| / ||rho|| = 1 exactly
    assert l2_density_error(d, doubled) == pytest.approx(1.0, rel=1e-12)


def test_l2_density_error_linear_response():
    # error of rho + eps*perturbation is linear in eps (slope 1 +- 10%)
    g = make_grid(-3.0, 3.0, 512)
    f = gaussian_packet(g, 0.0, 0.7, 0.0, (1.0, 0.0))
    d = density(f)
    rng = np.random.default_rng(42)
    bump = np.abs(rng.normal(size=g.n_points)) * d.values
    errs = []
    for eps in (1e-6, 1e-5, 1e-4):
        pert = RealField(g, d.values + eps * bump)
        errs.append(l2_density_error(d, pert) / eps)
    assert errs[1] == pytest.approx(errs[0], rel=0.1)
    assert errs[2] == pytest.approx(errs[0], rel=0.1)


def test_l2_density_error_grid_mismatch():
    d1 = density(gaussian_packet(make_grid(-3, 3, 256), 0, 0.5, 0, (1, 0)))
    d2 = density(gaussian_packet(make_grid(-3, 3, 128), 0, 0.5, 0, (1, 0)))
    with pytest.raises(GridMismatch):
        l2_density_error(d1, d2)


def test_spectral_derivative_matches_analytic():
    g = make_grid(-np.pi, np.pi, 256)
    f = SpinorField(g, np.stack([np.exp(3j * g.x), np.cos(2 * g.x) + 0j]))
    df = spectral_derivative(f)
    assert np.allclose(df.values[0], 3j * np.exp(3j * g.x), atol=1e-10)
    assert np.allclose(df.values[1], -2 * np.sin(2 * g.x), atol=1e-10)

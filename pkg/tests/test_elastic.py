import numpy as np
import pytest

from wavesource.geometry import make_box_grid, make_surface_quadrature
from wavesource.elastic import (ElasticMedium, ElasticFrequency,
                                elastic_speeds, lattice_frequency,
                                navier_green, elastic_fields,
                                forward_displacement, elastic_boundary_data,
                                elastic_plane_wave, plane_wave_residual,
                                traction, helmholtz_split,
                                elastic_measurement_norm)
from wavesource.sources import canonical_bump_source, scaled


def test_speeds_and_lattice_frequencies(medium):
    c_p, c_s = elastic_speeds(medium)
    assert abs(c_p - 1.0 / np.sqrt(3.0)) < 1e-15 and c_s == 1.0
    assert c_p < c_s
    freq = lattice_frequency("p", 2, medium, 1.0)
    assert abs(freq.kappa_p - 2 * np.pi) < 1e-13
    freq = lattice_frequency("s", 3, medium, 1.0)
    assert abs(freq.kappa_s - 3 * np.pi) < 1e-13
    with pytest.raises(ValueError):
        ElasticMedium(1.0, -0.5)


@pytest.mark.parametrize("d", [2, 3])
def test_green_tensor_reciprocity(medium, d):
    freq = ElasticFrequency.from_omega(2.7, medium)
    x = np.array([0.9, -0.3, 0.4][:d])
    y = np.array([-0.2, 0.5, -0.6][:d])
    Gxy, _ = navier_green(x, y, freq, medium)
    Gyx, _ = navier_green(y, x, freq, medium)
    assert np.max(np.abs(Gxy - Gyx.T)) < 1e-13
    assert np.max(np.abs(Gxy - Gxy.T)) < 1e-13


@pytest.mark.parametrize("d", [2, 3])
def test_green_gradient_matches_finite_differences(medium, d):
    freq = ElasticFrequency.from_omega(3.1, medium)
    x = np.array([0.8, 0.2, -0.5][:d])
    y = np.zeros(d)
    _, dG = navier_green(x, y, freq, medium)
    h = 1e-6
    for c in range(d):
        dx = np.zeros(d)
        dx[c] = h
        Gp, _ = navier_green(x + dx, y, freq, medium, want_gradient=False)
        Gm, _ = navier_green(x - dx, y, freq, medium, want_gradient=False)
        fd = (Gp - Gm) / (2 * h)
        assert np.max(np.abs(dG[:, :, c] - fd)) < 1e-6


def test_field_linearity_in_the_source(medium, bump2d):
    freq = ElasticFrequency.from_omega(np.pi, medium)
    targets = np.array([[0.9, 0.1], [-0.7, 0.6]])
    grid = make_box_grid(2, bump2d.rho, 24, bump2d.center)
    u1, _ = elastic_fields(targets, bump2d, freq, medium, grid=grid)
    u2, _ = elastic_fields(targets, scaled(bump2d, -2.5), freq, medium,
                           grid=grid)
    assert np.max(np.abs(u2 + 2.5 * u1)) < 1e-12 * np.max(np.abs(u1))


def test_field_gradient_consistency(medium, bump2d):
    # analytic in-integral gradient vs finite differences of the field
    freq = ElasticFrequency.from_omega(2.0, medium)
    grid = make_box_grid(2, bump2d.rho, 32, bump2d.center)
    x0 = np.array([0.85, -0.15])
    _, grad = elastic_fields(x0, bump2d, freq, medium, grid=grid,
                             want_gradient=True)
    h = 1e-5
    for b in range(2):
        dx = np.zeros(2)
        dx[b] = h
        up, _ = elastic_fields(x0 + dx, bump2d, freq, medium, grid=grid)
        um, _ = elastic_fields(x0 - dx, bump2d, freq, medium, grid=grid)
        fd = (up - um)[0] / (2 * h)
        assert np.max(np.abs(grad[0, :, b] - fd)) < 1e-7


def test_targets_inside_support_rejected(medium, bump2d):
    freq = ElasticFrequency.from_omega(1.0, medium)
    with pytest.raises(ValueError):
        forward_displacement(bump2d, freq, medium, np.array([[0.1, 0.0]]))


def test_plane_wave_satisfies_navier(medium):
    freq = ElasticFrequency.from_omega(np.pi, medium)
    assert abs(plane_wave_residual("p", freq, medium)) < 1e-12
    assert abs(plane_wave_residual("s", freq, medium)) < 1e-12


def test_plane_wave_traction_matches_definition(medium):
    freq = ElasticFrequency.from_omega(2.4, medium)
    d_hat = np.array([0.6, 0.8])
    pol = np.array([-0.8, 0.6])
    pts = np.array([[1.0, 0.0], [0.3, -0.9]])
    nu = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    vals, du = elastic_plane_wave("s", d_hat, pol, freq, medium, pts, nu)
    # traction from the analytic plane-wave gradient
    kappa = freq.kappa_s
    phase = np.exp(-1j * kappa * (pts @ d_hat))
    grad = -1j * kappa * phase[:, None, None] * np.outer(pol, d_hat)[None]
    div = np.einsum("naa->n", grad)
    ref = traction(grad, div, nu, medium)
    assert np.max(np.abs(du - ref)) < 1e-12


def test_boundary_record_and_measurement_norm(medium, bump2d):
    q = make_surface_quadrature(2, 1.0, 64)
    freq = lattice_frequency("p", 1, medium, 1.0)
    grid = make_box_grid(2, bump2d.rho, 24, bump2d.center)
    rec = elastic_boundary_data(bump2d, freq, medium, q, grid=grid,
                                shell=1.0, wave_kind="p")
    assert rec.u.shape == (64, 2) and rec.du.shape == (64, 2)
    cont = elastic_measurement_norm(rec, "continuous")
    disc = elastic_measurement_norm(rec, "discrete")
    assert cont > 0 and disc > 0
    with pytest.raises(ValueError):
        elastic_measurement_norm(rec, "sobolev")


def test_source_too_close_to_surface_rejected(medium):
    src = canonical_bump_source(2, rho=0.78)
    q = make_surface_quadrature(2, 1.0, 32)
    freq = ElasticFrequency.from_omega(1.0, medium)
    with pytest.raises(ValueError):
        elastic_boundary_data(src, freq, medium, q)


def test_helmholtz_split_reassembles_the_field(medium, bump2d):
    # away from the support the radiated field is the sum of its
    # compressional and shear parts
    freq = ElasticFrequency.from_omega(4.0, medium)
    grid = make_box_grid(2, 0.12, 24, center=np.array([0.75, 0.0]))
    vol = make_box_grid(2, bump2d.rho, 32, bump2d.center)
    u, _ = elastic_fields(grid.nodes(), bump2d, freq, medium, grid=vol)
    u = u.reshape(24, 24, 2)
    u_p, u_s = helmholtz_split(grid, u, freq)
    inner = np.zeros((24, 24), dtype=bool)
    inner[3:-3, 3:-3] = True
    err = np.max(np.abs((u_p + u_s - u))[inner])
    assert err < 5e-3 * np.max(np.abs(u))

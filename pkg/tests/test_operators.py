import numpy as np
import pytest

from wavesource.geometry import make_box_grid
from wavesource.operators import discrete_differential, interior_mask


def _fields_2d(m):
    grid = make_box_grid(2, 1.0, m)
    pts = grid.nodes()
    x = pts[:, 0].reshape(m, m)
    y = pts[:, 1].reshape(m, m)
    return grid, x, y


def test_gradient_exact_on_quadratics():
    grid, x, y = _fields_2d(20)
    f = x ** 2 + 3 * x * y - y ** 2
    g, mask = discrete_differential(grid, f, "gradient")
    assert np.max(np.abs(g[..., 0] - (2 * x + 3 * y))[mask]) < 1e-12
    assert np.max(np.abs(g[..., 1] - (3 * x - 2 * y))[mask]) < 1e-12


def test_divergence_and_scalar_curl():
    grid, x, y = _fields_2d(20)
    u = np.stack([x * y, x - y ** 2], axis=-1)
    div, mask = discrete_differential(grid, u, "divergence")
    assert np.max(np.abs(div - (y - 2 * y))[mask]) < 1e-12
    sc, mask = discrete_differential(grid, u, "scalar-curl")
    assert np.max(np.abs(sc - (1 - x))[mask]) < 1e-12


def test_curl_of_gradient_vanishes():
    grid, x, y = _fields_2d(24)
    f = np.exp(x) * np.sin(2 * y)
    g, _ = discrete_differential(grid, f, "gradient")
    sc, mask = discrete_differential(grid, g, "scalar-curl")
    inner = interior_mask(2, 24) & mask
    # two nested second-order stencils: small but not exactly zero
    assert np.max(np.abs(sc[inner])) < 5e-2 * np.max(np.abs(g))


def test_curl3d_of_linear_field():
    m = 10
    grid = make_box_grid(3, 1.0, m)
    pts = grid.nodes().reshape(m, m, m, 3)
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    u = np.stack([y * z, x * z, x * y], axis=-1)   # gradient of xyz: curl-free
    c, mask = discrete_differential(grid, u, "curl3d")
    assert np.max(np.abs(c)[mask]) < 1e-12
    v = np.stack([-y, x, np.zeros_like(x)], axis=-1)
    c, mask = discrete_differential(grid, v, "curl3d")
    assert np.max(np.abs(c[..., 2] - 2.0)[mask]) < 1e-12


def test_convergence_order_of_gradient():
    errs = []
    for m in (16, 32):
        grid, x, y = _fields_2d(m)
        f = np.sin(3 * x) * np.cos(2 * y)
        g, mask = discrete_differential(grid, f, "gradient")
        exact = 3 * np.cos(3 * x) * np.cos(2 * y)
        errs.append(np.max(np.abs(g[..., 0] - exact)[mask]))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.9


def test_rejects_bad_kind_and_coarse_grid():
    grid, x, y = _fields_2d(8)
    with pytest.raises(ValueError):
        discrete_differential(grid, x, "laplacian")
    with pytest.raises(ValueError):
        discrete_differential(make_box_grid(2, 1.0, 3), np.zeros((3, 3)),
                              "gradient")

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wavesource.sources import (BumpPoly, VectorSource, canonical_bump_source,
                                narrow_moment_source, gradient_current,
                                make_source, scaled)


def _fd_gradient(f, x, h=1e-6):
    d = x.shape[1]
    cols = []
    for a in range(d):
        dx = np.zeros(d)
        dx[a] = h
        cols.append((f(x + dx) - f(x - dx)) / (2 * h))
    return np.stack(cols, axis=-1)


@pytest.mark.parametrize("d", [2, 3])
def test_bump_derivatives_match_finite_differences(d):
    comp = BumpPoly(d, 0.42, terms=((1.0, None), (2.0, (1,) + (0,) * (d - 1))))
    rng = np.random.default_rng(1)
    x = rng.uniform(-0.25, 0.25, size=(40, d))
    g = comp.gradient(x)
    assert np.max(np.abs(g - _fd_gradient(comp.value, x))) < 1e-6
    hess = comp.hessian(x)
    fd_h = _fd_gradient(lambda p: comp.gradient(p)[:, 0], x)
    assert np.max(np.abs(hess[:, 0, :] - fd_h)) < 1e-5
    third = comp.third(x)
    fd_t = _fd_gradient(lambda p: comp.hessian(p)[:, 0, 1], x)
    assert np.max(np.abs(third[:, 0, 1, :] - fd_t)) < 1e-4


def test_support_is_exactly_the_ball():
    comp = BumpPoly(2, 0.3)
    pts = np.array([[0.31, 0.0], [0.0, -0.9], [0.29, 0.0], [0.0, 0.0]])
    v = comp.value(pts)
    assert v[0] == 0.0 and v[1] == 0.0
    assert v[2] > 0.0 and abs(v[3] - 1.0) < 1e-15
    assert np.all(np.isfinite(comp.third(pts)))


def test_canonical_source_shape_and_symmetry():
    src = canonical_bump_source(2)
    pts = np.array([[0.1, 0.2], [-0.1, 0.2]])
    vals = src.value(pts)
    assert vals.shape == (2, 2)
    # first component is even, second is odd in x0
    assert abs(vals[0, 0] - vals[1, 0]) < 1e-15
    assert abs(vals[0, 1] + vals[1, 1]) < 1e-15


def test_divergence_and_curl_match_finite_differences():
    src = canonical_bump_source(3)
    rng = np.random.default_rng(2)
    x = rng.uniform(-0.25, 0.25, size=(20, 3))
    div = src.divergence(x)
    fd = sum(_fd_gradient(lambda p: src.value(p)[:, a], x)[:, a]
             for a in range(3))
    assert np.max(np.abs(div - fd)) < 1e-5
    curl = src.curl(x)
    g = [_fd_gradient(lambda p: src.value(p)[:, a], x) for a in range(3)]
    fd_curl = np.stack([g[2][:, 1] - g[1][:, 2],
                        g[0][:, 2] - g[2][:, 0],
                        g[1][:, 0] - g[0][:, 1]], axis=-1)
    assert np.max(np.abs(curl - fd_curl)) < 1e-5


def test_gradient_current_is_exactly_curl_free_with_zero_moment():
    j = gradient_current()
    rng = np.random.default_rng(3)
    x = rng.uniform(-0.3, 0.3, size=(30, 3))
    assert np.max(np.abs(j.curl(x))) == 0.0
    assert np.max(np.abs(j.moment(m=64))) < 1e-10


def test_narrow_source_moment_positive():
    src = narrow_moment_source(2)
    mom = src.moment(m=64)
    assert np.all(mom > 0)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=-5.0, max_value=5.0, allow_nan=False))
def test_scaling_linearity(alpha):
    src = canonical_bump_source(2)
    pts = np.array([[0.1, -0.2], [0.3, 0.05]])
    assert np.allclose(scaled(src, alpha).value(pts), alpha * src.value(pts),
                       atol=1e-13)


def test_registry():
    src = make_source("canonical_bump", 3, rho=0.3)
    assert src.d == 3 and src.rho == 0.3
    with pytest.raises(ValueError):
        make_source("plane_wave", 2)

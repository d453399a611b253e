import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wavesource.bessel import bessel_jy, hankel1, SERIES_CUTOFF

mpmath = pytest.importorskip("mpmath")


# reference values computed with 50-digit arithmetic, straddling the
# series/asymptotic switch point
REFERENCE = {
    (0, 0.5): (0.93846980724081290423, -0.44451873350670655715),
    (0, 3.7): (-0.39923020337119111533, 0.10607431532035411027),
    (0, 12.5): (0.14688405470042110231, -0.17121430684466928735),
    (0, 80.0): (-0.06974216551221002284, -0.055620339089770000037),
    (1, 0.5): (0.24226845767487388638, -1.4714723926702430692),
    (1, 3.7): (0.053833987745461790513, 0.41667437268380749329),
    (1, 12.5): (-0.16548380461475971846, -0.15383825653750118008),
    (1, 80.0): (-0.05605729667571257751, 0.069395913784588047296),
}


def test_reference_values():
    for (order, x), (jr, yr) in REFERENCE.items():
        j, y = bessel_jy(order, x)
        assert abs(j - jr) < 1e-12
        assert abs(y - yr) < 1e-12


def test_against_mpmath_dense():
    xs = np.concatenate([np.geomspace(1e-6, 1.0, 40),
                         np.linspace(1.0, 100.0, 200),
                         [SERIES_CUTOFF - 1e-9, SERIES_CUTOFF,
                          SERIES_CUTOFF + 1e-9]])
    for order in (0, 1):
        j, y = bessel_jy(order, xs)
        for i, x in enumerate(xs):
            jr = float(mpmath.besselj(order, mpmath.mpf(float(x))))
            yr = float(mpmath.bessely(order, mpmath.mpf(float(x))))
            scale = max(abs(jr), abs(yr), 1.0)
            assert abs(j[i] - jr) / scale < 1e-10
            assert abs(y[i] - yr) / scale < 1e-10


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=1e-3, max_value=100.0))
def test_wronskian(x):
    # J1 Y0 - J0 Y1 = 2 / (pi x) for every positive argument
    j0, y0 = bessel_jy(0, x)
    j1, y1 = bessel_jy(1, x)
    assert abs(j1 * y0 - j0 * y1 - 2.0 / (np.pi * x)) < 1e-11


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1e-3, max_value=60.0))
def test_hankel_composition(x):
    j, y = bessel_jy(0, x)
    assert hankel1(0, x) == j + 1j * y


def test_mixed_argument_batches_match_scalars():
    # one batch spanning both branches must agree with per-point evaluation
    xs = np.array([0.01, 2.0, 11.0, 12.5, 30.0, 95.0])
    for order in (0, 1):
        jb, yb = bessel_jy(order, xs)
        for i, x in enumerate(xs):
            j, y = bessel_jy(order, float(x))
            assert j == jb[i] and y == yb[i]


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        bessel_jy(2, 1.0)
    with pytest.raises(ValueError):
        bessel_jy(0, 0.0)
    with pytest.raises(ValueError):
        bessel_jy(0, np.array([1.0, -2.0]))

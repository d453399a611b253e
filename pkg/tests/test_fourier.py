import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wavesource.geometry import make_box_grid
from wavesource.fourier import (FourierLattice, lattice_indices,
                                fourier_coefficient, fourier_synthesize,
                                parseval_check)
from wavesource.sources import canonical_bump_source
from wavesource.recover import oracle_lattice


def test_lattice_index_counts():
    # d=2, N=2: (+-1,0),(0,+-1),(+-1,+-1),(+-2,0),(0,+-2)
    idx = lattice_indices(2, 2)
    assert len(idx) == 12
    assert (0, 0) not in idx
    assert len(lattice_indices(2, 2, include_zero=True)) == 13
    assert all(sum(c * c for c in n) <= 4 for n in idx)


def test_lattice_indices_are_euclidean_ball():
    idx = set(lattice_indices(3, 3))
    assert (1, 1, 1) in idx
    assert (2, 2, 1) in idx       # |n|^2 = 9
    assert (2, 2, 2) not in idx   # |n|^2 = 12 > 9


def _random_lattice(d, N, R, seed):
    rng = np.random.default_rng(seed)
    lat = FourierLattice(d, R, N, real_valued=False)
    for n in lattice_indices(d, N, include_zero=True):
        lat.set(n, rng.normal(size=d) + 1j * rng.normal(size=d))
    return lat


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=9))
def test_parseval_on_band_limited_fields(N, seed):
    # the midpoint rule is exact for trigonometric polynomials below the
    # aliasing limit, so both sides of the energy identity must coincide
    R = 1.0
    lat = _random_lattice(2, N, R, seed)
    grid = make_box_grid(2, R, 2 * N + 8)
    vals = fourier_synthesize(lat, grid.nodes()).values
    lhs, rhs = parseval_check(grid, vals, lat)
    assert abs(lhs - rhs) <= 1e-12 * rhs


def test_synthesis_coefficient_roundtrip():
    # sampled-path coefficients of a synthesized band-limited field return
    # the original lattice entries
    R = 1.3
    lat = _random_lattice(2, 2, R, seed=3)
    grid = make_box_grid(2, R, 24)
    vals = fourier_synthesize(lat, grid.nodes()).values
    for n in ((0, 0), (1, 0), (1, -2), (-2, 0)):
        got = fourier_coefficient(None, n, R, grid=grid, values=vals)
        assert np.max(np.abs(got - lat.get(n))) < 1e-12


def test_analytic_coefficient_matches_brute_force():
    src = canonical_bump_source(2)
    truth = oracle_lattice(src, 1.0, 2, m=128)
    for n in ((1, 0), (1, 1), (0, 2)):
        got = fourier_coefficient(src, n, 1.0)
        ref = truth.coefficients[n]
        assert np.max(np.abs(got - ref)) < 1e-8


def test_real_source_conjugate_symmetry():
    src = canonical_bump_source(2)
    lat = oracle_lattice(src, 1.0, 2, m=64)
    lat.assert_conjugate_symmetry(tol=1e-12)


def test_energy_and_validation():
    lat = FourierLattice(2, 1.0, 1, real_valued=False)
    lat.set((1, 0), np.array([3.0 + 4.0j, 0.0]))
    assert abs(lat.energy() - 25.0) < 1e-14
    with pytest.raises(ValueError):
        lat.set((5, 0), np.zeros(2))  # outside the band
    with pytest.raises(ValueError):
        lat.set((1, 0), np.zeros(3))  # wrong component count

"""Box Fourier analysis and synthesis on U_R = (-R, R)^d.

Convention: coefficients f_hat_n = (2R)^{-d} * integral over U_R of
f(x) exp(-i (pi/R) n.x) dx, synthesis f(x) = sum_n f_hat_n exp(+i (pi/R) n.x),
Parseval ||f||^2_{L2(U_R)} = (2R)^d sum_n |f_hat_n|^2.
"""

from dataclasses import dataclass, field

import numpy as np

from .geometry import BoxGrid, make_box_grid


@dataclass(frozen=True)
class VectorFieldSamples:
    """Complex d-vector values at evaluation points."""
    points: np.ndarray
    values: np.ndarray
    units: str = ""

    def __post_init__(self):
        if self.points.shape[0] != self.values.shape[0]:
            raise ValueError("points and values must have equal length")
        if not (np.all(np.isfinite(self.points))
                and np.all(np.isfinite(self.values.view(float)))):
            raise ValueError("non-finite entries in field samples")


def lattice_indices(d, N, include_zero=False):
    """Integer multi-indices with Euclidean norm 0 < |n| <= N (optionally with 0)."""
    if N < 1:
        raise ValueError("truncation N must be >= 1")
    rng = range(-N, N + 1)
    out = []
    if d == 2:
        candidates = ((i, j) for i in rng for j in rng)
    else:
        candidates = ((i, j, k) for i in rng for j in rng for k in rng)
    for n in candidates:
        nsq = sum(c * c for c in n)
        if nsq <= N * N and (include_zero or nsq > 0):
            out.append(n)
    return out


@dataclass
class FourierLattice:
    """Truncated box Fourier data: multi-index -> complex d-vector coefficient."""
    d: int
    half_width: float
    N: int
    coefficients: dict = field(default_factory=dict)
    real_valued: bool = False

    def set(self, n, value):
        n = tuple(int(c) for c in n)
        if sum(c * c for c in n) > self.N * self.N:
            raise ValueError(f"index {n} outside |n| <= {self.N}")
        value = np.asarray(value, dtype=complex)
        if value.shape != (self.d,):
            raise ValueError(f"coefficient must be a {self.d}-vector")
        self.coefficients[n] = value

    def get(self, n):
        return self.coefficients.get(tuple(n), np.zeros(self.d, dtype=complex))

    def energy(self):
        """Sum of |f_hat_n|^2 over stored indices."""
        if not self.coefficients:
            return 0.0
        return float(sum(np.sum(np.abs(v) ** 2) for v in self.coefficients.values()))

    def assert_conjugate_symmetry(self, tol=1e-10):
        """For real-valued sources: f_hat_{-n} = conj(f_hat_n)."""
        if not self.real_valued:
            return
        for n, v in self.coefficients.items():
            neg = tuple(-c for c in n)
            if neg in self.coefficients:
                if np.max(np.abs(self.coefficients[neg] - np.conj(v))) > tol:
                    raise AssertionError(f"conjugate symmetry violated at {n}")


def _phase_at(points, n, R):
    return np.exp(-1j * (np.pi / R) * (points @ np.asarray(n, dtype=float)))


def _midpoint_transform(source, n, R, m):
    grid = make_box_grid(source.d, source.halfwidth, m, source.center)
    pts = grid.nodes()
    vals = source.value(pts)
    return grid.cell_volume * np.sum(vals * _phase_at(pts, n, R)[:, None], axis=0)


def fourier_coefficient(source, n, R, grid=None, values=None, rtol=1e-10, m0=32):
    """Box Fourier coefficient f_hat_n (normalized by (2R)^{-d}).

    Analytic descriptors (with .value/.halfwidth/.center) are integrated on a
    midpoint grid over the support box, refined 2x with one Richardson step,
    then further until successive levels agree to `rtol`. Sampled fields pass
    `grid` and `values` for a plain midpoint rule.
    """
    if grid is not None:
        values = np.asarray(values)
        if not np.all(np.isfinite(values.view(float))):
            raise ValueError("non-finite field values")
        phases = _phase_at(grid.nodes(), n, R)
        raw = grid.cell_volume * np.sum(values * phases[:, None], axis=0)
        return raw / (2.0 * R) ** grid.d

    m = m0
    coarse = _midpoint_transform(source, n, R, m)
    fine = _midpoint_transform(source, n, R, 2 * m)
    est = (4.0 * fine - coarse) / 3.0
    for _ in range(6):
        scale = max(np.max(np.abs(est)), 1e-300)
        if np.max(np.abs(fine - coarse)) / scale < rtol:
            break
        m *= 2
        coarse = fine
        fine = _midpoint_transform(source, n, R, 2 * m)
        est = (4.0 * fine - coarse) / 3.0
    return est / (2.0 * R) ** source.d


def fourier_synthesize(lattice, points, units=""):
    """Evaluate sum_n f_hat_n exp(i (pi/R) n.x) at the given points."""
    points = np.asarray(points, dtype=float)
    values = np.zeros((points.shape[0], lattice.d), dtype=complex)
    R = lattice.half_width
    for n, coef in lattice.coefficients.items():
        phase = np.exp(1j * (np.pi / R) * (points @ np.asarray(n, dtype=float)))
        values += phase[:, None] * coef[None, :]
    return VectorFieldSamples(points, values, units)


def parseval_check(grid, values, lattice):
    """Both sides of the Parseval identity: (||f||^2, (2R)^d sum |f_hat_n|^2).

    `values` are the field samples on `grid`, which must cover U_R.
    """
    values = np.asarray(values)
    lhs = float(grid.cell_volume * np.sum(np.abs(values) ** 2))
    rhs = (2.0 * lattice.half_width) ** lattice.d * lattice.energy()
    return lhs, rhs

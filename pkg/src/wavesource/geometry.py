"""Measurement-surface quadrature and volume grids.

The measurement surface is the circle or sphere of radius R; the volume
domain is the box U_R = (-R, R)^d containing the source support.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SurfaceQuadrature:
    """Quadrature rule on the circle (d=2) or sphere (d=3) of radius R.

    nodes: (M, d) points with |x| = R
    normals: (M, d) unit outward normals x/R
    weights: (M,) strictly positive, summing to the surface measure
    """
    radius: float
    d: int
    nodes: np.ndarray
    normals: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be strictly positive")


@dataclass(frozen=True)
class BoxGrid:
    """Uniform cell-centered grid tiling the box (c - a, c + a)^d.

    With center = 0 and half_width = R this is the box U_R of the Fourier
    expansion; shifted/shrunk instances serve as source-support grids.
    """
    half_width: float
    points_per_axis: int
    d: int
    center: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        if self.d not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.d}")
        if self.points_per_axis < 4:
            raise ValueError("grid needs at least 4 points per axis")
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        c = np.asarray(self.center, dtype=float)
        if c.size == 0:
            c = np.zeros(self.d)
        if c.shape != (self.d,):
            raise ValueError("center must be a d-vector")
        object.__setattr__(self, "center", c)

    @property
    def spacing(self):
        return 2.0 * self.half_width / self.points_per_axis

    @property
    def cell_volume(self):
        return self.spacing ** self.d

    @property
    def axis(self):
        """Cell-center coordinates along one axis, before the center shift."""
        m = self.points_per_axis
        h = self.spacing
        return -self.half_width + h * (np.arange(m) + 0.5)

    def nodes(self):
        """All cell centers as an (m^d, d) array."""
        ax = self.axis
        mesh = np.meshgrid(*([ax] * self.d), indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
        return pts + self.center

    def refine(self, factor=2):
        return BoxGrid(self.half_width, self.points_per_axis * factor,
                       self.d, self.center)


def make_box_grid(d, R, m, center=None):
    """Uniform cell-centered BoxGrid covering (-R, R)^d (optionally shifted)."""
    return BoxGrid(half_width=R, points_per_axis=m, d=d,
                   center=np.zeros(d) if center is None else np.asarray(center, float))


def make_surface_quadrature(d, R, resolution):
    """Quadrature on the measurement surface of radius R.

    d=2: `resolution` equispaced trapezoid nodes on the circle.
    d=3: (n_polar, n_azimuth) Gauss-Legendre x trapezoid product rule;
         a single int means (resolution, 2*resolution).
    """
    if d not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {d}")
    if R <= 0:
        raise ValueError("radius must be positive")
    if d == 2:
        M = int(resolution)
        if M < 8:
            raise ValueError("need at least 8 nodes on the circle")
        theta = 2.0 * np.pi * np.arange(M) / M
        normals = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        nodes = R * normals
        weights = np.full(M, 2.0 * np.pi * R / M)
        return SurfaceQuadrature(R, 2, nodes, normals, weights)

    if np.isscalar(resolution):
        n_pol, n_az = int(resolution), 2 * int(resolution)
    else:
        n_pol, n_az = (int(r) for r in resolution)
    if n_pol < 8 or n_az < 8:
        raise ValueError("need at least 8 nodes per angular direction")
    # Gauss-Legendre in cos(theta) carries the sin(theta) area factor exactly
    t, w_pol = np.polynomial.legendre.leggauss(n_pol)
    phi = 2.0 * np.pi * np.arange(n_az) / n_az
    sin_th = np.sqrt(1.0 - t ** 2)
    nx = sin_th[:, None] * np.cos(phi)[None, :]
    ny = sin_th[:, None] * np.sin(phi)[None, :]
    nz = np.broadcast_to(t[:, None], nx.shape)
    normals = np.stack([nx.ravel(), ny.ravel(), nz.ravel()], axis=-1)
    nodes = R * normals
    weights = (R * R * w_pol[:, None] * (2.0 * np.pi / n_az)
               * np.ones(n_az)[None, :]).ravel()
    return SurfaceQuadrature(R, 3, nodes, normals, weights)


def surface_integrate(q, samples):
    """Integral over the measurement surface: sum of weights * samples.

    Samples may be scalar (M,) or vector (M, k); integration is over axis 0.
    """
    samples = np.asarray(samples)
    if samples.shape[0] != q.weights.shape[0]:
        raise ValueError("sample count does not match quadrature node count")
    return np.tensordot(q.weights, samples, axes=(0, 0))

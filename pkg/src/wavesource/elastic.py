"""Navier-equation physics: Green's tensor, forward displacement, traction
data on the measurement circle/sphere, plane waves, and measurement norms.

The Green's tensor is

    G(x, y) = (1/mu) g_d(kappa_s) I + grad grad^T psi,
    psi     = omega^{-2} (g_d(kappa_s) - g_d(kappa_p)),

with the psi derivatives branch-switched to their power series at low
kappa_s |x - y| (see kernels). The transparent boundary condition is realized
by differentiating the kernel: Neumann data of the radiated field is computed
exactly from grad_x G contracted with the source, never from a DtN operator.
"""

from dataclasses import dataclass

import numpy as np

from .geometry import surface_integrate, make_box_grid
from .fourier import VectorFieldSamples
from .kernels import radial_kernel, correction_derivatives
from .operators import discrete_differential

DEFAULT_VOLUME_POINTS = {2: 64, 3: 32}


@dataclass(frozen=True)
class ElasticMedium:
    lame_lambda: float
    lame_mu: float

    def __post_init__(self):
        if not (self.lame_mu > 0 and self.lame_lambda + self.lame_mu > 0):
            raise ValueError("medium requires mu > 0 and lambda + mu > 0")


def elastic_speeds(medium):
    """Compressional and shear slownesses-to-speed: c_p = (lambda+2mu)^{-1/2},
    c_s = mu^{-1/2}; always c_p < c_s."""
    c_p = (medium.lame_lambda + 2.0 * medium.lame_mu) ** -0.5
    c_s = medium.lame_mu ** -0.5
    return c_p, c_s


@dataclass(frozen=True)
class ElasticFrequency:
    omega: float
    c_p: float
    c_s: float

    @classmethod
    def from_omega(cls, omega, medium):
        if omega < 0:
            raise ValueError("omega must be nonnegative")
        c_p, c_s = elastic_speeds(medium)
        return cls(omega, c_p, c_s)

    @property
    def kappa_p(self):
        return self.c_p * self.omega

    @property
    def kappa_s(self):
        return self.c_s * self.omega


def lattice_frequency(kind, n, medium, R):
    """The probing frequencies omega_{p,n} = n pi/(c_p R), omega_{s,n} = n pi/(c_s R).

    Both make the corresponding wavenumber equal n pi / R, so the matching
    plane wave has the box Fourier phase exp(-i (pi/R) n . x).
    """
    c_p, c_s = elastic_speeds(medium)
    c = c_p if kind == "p" else c_s
    return ElasticFrequency.from_omega(n * np.pi / (c * R), medium)


@dataclass
class ElasticBoundaryRecord:
    """Boundary measurement at one frequency: displacement and traction samples."""
    frequency: ElasticFrequency
    quadrature: object
    u: np.ndarray
    du: np.ndarray
    shell: float = 0.0      # lattice radius |n| when generated at a lattice frequency
    wave_kind: str = ""     # 'p' or 's' for lattice records

    def __post_init__(self):
        M = self.quadrature.nodes.shape[0]
        if self.u.shape[0] != M or self.du.shape[0] != M:
            raise ValueError("sample counts must match quadrature nodes")


def _green_scalars(d, freq, medium, r):
    """Radial building blocks on a batch of separations r.

    Returns (gs0, gs1, A, B, Ap, Bp): shear kernel value/derivative and the
    correction-tensor radial coefficients hess psi = A e e^T + B I and their
    radial derivatives (for grad_x G).
    """
    p1, p2, p3 = correction_derivatives(d, freq.omega, freq.c_s, freq.c_p, r)
    if d == 2 and freq.kappa_s == 0:
        raise ValueError("2D Green tensor is undefined at omega = 0")
    gs0, gs1, _, _ = radial_kernel(d, freq.kappa_s, r)
    A = p2 - p1 / r
    B = p1 / r
    Ap = p3 - p2 / r + p1 / r ** 2
    Bp = p2 / r - p1 / r ** 2
    return gs0, gs1, A, B, Ap, Bp


def navier_green(x, y, freq, medium, want_gradient=True):
    """Green's tensor G(x, y) and, optionally, its x-gradient.

    Returns (G: (d, d), dG: (d, d, d) with dG[a, b, c] = d/dx_c G[a, b]).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = x.shape[-1]
    diff = x - y
    r = np.array([np.linalg.norm(diff)])
    if r[0] == 0:
        raise ValueError("coincident evaluation points")
    e = diff / r[0]
    gs0, gs1, A, B, Ap, Bp = _green_scalars(d, freq, medium, r)
    mu = medium.lame_mu
    eye = np.eye(d)
    ee = np.outer(e, e)
    G = (gs0[0] / mu + B[0]) * eye + A[0] * ee
    if not want_gradient:
        return G, None
    dG = np.zeros((d, d, d), dtype=complex)
    for c in range(d):
        proj = eye[:, c] - e * e[c]   # d e / d x_c, times r
        dG[:, :, c] = ((gs1[0] / mu + Bp[0]) * e[c] * eye
                       + Ap[0] * e[c] * ee
                       + (A[0] / r[0]) * (np.outer(proj, e) + np.outer(e, proj)))
    return G, dG


def _require_outside(targets, source, margin):
    dist = np.linalg.norm(np.asarray(targets, float) - source.center, axis=-1)
    if np.any(dist < source.rho + margin):
        raise ValueError("target inside the source support margin")


def source_grid(source, m=None):
    m = m or DEFAULT_VOLUME_POINTS[source.d]
    return make_box_grid(source.d, source.rho, m, source.center)


def elastic_fields(targets, source, freq, medium, grid=None, want_gradient=False,
                   margin=None, chunk=2_000_000):
    """Displacement (and its gradient) radiated by the source at the targets.

    Midpoint volume quadrature of u(x) = integral of G(x, y) f(y) dy over the
    source grid; the gradient is contracted under the integral from grad_x G.
    """
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    d = source.d
    if margin is None:
        margin = 0.05 * source.rho
    _require_outside(targets, source, margin)
    grid = grid or source_grid(source)
    ypts = grid.nodes()
    fvals = source.value(ypts) * grid.cell_volume        # weights folded in
    nt = targets.shape[0]
    u = np.zeros((nt, d), dtype=complex)
    grad_u = np.zeros((nt, d, d), dtype=complex) if want_gradient else None
    mu = medium.lame_mu
    step = max(1, chunk // ypts.shape[0])
    for i0 in range(0, nt, step):
        xs = targets[i0:i0 + step]
        diff = xs[:, None, :] - ypts[None, :, :]
        r = np.linalg.norm(diff, axis=-1)
        e = diff / r[..., None]
        gs0, gs1, A, B, Ap, Bp = _green_scalars(d, freq, medium, r.ravel())
        shape = r.shape
        gs0, gs1, A, B, Ap, Bp = (a.reshape(shape) for a in (gs0, gs1, A, B, Ap, Bp))
        ef = np.einsum("tsd,sd->ts", e, fvals)
        u[i0:i0 + step] = (np.einsum("ts,sd->td", gs0 / mu + B, fvals)
                           + np.einsum("ts,tsd->td", A * ef, e))
        if want_gradient:
            # (grad u)_{ab} = sum_y [ (gs1/mu + B') f_a e_b + A' (e.f) e_a e_b
            #   + (A/r) ((delta_ab - e_a e_b)(e.f) + e_a (f_b - (e.f) e_b)) ]
            c1 = gs1 / mu + Bp
            Ar = A / r
            g = np.einsum("ts,sa,tsb->tab", c1, fvals, e)
            g += np.einsum("ts,tsa,tsb->tab", Ap * ef, e, e)
            g += np.einsum("ts,tab->tab", Ar * ef,
                           np.broadcast_to(np.eye(d), (xs.shape[0], d, d)).copy())
            g -= np.einsum("ts,tsa,tsb->tab", 2.0 * Ar * ef, e, e)
            g += np.einsum("ts,tsa,sb->tab", Ar, e, fvals)
            grad_u[i0:i0 + step] = g
    return u, grad_u


def forward_displacement(source, freq, medium, targets, grid=None, margin=None):
    """Radiated displacement field at the target points."""
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    u, _ = elastic_fields(targets, source, freq, medium, grid=grid, margin=margin)
    return VectorFieldSamples(targets, u, units="displacement")


def traction(u_gradient, div_u, nu, medium):
    """Boundary operator mu * (grad u) nu + (lambda + mu) (div u) nu.

    Batched: u_gradient (..., d, d), div_u (...), nu (..., d).
    """
    nu = np.asarray(nu, dtype=float)
    if not np.allclose(np.linalg.norm(nu, axis=-1), 1.0, atol=1e-10):
        raise ValueError("normal vectors must be unit length")
    mu = medium.lame_mu
    lam_mu = medium.lame_lambda + medium.lame_mu
    return (mu * np.einsum("...ab,...b->...a", u_gradient, nu)
            + lam_mu * np.asarray(div_u)[..., None] * nu)


def elastic_boundary_data(source, freq, medium, q, grid=None, delta=None,
                          shell=0.0, wave_kind=""):
    """Boundary record (u, Du) on the measurement surface.

    Du is the transparent-boundary Neumann data, evaluated from the analytic
    kernel gradient under the volume integral.
    """
    R = q.radius
    if delta is None:
        delta = 0.25 * R
    if source.support_distance_to(R) < delta:
        raise ValueError("source support too close to the measurement surface")
    u, grad_u = elastic_fields(q.nodes, source, freq, medium, grid=grid,
                               want_gradient=True)
    div_u = np.trace(grad_u, axis1=1, axis2=2)
    du = traction(grad_u, div_u, q.normals, medium)
    return ElasticBoundaryRecord(freq, q, u, du, shell=shell, wave_kind=wave_kind)


def elastic_plane_wave(kind, d_hat, pol, freq, medium, points, normals=None):
    """Incident plane wave pol * exp(-i kappa x . d_hat) and its traction.

    kind 'p' requires pol = d_hat; kind 's' requires pol . d_hat = 0.
    Returns (values, traction values or None).
    """
    d_hat = np.asarray(d_hat, dtype=float)
    pol = np.asarray(pol, dtype=float)
    if abs(np.linalg.norm(d_hat) - 1) > 1e-12 or abs(np.linalg.norm(pol) - 1) > 1e-12:
        raise ValueError("direction and polarization must be unit vectors")
    if kind == "p":
        if np.linalg.norm(pol - d_hat) > 1e-12:
            raise ValueError("compressional wave requires pol = d_hat")
        kappa = freq.kappa_p
    elif kind == "s":
        if abs(pol @ d_hat) > 1e-12:
            raise ValueError("shear wave requires pol orthogonal to d_hat")
        kappa = freq.kappa_s
    else:
        raise ValueError("kind must be 'p' or 's'")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    phase = np.exp(-1j * kappa * (points @ d_hat))
    values = phase[:, None] * pol[None, :]
    if normals is None:
        return values, None
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    mu = medium.lame_mu
    lam_mu = medium.lame_lambda + medium.lame_mu
    dn = normals @ d_hat
    pd = pol @ d_hat
    trac = -1j * kappa * phase[:, None] * (mu * dn[:, None] * pol[None, :]
                                           + lam_mu * pd * normals)
    return values, trac


def plane_wave_residual(kind, freq, medium):
    """Closed-form Navier residual factor of the plane wave (exactly zero)."""
    if kind == "p":
        return freq.omega ** 2 - (medium.lame_lambda + 2 * medium.lame_mu) * freq.kappa_p ** 2
    return freq.omega ** 2 - medium.lame_mu * freq.kappa_s ** 2


def elastic_measurement_norm(record, weighting="continuous"):
    """Boundary energy: integral of |Du|^2 + w^2 |u|^2 over the surface,
    w = omega (continuous) or w = lattice radius n (discrete)."""
    if weighting == "continuous":
        w = record.frequency.omega
    elif weighting == "discrete":
        w = record.shell
    else:
        raise ValueError("weighting must be 'continuous' or 'discrete'")
    dens = (np.sum(np.abs(record.du) ** 2, axis=1)
            + w ** 2 * np.sum(np.abs(record.u) ** 2, axis=1))
    return float(np.real(surface_integrate(record.quadrature, dens)))


def helmholtz_split(grid, u_values, freq):
    """Compressional/shear decomposition of a radiated field on a local grid.

    u_p = -kappa_p^{-2} grad(div u); u_s = kappa_s^{-2} * (vector-curl of
    scalar-curl in 2D, curl of curl in 3D). Valid where the homogeneous
    equation holds (grid must avoid the source support).
    """
    d = grid.d
    div_u, _ = discrete_differential(grid, u_values, "divergence")
    u_p = -discrete_differential(grid, div_u, "gradient")[0] / freq.kappa_p ** 2
    if d == 2:
        sc, _ = discrete_differential(grid, u_values, "scalar-curl")
        u_s = discrete_differential(grid, sc, "vector-curl")[0] / freq.kappa_s ** 2
    else:
        c, _ = discrete_differential(grid, u_values, "curl3d")
        u_s = discrete_differential(grid, c, "curl3d")[0] / freq.kappa_s ** 2
    return u_p, u_s

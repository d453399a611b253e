"""Maxwell physics: dyadic Green's tensor, forward E and H fields, tangential
trace records, electromagnetic plane waves, and non-radiating sources.

Conventions: curl E - i kappa H = 0 and curl H + i kappa E = J, so the
decoupled electric field solves curl curl E - kappa^2 E = i kappa J with

    E(x) = integral of G(x, y) J(y) dy,
    G    = i kappa g3 I + (i/kappa) grad grad^T g3,

and H = curl E / (i kappa) = integral of g3(x, y) (curl J)(y) dy, using the
source's analytic curl. The capacity operator is realized as the computed map
E x nu -> H x nu (they agree for radiating fields).
"""

from dataclasses import dataclass

import numpy as np

from .geometry import surface_integrate
from .fourier import VectorFieldSamples
from .kernels import radial_kernel
from .elastic import source_grid, _require_outside


@dataclass
class EMBoundaryRecord:
    """Tangential trace E x nu and capacity data H x nu at one wavenumber."""
    kappa: float
    quadrature: object
    e_cross_nu: np.ndarray
    h_cross_nu: np.ndarray
    shell: float = 0.0

    def __post_init__(self):
        M = self.quadrature.nodes.shape[0]
        if self.e_cross_nu.shape[0] != M or self.h_cross_nu.shape[0] != M:
            raise ValueError("sample counts must match quadrature nodes")


def maxwell_green(x, y, kappa):
    """Dyadic Green's tensor i kappa g3 I + (i/kappa) grad grad^T g3."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    diff = x - y
    r = np.linalg.norm(diff)
    if r == 0:
        raise ValueError("coincident evaluation points")
    e = diff / r
    g0, g1, g2, _ = radial_kernel(3, kappa, np.array([r]))
    ee = np.outer(e, e)
    hess = g2[0] * ee + (g1[0] / r) * (np.eye(3) - ee)
    return 1j * kappa * g0[0] * np.eye(3) + (1j / kappa) * hess


def em_fields(targets, source, kappa, grid=None, margin=None, chunk=2_000_000,
              want_magnetic=True):
    """E and H radiated by a current at the targets (chunked direct sums)."""
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if margin is None:
        margin = 0.05 * source.rho
    _require_outside(targets, source, margin)
    grid = grid or source_grid(source)
    ypts = grid.nodes()
    jvals = source.value(ypts) * grid.cell_volume
    curl_j = source.curl(ypts) * grid.cell_volume if want_magnetic else None
    nt = targets.shape[0]
    E = np.zeros((nt, 3), dtype=complex)
    H = np.zeros((nt, 3), dtype=complex) if want_magnetic else None
    step = max(1, chunk // ypts.shape[0])
    for i0 in range(0, nt, step):
        xs = targets[i0:i0 + step]
        diff = xs[:, None, :] - ypts[None, :, :]
        r = np.linalg.norm(diff, axis=-1)
        e = diff / r[..., None]
        g0, g1, g2, _ = (a.reshape(r.shape)
                         for a in radial_kernel(3, kappa, r.ravel()))
        ej = np.einsum("tsd,sd->ts", e, jvals)
        # G J = i kappa g0 J + (i/kappa)(g2 (e.J) e + (g1/r)(J - (e.J) e))
        E[i0:i0 + step] = (
            1j * kappa * np.einsum("ts,sd->td", g0, jvals)
            + (1j / kappa) * (np.einsum("ts,tsd->td", g2 * ej, e)
                              + np.einsum("ts,sd->td", g1 / r, jvals)
                              - np.einsum("ts,tsd->td", (g1 / r) * ej, e)))
        if want_magnetic:
            H[i0:i0 + step] = np.einsum("ts,sd->td", g0, curl_j)
    return E, H


def forward_electric(source, kappa, targets, grid=None, margin=None):
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    E, _ = em_fields(targets, source, kappa, grid=grid, margin=margin,
                     want_magnetic=False)
    return VectorFieldSamples(targets, E, units="electric")


def forward_magnetic(source, kappa, targets, grid=None, margin=None):
    if not hasattr(source, "curl"):
        raise ValueError("magnetic field needs a source with an analytic curl")
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    _, H = em_fields(targets, source, kappa, grid=grid, margin=margin)
    return VectorFieldSamples(targets, H, units="magnetic")


def em_boundary_data(source, kappa, q, grid=None, delta=None, shell=0.0):
    """Boundary record (E x nu, H x nu) on the measurement sphere."""
    R = q.radius
    if delta is None:
        delta = 0.25 * R
    if source.support_distance_to(R) < delta:
        raise ValueError("source support too close to the measurement surface")
    E, H = em_fields(q.nodes, source, kappa, grid=grid)
    exn = np.cross(E, q.normals)
    hxn = np.cross(H, q.normals)
    return EMBoundaryRecord(kappa, q, exn, hxn, shell=shell)


def em_plane_wave(d_hat, pol, kappa, points):
    """Incident wave pol * exp(-i kappa x . d_hat) and its curl
    -i kappa (d x pol) exp(-i kappa x . d_hat); requires pol transverse."""
    d_hat = np.asarray(d_hat, dtype=float)
    pol = np.asarray(pol, dtype=float)
    if abs(np.linalg.norm(d_hat) - 1) > 1e-12 or abs(np.linalg.norm(pol) - 1) > 1e-12:
        raise ValueError("direction and polarization must be unit vectors")
    if abs(pol @ d_hat) > 1e-12:
        raise ValueError("polarization must be transverse to the direction")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    phase = np.exp(-1j * kappa * (points @ d_hat))
    values = phase[:, None] * pol[None, :]
    curls = -1j * kappa * phase[:, None] * np.cross(d_hat, pol)[None, :]
    return values, curls


class CurlCurlSource:
    """Non-radiating current phi = curl curl psi - kappa^2 psi.

    Built from a smooth compactly supported generator psi whose components
    expose hessians (for phi) and third derivatives (for curl phi); such
    currents produce no tangential or normal electric trace at wavenumber
    kappa.
    """

    def __init__(self, psi, kappa):
        if psi.d != 3:
            raise ValueError("generator must be three-dimensional")
        for c in psi.components:
            if not hasattr(c, "hessian"):
                raise ValueError("generator components need analytic hessians")
        self.psi = psi
        self.kappa = float(kappa)
        self.d = 3
        self.rho = psi.rho
        self.center = psi.center
        self.real_valued = psi.real_valued
        self.zero_mean = True
        self.name = "curlcurl"

    @property
    def halfwidth(self):
        return self.rho

    def support_distance_to(self, R):
        return self.psi.support_distance_to(R)

    def _hessians(self, x):
        return np.stack([c.hessian(x) for c in self.psi.components], axis=1)

    def value(self, x):
        """phi = grad(div psi) - laplace psi - kappa^2 psi."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        hess = self._hessians(x)                    # (n, comp, a, b)
        grad_div = np.einsum("niai->na", hess)      # d_a d_i psi_i
        lap = np.einsum("niaa->ni", hess)
        return grad_div - lap - self.kappa ** 2 * self.psi.value(x)

    def curl(self, x):
        """curl phi = -curl(laplace psi) - kappa^2 curl psi (curl grad div = 0)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        thirds = np.stack([c.third(x) for c in self.psi.components], axis=1)
        lap_grad = np.einsum("nicaa->nic", thirds)  # d_c laplace psi_i
        curl_lap = np.stack([lap_grad[:, 2, 1] - lap_grad[:, 1, 2],
                             lap_grad[:, 0, 2] - lap_grad[:, 2, 0],
                             lap_grad[:, 1, 0] - lap_grad[:, 0, 1]], axis=-1)
        return -curl_lap - self.kappa ** 2 * self.psi.curl(x)

    def moment(self, m=96):
        from .sources import VectorSource
        return VectorSource.moment(self, m)


def nonradiating_source(psi, kappa):
    """Current with vanishing boundary traces at wavenumber kappa."""
    return CurlCurlSource(psi, kappa)


def em_measurement_norm(record):
    """Boundary energy: integral of |H x nu|^2 + |E x nu|^2 over the sphere."""
    dens = (np.sum(np.abs(record.h_cross_nu) ** 2, axis=1)
            + np.sum(np.abs(record.e_cross_nu) ** 2, axis=1))
    return float(np.real(surface_integrate(record.quadrature, dens)))

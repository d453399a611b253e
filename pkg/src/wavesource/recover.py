"""Reconstruction core: plane-wave probes of boundary records, lattice
recovery at the probing frequencies, static mean recovery, Fourier synthesis
reports, and the band-energy data functionals.

Probe identities (verified against the forward solver):

    elastic:  pol . f_hat(xi) = integral over Gamma_R of
                  (u . D u_inc - u_inc . D u) d gamma,
              with u_inc the plane wave pol exp(-i kappa x . d_hat);

    EM:       i kappa pol . J_hat(xi) = - integral over Gamma_R of
                  (i kappa (H x nu) . E_inc + (E x nu) . curl E_inc) d gamma.

Here f_hat(xi) = integral of f exp(-i xi . x) dx is the unnormalized
transform; lattice assembly divides by (2R)^d once. At the probing
frequencies the wavenumber is n pi / R, so xi ranges over the box Fourier
lattice and the probes deliver exactly the series coefficients.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import surface_integrate, make_box_grid
from .fourier import FourierLattice, lattice_indices, fourier_synthesize
from .elastic import (ElasticMedium, elastic_speeds, lattice_frequency,
                      elastic_boundary_data, elastic_plane_wave,
                      elastic_measurement_norm, ElasticFrequency)
from .maxwell import em_plane_wave, em_measurement_norm, em_boundary_data


@dataclass(frozen=True)
class ProbeSpec:
    """One plane-wave probe: wave kind, direction, polarization, wavenumber."""
    kind: str               # 'p', 's' (elastic) or 'em'
    d_hat: np.ndarray
    pol: np.ndarray
    kappa: float

    def __post_init__(self):
        d_hat = np.asarray(self.d_hat, dtype=float)
        pol = np.asarray(self.pol, dtype=float)
        object.__setattr__(self, "d_hat", d_hat)
        object.__setattr__(self, "pol", pol)
        if self.kind == "p":
            if np.linalg.norm(pol - d_hat) > 1e-12:
                raise ValueError("compressional probe requires pol = d_hat")
        elif self.kind in ("s", "em"):
            if abs(pol @ d_hat) > 1e-12:
                raise ValueError("shear/EM probe requires pol transverse to d_hat")
        else:
            raise ValueError("kind must be 'p', 's' or 'em'")


def shear_frame(n_hat):
    """Orthonormal transverse polarizations for a unit direction.

    d=2: the rotation of n_hat by 90 degrees. d=3: the spherical frame
    q1 = (cos t cos p, cos t sin p, -sin t), q2 = n_hat x q1, with the
    degenerate poles n_hat = +-e3 falling back to (e1, e2).
    """
    n_hat = np.asarray(n_hat, dtype=float)
    if n_hat.shape[0] == 2:
        return (np.array([-n_hat[1], n_hat[0]]),)
    sin_t = math.hypot(n_hat[0], n_hat[1])
    if sin_t < 1e-12:
        return (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))
    cos_t = n_hat[2]
    cos_p, sin_p = n_hat[0] / sin_t, n_hat[1] / sin_t
    q1 = np.array([cos_t * cos_p, cos_t * sin_p, -sin_t])
    q2 = np.array([-sin_p, cos_p, 0.0])
    return (q1, q2)


def elastic_probe(record, spec, medium):
    """pol . f_hat(kappa d_hat) from one boundary record."""
    if spec.kind not in ("p", "s"):
        raise ValueError("elastic probe requires kind 'p' or 's'")
    freq = record.frequency
    kappa = freq.kappa_p if spec.kind == "p" else freq.kappa_s
    if abs(kappa - spec.kappa) > 1e-9 * max(spec.kappa, 1.0):
        raise ValueError("record frequency does not match the probe wavenumber")
    q = record.quadrature
    u_inc, du_inc = elastic_plane_wave(spec.kind, spec.d_hat, spec.pol, freq,
                                       medium, q.nodes, q.normals)
    integrand = (np.sum(record.u * du_inc, axis=1)
                 - np.sum(u_inc * record.du, axis=1))
    return complex(surface_integrate(q, integrand))


def em_probe(record, spec, kappa):
    """pol . J_hat(kappa d_hat) from one boundary record (transverse only)."""
    if spec.kind != "em":
        raise ValueError("EM probe requires kind 'em'")
    if abs(record.kappa - kappa) > 1e-9 * max(kappa, 1.0):
        raise ValueError("record wavenumber does not match the probe")
    if abs(spec.kappa - kappa) > 1e-9 * max(kappa, 1.0):
        raise ValueError("probe spec wavenumber mismatch")
    q = record.quadrature
    e_inc, curl_inc = em_plane_wave(spec.d_hat, spec.pol, kappa, q.nodes)
    integrand = (1j * kappa * np.sum(record.h_cross_nu * e_inc, axis=1)
                 + np.sum(record.e_cross_nu * curl_inc, axis=1))
    return complex(-surface_integrate(q, integrand) / (1j * kappa))


def elastic_shells(N):
    """Distinct squared lattice radii |n|^2 for 0 < |n| <= N (d-independent
    superset: every integer expressible stays; harmless extras are skipped
    by the recovery loop)."""
    return sorted({sum(c * c for c in n)
                   for n in lattice_indices(2, N)} |
                  {sum(c * c for c in n)
                   for n in lattice_indices(3, min(N, 8))})


def synthesize_elastic_records(source, medium, R, q, N, grid=None):
    """Boundary records at all probing frequencies needed for truncation N.

    Returns {('p'|'s', |n|^2): record}; records at equal |n| are shared by
    every lattice direction on that shell.
    """
    shells = sorted({sum(c * c for c in n)
                     for n in lattice_indices(source.d, N)})
    records = {}
    for nsq in shells:
        n_rad = math.sqrt(nsq)
        for kind in ("p", "s"):
            freq = lattice_frequency(kind, n_rad, medium, R)
            records[(kind, nsq)] = elastic_boundary_data(
                source, freq, medium, q, grid=grid, shell=n_rad, wave_kind=kind)
    return records


def synthesize_em_records(source, R, q, N, grid=None):
    """Boundary records at kappa_n = |n| pi / R for all shells up to N."""
    shells = sorted({sum(c * c for c in n) for n in lattice_indices(3, N)})
    return {nsq: em_boundary_data(source, math.sqrt(nsq) * np.pi / R, q,
                                  grid=grid, shell=math.sqrt(nsq))
            for nsq in shells}


def elastic_lattice_recover(records, medium, R, N, d=2, static_mean=None):
    """Fourier lattice of the source from elastic boundary records.

    For each multi-index n the compressional probe along n_hat gives the
    longitudinal coefficient component and the shear probe(s) the transverse
    ones; the components assemble orthogonally. Coefficients are normalized
    by (2R)^{-d}. The mean slot f_hat_0 is filled from `static_mean` (the
    recovered integral of f) when provided.
    """
    lattice = FourierLattice(d, R, N, real_valued=False)
    norm = (2.0 * R) ** d
    for n in lattice_indices(d, N):
        nsq = sum(c * c for c in n)
        n_rad = math.sqrt(nsq)
        n_hat = np.asarray(n, dtype=float) / n_rad
        kappa = n_rad * np.pi / R
        key_p, key_s = ("p", nsq), ("s", nsq)
        if key_p not in records or key_s not in records:
            raise ValueError(f"missing boundary record for shell |n|^2 = {nsq}")
        coef = np.zeros(d, dtype=complex)
        spec = ProbeSpec("p", n_hat, n_hat, kappa)
        coef += elastic_probe(records[key_p], spec, medium) * n_hat
        for qv in shear_frame(n_hat):
            spec = ProbeSpec("s", n_hat, qv, kappa)
            coef += elastic_probe(records[key_s], spec, medium) * qv
        lattice.set(n, coef / norm)
    if static_mean is not None:
        lattice.coefficients[(0,) * d] = np.asarray(static_mean, complex) / norm
    return lattice


def em_lattice_recover(records, R, N):
    """Transverse Fourier lattice of the current from EM boundary records.

    Each coefficient is (p . J_hat) p + (q . J_hat) q with p, q transverse to
    n_hat; the longitudinal slot is zero by construction (only the radiating
    part is determined by boundary data).
    """
    lattice = FourierLattice(3, R, N, real_valued=False)
    lattice.longitudinal = {}
    norm = (2.0 * R) ** 3
    for n in lattice_indices(3, N):
        nsq = sum(c * c for c in n)
        if nsq not in records:
            raise ValueError(f"missing boundary record for shell |n|^2 = {nsq}")
        n_rad = math.sqrt(nsq)
        n_hat = np.asarray(n, dtype=float) / n_rad
        kappa = n_rad * np.pi / R
        coef = np.zeros(3, dtype=complex)
        for pv in shear_frame(n_hat):
            spec = ProbeSpec("em", n_hat, pv, kappa)
            coef += em_probe(records[nsq], spec, kappa) * pv
        coef -= (n_hat @ coef) * n_hat
        lattice.set(n, coef / norm)
        # boundary data determines no longitudinal content: the slot is zero
        # by construction, not by estimation
        lattice.longitudinal[tuple(n)] = 0.0
    return lattice


def static_mean_recover(records, rtol=1e-3):
    """Integral of f over the box from near-static traction records.

    Takes records at omega and omega/2 (defaults 1e-2 and 5e-3) and Richardson
    extrapolates the surface integral of the traction (whose omega -> 0 limit
    is the source moment; the omega^2 correction carries the field integral).
    The two-level disagreement is checked against `rtol` (pass a larger value,
    or None to disable, for noisy data).
    """
    if len(records) != 2:
        raise ValueError("need records at two near-static frequencies")
    recs = sorted(records, key=lambda r: -r.frequency.omega)
    om1, om2 = (r.frequency.omega for r in recs)
    if not math.isclose(om1, 2.0 * om2, rel_tol=1e-9):
        raise ValueError("static records must be at omega and omega/2")
    vals = [-surface_integrate(r.quadrature, r.du) for r in recs]
    result = (4.0 * vals[1] - vals[0]) / 3.0
    scale = max(np.max(np.abs(result)), np.max(np.abs(vals[0])), 1e-300)
    if rtol is not None and np.max(np.abs(vals[1] - vals[0])) / scale > rtol:
        raise ValueError(f"near-static extrapolation disagreement above {rtol}")
    return result


def static_records(source, medium, q, grid=None, omegas=(1e-2, 5e-3)):
    return [elastic_boundary_data(source,
                                  ElasticFrequency.from_omega(om, medium),
                                  medium, q, grid=grid)
            for om in omegas]


def oracle_lattice(source, R, N, m=256, indices=None, project_transverse=False):
    """Independent brute-force Fourier coefficients of an analytic source.

    Midpoint rule over the support box on a 2x-refined grid with one
    Richardson step; all requested indices share the sampled field values.
    """
    d = source.d
    if d == 3:
        m = min(m, 96)
    if indices is None:
        indices = lattice_indices(d, N, include_zero=True)
    lattice = FourierLattice(d, R, N, real_valued=source.real_valued)
    levels = []
    for mm in (m, 2 * m):
        grid = make_box_grid(d, source.rho, mm, source.center)
        pts = grid.nodes()
        vals = source.value(pts) * grid.cell_volume
        level = {}
        for n in indices:
            phase = np.exp(-1j * (np.pi / R) * (pts @ np.asarray(n, dtype=float)))
            level[tuple(n)] = np.sum(vals * phase[:, None], axis=0)
        levels.append(level)
    norm = (2.0 * R) ** d
    for n in indices:
        coef = (4.0 * levels[1][tuple(n)] - levels[0][tuple(n)]) / (3.0 * norm)
        if project_transverse and any(n):
            n_hat = np.asarray(n, float) / math.sqrt(sum(c * c for c in n))
            coef = coef - (n_hat @ coef) * n_hat
        lattice.coefficients[tuple(n)] = coef
    return lattice


def source_l2_norm(source, m=512):
    """L2 norm of the source over its support (equals the U_R norm)."""
    d = source.d
    grid = make_box_grid(d, source.rho, m if d == 2 else min(m, 128),
                         source.center)
    vals = source.value(grid.nodes())
    return math.sqrt(float(grid.cell_volume * np.sum(np.abs(vals) ** 2)))


@dataclass
class ReconstructionReport:
    lattice: FourierLattice
    truth_lattice: FourierLattice
    rel_l2_error: float
    truncation_tail: float
    coefficient_errors: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rel_l2_error < 0 or self.truncation_tail < 0:
            raise ValueError("errors must be nonnegative")


def truncation_tail(source, truth_lattice, N, l2_norm=None):
    """Relative L2 norm of the part of the source beyond the lattice band,
    via Parseval: ||f||^2 - (2R)^d sum_{|n| <= N} |f_hat_n|^2."""
    l2 = l2_norm if l2_norm is not None else source_l2_norm(source)
    R = truth_lattice.half_width
    inband = sum(float(np.sum(np.abs(v) ** 2))
                 for n, v in truth_lattice.coefficients.items()
                 if sum(c * c for c in n) <= N * N)
    tail_sq = max(l2 ** 2 - (2.0 * R) ** truth_lattice.d * inband, 0.0)
    return math.sqrt(tail_sq) / l2


def reconstruct(lattice, grid, truth, truth_lattice=None, truth_values=None,
                l2_norm=None):
    """Fourier synthesis of the recovered lattice and its error report.

    The error is the relative L2 distance on U_R between the synthesis and
    the truth samples (descriptor values by default, or `truth_values` for an
    alternative ground truth such as the radiating part of a current).
    """
    pts = grid.nodes()
    synth = fourier_synthesize(lattice, pts).values
    if truth_values is None:
        truth_values = truth.value(pts)
    num = math.sqrt(float(grid.cell_volume * np.sum(np.abs(synth - truth_values) ** 2)))
    den = math.sqrt(float(grid.cell_volume * np.sum(np.abs(truth_values) ** 2)))
    rel = num / den if den > 0 else (1.0 if lattice.coefficients else 0.0)
    if truth_lattice is None:
        truth_lattice = oracle_lattice(truth, lattice.half_width, lattice.N)
    tail = truncation_tail(truth, truth_lattice, lattice.N, l2_norm=l2_norm)
    coeff_errors = {}
    for n, v in lattice.coefficients.items():
        ref = truth_lattice.coefficients.get(n)
        if ref is not None:
            coeff_errors[n] = float(np.linalg.norm(v - ref))
    return ReconstructionReport(lattice, truth_lattice, rel, tail, coeff_errors)


@dataclass(frozen=True)
class EpsilonSummary:
    kind: str               # 'eps1' .. 'eps6'
    value: float
    bandwidth: float        # K (continuous band) or N (lattice)
    frequencies: tuple

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("band-energy value must be nonnegative")


def epsilon_summary(records, kind, bandwidth, d=2, medium=None):
    """Band-energy data functionals over a family of boundary records.

    eps1: (integral over (0, K] of omega^{d-1} ||u||^2 d omega)^{1/2}
    eps2: (sum over integer n <= N of p- and s-record discrete norms)^{1/2}
    eps3: sup of ||u(., omega)|| over the low band (0, pi/(c_p R)]
    eps4: (integral of kappa^2 ||E x nu||^2 d kappa)^{1/2}
    eps5: (sum over n <= N of EM measurement norms)^{1/2}
    eps6: sup of ||E(., kappa)|| over (0, pi/R]

    Sup-type kinds take the max over the sampled records (>= 32 required).
    """
    if kind in ("eps1", "eps4"):
        K = float(bandwidth)
        if kind == "eps1":
            pts = [(r.frequency.omega, elastic_measurement_norm(r, "continuous"))
                   for r in records if 0 < r.frequency.omega <= K]
        else:
            pts = [(r.kappa,
                    float(np.real(surface_integrate(
                        r.quadrature, np.sum(np.abs(r.e_cross_nu) ** 2, axis=1)))))
                   for r in records if 0 < r.kappa <= K]
        if len(pts) < 2:
            raise ValueError("band integral needs at least two records in (0, K]")
        pts.sort()
        w = np.array([p[0] for p in pts])
        v = np.array([p[1] for p in pts])
        integrand = (w ** (d - 1)) * v if kind == "eps1" else (w ** 2) * v
        value = math.sqrt(float(getattr(np, "trapezoid", np.trapz)(integrand, w)))
        freqs = tuple(w)
    elif kind in ("eps2", "eps5"):
        N = int(bandwidth)
        total = 0.0
        freqs = []
        for n in range(1, N + 1):
            if kind == "eps2":
                for wk in ("p", "s"):
                    rec = records[(wk, n * n)]
                    total += elastic_measurement_norm(rec, "discrete")
                    freqs.append(rec.frequency.omega)
            else:
                rec = records[n * n]
                total += em_measurement_norm(rec)
                freqs.append(rec.kappa)
        value = math.sqrt(total)
        freqs = tuple(freqs)
    elif kind in ("eps3", "eps6"):
        if len(records) < 32:
            raise ValueError("sup-type functional needs >= 32 low-band samples")
        if kind == "eps3":
            vals = [(r.frequency.omega,
                     math.sqrt(elastic_measurement_norm(r, "continuous")))
                    for r in records]
        else:
            vals = [(r.kappa, math.sqrt(em_measurement_norm(r))) for r in records]
        vals = [(w, v) for w, v in vals if 0 < w <= bandwidth * (1 + 1e-12)]
        if len(vals) < 32:
            raise ValueError("insufficient coverage of the low band")
        value = max(v for _, v in vals)
        freqs = tuple(w for w, _ in vals)
    else:
        raise ValueError(f"unknown functional kind {kind!r}")
    return EpsilonSummary(kind, value, float(bandwidth), freqs)

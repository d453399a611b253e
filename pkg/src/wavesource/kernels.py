"""Helmholtz fundamental solutions, radial derivatives, and the elastic
low-frequency correction series.

The 2D kernel is (i/4) H0^(1)(kappa r), the 3D kernel exp(i kappa r)/(4 pi r).
All tensor assembly reduces to radial derivatives g', g'', g''' via

    grad g   = g'(r) e,                      e = (x - y)/r,
    hess g   = g''(r) e e^T + (g'(r)/r)(I - e e^T).

The elastic Green's tensor needs psi = omega^{-2} (g_{kappa_s} - g_{kappa_p});
for small kappa_s r the direct difference cancels catastrophically under the
omega^{-2} amplification, so psi', psi'', psi''' are summed from power series
whose omega -> 0 behavior is explicit (the constant-in-x divergent part of psi
never enters, only its radial derivatives do).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .bessel import EULER_GAMMA, hankel1

SERIES_SWITCH = 1.0      # use the series branch when kappa_s * r < this
SERIES_WARN = 6.0        # series requested beyond here: allowed but warned


@dataclass(frozen=True)
class KernelEval:
    value: complex
    gradient_x: np.ndarray
    hessian_x: np.ndarray


def radial_kernel(d, kappa, r):
    """Fundamental solution g and radial derivatives (g, g', g'', g''').

    Vectorized over r (> 0). d=3 admits kappa = 0 (static kernel).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radial kernel requires |x - y| > 0")
    if d == 3:
        e = np.exp(1j * kappa * r)
        kr = kappa * r
        g0 = e / (4.0 * np.pi * r)
        g1 = e * (1j * kr - 1.0) / (4.0 * np.pi * r ** 2)
        g2 = e * (-kr ** 2 - 2j * kr + 2.0) / (4.0 * np.pi * r ** 3)
        g3 = e * (-1j * kr ** 3 + 3.0 * kr ** 2 + 6j * kr - 6.0) / (4.0 * np.pi * r ** 4)
        return g0, g1, g2, g3
    if d == 2:
        if kappa <= 0:
            raise ValueError("2D kernel requires kappa > 0")
        z = kappa * r
        h0 = hankel1(0, z)
        h1 = hankel1(1, z)
        g0 = 0.25j * h0
        g1 = -0.25j * kappa * h1
        g2 = -0.25j * kappa ** 2 * (h0 - h1 / z)
        g3 = -0.25j * kappa ** 3 * (-h1 - h0 / z + 2.0 * h1 / z ** 2)
        return g0, g1, g2, g3
    raise ValueError(f"dimension must be 2 or 3, got {d}")


def _separation(x, y):
    diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    r = float(np.linalg.norm(diff))
    if r == 0.0:
        raise ValueError("coincident evaluation points")
    return diff / r, r


def fundamental_solution(d, x, y, kappa):
    """g_d(x, y; kappa), the outgoing Helmholtz fundamental solution."""
    _, r = _separation(x, y)
    g0, *_ = radial_kernel(d, kappa, np.array([r]))
    return complex(g0[0])


def fundamental_derivatives(d, x, y, kappa):
    """Value, x-gradient and x-hessian of g_d via the radial chain rule."""
    e, r = _separation(x, y)
    g0, g1, g2, _ = radial_kernel(d, kappa, np.array([r]))
    g0, g1, g2 = complex(g0[0]), complex(g1[0]), complex(g2[0])
    eye = np.eye(d)
    ee = np.outer(e, e)
    grad = g1 * e
    hess = g2 * ee + (g1 / r) * (eye - ee)
    return KernelEval(g0, grad, hess)


def _correction_series_3d(omega, c_s, c_p, r):
    """psi', psi'', psi''' from the entire series of (e^{i c omega r})/(4 pi r)."""
    zmax = float(np.max(c_s * abs(omega) * r))
    K = 30 + int(3.0 * zmax)
    p1 = np.zeros(r.shape, dtype=complex)
    p2 = np.zeros(r.shape, dtype=complex)
    p3 = np.zeros(r.shape, dtype=complex)
    fact = 2.0  # k! running value, starting at k=2
    for k in range(2, K + 1):
        coef = (1j ** k) * (c_s ** k - c_p ** k) * omega ** (k - 2) / (4.0 * np.pi * fact)
        p1 += coef * (k - 1) * r ** (k - 2)
        if k >= 3:
            p2 += coef * (k - 1) * (k - 2) * r ** (k - 3)
        if k >= 4:
            p3 += coef * (k - 1) * (k - 2) * (k - 3) * r ** (k - 4)
        fact *= k + 1
    return p1, p2, p3


def _harmonic(k):
    return np.sum(1.0 / np.arange(1, k + 1)) if k else 0.0


def _correction_series_2d(omega, c_s, c_p, r):
    """Series branch in 2D, from the J0/Y0 ascending expansions.

    psi (mod additive constants) = sum_k (-1)^k omega^{2k-2} / (4^k k!^2)
        * (alpha_k r^{2k} + beta_k r^{2k} log r).
    """
    if omega <= 0:
        raise ValueError("2D correction series requires omega > 0 (log divergence)")
    zmax = float(np.max(c_s * omega * r))
    K = 25 + int(2.0 * zmax)
    log_om = np.log(omega)
    cs_ln = np.log(0.5 * c_s) + EULER_GAMMA
    cp_ln = np.log(0.5 * c_p) + EULER_GAMMA
    logr = np.log(r)
    p1 = np.zeros(r.shape, dtype=complex)
    p2 = np.zeros(r.shape, dtype=complex)
    p3 = np.zeros(r.shape, dtype=complex)
    fact = 1.0  # k!
    for k in range(1, K + 1):
        fact *= k
        dc = c_s ** (2 * k) - c_p ** (2 * k)
        bk = c_s ** (2 * k) * cs_ln - c_p ** (2 * k) * cp_ln
        alpha = dc * (0.25j - (log_om - _harmonic(k)) / (2.0 * np.pi)) - bk / (2.0 * np.pi)
        beta = -dc / (2.0 * np.pi)
        common = (-1.0) ** k * omega ** (2 * k - 2) / (4.0 ** k * fact ** 2)
        n = 2 * k
        rn1 = r ** (n - 1)
        rn2 = r ** (n - 2)
        rn3 = r ** (n - 3)
        p1 += common * (alpha * n * rn1 + beta * (n * logr + 1.0) * rn1)
        p2 += common * (alpha * n * (n - 1) * rn2
                        + beta * (n * (n - 1) * logr + 2 * n - 1) * rn2)
        p3 += common * (alpha * n * (n - 1) * (n - 2) * rn3
                        + beta * (n * (n - 1) * (n - 2) * logr
                                  + 3 * n * n - 6 * n + 2) * rn3)
    return p1, p2, p3


def correction_derivatives(d, omega, c_s, c_p, r, force_series=False):
    """psi', psi'', psi''' for psi = omega^{-2}(g_{kappa_s} - g_{kappa_p}).

    Elementwise branch switch: series below kappa_s r = SERIES_SWITCH,
    direct kernel difference above. Vectorized over r.
    """
    r = np.asarray(r, dtype=float)
    out = [np.empty(r.shape, dtype=complex) for _ in range(3)]
    kappa_s = c_s * omega
    lo = (kappa_s * r < SERIES_SWITCH) | np.full(r.shape, bool(force_series))
    if np.any(lo):
        series = _correction_series_3d if d == 3 else _correction_series_2d
        for dst, src in zip(out, series(omega, c_s, c_p, r[lo])):
            dst[lo] = src
    hi = ~lo
    if np.any(hi):
        rs = r[hi]
        _, s1, s2, s3 = radial_kernel(d, c_s * omega, rs)
        _, q1, q2, q3 = radial_kernel(d, c_p * omega, rs)
        w2 = omega ** 2
        out[0][hi] = (s1 - q1) / w2
        out[1][hi] = (s2 - q2) / w2
        out[2][hi] = (s3 - q3) / w2
    return out


def hessian_from_radial(p1, p2, e, r):
    """hess phi = phi'' e e^T + (phi'/r)(I - e e^T) for radial phi, batched.

    p1, p2, r: (...,) arrays; e: (..., d). Returns (..., d, d).
    """
    d = e.shape[-1]
    eye = np.eye(d)
    ee = e[..., :, None] * e[..., None, :]
    a = (p2 - p1 / r)[..., None, None]
    b = (p1 / r)[..., None, None]
    return a * ee + b * eye


def tensor_correction_series(d, x, y, kappa_s, kappa_p, omega, speeds=None):
    """omega^{-2} grad grad^T (g(kappa_s) - g(kappa_p)) by its power series.

    `speeds=(c_s, c_p)` permits the exact omega = 0 evaluation in 3D, where
    the limit is -(c_s^2 - c_p^2)/(8 pi) * grad grad^T |x - y|.
    """
    e, r = _separation(x, y)
    if speeds is not None:
        c_s, c_p = speeds
    else:
        if omega == 0:
            raise ValueError("omega = 0 needs explicit speeds (kappa/omega is 0/0)")
        c_s, c_p = kappa_s / omega, kappa_p / omega
    if c_s == c_p:
        return np.zeros((d, d), dtype=complex)
    if c_s * omega * r > SERIES_WARN:
        warnings.warn(f"correction series at kappa_s r = {c_s * omega * r:.2f} "
                      "is outside its practical convergence region")
    series = _correction_series_3d if d == 3 else _correction_series_2d
    p1, p2, _ = series(omega, c_s, c_p, np.array([r]))
    return hessian_from_radial(p1, p2, e[None, :], np.array([r]))[0]

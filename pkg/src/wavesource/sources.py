"""Analytic compactly supported sources with closed-form derivatives.

Every test source is built from the smooth bump profile

    b(x) = exp(1 - 1/(1 - |x - c|^2 / rho^2))   for |x - c| < rho, else 0,

times low-order polynomials. The profile is infinitely smooth, vanishes
identically outside its support ball, and all derivatives are available in
closed form, which the kernel-side traction and curl evaluations rely on.
"""

from dataclasses import dataclass, field

import numpy as np

# keep clear of the removable 0 * inf at the support edge
_EDGE = 1.0 - 1e-12


def _bump_radial(s):
    """w(s) = exp(1 - 1/(1-s)) and its first three s-derivatives, s = r^2/rho^2."""
    w = np.zeros_like(s)
    w1 = np.zeros_like(s)
    w2 = np.zeros_like(s)
    w3 = np.zeros_like(s)
    inside = s < _EDGE
    if np.any(inside):
        si = s[inside]
        q = 1.0 / (1.0 - si)
        wi = np.exp(1.0 - q)
        w[inside] = wi
        w1[inside] = -wi * q ** 2
        w2[inside] = wi * (q ** 4 - 2.0 * q ** 3)
        w3[inside] = wi * (-q ** 6 + 6.0 * q ** 5 - 6.0 * q ** 4)
    return w, w1, w2, w3


def _poly_eval(x, terms, deriv=()):
    """Evaluate sum of monomials c * prod x_i^{a_i}, differentiated along `deriv`."""
    out = np.zeros(x.shape[0])
    for coeff, expo in terms:
        expo = list(expo)
        c = coeff
        ok = True
        for ax in deriv:
            if expo[ax] == 0:
                ok = False
                break
            c *= expo[ax]
            expo[ax] -= 1
        if not ok:
            continue
        term = np.full(x.shape[0], c)
        for ax, a in enumerate(expo):
            if a:
                term = term * x[:, ax] ** a
        out += term
    return out


class BumpPoly:
    """Scalar field poly(x - c) * bump(x - c), with derivatives through order 3.

    terms: list of (coefficient, exponent tuple) describing the polynomial in
    the centered coordinates.
    """

    def __init__(self, d, rho, center=None, terms=((1.0, None),)):
        self.d = d
        self.rho = float(rho)
        self.center = np.zeros(d) if center is None else np.asarray(center, float)
        self.terms = [(c, tuple(e) if e is not None else (0,) * d)
                      for c, e in terms]

    def _parts(self, x, order):
        x = np.asarray(x, dtype=float)
        z = x - self.center
        s = np.sum(z * z, axis=-1) / self.rho ** 2
        w = _bump_radial(s)
        si = 2.0 * z / self.rho ** 2                 # (n, d): ds/dx
        sij = 2.0 / self.rho ** 2                    # d2s/dx2 = sij * I
        return z, w, si, sij

    def value(self, x):
        x = np.asarray(x, dtype=float)
        z, (w, *_), _, _ = self._parts(x, 0)
        return _poly_eval(z, self.terms) * w

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        z, (w, w1, *_), si, _ = self._parts(x, 1)
        p = _poly_eval(z, self.terms)
        g = (w1 * p)[:, None] * si
        for a in range(self.d):
            g[:, a] += w * _poly_eval(z, self.terms, (a,))
        return g

    def hessian(self, x):
        x = np.asarray(x, dtype=float)
        z, (w, w1, w2, _), si, sij = self._parts(x, 2)
        n = x.shape[0]
        d = self.d
        p = _poly_eval(z, self.terms)
        pa = np.stack([_poly_eval(z, self.terms, (a,)) for a in range(d)], axis=1)
        h = np.zeros((n, d, d))
        eye = np.eye(d)
        for a in range(d):
            for b in range(a, d):
                pab = _poly_eval(z, self.terms, (a, b))
                # d_ab (p w) = p_ab w + p_a w_b + p_b w_a + p w_ab
                hab = (pab * w
                       + pa[:, a] * w1 * si[:, b]
                       + pa[:, b] * w1 * si[:, a]
                       + p * (w2 * si[:, a] * si[:, b] + w1 * sij * eye[a, b]))
                h[:, a, b] = hab
                h[:, b, a] = hab
        return h

    def third(self, x):
        x = np.asarray(x, dtype=float)
        z, (w, w1, w2, w3), si, sij = self._parts(x, 3)
        n = x.shape[0]
        d = self.d
        eye = np.eye(d)
        p = _poly_eval(z, self.terms)
        pa = {a: _poly_eval(z, self.terms, (a,)) for a in range(d)}
        pab = {(a, b): _poly_eval(z, self.terms, (a, b))
               for a in range(d) for b in range(d)}
        out = np.zeros((n, d, d, d))
        # derivatives of the bump factor
        wa = lambda a: w1 * si[:, a]
        wab = lambda a, b: w2 * si[:, a] * si[:, b] + w1 * sij * eye[a, b]
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    wabc = (w3 * si[:, a] * si[:, b] * si[:, c]
                            + w2 * sij * (eye[a, b] * si[:, c]
                                          + eye[a, c] * si[:, b]
                                          + eye[b, c] * si[:, a]))
                    pabc = _poly_eval(z, self.terms, (a, b, c))
                    out[:, a, b, c] = (pabc * w
                                       + pab[(a, b)] * wa(c)
                                       + pab[(a, c)] * wa(b)
                                       + pab[(b, c)] * wa(a)
                                       + pa[a] * wab(b, c)
                                       + pa[b] * wab(a, c)
                                       + pa[c] * wab(a, b)
                                       + p * wabc)
        return out


class DerivedComponent:
    """Partial derivative of a BumpPoly along one axis, as a component field."""

    def __init__(self, base, axis):
        self.base = base
        self.axis = axis
        self.d = base.d

    def value(self, x):
        return self.base.gradient(x)[:, self.axis]

    def gradient(self, x):
        return self.base.hessian(x)[:, :, self.axis]

    def hessian(self, x):
        return self.base.third(x)[:, :, :, self.axis]


@dataclass
class VectorSource:
    """Compactly supported analytic vector source (elastic f or current J).

    components: one scalar field per spatial dimension, each exposing
    value/gradient (and hessian where higher derivatives are needed).
    """
    d: int
    rho: float
    components: tuple
    center: np.ndarray = field(default_factory=lambda: np.zeros(0))
    real_valued: bool = True
    zero_mean: bool = False
    name: str = "source"

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        if c.size == 0:
            c = np.zeros(self.d)
        self.center = c

    @property
    def halfwidth(self):
        """Half-width of the axis-aligned box bounding the support ball."""
        return self.rho

    def support_distance_to(self, R):
        return R - (np.linalg.norm(self.center) + self.rho)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return np.stack([c.value(x) for c in self.components], axis=-1)

    def component_gradients(self, x):
        """(n, d, d) array: [:, i, j] = d_j (component_i)."""
        x = np.asarray(x, dtype=float)
        return np.stack([c.gradient(x) for c in self.components], axis=1)

    def divergence(self, x):
        g = self.component_gradients(x)
        return np.trace(g, axis1=1, axis2=2)

    def curl(self, x):
        """Closed-form curl: scalar for d=2, vector for d=3."""
        g = self.component_gradients(x)
        if self.d == 2:
            return g[:, 1, 0] - g[:, 0, 1]
        return np.stack([g[:, 2, 1] - g[:, 1, 2],
                         g[:, 0, 2] - g[:, 2, 0],
                         g[:, 1, 0] - g[:, 0, 1]], axis=-1)

    def moment(self, m=256):
        """Numerical integral of the source over its support box."""
        from .geometry import make_box_grid
        grid = make_box_grid(self.d, self.rho, m if self.d == 2 else min(m, 96),
                             self.center)
        vals = self.value(grid.nodes())
        return grid.cell_volume * np.sum(vals, axis=0)


def scaled(source, alpha):
    """Source with every component multiplied by alpha."""
    comps = []
    for c in source.components:
        cc = BumpPoly(c.d, c.rho, c.center, [(alpha * co, e) for co, e in c.terms])
        comps.append(cc)
    return VectorSource(source.d, source.rho, tuple(comps), source.center,
                        source.real_valued, source.zero_mean and alpha != 0,
                        source.name)


def canonical_bump_source(d, rho=0.42, center=None, amplitude=1.0):
    """Standard test source: first component a plain bump, the others odd
    bump-times-coordinate profiles (zero mean)."""
    center = np.zeros(d) if center is None else np.asarray(center, float)
    comps = [BumpPoly(d, rho, center, [(amplitude, None)])]
    for ax in range(1, d):
        e = [0] * d
        e[ax - 1] = 1
        comps.append(BumpPoly(d, rho, center, [(amplitude / rho, tuple(e))]))
    return VectorSource(d, rho, tuple(comps), center, True, False,
                        "canonical_bump")


def narrow_moment_source(d, rho=0.05, center=None):
    """Near-point source: same bump in every component, unit-normalized later
    by the caller via .moment()."""
    center = np.zeros(d) if center is None else np.asarray(center, float)
    comps = tuple(BumpPoly(d, rho, center) for _ in range(d))
    return VectorSource(d, rho, comps, center, True, False, "narrow_bump")


def gradient_current(rho=0.4, center=None):
    """Curl-free 3D current J = grad(bump): analytic curl is identically zero."""
    center = np.zeros(3) if center is None else np.asarray(center, float)
    base = BumpPoly(3, rho, center)
    comps = tuple(DerivedComponent(base, ax) for ax in range(3))
    return VectorSource(3, rho, comps, center, True, True, "gradient_current")


SOURCE_REGISTRY = {
    "canonical_bump": canonical_bump_source,
    "narrow_bump": narrow_moment_source,
}


def make_source(name, d, **params):
    if name not in SOURCE_REGISTRY:
        raise ValueError(f"unknown source {name!r}; have {sorted(SOURCE_REGISTRY)}")
    return SOURCE_REGISTRY[name](d, **params)

#!/usr/bin/env python3
"""Measure the high-frequency decay of the boundary energy of a radiated
elastic field and fit its log-log slope.

For a smooth compactly supported source the weighted boundary energy
omega^{d-1} ||u(., omega)||^2 on the measurement circle decays faster than
any fixed power of omega; the fitted slope quantifies how much of that decay
the discretization resolves.

Usage:
    python3 scripts/tail_decay.py [--omega-min 10] [--omega-max 40]
        [--points 8] [--out out/tail_decay.png]
"""

import argparse
import sys

import numpy as np

from wavesource.geometry import (make_surface_quadrature, make_box_grid,
                                 surface_integrate)
from wavesource.sources import canonical_bump_source
from wavesource.elastic import ElasticMedium, ElasticFrequency, elastic_fields


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--omega-min", type=float, default=10.0)
    parser.add_argument("--omega-max", type=float, default=40.0)
    parser.add_argument("--points", type=int, default=8)
    parser.add_argument("--volume", type=int, default=160,
                        help="source-grid points per axis")
    parser.add_argument("--out", default="out/tail_decay.png")
    args = parser.parse_args(argv)

    medium = ElasticMedium(1.0, 1.0)
    src = canonical_bump_source(2)
    q = make_surface_quadrature(2, 1.0, 256)
    vol = make_box_grid(2, src.rho, args.volume, src.center)
    omegas = np.geomspace(args.omega_min, args.omega_max, args.points)
    weighted = []
    for om in omegas:
        freq = ElasticFrequency.from_omega(om, medium)
        u, _ = elastic_fields(q.nodes, src, freq, medium, grid=vol)
        norm_sq = float(np.real(surface_integrate(
            q, np.sum(np.abs(u) ** 2, axis=1))))
        weighted.append(om * norm_sq)
        print(f"omega = {om:8.3f}   omega * ||u||^2 = {weighted[-1]:.6e}")
    slope = np.polyfit(np.log(omegas), np.log(weighted), 1)[0]
    print(f"log-log slope: {slope:.3f}")

    import pathlib
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots()
    ax.loglog(omegas, weighted, marker="o")
    ax.set_xlabel("frequency omega")
    ax.set_ylabel("omega * boundary energy")
    ax.set_title(f"fitted slope {slope:.2f}")
    pathlib.Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(args.out, dpi=120)
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

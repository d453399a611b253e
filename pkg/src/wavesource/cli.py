"""Command line entry point.

Subcommands:
  forward   synthesize boundary records at the probing frequencies
  recover   records -> Fourier lattice -> reconstruction report
  sweep     stability sweep over truncation N and noise level (CSV + plots)
  selftest  fast internal consistency checks

Exit codes: 0 success, 2 configuration error, 3 selftest tolerance failure.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .experiment import (ExperimentConfig, ConfigError, load_config,
                         run_stability_sweep, emit_outputs)
from .geometry import make_surface_quadrature, make_box_grid
from .recover import (synthesize_elastic_records, synthesize_em_records,
                      elastic_lattice_recover, em_lattice_recover,
                      static_records, static_mean_recover, oracle_lattice,
                      reconstruct, source_l2_norm)
from .fourier import parseval_check, FourierLattice, fourier_synthesize


def _load(args):
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.resolution:
        for part in args.resolution.split(","):
            key, _, val = part.partition("=")
            if key not in cfg.resolution or not val:
                raise ConfigError(f"resolution: expected key=int with key in "
                                  f"{sorted(cfg.resolution)}, got {part!r}")
            cfg.resolution[key] = int(val)
    return cfg


def _setup(cfg):
    source = cfg.build_source()
    q = make_surface_quadrature(cfg.dim, cfg.R, cfg.resolution["surface"])
    vol = make_box_grid(cfg.dim, source.rho, cfg.resolution["volume"],
                        source.center)
    return source, q, vol


def _synthesize(cfg, n_max):
    source, q, vol = _setup(cfg)
    if cfg.physics == "em":
        return source, q, vol, synthesize_em_records(source, cfg.R, q, n_max,
                                                     grid=vol)
    medium = cfg.build_medium()
    return source, q, vol, synthesize_elastic_records(source, medium, cfg.R,
                                                      q, n_max, grid=vol)


def _records_npz(cfg, records, path):
    arrays = {}
    index = []
    for key in sorted(records):
        if cfg.physics == "em":
            rec, nsq, kind = records[key], key, "em"
            arrays[f"em_{nsq}_a"] = rec.e_cross_nu
            arrays[f"em_{nsq}_b"] = rec.h_cross_nu
            freq = rec.kappa
        else:
            kind, nsq = key
            rec = records[key]
            arrays[f"{kind}_{nsq}_a"] = rec.u
            arrays[f"{kind}_{nsq}_b"] = rec.du
            freq = rec.frequency.omega
        index.append((kind, nsq, freq))
    arrays["index_kind"] = np.array([i[0] for i in index])
    arrays["index_nsq"] = np.array([i[1] for i in index], dtype=int)
    arrays["index_freq"] = np.array([i[2] for i in index])
    np.savez_compressed(path, **arrays)
    return index


def _records_from_npz(cfg, q, path):
    from .elastic import ElasticBoundaryRecord, lattice_frequency
    from .maxwell import EMBoundaryRecord
    data = np.load(path)
    records = {}
    for kind, nsq in zip(data["index_kind"], data["index_nsq"]):
        kind, nsq = str(kind), int(nsq)
        a = data[f"{kind}_{nsq}_a"]
        b = data[f"{kind}_{nsq}_b"]
        if a.shape[0] != q.nodes.shape[0]:
            raise ConfigError("records: node count does not match the "
                              "configured surface resolution")
        if kind == "em":
            records[nsq] = EMBoundaryRecord(math.sqrt(nsq) * np.pi / cfg.R,
                                            q, a, b, shell=math.sqrt(nsq))
        else:
            freq = lattice_frequency(kind, math.sqrt(nsq), cfg.build_medium(),
                                     cfg.R)
            records[(kind, nsq)] = ElasticBoundaryRecord(
                freq, q, a, b, shell=math.sqrt(nsq), wave_kind=kind)
    return records


def cmd_forward(args):
    cfg = _load(args)
    n_max = max(cfg.N)
    _, _, _, records = _synthesize(cfg, n_max)
    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    index = _records_npz(cfg, records, out / "records.npz")
    lines = ["kind,nsq,frequency"]
    lines += [f"{k},{n},{f:.17g}" for k, n, f in index]
    (out / "records_index.csv").write_text("\n".join(lines) + "\n")
    print(f"wrote {len(index)} boundary records to {out / 'records.npz'}")
    return 0


def cmd_recover(args):
    cfg = _load(args)
    n_max = max(cfg.N)
    source, q, vol = _setup(cfg)
    if args.records:
        records = _records_from_npz(cfg, q, args.records)
    elif cfg.physics == "em":
        records = synthesize_em_records(source, cfg.R, q, n_max, grid=vol)
    else:
        records = synthesize_elastic_records(source, cfg.build_medium(),
                                             cfg.R, q, n_max, grid=vol)
    eval_grid = make_box_grid(cfg.dim, cfg.R, cfg.resolution["eval"])
    if cfg.physics == "em":
        lat = em_lattice_recover(records, cfg.R, n_max)
        truth = oracle_lattice(source, cfg.R, n_max,
                               m=cfg.resolution["oracle"],
                               project_transverse=True)
        truth.coefficients.pop((0, 0, 0), None)
        truth_values = fourier_synthesize(truth, eval_grid.nodes()).values
        l2 = math.sqrt((2.0 * cfg.R) ** 3 * truth.energy())
        rep = reconstruct(lat, eval_grid, source, truth_lattice=truth,
                          truth_values=truth_values, l2_norm=l2)
    else:
        medium = cfg.build_medium()
        mean = static_mean_recover(static_records(source, medium, q, grid=vol))
        lat = elastic_lattice_recover(records, medium, cfg.R, n_max,
                                      d=cfg.dim, static_mean=mean)
        truth = oracle_lattice(source, cfg.R, n_max,
                               m=cfg.resolution["oracle"])
        rep = reconstruct(lat, eval_grid, source, truth_lattice=truth,
                          l2_norm=source_l2_norm(source))
    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    lines = ["index,component,re,im"]
    for n in sorted(lat.coefficients):
        for c, v in enumerate(lat.coefficients[n]):
            lines.append(f"\"{' '.join(map(str, n))}\",{c},"
                         f"{v.real:.17g},{v.imag:.17g}")
    (out / "lattice.csv").write_text("\n".join(lines) + "\n")
    summary = {"physics": cfg.physics, "N": n_max,
               "rel_l2_error": rep.rel_l2_error,
               "truncation_tail": rep.truncation_tail,
               "worst_coefficient_error": max(rep.coefficient_errors.values())}
    (out / "report.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"recovered N={n_max}: rel L2 error {rep.rel_l2_error:.6g}, "
          f"truncation tail {rep.truncation_tail:.6g}")
    return 0


def cmd_sweep(args):
    cfg = _load(args)
    report = run_stability_sweep(cfg)
    paths = emit_outputs(report, args.out or "out")
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_selftest(args):
    from .bessel import bessel_jy
    from .sources import canonical_bump_source
    from .elastic import ElasticMedium, ElasticFrequency, plane_wave_residual
    from .recover import (elastic_probe, ProbeSpec, elastic_boundary_data,
                          fourier_synthesize)
    from .fourier import lattice_indices

    failures = 0

    def check(name, err, tol):
        nonlocal failures
        ok = err <= tol
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: err={err:.3e} tol={tol:.0e}")

    xs = np.array([0.3, 1.0, 5.0, 11.9, 12.1, 40.0])
    j0, y0 = bessel_jy(0, xs)
    j1, y1 = bessel_jy(1, xs)
    wron = j1 * y0 - j0 * y1 - 2.0 / (np.pi * xs)
    check("cylinder function Wronskian", float(np.max(np.abs(wron))), 1e-10)

    q2 = make_surface_quadrature(2, 1.0, 64)
    q3 = make_surface_quadrature(3, 1.0, (12, 24))
    from .geometry import surface_integrate
    area2 = float(surface_integrate(q2, np.ones(q2.nodes.shape[0])))
    area3 = float(surface_integrate(q3, np.ones(q3.nodes.shape[0])))
    err = max(abs(area2 - 2 * np.pi), abs(area3 - 4 * np.pi))
    check("surface quadrature measure", err, 1e-10)

    rng = np.random.default_rng(7)
    lat = FourierLattice(2, 1.0, 3, real_valued=False)
    for n in lattice_indices(2, 3, include_zero=True):
        lat.set(n, rng.normal(size=2) + 1j * rng.normal(size=2))
    grid = make_box_grid(2, 1.0, 16)
    vals = fourier_synthesize(lat, grid.nodes()).values
    lhs, rhs = parseval_check(grid, vals, lat)
    check("band-limited energy identity", abs(lhs - rhs) / rhs, 1e-10)

    med = ElasticMedium(1.0, 1.0)
    freq = ElasticFrequency.from_omega(np.pi, med)
    err = max(abs(plane_wave_residual("p", freq, med)),
              abs(plane_wave_residual("s", freq, med)))
    check("plane-wave Navier residual", err, 1e-12)

    src = canonical_bump_source(2)
    q = make_surface_quadrature(2, 1.0, 96)
    vol = make_box_grid(2, src.rho, 32, src.center)
    from .elastic import lattice_frequency
    fq = lattice_frequency("p", 1.0, med, 1.0)
    rec = elastic_boundary_data(src, fq, med, q, grid=vol, shell=1.0,
                                wave_kind="p")
    n_hat = np.array([1.0, 0.0])
    probe = elastic_probe(rec, ProbeSpec("p", n_hat, n_hat, fq.kappa_p), med)
    truth = oracle_lattice(src, 1.0, 1, m=64, indices=[(1, 0)])
    ref = complex(truth.coefficients[(1, 0)] @ n_hat) * 4.0
    check("end-to-end probe vs quadrature oracle",
          abs(probe - ref) / max(abs(ref), 1e-12), 1e-2)

    return 3 if failures else 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="wavesource",
        description="Forward simulation and multi-frequency source recovery "
                    "for elastic and electromagnetic waves.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("forward", cmd_forward), ("recover", cmd_recover),
                     ("sweep", cmd_sweep), ("selftest", cmd_selftest)):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON experiment configuration")
        p.add_argument("--out", help="output directory (default: out)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--resolution",
                       help="override resolutions, e.g. surface=128,volume=48")
        if name == "recover":
            p.add_argument("--records",
                           help="records.npz from a previous forward run")
        p.set_defaults(fn=fn)
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

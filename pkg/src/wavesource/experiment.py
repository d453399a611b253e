"""Experiment orchestration: configuration, noise injection, stability
sweeps over bandwidth and noise level, CSV and plot emission.

The CSV schema is the contract:

    physics,dim,N,noise_level,seed,epsilon_kind,epsilon,recon_rel_l2,
    truncation_tail,wall_time_s

with floats printed to 17 significant digits. Wall time is recorded as 0.0
unless `record_timing` is set, so that identical config + seed produces
byte-identical CSV output (timing is inherently nondeterministic).
"""

import copy
import json
import math
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .geometry import make_surface_quadrature, make_box_grid
from .sources import make_source
from .elastic import (ElasticMedium, ElasticBoundaryRecord,
                      elastic_measurement_norm)
from .maxwell import EMBoundaryRecord
from .recover import (synthesize_elastic_records, synthesize_em_records,
                      elastic_lattice_recover, em_lattice_recover,
                      static_records, static_mean_recover, oracle_lattice,
                      reconstruct, epsilon_summary, source_l2_norm)
from .fourier import fourier_synthesize

CSV_HEADER = ("physics,dim,N,noise_level,seed,epsilon_kind,epsilon,"
              "recon_rel_l2,truncation_tail,wall_time_s")

PHYSICS = ("elastic2d", "elastic3d", "em")

RESOLUTION_PRESETS = {
    "elastic2d": {"surface": 256, "volume": 64, "eval": 64, "oracle": 256},
    "elastic3d": {"surface": (16, 32), "volume": 24, "eval": 16, "oracle": 64},
    "em": {"surface": (16, 32), "volume": 24, "eval": 16, "oracle": 64},
}


class ConfigError(ValueError):
    """Invalid experiment configuration; message names the offending field."""


@dataclass
class ExperimentConfig:
    physics: str = "elastic2d"
    R: float = 1.0
    rhat: float = 0.5
    lame_lambda: float = 1.0
    lame_mu: float = 1.0
    N: list = field(default_factory=lambda: [2, 4, 8])
    noise: list = field(default_factory=lambda: [0.0, 0.01])
    seed: int = 0
    source: dict = field(default_factory=lambda: {"name": "canonical_bump"})
    resolution: dict = field(default_factory=dict)
    epsilon_kind: str = ""
    metadata: dict = field(default_factory=dict)   # a priori bound M, smoothness m
    record_timing: bool = False

    def __post_init__(self):
        if self.physics not in PHYSICS:
            raise ConfigError(f"physics: must be one of {PHYSICS}, got {self.physics!r}")
        if not self.R > 0:
            raise ConfigError("R: must be positive")
        if not 0 < self.rhat < self.R:
            raise ConfigError("rhat: requires 0 < rhat < R")
        if self.physics.startswith("elastic"):
            if not (self.lame_mu > 0 and self.lame_lambda + self.lame_mu > 0):
                raise ConfigError("mu: requires mu > 0 and lambda + mu > 0")
        if not self.N or any(int(n) < 1 for n in self.N):
            raise ConfigError("N: nonempty list of integers >= 1 required")
        self.N = [int(n) for n in self.N]
        if any(lv < 0 for lv in self.noise):
            raise ConfigError("noise: levels must be nonnegative")
        if any(lv > 0 for lv in self.noise) and self.seed is None:
            raise ConfigError("seed: required when any noise level is positive")
        if not self.epsilon_kind:
            self.epsilon_kind = "eps5" if self.physics == "em" else "eps2"
        preset = dict(RESOLUTION_PRESETS[self.physics])
        preset.update(self.resolution)
        if isinstance(preset["surface"], list):
            preset["surface"] = tuple(preset["surface"])
        self.resolution = preset
        src = {"name": "canonical_bump"}
        src.update(self.source)
        src.setdefault("rho", 0.84 * self.rhat)
        self.source = src

    @property
    def dim(self):
        return 3 if self.physics in ("elastic3d", "em") else 2

    def build_source(self):
        params = {k: v for k, v in self.source.items() if k != "name"}
        src = make_source(self.source["name"], self.dim, **params)
        if src.rho > self.rhat:
            raise ConfigError("source: support radius exceeds rhat")
        return src

    def build_medium(self):
        return ElasticMedium(self.lame_lambda, self.lame_mu)


def load_config(path):
    """Parse and validate a JSON experiment configuration."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config file {path}: {exc}") from exc
    return config_from_dict(raw)


def config_from_dict(raw):
    raw = dict(raw)
    rename = {"lambda": "lame_lambda", "mu": "lame_mu"}
    kwargs = {}
    allowed = {"physics", "R", "rhat", "lambda", "mu", "lame_lambda", "lame_mu",
               "N", "noise", "seed", "source", "resolution", "epsilon_kind",
               "metadata", "record_timing"}
    for key, value in raw.items():
        if key not in allowed:
            raise ConfigError(f"{key}: unknown configuration field")
        kwargs[rename.get(key, key)] = value
    return ExperimentConfig(**kwargs)


def save_config(config, path):
    data = asdict(config)
    data["lambda"] = data.pop("lame_lambda")
    data["mu"] = data.pop("lame_mu")
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def _perturb(rng, samples, level):
    rms = math.sqrt(float(np.mean(np.abs(samples) ** 2)))
    sigma = level * rms / math.sqrt(2.0)
    noise = rng.normal(0.0, sigma, samples.shape) \
        + 1j * rng.normal(0.0, sigma, samples.shape)
    return samples + noise


def add_noise(record, level, seed):
    """Record with independent relative complex Gaussian noise on both
    channels; std = level x per-channel RMS. Level 0 returns the record
    unchanged; a fixed seed gives identical output."""
    if level < 0:
        raise ValueError("noise level must be nonnegative")
    if level == 0:
        return record
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    rng = np.random.default_rng(seed)
    if isinstance(record, ElasticBoundaryRecord):
        return ElasticBoundaryRecord(record.frequency, record.quadrature,
                                     _perturb(rng, record.u, level),
                                     _perturb(rng, record.du, level),
                                     shell=record.shell,
                                     wave_kind=record.wave_kind)
    if isinstance(record, EMBoundaryRecord):
        return EMBoundaryRecord(record.kappa, record.quadrature,
                                _perturb(rng, record.e_cross_nu, level),
                                _perturb(rng, record.h_cross_nu, level),
                                shell=record.shell)
    raise TypeError(f"unsupported record type {type(record).__name__}")


def _record_seed(seed, level_idx, key):
    if isinstance(key, tuple):
        kind, nsq = key
        code = {"p": 1, "s": 2, "static": 3}[kind]
    else:
        code, nsq = 4, key
    return np.random.SeedSequence([int(seed), int(level_idx), code, int(nsq)])


@dataclass
class StabilityReport:
    rows: list = field(default_factory=list)
    tail_curve: list = field(default_factory=list)   # (omega, boundary norm^2)
    config: ExperimentConfig = None

    def __post_init__(self):
        for row in self.rows:
            for key in ("epsilon", "recon_rel_l2", "truncation_tail", "wall_time_s"):
                v = row[key]
                if not (math.isfinite(v) and v >= 0):
                    raise ValueError(f"report field {key} must be finite and >= 0")


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def report_to_csv(report):
    lines = [CSV_HEADER]
    for row in report.rows:
        lines.append(",".join([
            row["physics"], str(row["dim"]), str(row["N"]),
            _fmt(row["noise_level"]), str(row["seed"]), row["epsilon_kind"],
            _fmt(row["epsilon"]), _fmt(row["recon_rel_l2"]),
            _fmt(row["truncation_tail"]), _fmt(row["wall_time_s"]),
        ]))
    return "\n".join(lines) + "\n"


def parse_csv(text):
    lines = text.strip().split("\n")
    if lines[0] != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    rows = []
    for line in lines[1:]:
        p = line.split(",")
        rows.append({"physics": p[0], "dim": int(p[1]), "N": int(p[2]),
                     "noise_level": float(p[3]), "seed": int(p[4]),
                     "epsilon_kind": p[5], "epsilon": float(p[6]),
                     "recon_rel_l2": float(p[7]), "truncation_tail": float(p[8]),
                     "wall_time_s": float(p[9])})
    return rows


def _elastic_sweep(config, seed):
    R = config.R
    d = config.dim
    res = config.resolution
    medium = config.build_medium()
    source = config.build_source()
    q = make_surface_quadrature(d, R, res["surface"])
    vol_grid = make_box_grid(d, source.rho, res["volume"], source.center)
    eval_grid = make_box_grid(d, R, res["eval"])
    n_max = max(config.N)
    records = synthesize_elastic_records(source, medium, R, q, n_max,
                                         grid=vol_grid)
    stat_recs = static_records(source, medium, q, grid=vol_grid)
    truth = oracle_lattice(source, R, n_max, m=res["oracle"])
    l2 = source_l2_norm(source)
    tail_curve = sorted((rec.frequency.omega,
                         elastic_measurement_norm(rec, "continuous"))
                        for rec in records.values() if rec.wave_kind == "p")
    rows = []
    for level_idx, level in enumerate(config.noise):
        noisy = {key: add_noise(rec, level, _record_seed(seed, level_idx, key))
                 for key, rec in records.items()}
        noisy_static = [add_noise(r, level, _record_seed(seed, level_idx,
                                                         ("static", i)))
                        for i, r in enumerate(stat_recs)]
        mean = static_mean_recover(noisy_static,
                                   rtol=max(1e-3, 20.0 * level))
        for N in config.N:
            t0 = time.perf_counter()
            lat = elastic_lattice_recover(noisy, medium, R, N, d=d,
                                          static_mean=mean)
            rep = reconstruct(lat, eval_grid, source, truth_lattice=truth,
                              l2_norm=l2)
            eps = epsilon_summary(noisy, config.epsilon_kind, N, d=d)
            dt = time.perf_counter() - t0
            rows.append({"physics": config.physics, "dim": d, "N": N,
                         "noise_level": level, "seed": seed,
                         "epsilon_kind": eps.kind, "epsilon": eps.value,
                         "recon_rel_l2": rep.rel_l2_error,
                         "truncation_tail": rep.truncation_tail,
                         "wall_time_s": dt if config.record_timing else 0.0})
    return StabilityReport(rows, tail_curve, config)


def _em_sweep(config, seed):
    R = config.R
    res = config.resolution
    source = config.build_source()
    q = make_surface_quadrature(3, R, res["surface"])
    vol_grid = make_box_grid(3, source.rho, res["volume"], source.center)
    eval_grid = make_box_grid(3, R, res["eval"])
    n_max = max(config.N)
    records = synthesize_em_records(source, R, q, n_max, grid=vol_grid)
    # ground truth for EM is the radiating (transverse) band-limited part
    truth = oracle_lattice(source, R, n_max, m=res["oracle"],
                           project_transverse=True)
    truth.coefficients.pop((0, 0, 0), None)
    truth_values = fourier_synthesize(truth, eval_grid.nodes()).values
    l2 = math.sqrt((2.0 * R) ** 3 * truth.energy())
    tail_curve = sorted((rec.kappa,
                         float(np.real(np.sum(
                             rec.quadrature.weights
                             * np.sum(np.abs(rec.e_cross_nu) ** 2, axis=1)))))
                        for rec in records.values())
    rows = []
    for level_idx, level in enumerate(config.noise):
        noisy = {key: add_noise(rec, level, _record_seed(seed, level_idx, key))
                 for key, rec in records.items()}
        for N in config.N:
            t0 = time.perf_counter()
            lat = em_lattice_recover(noisy, R, N)
            rep = reconstruct(lat, eval_grid, source, truth_lattice=truth,
                              truth_values=truth_values, l2_norm=l2)
            eps = epsilon_summary(noisy, config.epsilon_kind, N, d=3)
            dt = time.perf_counter() - t0
            rows.append({"physics": config.physics, "dim": 3, "N": N,
                         "noise_level": level, "seed": seed,
                         "epsilon_kind": eps.kind, "epsilon": eps.value,
                         "recon_rel_l2": rep.rel_l2_error,
                         "truncation_tail": rep.truncation_tail,
                         "wall_time_s": dt if config.record_timing else 0.0})
    return StabilityReport(rows, tail_curve, config)


def run_stability_sweep(config, seed=None):
    """Synthesize records at the probing frequencies, recover and reconstruct
    for each (N, noise level), and collect the report rows."""
    seed = config.seed if seed is None else int(seed)
    if config.physics == "em":
        return _em_sweep(config, seed)
    return _elastic_sweep(config, seed)


def emit_outputs(report, out_dir):
    """Write the report CSV, the error-vs-N plot, and the boundary-norm tail
    plot; returns the file paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "stability.csv"
    csv_path.write_bytes(report_to_csv(report).encode())
    paths = [csv_path]

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots()
    levels = sorted({row["noise_level"] for row in report.rows})
    for level in levels:
        pts = sorted((row["N"], row["recon_rel_l2"])
                     for row in report.rows if row["noise_level"] == level)
        ax.loglog([p[0] for p in pts], [max(p[1], 1e-16) for p in pts],
                  marker="o", label=f"noise {level:g}")
    ax.set_xlabel("truncation N")
    ax.set_ylabel("relative L2 reconstruction error")
    ax.legend()
    err_path = out / "error_vs_N.png"
    fig.savefig(err_path, dpi=120)
    plt.close(fig)
    paths.append(err_path)

    if report.tail_curve:
        fig, ax = plt.subplots()
        w = [p[0] for p in report.tail_curve]
        v = [max(p[1], 1e-300) for p in report.tail_curve]
        ax.loglog(w, v, marker=".")
        ax.set_xlabel("frequency")
        ax.set_ylabel("boundary measurement norm^2")
        tail_path = out / "tail.png"
        fig.savefig(tail_path, dpi=120)
        plt.close(fig)
        paths.append(tail_path)
    return paths

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wavesource.geometry import make_surface_quadrature, make_box_grid
from wavesource.sources import canonical_bump_source
from wavesource.elastic import lattice_frequency, elastic_boundary_data
from wavesource.maxwell import em_boundary_data
from wavesource.experiment import (ExperimentConfig, ConfigError, load_config,
                                   save_config, config_from_dict, add_noise,
                                   report_to_csv, parse_csv, CSV_HEADER,
                                   StabilityReport)


def test_defaults():
    cfg = ExperimentConfig()
    assert cfg.physics == "elastic2d"
    assert cfg.N == [2, 4, 8] and cfg.noise == [0.0, 0.01] and cfg.seed == 0
    assert cfg.epsilon_kind == "eps2"
    assert cfg.resolution["surface"] == 256
    assert cfg.source["name"] == "canonical_bump"
    assert ExperimentConfig(physics="em").epsilon_kind == "eps5"


@pytest.mark.parametrize("raw, field", [
    ({"rhat": 1.5}, "rhat"),
    ({"rhat": 1.0}, "rhat"),
    ({"physics": "acoustic"}, "physics"),
    ({"mu": -1.0}, "mu"),
    ({"N": []}, "N"),
    ({"N": [0, 2]}, "N"),
    ({"noise": [-0.1]}, "noise"),
    ({"bandwidth": 3}, "bandwidth"),
])
def test_invalid_configs_name_the_field(raw, field):
    with pytest.raises(ConfigError, match=field):
        config_from_dict(raw)


def test_config_roundtrip(tmp_path):
    cfg = ExperimentConfig(physics="em", N=[1, 3], noise=[0.0],
                           lame_lambda=2.0, seed=7)
    path = tmp_path / "cfg.json"
    save_config(cfg, path)
    again = load_config(path)
    assert again == cfg


def test_config_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad)


def _small_record(medium):
    src = canonical_bump_source(2)
    q = make_surface_quadrature(2, 1.0, 24)
    vol = make_box_grid(2, src.rho, 12, src.center)
    return elastic_boundary_data(src, lattice_frequency("p", 1, medium, 1.0),
                                 medium, q, grid=vol, shell=1.0, wave_kind="p")


def test_noise_level_zero_is_identity(medium):
    rec = _small_record(medium)
    assert add_noise(rec, 0.0, 123) is rec


def test_noise_is_deterministic_and_seed_sensitive(medium):
    rec = _small_record(medium)
    a = add_noise(rec, 0.01, 5)
    b = add_noise(rec, 0.01, 5)
    c = add_noise(rec, 0.01, 6)
    assert np.array_equal(a.u, b.u) and np.array_equal(a.du, b.du)
    assert not np.array_equal(a.u, c.u)
    assert a.frequency == rec.frequency and a.wave_kind == rec.wave_kind


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_noise_magnitude_tracks_the_level(seed):
    # std of the injected noise = level x per-channel RMS; with many samples
    # the empirical ratio concentrates near the level
    rng = np.random.default_rng(99)
    q = make_surface_quadrature(2, 1.0, 512)
    u = rng.normal(size=(512, 2)) + 1j * rng.normal(size=(512, 2))
    from wavesource.elastic import ElasticBoundaryRecord, ElasticFrequency, ElasticMedium
    med = ElasticMedium(1.0, 1.0)
    rec = ElasticBoundaryRecord(ElasticFrequency.from_omega(1.0, med), q, u, u.copy())
    noisy = add_noise(rec, 0.05, seed)
    rms = np.sqrt(np.mean(np.abs(u) ** 2))
    ratio = np.sqrt(np.mean(np.abs(noisy.u - u) ** 2)) / rms / 0.05
    assert 0.8 < ratio < 1.2


def test_noise_on_em_records():
    src = canonical_bump_source(3, rho=0.3)
    q = make_surface_quadrature(3, 1.0, (8, 16))
    vol = make_box_grid(3, src.rho, 12, src.center)
    rec = em_boundary_data(src, np.pi, q, grid=vol, shell=1.0)
    noisy = add_noise(rec, 0.02, 1)
    assert noisy.kappa == rec.kappa
    assert not np.array_equal(noisy.e_cross_nu, rec.e_cross_nu)
    with pytest.raises(ValueError):
        add_noise(rec, -0.1, 1)
    with pytest.raises(TypeError):
        add_noise("not a record", 0.1, 1)


def test_csv_roundtrip_and_header():
    rows = [{"physics": "elastic2d", "dim": 2, "N": 4, "noise_level": 0.01,
             "seed": 3, "epsilon_kind": "eps2", "epsilon": 1.25,
             "recon_rel_l2": 0.17676354893381651, "truncation_tail": 0.2,
             "wall_time_s": 0.0}]
    report = StabilityReport(rows)
    text = report_to_csv(report)
    assert text.splitlines()[0] == CSV_HEADER
    assert CSV_HEADER == ("physics,dim,N,noise_level,seed,epsilon_kind,"
                          "epsilon,recon_rel_l2,truncation_tail,wall_time_s")
    back = parse_csv(text)
    assert back == rows
    # 17 significant digits survive the roundtrip exactly
    assert back[0]["recon_rel_l2"] == rows[0]["recon_rel_l2"]


def test_report_rejects_bad_rows():
    row = {"physics": "elastic2d", "dim": 2, "N": 2, "noise_level": 0.0,
           "seed": 0, "epsilon_kind": "eps2", "epsilon": -1.0,
           "recon_rel_l2": 0.1, "truncation_tail": 0.1, "wall_time_s": 0.0}
    with pytest.raises(ValueError):
        StabilityReport([row])

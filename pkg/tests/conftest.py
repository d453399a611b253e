import numpy as np
import pytest

from wavesource.geometry import make_surface_quadrature, make_box_grid
from wavesource.sources import canonical_bump_source
from wavesource.elastic import ElasticMedium
from wavesource.recover import (synthesize_elastic_records, static_records,
                                oracle_lattice, source_l2_norm)


@pytest.fixture(scope="session")
def medium():
    return ElasticMedium(1.0, 1.0)


@pytest.fixture(scope="session")
def bump2d():
    return canonical_bump_source(2)


@pytest.fixture(scope="session")
def elastic2d_dataset(medium, bump2d):
    """Boundary records up to N = 8 at reference resolution, plus the
    near-static records, the brute-force coefficient lattice, and the source
    norm. Expensive (about two minutes); shared across the acceptance and
    stability tests."""
    src = bump2d
    q = make_surface_quadrature(2, 1.0, 256)
    vol = make_box_grid(2, src.rho, 64, src.center)
    records = synthesize_elastic_records(src, medium, 1.0, q, 8, grid=vol)
    stat = static_records(src, medium, q, grid=vol)
    truth = oracle_lattice(src, 1.0, 8, m=256)
    l2 = source_l2_norm(src)
    return {"source": src, "quad": q, "vol": vol, "records": records,
            "static": stat, "truth": truth, "l2": l2,
            "eval_grid": make_box_grid(2, 1.0, 64)}

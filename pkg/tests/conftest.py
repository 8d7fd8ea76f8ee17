from pathlib import Path

import numpy as np
import pytest

from cpcenter import build_point_set, squared_distance_matrix

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture
def collinear():
    return build_point_set([(0, 0), (1, 0), (3, 0)], name="collinear")


@pytest.fixture
def collinear_dm(collinear):
    return squared_distance_matrix(collinear)


def random_points(m, seed, *, integer=False, span=100.0):
    """Distinct random points; integer grids get deduplicated draws."""
    rng = np.random.default_rng(seed)
    if integer:
        pts = set()
        while len(pts) < m:
            x, y = rng.integers(0, int(span), size=2)
            pts.add((int(x), int(y)))
        return sorted(pts)
    return [tuple(row) for row in rng.uniform(0.0, span, size=(m, 2))]


@pytest.fixture
def rand_instance():
    def make(m, seed, **kw):
        ps = build_point_set(random_points(m, seed, **kw), name=f"rand{m}-{seed}")
        return squared_distance_matrix(ps)

    return make

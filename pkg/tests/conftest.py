import os
import random

import pytest

from fanoscope.fileio import bundled_polytopes
from fanoscope.polytope import LatticePolytope, Polygon


def db_path():
    path = os.environ.get("FANOSCOPE_DB")
    if path and os.path.exists(path):
        return path
    return None


needs_db = pytest.mark.skipif(db_path() is None,
                              reason="reflexive database not supplied "
                                     "(set FANOSCOPE_DB)")


@pytest.fixture(scope="session")
def database():
    from fanoscope.fileio import ingest_database
    return {i: p for i, p in ingest_database(db_path())}


def bundled(name) -> LatticePolytope:
    return LatticePolytope(bundled_polytopes()[name]["vertices"])


def bundled_polygon(name) -> Polygon:
    return Polygon(bundled_polytopes()["polygons"][name])


def random_unimodular3(rng: random.Random):
    """Random element of GL(3, Z) as a product of elementary matrices."""
    from fanoscope.linalg import identity, mat_mul
    m = identity(3)
    for _ in range(8):
        e = identity(3)
        i, j = rng.sample(range(3), 2)
        op = rng.randrange(3)
        if op == 0:
            e[i][j] = rng.randrange(-2, 3)
        elif op == 1:
            e[i][i] = 0
            e[j][j] = 0
            e[i][j] = 1
            e[j][i] = 1
        else:
            e[i][i] = -1
        m = mat_mul(m, e)
    return m


def random_unimodular2(rng: random.Random):
    from fanoscope.linalg import identity, mat_mul
    m = identity(2)
    for _ in range(6):
        e = identity(2)
        if rng.randrange(2):
            e[0][1] = rng.randrange(-2, 3)
        else:
            e[1][0] = rng.randrange(-2, 3)
        if rng.randrange(4) == 0:
            e[0][0] *= -1
        m = mat_mul(m, e)
    return m

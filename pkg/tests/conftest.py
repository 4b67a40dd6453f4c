import numpy as np
import pytest
from hypothesis import strategies as st

import printed as T
from lingconsensus import DecisionMatrix, ScaleConfig, TwoDimULV, load_fixture

SCALE = ScaleConfig(7, 5)

# Column-wise reliability of every printed group matrix, all rounds.
GROUP_RELIABILITY = ((2, 3), (2, 2), (3, 3), (1, 1))

# Cells where the printed inputs disagree with every value derived from them;
# the bundled fixture carries the value on the right.
INPUT_CORRECTIONS = {
    (0, 0, 1): (2, 3, 3, 3),
    (1, 0, 3): (5, 6, 3, 4),
    (2, 3, 2): (4, 5, 3, 4),
}


def matrix(cells, scale=SCALE):
    return DecisionMatrix(cells, scale)


def group_from_first(first, reliability=GROUP_RELIABILITY):
    return matrix([[(a, b, *reliability[j]) for j, (a, b) in enumerate(row)] for row in first])


@pytest.fixture
def scale():
    return SCALE


@pytest.fixture
def supply_chain():
    return load_fixture()


@pytest.fixture
def expert_matrices(supply_chain):
    return list(supply_chain.initial_matrices)


@pytest.fixture
def printed_group():
    return matrix(T.GROUP_R1)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def ulv(l=7, z=5, scale=SCALE):
    """Hypothesis strategy for in-bounds values on ``scale``."""
    first = st.tuples(st.floats(0, l - 1), st.floats(0, l - 1)).map(sorted)
    second = st.tuples(st.floats(0, z - 1), st.floats(0, z - 1)).map(sorted)
    return st.builds(lambda f, s: TwoDimULV(f[0], f[1], s[0], s[1], scale), first, second)


def small_int_ulv(scale=SCALE):
    # integer subscripts keep sums and products exact in floating point
    first = st.tuples(st.integers(0, 6), st.integers(0, 6)).map(sorted)
    second = st.tuples(st.integers(0, 4), st.integers(0, 4)).map(sorted)
    return st.builds(lambda f, s: TwoDimULV(f[0], f[1], s[0], s[1], scale), first, second)


def random_ulv(rng, scale=SCALE, size=None):
    a, b = np.sort(rng.uniform(0, scale.l - 1, size=(2,) if size is None else (size, 2)), axis=-1).T
    c, d = np.sort(rng.uniform(0, scale.z - 1, size=(2,) if size is None else (size, 2)), axis=-1).T
    if size is None:
        return TwoDimULV(float(a), float(b), float(c), float(d), scale)
    return [TwoDimULV(float(a[k]), float(b[k]), float(c[k]), float(d[k]), scale) for k in range(size)]

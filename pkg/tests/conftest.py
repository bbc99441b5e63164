from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polyconvex.linalg import Q
from polyconvex.representation import HPolyhedron

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def H(dim, ineq=(), eq=()):
    return HPolyhedron.from_rows(dim, list(ineq), list(eq))


def rationals(lo=-4, hi=4, max_den=3):
    return st.builds(lambda p, q: Fraction(p, q), st.integers(lo, hi), st.integers(1, max_den))


def matrices(rows=(1, 4), cols=(1, 4)):
    return st.integers(*cols).flatmap(
        lambda n: st.lists(st.lists(rationals(), min_size=n, max_size=n),
                           min_size=rows[0], max_size=rows[1]).map(lambda A: (A, n)))


@pytest.fixture
def square():
    return H(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])


@pytest.fixture
def unit_square():
    return H(2, [((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)])


@pytest.fixture
def half_plane():
    return H(2, [((0, -1), 0)])


@pytest.fixture
def quadrant():
    return H(2, [((-1, 0), 0), ((0, -1), 0)])


@pytest.fixture
def strip():
    return H(2, [((0, 1), 1), ((0, -1), 1)])


@pytest.fixture
def line():
    return H(2, [], [((0, 1), 0)])


def q(*xs):
    return tuple(Q(Fraction(x) if isinstance(x, str) else x) for x in xs)

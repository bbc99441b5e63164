import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import H, q
from polyconvex.errors import DimensionMismatch
from polyconvex.generators import random_general, random_polytope
from polyconvex.linalg import dot
from polyconvex.lp import (Infeasible, Optimal, Unbounded, argmax_face, farkas_certificate,
                           feasible_point, lp_maximize, support_value, verify_outcome)
from polyconvex.polyhedron import brute_force_vertices


def test_bounded_example():
    out = lp_maximize(H(1, [((1,), 1)]), q(1))
    assert isinstance(out, Optimal) and out.value == 1 and out.point == q(1)


def test_unbounded_example():
    P = H(1, [((-1,), 0)])
    out = lp_maximize(P, q(1))
    assert isinstance(out, Unbounded)
    assert out.feasible_point == q(0) and out.improving_ray[0] > 0
    assert verify_outcome(P, q(1), out)


def test_infeasible_example():
    P = H(1, [((1,), 0), ((-1,), -1)])
    out = lp_maximize(P, q(5))
    assert isinstance(out, Infeasible)
    y = out.farkas_certificate
    assert y[0] == y[1] and y[0] > 0
    assert verify_outcome(P, q(5), out)
    assert farkas_certificate(P) is not None and feasible_point(P) is None


def test_feasible_point_examples(unit_square):
    x = feasible_point(H(1, [((-1,), 0), ((1,), 1)]))
    assert 0 <= x[0] <= 1
    assert unit_square.contains(feasible_point(unit_square))


def test_equalities_are_native():
    P = H(2, [((-1, 0), 0), ((0, -1), 0)], [((1, 1), 2)])
    out = lp_maximize(P, q(1, 0))
    assert isinstance(out, Optimal) and out.value == 2 and out.point == q(2, 0)
    bad = H(2, [], [((1, 1), 2), ((1, 1), 3)])
    out = lp_maximize(bad, q(0, 0))
    assert isinstance(out, Infeasible) and verify_outcome(bad, q(0, 0), out)


def test_dimension_mismatch_rejected(square):
    with pytest.raises(DimensionMismatch):
        lp_maximize(square, q(1))


def test_argmax_face_and_support(square):
    assert support_value(square, q(1, 1)) == 2
    face = argmax_face(square, q(1, 0))
    assert face.contains(q(1, 0)) and face.contains(q(1, -1)) and not face.contains(q(0, 0))
    assert argmax_face(H(1, [((-1,), 0)]), q(1)) is None


def _scipy_status(P, c):
    n = P.dim
    A = [[float(a) for a in row] for row in P.A] or None
    b = [float(v) for v in P.b] or None
    E = [[float(a) for a in row] for row in P.E] or None
    d = [float(v) for v in P.d] or None
    res = linprog(-np.array([float(a) for a in c]), A_ub=A, b_ub=b, A_eq=E, b_eq=d,
                  bounds=[(None, None)] * n, method="highs")
    return res


@given(st.integers(0, 10**6))
def test_status_and_value_agree_with_floating_solver(seed):
    rng = random.Random(seed)
    P = random_general(rng)
    if rng.random() < 0.3:  # make some instances infeasible
        a = P.A[0]
        P = P.intersect(H(P.dim, [(tuple(-x for x in a), -P.b[0] - 1)]))
    c = tuple(rng.randint(-3, 3) for _ in range(P.dim))
    out = lp_maximize(P, c)
    assert verify_outcome(P, c, out)
    res = _scipy_status(P, c)
    expected = {0: Optimal, 2: Infeasible, 3: Unbounded}[res.status]
    assert isinstance(out, expected)
    if isinstance(out, Optimal):
        assert abs(float(out.value) + res.fun) < 1e-6


@given(st.integers(0, 10**6))
def test_optimum_equals_best_vertex(seed):
    rng = random.Random(seed)
    P = random_polytope(rng)
    c = tuple(rng.randint(-3, 3) for _ in range(P.dim))
    out = lp_maximize(P, c)
    assert isinstance(out, Optimal)
    assert out.value == max(dot(c, v) for v in brute_force_vertices(P))


def test_degenerate_cycling_instance():
    # a classic degenerate LP where textbook largest-coefficient pivoting can cycle
    P = H(4, [((q("1/4")[0], -8, -1, 9), 0), ((q("1/2")[0], -12, q("-1/2")[0], 3), 0),
              ((0, 0, 1, 0), 1), ((-1, 0, 0, 0), 0), ((0, -1, 0, 0), 0),
              ((0, 0, -1, 0), 0), ((0, 0, 0, -1), 0)])
    out = lp_maximize(P, q("3/4", -20, "1/2", -6))
    assert isinstance(out, Optimal) and out.value == q("5/4")[0]

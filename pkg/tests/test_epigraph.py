import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import H, q
from polyconvex.epigraph import (PLFunction, epi, from_epigraph, graph_subspace, lin_f,
                                 polar_epi_sublinear, random_pl_function, random_sublinear,
                                 recession_function, subdifferential_at, subdifferential_range,
                                 subgradient_via_support, sublinear_shift,
                                 verify_motzkin_function_criteria,
                                 verify_sublinear_shift_criterion)
from polyconvex.errors import DomainNotConeAt, EmptyPolyhedron, NotInDomain, NotSublinear
from polyconvex.linalg import Subspace, dot, sub, zeros
from polyconvex.polyhedron import canonicalize, dd_h_to_v, enumerate_faces_oracle, set_equal
from polyconvex.representation import HPolyhedron
from polyconvex.structure import (lineality_space, minimal_faces, polar_cone, recession_cone,
                                  translated_cone_apex)
from polyconvex.verify import sample_points

seeds = st.integers(0, 10**6)
R1 = HPolyhedron.universe(1)
ABS = PLFunction.build([((1,), 0), ((-1,), 0)])
ZERO_ON_SEGMENT = PLFunction((((0,), 0),), H(1, [((1,), 1), ((-1,), 1)]))


def fn(pieces, domain=None):
    return PLFunction.build(pieces, domain)


def test_epi_examples():
    assert set_equal(epi(ABS), H(2, [((1, -1), 0), ((-1, -1), 0)]))
    assert set_equal(epi(ZERO_ON_SEGMENT), H(2, [((0, -1), 0), ((1, 0), 1), ((-1, 0), 1)]))
    f = fn([((1, 1), 0), ((2, 0), -1)])
    assert epi(f).m == 2 and epi(f).contains(q(1, 1, 2)) and not epi(f).contains(q(1, 1, 1))


def test_function_values():
    assert ABS(q(-3)) == 3
    assert ZERO_ON_SEGMENT(q(2)) is None
    with pytest.raises(EmptyPolyhedron):
        PLFunction((((1,), 0),), H(1, [((1,), 0), ((-1,), -1)]))


def test_recession_function_examples():
    assert set_equal(epi(recession_function(ABS)), epi(ABS))
    f0 = recession_function(ZERO_ON_SEGMENT)
    assert set_equal(f0.domain, H(1, [], [((1,), 0)]))
    g0 = recession_function(fn([((1,), 0), ((2,), -5)]))
    assert set_equal(epi(g0), epi(fn([((1,), 0), ((2,), 0)])))


def test_lin_examples():
    assert lin_f(ABS).dim == 0
    assert lin_f(fn([((1, 0), 0), ((-1, 0), 0)])) == Subspace.span([(0, 1)], 2)
    assert lin_f(fn([((2, -1), 3)])) == Subspace.full(2)


def test_subdifferential_examples():
    assert set_equal(subdifferential_at(ABS, q(0)).as_h, H(1, [((1,), 1), ((-1,), 1)]))
    assert set_equal(subdifferential_at(ABS, q(2)).as_h, H(1, [], [((1,), 1)]))
    assert set_equal(subdifferential_at(ZERO_ON_SEGMENT, q(1)).as_h, H(1, [((-1,), 0)]))
    with pytest.raises(NotInDomain):
        subdifferential_at(ZERO_ON_SEGMENT, q(2))


def test_subdifferential_range_examples():
    r = subdifferential_range(ABS)
    assert len(r.pieces) == 3 and r.equals_set(H(1, [((1,), 1), ((-1,), 1)]))
    r = subdifferential_range(fn([((3,), 1)]))
    assert len(r.pieces) == 1 and set_equal(r.pieces[0], H(1, [], [((1,), 3)]))
    r = subdifferential_range(ZERO_ON_SEGMENT)
    assert len(r.pieces) == 3 and r.equals_set(R1)


def test_sublinear_shift_examples():
    assert sublinear_shift(ABS) == (q(0), 0)
    shifted = fn([((1,), 4), ((-1,), 10)])  # |x - 3| + 7
    assert sublinear_shift(shifted) == (q(3), 7)
    # max(0, x - 1): the epigraph is pointed with the single vertex (1, 0)
    hinge = fn([((0,), 0), ((1,), -1)])
    assert len(dd_h_to_v(epi(hinge)).vertices) == 1
    assert sublinear_shift(hinge) == (q(1), 0)
    # two vertices in the epigraph: no shift makes it sublinear
    two = PLFunction((((0,), 0),), H(1, [((1,), 1), ((-1,), 1)]))
    assert sublinear_shift(two) is None


def test_shift_criterion_examples():
    for f, u in ((ABS, q(0)), (fn([((1,), 0), ((2,), 0)]), q(0)), (fn([((0,), 0), ((1,), -1)]), q(1))):
        rep = verify_sublinear_shift_criterion(f, u)
        assert rep.passed and rep.details["shift_is_sublinear"]
        assert rep.details["range_equals_subdifferential_at_u"]
    rep = verify_sublinear_shift_criterion(ABS, q(1))
    assert rep.passed and not rep.details["shift_is_sublinear"]
    with pytest.raises(DomainNotConeAt):
        verify_sublinear_shift_criterion(ZERO_ON_SEGMENT, q(0))


def test_polar_epi_examples():
    U = polar_epi_sublinear(ABS)
    assert U.equals_set(H(2, [((1, 1), 0), ((-1, 1), 0)]))
    U = polar_epi_sublinear(fn([((0, 0), 0)]))
    assert U.equals_set(H(3, [((0, 0, 1), 0)], [((1, 0, 0), 0), ((0, 1, 0), 0)]))
    s = PLFunction((((0,), 0),), H(1, [((-1,), 0)]))
    assert polar_epi_sublinear(s).equals_set(H(2, [((1, 0), 0), ((0, 1), 0)]))
    with pytest.raises(NotSublinear):
        polar_epi_sublinear(ZERO_ON_SEGMENT)


def test_motzkin_function_examples():
    rep = verify_motzkin_function_criteria(ABS)
    assert rep.passed and rep.clauses["full_domain_degenerate_clause"] is True
    rep = verify_motzkin_function_criteria(ZERO_ON_SEGMENT)
    assert rep.passed and rep.clauses["full_domain_degenerate_clause"] is None
    assert verify_motzkin_function_criteria(fn([((1, -2), 5)])).passed


# ----- properties on random functions ---------------------------------------


def any_function(seed):
    rng = random.Random(seed)
    return (random_sublinear if seed % 3 == 0 else random_pl_function)(rng)


@given(seeds)
def test_epigraph_round_trip_and_recession(seed):
    f = any_function(seed)
    E = epi(f)
    assert set_equal(epi(from_epigraph(canonicalize(E))), E)
    assert set_equal(epi(recession_function(f)), recession_cone(E))
    assert graph_subspace(f, lin_f(f)) == lineality_space(E)


@given(seeds)
def test_subgradient_inequality(seed):
    rng = random.Random(seed)
    f = any_function(seed)
    dom = dd_h_to_v(f.domain)
    ys = sample_points(dom, rng, 20)
    for face in enumerate_faces_oracle(epi(f)):
        x = face.interior_point[:-1]
        G = dd_h_to_v(subdifferential_at(f, x).as_h)
        for y in ys:
            d = sub(y, x)
            for g in G.vertices:
                assert f(y) >= f(x) + dot(g, d)
            assert all(dot(r, d) <= 0 for r in G.rays)


@given(seeds)
def test_subgradient_iff_conjugate_attained(seed):
    rng = random.Random(seed)
    f = any_function(seed)
    for x in sample_points(dd_h_to_v(f.domain), rng, 3):
        S = subdifferential_at(f, x)
        duals = list(dd_h_to_v(S.as_h).vertices)
        duals += [tuple(rng.randint(-3, 3) for _ in range(f.dim)) for _ in range(5)]
        for y in duals:
            assert S.contains(y) == subgradient_via_support(f, x, y)


@given(seeds)
def test_sublinear_formula_and_polar(seed):
    rng = random.Random(seed)
    s = random_sublinear(rng)
    at0 = subdifferential_at(s, zeros(s.dim)).as_h
    for x in sample_points(dd_h_to_v(s.domain), rng, 4):
        assert set_equal(subdifferential_at(s, x).as_h, at0.with_equalities([x], [s(x)]))
    assert polar_epi_sublinear(s).equals_set(polar_cone(epi(s)))


@given(seeds)
def test_shift_iff_single_minimal_face(seed):
    f = any_function(seed)
    E = epi(f)
    some = sublinear_shift(f) is not None
    assert some == (translated_cone_apex(E) is not None) == (len(minimal_faces(E)) == 1)


@given(seeds)
def test_motzkin_function_criteria_hold(seed):
    assert verify_motzkin_function_criteria(any_function(seed)).passed

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import H, q
from polyconvex.errors import (AffineFlat, EmptyPolyhedron, NotACone, NotAFace, NotAMember,
                               NotSupplementary)
from polyconvex.generators import generate_set, random_general, random_supplement
from polyconvex.linalg import Subspace, add, dot, scale, zeros
from polyconvex.lp import Optimal, lp_maximize
from polyconvex.polyhedron import (dd_h_to_v, dd_v_to_h, enumerate_faces_oracle, flat,
                                   set_equal)
from polyconvex.representation import HPolyhedron, VPolyhedron
from polyconvex.structure import (ConeUnion, barrier_member, face_equivalence_report,
                                  gm_synthesize, is_generalized_minkowski, is_invariant_union,
                                  lineality_space, minimal_faces, motzkin_decompose,
                                  normal_cone_at, pareto_membership, pareto_membership_lp,
                                  polar_cone, project_onto, rbd_slice_check, recession_cone,
                                  slice, total_normal_cone, translated_cone_apex,
                                  verify_motzkin_normal_criteria)

x_axis = Subspace.span([(1, 0)], 2)
y_axis = Subspace.span([(0, 1)], 2)
seeds = st.integers(0, 10**6)
SET_FAMILIES = ("polytope", "cone", "translated-cone", "product-with-subspace", "general")


def any_set(seed):
    rng = random.Random(seed)
    return generate_set(SET_FAMILIES[seed % 5], rng).polyhedron


# ----- recession, lineality, slices ---------------------------------------


def test_recession_examples(square, half_plane):
    assert set_equal(recession_cone(square), H(2, [], [((1, 0), 0), ((0, 1), 0)]))
    assert set_equal(recession_cone(half_plane), half_plane)
    C = H(2, [((0, -1), 0), ((-1, -1), -1)])
    assert set_equal(recession_cone(C), H(2, [((0, -1), 0), ((-1, -1), 0)]))
    with pytest.raises(EmptyPolyhedron):
        recession_cone(H(1, [((1,), 0), ((-1,), -1)]))


def test_lineality_examples(square, half_plane, strip):
    assert lineality_space(square).dim == 0
    assert lineality_space(half_plane) == x_axis
    assert lineality_space(strip) == x_axis


def test_slice_examples(half_plane, square, strip):
    assert set_equal(slice(half_plane, y_axis), H(2, [((0, -1), 0)], [((1, 0), 0)]))
    assert set_equal(slice(square, Subspace.full(2)), square)
    assert set_equal(slice(strip, y_axis), H(2, [((0, 1), 1), ((0, -1), 1)], [((1, 0), 0)]))
    with pytest.raises(NotSupplementary):
        slice(half_plane, x_axis)


def test_projection_examples(half_plane, square):
    assert set_equal(project_onto(half_plane, y_axis), slice(half_plane, y_axis))
    assert set_equal(project_onto(square, Subspace.full(2)), square)
    C = dd_v_to_h(VPolyhedron(2, (q(0, 0), q(1, 0)), (), (q(0, 1),)))
    assert set_equal(project_onto(C, x_axis), H(2, [((-1, 0), 0), ((1, 0), 1)], [((0, 1), 0)]))


@given(seeds)
def test_recession_generators_recede(seed):
    C = any_set(seed)
    K = dd_h_to_v(recession_cone(C))
    pts = dd_h_to_v(C).vertices
    for x in pts:
        for r in K.rays + K.lines:
            assert C.contains(add(x, r)) and C.contains(add(x, scale(5, r)))


@given(seeds)
def test_lineality_is_recession_intersection(seed):
    C = any_set(seed)
    K = recession_cone(C)
    L = lineality_space(C)
    both = K.intersect(HPolyhedron(C.dim, tuple(tuple(-a for a in row) for row in K.A), K.b,
                                   K.E, K.d))
    assert set_equal(both, flat(zeros(C.dim), L))


# ----- minimal faces and the six statements --------------------------------


def test_minimal_faces_examples(square, half_plane, line):
    mf = minimal_faces(square)
    assert set(mf.slice_vertices) == {q(a, b) for a in (-1, 1) for b in (-1, 1)}
    mf = minimal_faces(half_plane)
    assert mf.slice_vertices == (q(0, 0),) and mf.lin_basis == x_axis
    mf = minimal_faces(line)
    assert len(mf) == 1 and set_equal(mf.flats()[0], line)


def test_face_report_examples(half_plane, square, line):
    rep = face_equivalence_report(half_plane, H(2, [], [((0, 1), 0)]))
    assert all(rep.clauses.values())
    edge = square.with_equalities([q(1, 0)], [1])
    rep = face_equivalence_report(square, edge)
    assert not any(rep.clauses.values())
    rep = face_equivalence_report(line, line)
    assert all(rep.clauses.values())
    with pytest.raises(NotAFace):
        face_equivalence_report(square, H(2, [], [((1, 0), 0)]))


@given(seeds)
def test_face_lineality_and_six_statements(seed):
    C = random_general(random.Random(seed))
    L = lineality_space(C)
    U = random_supplement(random.Random(seed + 1), L)
    for face in enumerate_faces_oracle(C):
        assert lineality_space(face.as_h) == L
        assert face.dim >= L.dim
        vals = set(face_equivalence_report(C, face, U).clauses.values())
        assert len(vals) == 1
        assert vals == {face.dim == L.dim}


@given(seeds)
def test_minimal_faces_independent_of_supplement(seed):
    rng = random.Random(seed)
    C = any_set(seed)
    mf = minimal_faces(C)
    U1, U2 = random_supplement(rng, mf.lin_basis), random_supplement(rng, mf.lin_basis)
    assert minimal_faces(C, U1).same_flats(mf) and minimal_faces(C, U2).same_flats(mf)
    assert all(U1.contains(p) for p in mf.slice_points(U1))
    oracle = [f for f in enumerate_faces_oracle(C) if f.dim == mf.lin_basis.dim]
    assert len(oracle) == len(mf)
    assert all(any(set_equal(F, f.as_h) for f in oracle) for F in mf.flats())


@given(seeds)
def test_smallest_invariant_set(seed):
    C = any_set(seed)
    mf = minimal_faces(C)
    L = mf.lin_basis
    U = L.complement()
    # a larger invariant union through face points still contains every minimal flat
    extra = [f.interior_point for f in enumerate_faces_oracle(C)]
    S = list(mf.slice_vertices) + extra
    assert is_invariant_union(S, L, U)
    assert all(any(L.contains(tuple(a - b for a, b in zip(v, s))) for s in S)
               for v in mf.slice_vertices)
    assert set_equal(mf.convex_hull(), C) == is_generalized_minkowski(C)[0]


# ----- translated cones and Motzkin ----------------------------------------


def test_translated_cone_examples(quadrant, unit_square):
    assert translated_cone_apex(quadrant)[0] == q(0, 0)
    shifted = quadrant.translate(q(1, 2))
    assert translated_cone_apex(shifted)[0] == q(1, 2)
    assert translated_cone_apex(unit_square) is None


@given(seeds)
def test_single_minimal_face_iff_translated_cone(seed):
    C = any_set(seed)
    tc = translated_cone_apex(C)
    assert (tc is not None) == (len(minimal_faces(C)) == 1)
    if tc is not None:
        faces = enumerate_faces_oracle(C)
        meet = faces[0].as_h
        for f in faces[1:]:
            meet = meet.intersect(f.as_h)
        assert set_equal(meet, flat(tc[0], tc[1]))


def test_motzkin_examples(unit_square, half_plane):
    dec = motzkin_decompose(unit_square)
    assert set_equal(dd_v_to_h(dec.compact_part), unit_square)
    assert set_equal(dec.cone_part, H(2, [], [((1, 0), 0), ((0, 1), 0)]))
    dec = motzkin_decompose(half_plane)
    assert dec.compact_part.vertices == (q(0, 0),) and set_equal(dec.cone_part, half_plane)
    C = H(2, [((0, -1), 0), ((-1, -1), -1)])
    dec = motzkin_decompose(C)
    assert dec.compact_part.vertices == (q(1, 0),)
    assert set_equal(dec.cone_part, H(2, [((0, -1), 0), ((-1, -1), 0)]))


@given(seeds)
def test_motzkin_reconstruction(seed):
    C = any_set(seed)
    dec = motzkin_decompose(C)
    assert set_equal(dec.recombine(), C)
    assert dec.compact_part.is_bounded()
    assert set_equal(dec.cone_part, recession_cone(C))


# ----- normal cones, polarity, barrier -------------------------------------


def test_normal_cone_examples(square, quadrant, half_plane):
    assert set_equal(normal_cone_at(square, q(0, 0)), H(2, [], [((1, 0), 0), ((0, 1), 0)]))
    assert set_equal(normal_cone_at(quadrant, q(0, 0)), H(2, [((1, 0), 0), ((0, 1), 0)]))
    assert set_equal(normal_cone_at(half_plane, q(3, 0)), H(2, [((0, 1), 0)], [((1, 0), 0)]))
    with pytest.raises(NotAMember):
        normal_cone_at(square, q(2, 2))


def test_total_normal_cone_examples(quadrant, line):
    seg = H(1, [((-1,), 0), ((1,), 1)])
    tnc = total_normal_cone(seg)
    assert len(tnc.cones) == 3 and tnc.equals_set(HPolyhedron.universe(1))
    tnc = total_normal_cone(quadrant)
    assert len(tnc.cones) == 4 and tnc.equals_set(H(2, [((1, 0), 0), ((0, 1), 0)]))
    tnc = total_normal_cone(line)
    assert len(tnc.cones) == 1 and set_equal(tnc.cones[0], H(2, [], [((1, 0), 0)]))


def test_total_normal_cone_is_not_convex():
    tnc = total_normal_cone(H(1, [((-1,), 0), ((1,), 1)]))
    # a union equal to R, but the half-open pieces only meet at 0
    assert tnc.contains(q(3)) and tnc.contains(q(-3))
    U = ConeUnion((H(2, [((-1, 0), 0)], [((0, 1), 0)]), H(2, [((0, -1), 0)], [((1, 0), 0)])))
    assert U.contains(q(1, 0)) and U.contains(q(0, 1)) and not U.contains(q(1, 1))


def test_polar_examples(quadrant, half_plane):
    assert set_equal(polar_cone(H(2, [], [((1, 0), 0), ((0, 1), 0)])), HPolyhedron.universe(2))
    assert set_equal(polar_cone(quadrant), H(2, [((1, 0), 0), ((0, 1), 0)]))
    assert set_equal(polar_cone(half_plane), H(2, [((0, 1), 0)], [((1, 0), 0)]))
    with pytest.raises(NotACone):
        polar_cone(H(1, [((1,), 1)]))


@given(seeds)
def test_polar_is_involution_and_matches_definition(seed):
    rng = random.Random(seed)
    K = recession_cone(any_set(seed))
    P = polar_cone(K)
    assert set_equal(polar_cone(P), K)
    G = dd_h_to_v(K)
    for _ in range(10):
        y = tuple(rng.randint(-3, 3) for _ in range(K.dim))
        by_definition = (all(dot(y, r) <= 0 for r in G.rays)
                         and all(dot(y, l) == 0 for l in G.lines))
        assert P.contains(y) == by_definition


@given(seeds)
def test_normal_cone_iff_argmax(seed):
    rng = random.Random(seed)
    C = any_set(seed)
    pts = [f.interior_point for f in enumerate_faces_oracle(C)]
    for _ in range(5):
        y = tuple(rng.randint(-3, 3) for _ in range(C.dim))
        out = lp_maximize(C, y)
        assert isinstance(out, Optimal) == barrier_member(C, y)
        for x in pts:
            attained = isinstance(out, Optimal) and dot(y, x) == out.value
            assert normal_cone_at(C, x).contains(y) == attained


@given(seeds)
def test_normal_range_equals_polar_of_recession(seed):
    rng = random.Random(seed)
    C = any_set(seed)
    tnc = total_normal_cone(C)
    pol = polar_cone(recession_cone(C))
    assert tnc.equals_set(pol)
    for _ in range(10):
        y = tuple(rng.randint(-3, 3) for _ in range(C.dim))
        assert tnc.contains(y) == pol.contains(y)


def test_motzkin_criteria_examples(quadrant, unit_square, half_plane):
    rep = verify_motzkin_normal_criteria(quadrant)
    assert rep.passed and rep.clauses["cone_apex_normal_cone_is_range"] is True
    rep = verify_motzkin_normal_criteria(unit_square)
    assert rep.passed and rep.clauses["cone_apex_normal_cone_is_range"] is None
    rep = verify_motzkin_normal_criteria(half_plane)
    assert rep.passed and rep.clauses["cone_apex_normal_cone_is_range"] is True


# ----- generalized Minkowski -----------------------------------------------


def test_gm_examples(square, half_plane, line):
    assert is_generalized_minkowski(square)[0]
    ok, cert = is_generalized_minkowski(half_plane)
    assert not ok
    w = cert["witness"]
    assert half_plane.contains(w) and w[1] > 0
    assert is_generalized_minkowski(line)[0]


def test_gm_synthesize_examples():
    sq = VPolyhedron(3, tuple(q(a, b, 0) for a in (0, 1) for b in (0, 1)))
    prism = gm_synthesize(sq, Subspace.span([(0, 0, 1)], 3))
    assert set_equal(prism, H(3, [((1, 0, 0), 1), ((-1, 0, 0), 0), ((0, 1, 0), 1), ((0, -1, 0), 0)]))
    pt = gm_synthesize(VPolyhedron(2, (q(1, 1),)), x_axis)
    assert set_equal(pt, H(2, [], [((0, 1), 1)]))
    with pytest.raises(NotSupplementary):
        gm_synthesize(VPolyhedron(2, (q(0, 0), q(1, 0))), x_axis)


@given(seeds)
def test_gm_equivalences(seed):
    C = any_set(seed)
    ok, cert = is_generalized_minkowski(C)
    L = lineality_space(C)
    assert ok == (not dd_h_to_v(slice(C)).rays)
    assert ok == set_equal(recession_cone(C), flat(zeros(C.dim), L))
    if not ok:
        assert C.contains(cert["witness"]) and not cert["minimal_faces"].convex_hull().contains(
            cert["witness"])


# ----- Pareto-like set and relative boundary -------------------------------


def test_pareto_examples(square):
    C = H(2, [((1, 0), 1), ((-1, 0), 1), ((0, -1), 0)])
    assert pareto_membership(C, q(-1, 0))
    assert not pareto_membership(C, q(-1, 5))
    assert all(pareto_membership(square, x) for x in (q(0, 0), q(1, 1), q(1, 0)))
    with pytest.raises(NotAMember):
        pareto_membership(C, q(0, -1))


@given(seeds)
def test_pareto_routes_agree_and_are_invariant(seed):
    rng = random.Random(seed)
    C = any_set(seed)
    L = lineality_space(C)
    for f in enumerate_faces_oracle(C):
        x = f.interior_point
        m = pareto_membership(C, x)
        assert m == pareto_membership_lp(C, x)
        for l in L.basis:
            assert pareto_membership(C, add(x, scale(rng.randint(-3, 3), l))) == m


def test_rbd_examples(strip, square, half_plane, line):
    for C in (strip, square, half_plane):
        rep = rbd_slice_check(C)
        assert rep.passed
        assert rep.clauses["relative_boundary_of_slice_plus_lineality"]
    with pytest.raises(AffineFlat):
        rbd_slice_check(line)

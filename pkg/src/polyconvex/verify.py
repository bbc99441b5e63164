"""Per-instance verification suites and the ``verify-all`` aggregator.

Each suite returns a ``Report``.  Random choices inside a suite come from a
``random.Random`` seeded by (seed, family, index), so results do not depend
on scheduling or thread count.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from .epigraph import (PLFunction, epi, from_epigraph, graph_subspace, lin_f,
                       polar_epi_sublinear, recession_function, subdifferential_at,
                       subgradient_via_support, sublinear_shift,
                       verify_motzkin_function_criteria, verify_sublinear_shift_criterion)
from .errors import AffineFlat, DomainNotConeAt
from .generators import Instance, generate, random_supplement
from .linalg import ONE, Q, QVector, add, dot, scale, sub, zeros
from .lp import Optimal, argmax_face, lp_maximize, verify_outcome
from .polyhedron import (canonicalize, dd_h_to_v, enumerate_faces_oracle, flat,
                         minimal_oracle_faces, set_equal)
from .report import Report
from .representation import HPolyhedron, VPolyhedron
from .structure import (barrier_member, face_equivalence_report, face_statements_agree,
                        gm_synthesize, is_generalized_minkowski, is_invariant_union,
                        lineality_space, minimal_faces, motzkin_decompose, normal_cone_at,
                        pareto_membership, pareto_membership_lp, polar_cone, rbd_slice_check,
                        recession_cone, total_normal_cone, translated_cone_apex,
                        verify_motzkin_normal_criteria)


def _merge(into: Report, other: Report, prefix: str) -> None:
    for k, v in other.clauses.items():
        into.clauses[f"{prefix}.{k}"] = v
    for k, v in other.details.items():
        into.details[f"{prefix}.{k}"] = v


def sample_points(G: VPolyhedron, rng: random.Random, k: int) -> list[QVector]:
    """k exact points of conv(V) + cone(R) + span(L)."""
    out = []
    for _ in range(k):
        w = [Q(rng.randint(0, 3)) for _ in G.vertices]
        if not any(w):
            w[rng.randrange(len(w))] = ONE
        total = sum(w)
        p = zeros(G.dim)
        for wi, v in zip(w, G.vertices):
            p = add(p, scale(wi / total, v))
        for r in G.rays:
            p = add(p, scale(Q(rng.randint(0, 2), rng.choice((1, 2))), r))
        for l in G.lines:
            p = add(p, scale(Q(rng.randint(-2, 2)), l))
        out.append(p)
    return out


def random_dual(rng: random.Random, n: int) -> QVector:
    return tuple(Q(rng.randint(-3, 3)) for _ in range(n))


# --------------------------------------------------------------------------
# polyhedron suites


def face_structure_report(C: HPolyhedron) -> Report:
    rep = Report("face_structure")
    L = lineality_space(C)
    faces = enumerate_faces_oracle(C)
    lin_ok = dim_ok = agree = True
    bad = []
    for face in faces:
        lin_ok &= lineality_space(face.as_h) == L
        dim_ok &= face.dim >= L.dim
        six = face_equivalence_report(C, face)
        if not face_statements_agree(six):
            agree = False
            bad.append(sorted(face.active_ineq))
    rep.check("face_lineality_equals_lineality", lin_ok)
    rep.check("face_dim_at_least_lineality_dim", dim_ok)
    rep.check("six_statements_agree", agree, disagreeing_faces=bad)
    rep.details["face_count"] = len(faces)
    return rep


def minimal_faces_report(C: HPolyhedron, rng: random.Random) -> Report:
    rep = Report("minimal_faces")
    mf = minimal_faces(C)
    oracle = [f.as_h for f in minimal_oracle_faces(C)]
    flats = mf.flats()
    rep.check("matches_oracle_minimal_faces",
              len(flats) == len(oracle)
              and all(any(set_equal(F, G) for G in oracle) for F in flats)
              and all(any(set_equal(F, G) for F in flats) for G in oracle))
    L = mf.lin_basis
    U1, U2 = random_supplement(rng, L), random_supplement(rng, L)
    m1, m2 = minimal_faces(C, U1), minimal_faces(C, U2)
    rep.check("independent_of_supplement", m1.same_flats(mf) and m2.same_flats(mf))
    rep.check("slice_vertices_lie_in_U", all(U1.contains(v) for v in m1.slice_vertices)
              and all(U2.contains(v) for v in m2.slice_vertices))
    rep.check("flats_have_lineality_dim", all(
        lineality_space(F) == L and len(dd_h_to_v(F).vertices) == 1 for F in flats))
    # MF(C) together with extra invariant flats through face points is still
    # an invariant union containing every minimal flat
    extra = [f.interior_point for f in enumerate_faces_oracle(C)]
    S = list(mf.slice_vertices) + extra
    rep.check("invariant_union_contains_minimal_faces",
              is_invariant_union(S, L, U1) and all(any(L.contains(sub(v, s)) for s in S)
                                                     for v in mf.slice_vertices))
    return rep


def translated_cone_report(C: HPolyhedron, apex: Optional[QVector] = None) -> Report:
    rep = Report("translated_cone")
    mf = minimal_faces(C)
    tc = translated_cone_apex(C)
    rep.check("apex_iff_single_minimal_face", (tc is not None) == (len(mf) == 1))
    if tc is not None:
        faces = enumerate_faces_oracle(C)
        every = faces[0].as_h
        for f in faces[1:]:
            every = every.intersect(f.as_h)
        rep.check("minimal_face_is_intersection_of_faces", set_equal(every, flat(tc[0], tc[1])))
    else:
        rep.skip("minimal_face_is_intersection_of_faces", "more than one minimal face")
    if apex is not None:
        rep.check("planted_apex_on_minimal_flat", tc is not None and mf.contains(apex))
    return rep


def motzkin_report(C: HPolyhedron, rng: random.Random, duals: int = 10) -> Report:
    rep = Report("motzkin")
    dec = motzkin_decompose(C)
    rep.check("reconstructs_C", set_equal(dec.recombine(), C))
    K = recession_cone(C)
    rep.check("cone_part_is_recession_cone", set_equal(dec.cone_part, K))
    _merge(rep, verify_motzkin_normal_criteria(C), "criteria")
    tnc, pol = total_normal_cone(C), polar_cone(K)
    probes = [random_dual(rng, C.dim) for _ in range(duals)]
    G = dd_h_to_v(pol)
    probes += list(G.rays) + list(G.lines) + [scale(-ONE, l) for l in G.lines]
    rep.check("normal_range_membership_matches_polar",
              all(tnc.contains(y) == pol.contains(y) for y in probes))
    return rep


def gm_report(C: HPolyhedron) -> Report:
    rep = Report("generalized_minkowski")
    ok, cert = is_generalized_minkowski(C)
    mf = cert["minimal_faces"]
    L = mf.lin_basis
    rep.details["is_gm"] = ok
    rep.check("gm_iff_recession_is_lineality",
              ok == set_equal(recession_cone(C), flat(zeros(C.dim), L)))
    if ok:
        rep.check("hull_of_minimal_faces_is_C", set_equal(mf.convex_hull(), C))
    else:
        w = cert["witness"]
        rep.check("witness_in_C_outside_hull", C.contains(w) and not mf.convex_hull().contains(w))
    synth = gm_synthesize(VPolyhedron(C.dim, mf.slice_vertices), L)
    rep.check("synthesized_from_minimal_faces_is_hull", set_equal(synth, mf.convex_hull()))
    return rep


def boundary_points(C: HPolyhedron, rng: random.Random, k: int) -> list[QVector]:
    """k points on proper faces of C (empty when C has none)."""
    faces = enumerate_faces_oracle(C)
    top = max(f.dim for f in faces)
    proper = [f for f in faces if f.dim < top]
    if not proper:
        return []
    out = []
    for i in range(k):
        face = proper[i % len(proper)]
        out.extend(sample_points(dd_h_to_v(face.as_h), rng, 1))
    return out


def pareto_report(C: HPolyhedron, rng: random.Random, points: int = 10) -> Report:
    rep = Report("pareto")
    pts = boundary_points(C, rng, points)
    pts += [f.interior_point for f in enumerate_faces_oracle(C)]
    L = lineality_space(C)
    rep.check("generator_test_matches_lp_test",
              all(pareto_membership(C, x) == pareto_membership_lp(C, x) for x in pts))
    rep.check("lineality_invariance", all(
        pareto_membership(C, add(x, l)) == pareto_membership(C, x) for x in pts for l in L.basis))
    rep.details["members"] = sum(pareto_membership(C, x) for x in pts)
    try:
        _merge(rep, rbd_slice_check(C), "rbd")
    except AffineFlat:
        rep.skip("rbd", "C is an affine flat")
    return rep


def conjugacy_report(C: HPolyhedron, rng: random.Random, duals: int = 10) -> Report:
    """x* in N_C(x) iff x maximizes <x*, .>; sigma_C finite iff x* in barr C."""
    rep = Report("support_normal_conjugacy")
    G = dd_h_to_v(C)
    xs = [f.interior_point for f in enumerate_faces_oracle(C)] + list(G.vertices)
    normal_ok = barrier_ok = cert_ok = polar_ok = True
    for _ in range(duals):
        y = random_dual(rng, C.dim)
        out = lp_maximize(C, y)
        cert_ok &= verify_outcome(C, y, out)
        finite = isinstance(out, Optimal)
        barrier_ok &= finite == barrier_member(C, y)
        if finite:
            polar_ok &= all(dot(y, r) <= 0 for r in G.rays) and all(dot(y, l) == 0 for l in G.lines)
            face = argmax_face(C, y)
            normal_ok &= all(normal_cone_at(C, x).contains(y) == face.contains(x) for x in xs)
        else:
            normal_ok &= not any(normal_cone_at(C, x).contains(y) for x in xs)
    rep.check("lp_certificates_verify", cert_ok)
    rep.check("normal_iff_argmax", normal_ok)
    rep.check("finite_support_iff_barrier", barrier_ok)
    rep.check("barrier_vectors_polar_to_recession", polar_ok)
    return rep


def set_suites(C: HPolyhedron, rng: random.Random, apex: Optional[QVector] = None) -> Report:
    rep = Report("polyhedron")
    _merge(rep, face_structure_report(C), "faces")
    _merge(rep, minimal_faces_report(C, rng), "minimal_faces")
    _merge(rep, translated_cone_report(C, apex), "translated_cone")
    _merge(rep, motzkin_report(C, rng), "motzkin")
    _merge(rep, gm_report(C), "gm")
    _merge(rep, pareto_report(C, rng), "pareto")
    _merge(rep, conjugacy_report(C, rng), "conjugacy")
    return rep


# --------------------------------------------------------------------------
# function suite


def _values_ge(lhs, rhs) -> bool:
    return lhs is not None and lhs >= rhs


def epigraph_report(f: PLFunction, rng: random.Random, samples: int = 50) -> Report:
    rep = Report("epigraph")
    E = epi(f)
    f0 = recession_function(f)
    rep.check("recession_epigraph_coherence", set_equal(epi(f0), recession_cone(E)))
    rep.check("graph_over_lin_is_epigraph_lineality",
              graph_subspace(f, lin_f(f)) == lineality_space(E))
    rep.check("epigraph_round_trip", set_equal(epi(from_epigraph(canonicalize(E))), E))

    dom = dd_h_to_v(f.domain)
    xs = [face.interior_point[:-1] for face in enumerate_faces_oracle(E)]
    xs += sample_points(dom, rng, 3)
    ys = sample_points(dom, rng, samples)
    ineq_ok = conj_ok = True
    for x in xs:
        fx = f(x)
        S = subdifferential_at(f, x)
        G = dd_h_to_v(S.as_h)
        for y in ys:
            fy = f(y)
            d = sub(y, x)
            ineq_ok &= all(_values_ge(fy, fx + dot(g, d)) for g in G.vertices)
            ineq_ok &= all(dot(r, d) <= 0 for r in G.rays) and all(dot(l, d) == 0 for l in G.lines)
        duals = list(G.vertices) + [random_dual(rng, f.dim) for _ in range(3)]
        conj_ok &= all(S.contains(y) == subgradient_via_support(f, x, y) for y in duals)
    rep.check("subgradient_inequality", ineq_ok)
    rep.check("subgradient_iff_conjugate_attained", conj_ok)

    if f.is_sublinear():
        at0 = subdifferential_at(f, zeros(f.dim)).as_h
        rep.check("sublinear_subdifferential_formula", all(
            set_equal(subdifferential_at(f, x).as_h, at0.with_equalities([x], [f(x)])) for x in xs))
        rep.check("polar_of_sublinear_epigraph", polar_epi_sublinear(f).equals_set(polar_cone(E)))
    else:
        rep.skip("sublinear_subdifferential_formula", "f is not sublinear")
        rep.skip("polar_of_sublinear_epigraph", "f is not sublinear")

    shift = sublinear_shift(f)
    apex = translated_cone_apex(E)
    rep.check("shift_iff_apex_iff_single_minimal_face",
              (shift is not None) == (apex is not None) == (len(minimal_faces(E)) == 1))
    candidates = ([shift[0]] if shift is not None else []) + xs[:2]
    tried = None
    for u in candidates:
        try:
            sub_rep = verify_sublinear_shift_criterion(f, u)
        except DomainNotConeAt:
            continue
        _merge(rep, sub_rep, "shift_criterion")
        tried = u
        break
    if tried is None:
        rep.skip("shift_criterion", "dom f - u is not a cone at any candidate u")
    _merge(rep, verify_motzkin_function_criteria(f), "motzkin_function")
    return rep


# --------------------------------------------------------------------------
# aggregation


def instance_rng(seed: int, inst: Instance) -> random.Random:
    return random.Random(f"verify:{seed}:{inst.family}:{inst.index}")


def verify_instance(inst: Instance, seed: int = 0) -> dict:
    rng = instance_rng(seed, inst)
    if inst.function is not None:
        rep = epigraph_report(inst.function, rng)
    else:
        rep = set_suites(inst.polyhedron, rng, inst.apex)
    return {"family": inst.family, "index": inst.index, "passed": rep.passed,
            "failures": rep.failures(), "report": rep.to_json()}


def verify_all(instances: Sequence[Instance], seed: int = 0, threads: int = 1) -> dict:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: verify_instance(i, seed), instances))
    else:
        results = [verify_instance(i, seed) for i in instances]
    results.sort(key=lambda r: r["index"])
    failed = [r["index"] for r in results if not r["passed"]]
    return {"seed": seed, "count": len(results), "passed": not failed,
            "failed_instances": failed, "instances": results}


def verify_generated(family: str, seed: int, count: int, threads: int = 1) -> dict:
    out = verify_all(generate(family, seed, count), seed, threads)
    out["family"] = family
    return out

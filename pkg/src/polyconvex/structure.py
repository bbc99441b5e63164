"""Recession cones, minimal faces, normal cones and the generalized Minkowski tests.

Every operation that rests on a theorem about closed convex sets also
checks the identity it relies on and raises ``InvariantViolation`` when the
check fails; for polyhedra those checks can only fail through a bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (AffineFlat, EmptyPolyhedron, InvariantViolation, NotACone, NotAFace,
                     NotAMember, NotSupplementary)
from .linalg import (ONE, Q, QVector, Subspace, add, dot, kernel_basis, neg,
                     project_along, qvec, rank, scale, sub, supplementary, zeros)
from .lp import Optimal, lp_maximize
from .polyhedron import (Face, affine_dim, affine_hull, canonical_rows, dd_h_to_v,
                         dd_v_to_h, enumerate_faces_oracle, face_of, flat, is_empty,
                         set_equal, subset, union_covers)
from .report import Report
from .representation import HPolyhedron, VPolyhedron

SCALINGS = (Q(2), Q(1, 2), Q(3))


def _nonempty(C: HPolyhedron) -> None:
    if is_empty(C):
        raise EmptyPolyhedron("polyhedron has no points")


def _member(C: HPolyhedron, x: Sequence) -> QVector:
    x = qvec(x)
    if not C.contains(x):
        raise NotAMember(f"point {[str(a) for a in x]} is not in the polyhedron")
    return x


# --------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class ConeUnion:
    """A finite, generally non-convex, union of polyhedral cones."""

    cones: tuple

    def __post_init__(self):
        for K in self.cones:
            if not K.is_cone():
                raise NotACone("ConeUnion members must have zero right-hand sides")

    @property
    def dim(self) -> int:
        return self.cones[0].dim

    def contains(self, y: Sequence) -> bool:
        y = qvec(y)
        return any(K.contains(y) for K in self.cones)

    def maximal(self) -> list:
        """Members not contained in another member."""
        out = []
        for i, K in enumerate(self.cones):
            if not any(j != i and subset(K, M) and not (subset(M, K) and j > i)
                       for j, M in enumerate(self.cones)):
                out.append(K)
        return out

    def equals_set(self, P: HPolyhedron) -> bool:
        return all(subset(K, P) for K in self.cones) and union_covers(P, self.maximal())

    def subset_of_union(self, other: "ConeUnion") -> bool:
        target = other.maximal()
        return all(union_covers(K, target) for K in self.cones)

    def equals(self, other: "ConeUnion") -> bool:
        return self.subset_of_union(other) and other.subset_of_union(self)

    def to_json(self):
        from .serialize import h_to_json
        return {"cones": [h_to_json(K) for K in self.cones]}


@dataclass(frozen=True)
class MinimalFaceSet:
    """The union of the flats v + lin for v in ``slice_vertices``."""

    slice_vertices: tuple
    lin_basis: Subspace

    @property
    def dim(self) -> int:
        return self.lin_basis.ambient_dim

    def __len__(self) -> int:
        return len(self.slice_vertices)

    def flats(self) -> list:
        return [flat(v, self.lin_basis) for v in self.slice_vertices]

    def contains(self, x: Sequence) -> bool:
        x = qvec(x)
        return any(self.lin_basis.contains(sub(x, v)) for v in self.slice_vertices)

    def contains_flat(self, p: Sequence) -> bool:
        """Is the flat p + lin one of the members?"""
        return self.contains(p)

    def as_v(self) -> VPolyhedron:
        return VPolyhedron(self.dim, tuple(self.slice_vertices), (), self.lin_basis.basis)

    def convex_hull(self) -> HPolyhedron:
        return dd_v_to_h(self.as_v())

    def slice_points(self, U: Subspace) -> list:
        """The single point where each flat meets the supplementary subspace U."""
        return [project_along(v, U, self.lin_basis) for v in self.slice_vertices]

    def same_flats(self, other: "MinimalFaceSet") -> bool:
        return (self.lin_basis == other.lin_basis and len(self) == len(other)
                and all(other.contains(v) for v in self.slice_vertices)
                and all(self.contains(v) for v in other.slice_vertices))

    def to_json(self):
        return {"slice_vertices": [list(map(str, v)) for v in self.slice_vertices],
                "lin_basis": [list(map(str, b)) for b in self.lin_basis.basis]}


@dataclass(frozen=True)
class MotzkinDecomposition:
    compact_part: VPolyhedron
    cone_part: HPolyhedron

    def recombine(self) -> HPolyhedron:
        return dd_v_to_h(self.compact_part.minkowski_sum(dd_h_to_v(self.cone_part)))


# --------------------------------------------------------------------------
# recession, lineality, slices


def recession_cone(C: HPolyhedron) -> HPolyhedron:
    _nonempty(C)
    return C.homogeneous()


def lineality_space(C: HPolyhedron) -> Subspace:
    _nonempty(C)
    return kernel_basis(C.A + C.E, C.dim)


def _supplement(C: HPolyhedron, U: Optional[Subspace]) -> tuple[Subspace, Subspace]:
    L = lineality_space(C)
    if U is None:
        return L.complement(), L
    if U.ambient_dim != C.dim or not supplementary(U, L):
        raise NotSupplementary("U is not a supplementary subspace to the lineality space")
    return U, L


def subspace_equations(U: Subspace) -> tuple:
    """Rows whose common kernel is U."""
    return U.complement().basis


def slice(C: HPolyhedron, U: Optional[Subspace] = None) -> HPolyhedron:
    """C intersected with a subspace supplementary to lin C (default: its orthogonal complement)."""
    U, _ = _supplement(C, U)
    return C.with_equalities(subspace_equations(U))


def project_onto(C: HPolyhedron, U: Optional[Subspace] = None) -> HPolyhedron:
    """Image of C under the projection onto U along lin C; checked equal to the slice."""
    U, L = _supplement(C, U)
    G = dd_h_to_v(C)
    image = VPolyhedron(
        C.dim,
        tuple(sorted({project_along(v, U, L) for v in G.vertices})),
        tuple(project_along(r, U, L) for r in G.rays),
        (),
    )
    P = dd_v_to_h(image)
    if not set_equal(P, slice(C, U)):
        raise InvariantViolation("projection along lin C differs from the slice")
    return P


# --------------------------------------------------------------------------
# minimal faces


def minimal_faces(C: HPolyhedron, U: Optional[Subspace] = None) -> MinimalFaceSet:
    U, L = _supplement(C, U)
    G = dd_h_to_v(slice(C, U))
    if G.lines:
        raise InvariantViolation("slice by a supplementary subspace has lines")
    return MinimalFaceSet(G.vertices, L)


def _as_face_h(F) -> HPolyhedron:
    return F.as_h if isinstance(F, Face) else F


def _is_extreme(P: HPolyhedron, p: Sequence) -> bool:
    rows = list(P.E) + [P.A[i] for i in P.tight(p)]
    return rank(rows, P.dim) == P.dim if P.dim else True


def face_equivalence_report(C: HPolyhedron, F, U: Optional[Subspace] = None) -> Report:
    """Evaluate the six characterizations of a lowest-dimensional face independently."""
    U, L = _supplement(C, U)
    Fh = _as_face_h(F)
    if is_empty(Fh) or face_of(C, Fh) is None:
        raise NotAFace("F is not a nonempty face of C")
    rep = Report("face_equivalence")
    low = min(f.dim for f in enumerate_faces_oracle(C))
    rep.check("lowest_dimensional", affine_dim(Fh) == low)
    G = dd_h_to_v(Fh)
    rep.check("affine_variety", len(G.vertices) == 1 and not G.rays)
    x = G.vertices[0]
    rep.check("translate_of_lineality", set_equal(Fh, flat(x, L)))
    FU = Fh.with_equalities(subspace_equations(U))
    GU = dd_h_to_v(FU)
    single = len(GU.vertices) == 1 and not GU.rays and not GU.lines
    rep.check("meets_U_in_singleton", single)
    CU = slice(C, U)
    rep.check("meets_U_in_extreme_point", single and _is_extreme(CU, GU.vertices[0]))
    mf = minimal_faces(C, U)
    rep.check("extreme_point_plus_lineality",
              any(set_equal(Fh, flat(v, L)) for v in mf.slice_vertices))
    return rep


def face_statements_agree(rep: Report) -> bool:
    return len(set(rep.clauses.values())) == 1


# --------------------------------------------------------------------------
# translated cones and Motzkin decomposition


def translated_cone_apex(C: HPolyhedron) -> Optional[tuple[QVector, Subspace]]:
    """(apex, lin C) when C has a single minimal face, else None."""
    mf = minimal_faces(C)
    if len(mf) != 1:
        return None
    x0 = mf.slice_vertices[0]
    D = C.translate(neg(x0))
    for t in SCALINGS:
        if not set_equal(D.scaled(t), D):
            raise InvariantViolation("single minimal face but C - apex is not a cone")
    return x0, mf.lin_basis


def motzkin_decompose(C: HPolyhedron) -> MotzkinDecomposition:
    mf = minimal_faces(C)
    dec = MotzkinDecomposition(VPolyhedron(C.dim, mf.slice_vertices), recession_cone(C))
    if not set_equal(dec.recombine(), C):
        raise InvariantViolation("compact part + recession cone does not rebuild C")
    return dec


# --------------------------------------------------------------------------
# normal cones and polarity


def _cone_from_generators(n: int, rays, lines) -> HPolyhedron:
    return dd_v_to_h(VPolyhedron(n, (zeros(n),), tuple(rays), tuple(lines)))


def normal_cone_at(C: HPolyhedron, x: Sequence) -> HPolyhedron:
    x = _member(C, x)
    n = C.dim
    N = _cone_from_generators(n, [C.A[i] for i in sorted(C.tight(x))], C.E)
    G = dd_h_to_v(C)
    NG = dd_h_to_v(N)
    for g in NG.rays + NG.lines + tuple(neg(l) for l in NG.lines):
        ok = (all(dot(sub(c, x), g) <= 0 for c in G.vertices)
              and all(dot(r, g) <= 0 for r in G.rays)
              and all(dot(l, g) == 0 for l in G.lines))
        if not ok:
            raise InvariantViolation("normal cone generator fails the normality inequality")
    return N


def total_normal_cone(C: HPolyhedron) -> ConeUnion:
    """One normal cone per face, taken at a relative-interior point of the face."""
    _nonempty(C)
    cones = []
    for face in enumerate_faces_oracle(C):
        N = normal_cone_at(C, face.interior_point)
        if N not in cones:
            cones.append(N)
    return ConeUnion(tuple(cones))


def polar_cone(K: HPolyhedron) -> HPolyhedron:
    if not K.is_cone():
        raise NotACone("polar_cone expects zero right-hand sides")
    G = dd_h_to_v(K)
    return canonical_rows(K.dim, [(r, 0) for r in G.rays], [(l, 0) for l in G.lines])


def barrier_member(C: HPolyhedron, y: Sequence) -> bool:
    """y in barr(C), decided from the recession generators (no LP)."""
    return polar_cone(recession_cone(C)).contains(qvec(y))


def verify_motzkin_normal_criteria(C: HPolyhedron) -> Report:
    rep = Report("motzkin_normal_criteria")
    tnc = total_normal_cone(C)
    pol = polar_cone(recession_cone(C))
    rep.check("normal_range_equals_polar_of_recession", tnc.equals_set(pol))
    dec = motzkin_decompose(C)
    compact_cones = ConeUnion(tuple(normal_cone_at(C, v) for v in dec.compact_part.vertices))
    rep.check("normal_range_within_compact_part_cones", tnc.subset_of_union(compact_cones))
    rep.check("compact_part_cones_within_normal_range", compact_cones.subset_of_union(tnc))
    apex = translated_cone_apex(C)
    if apex is not None:
        rep.check("cone_apex_normal_cone_is_range", tnc.equals_set(normal_cone_at(C, apex[0])))
    else:
        rep.skip("cone_apex_normal_cone_is_range", "C has more than one minimal face")
        # converse direction: no slice vertex can carry the whole range
        rep.check("no_vertex_normal_cone_is_range",
                  not any(tnc.equals_set(normal_cone_at(C, v)) for v in dec.compact_part.vertices))
    return rep


# --------------------------------------------------------------------------
# generalized Minkowski sets


def _witness_outside(C: HPolyhedron, hull: HPolyhedron) -> Optional[QVector]:
    G = dd_h_to_v(C)
    for r in G.rays:
        for v in G.vertices:
            t = ONE
            for _ in range(64):
                p = add(v, scale(t, r))
                if not hull.contains(p):
                    return p
                t *= 2
    return None


def is_generalized_minkowski(C: HPolyhedron) -> tuple[bool, dict]:
    """C == conv MF(C), with the minimal faces and a witness point as certificate."""
    mf = minimal_faces(C)
    hull = mf.convex_hull()
    ok = set_equal(hull, C)
    slice_is_polytope = not dd_h_to_v(slice(C)).rays
    if ok != slice_is_polytope:
        raise InvariantViolation("definitional gM test disagrees with the slice test")
    cert = {"minimal_faces": mf, "witness": None}
    if not ok:
        cert["witness"] = _witness_outside(C, hull)
        if cert["witness"] is None:
            raise InvariantViolation("no point of C outside conv MF(C) found")
    return ok, cert


def gm_synthesize(C0: VPolyhedron, L: Subspace) -> HPolyhedron:
    """H-form of C0 + L for a polytope C0 and a subspace meeting its direction space trivially."""
    if not C0.is_bounded() or not C0.vertices:
        raise NotSupplementary("compact part must be a nonempty polytope")
    if L.ambient_dim != C0.dim:
        raise NotSupplementary("subspace lives in a different ambient space")
    v0 = C0.vertices[0]
    dirs = Subspace.span([sub(v, v0) for v in C0.vertices[1:]], C0.dim)
    if rank(dirs.basis + L.basis, C0.dim) != dirs.dim + L.dim:
        raise NotSupplementary("L meets the direction space of aff C0")
    H = dd_v_to_h(VPolyhedron(C0.dim, C0.vertices, (), L.basis))
    if not is_generalized_minkowski(H)[0]:
        raise InvariantViolation("synthesized set is not generalized Minkowski")
    return H


def is_invariant_union(points: Sequence, V: Subspace, U: Subspace) -> bool:
    """For S = union of p + V: S cap U + V == S, checked flat by flat."""
    sliced = [project_along(p, U, V) for p in points]
    return all(set_equal(flat(s, V), flat(p, V)) for s, p in zip(sliced, points))


# --------------------------------------------------------------------------
# Pareto-like set


def _pareto_region(C: HPolyhedron, x: QVector) -> HPolyhedron:
    """C intersected with x - 0+C."""
    back = HPolyhedron(C.dim, tuple(neg(a) for a in C.A), tuple(-dot(a, x) for a in C.A))
    return C.intersect(back)


def pareto_membership(C: HPolyhedron, x: Sequence) -> bool:
    x = _member(C, x)
    L = lineality_space(C)
    G = dd_h_to_v(_pareto_region(C, x))
    return (all(L.contains(sub(v, x)) for v in G.vertices)
            and all(L.contains(r) for r in G.rays)
            and all(L.contains(l) for l in G.lines))


def pareto_membership_lp(C: HPolyhedron, x: Sequence) -> bool:
    """Same predicate through one LP: every point y of the region has A(y - x) = 0."""
    x = _member(C, x)
    total = zeros(C.dim)
    for a in C.A:
        total = add(total, a)
    out = lp_maximize(_pareto_region(C, x), total)
    return isinstance(out, Optimal) and out.value == dot(total, x)


def rbd_slice_check(C: HPolyhedron) -> Report:
    faces = enumerate_faces_oracle(C)
    top = max(f.dim for f in faces)
    facets = [f for f in faces if f.dim == top - 1]
    if len(faces) == 1:
        raise AffineFlat("C is an affine flat; its relative boundary is empty")
    L = lineality_space(C)
    U = L.complement()
    S = slice(C, U)
    s_faces = enumerate_faces_oracle(S)
    s_top = max(f.dim for f in s_faces)
    s_facets = [f for f in s_faces if f.dim == s_top - 1]
    lifted = [dd_v_to_h(dd_h_to_v(g.as_h).minkowski_sum(VPolyhedron(C.dim, (zeros(C.dim),), (), L.basis)))
              for g in s_facets]
    matched = (len(lifted) == len(facets)
               and all(any(set_equal(h, f.as_h) for f in facets) for h in lifted)
               and all(any(set_equal(h, f.as_h) for h in lifted) for f in facets))
    rep = Report("rbd_slice")
    rep.check("relative_boundary_of_slice_plus_lineality", matched)
    rep.check("affine_hull_of_slice", set_equal(affine_hull(S),
                                                affine_hull(C).with_equalities(subspace_equations(U))))
    samples = [f.interior_point for f in faces if f.dim < top]
    ok = True
    for p in samples:
        m = pareto_membership(C, p)
        for l in L.basis:
            ok &= pareto_membership(C, add(p, l)) == m and pareto_membership(C, sub(p, l)) == m
    rep.check("pareto_lineality_invariance", ok)
    relint = next(f.interior_point for f in faces if f.dim == top)
    hyp_dim = top - L.dim >= 2
    on_boundary = all(pareto_membership(C, f.interior_point) for f in faces if f.dim < top)
    off_interior = not pareto_membership(C, relint)
    rep.details["pareto_equals_rbd_hypothesis"] = {
        "slice_dim_at_least_2": hyp_dim,
        "boundary_samples_in_M": on_boundary,
        "relint_sample_outside_M": off_interior,
    }
    if hyp_dim and on_boundary and off_interior:
        rep.check("pareto_equals_rbd_implies_gm", is_generalized_minkowski(C)[0])
    else:
        rep.skip("pareto_equals_rbd_implies_gm", "hypothesis not met on sampled points")
    return rep

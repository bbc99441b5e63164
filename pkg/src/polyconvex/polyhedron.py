"""Double description conversion, canonical forms, containment and the face oracle.

The face oracle is deliberately independent of the double description code:
it only uses linear programming over active sets, so tests can pit one
against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, EmptyPolyhedron, NotAMember, TooLarge
from .linalg import (ONE, ZERO, Q, QVector, Subspace, dot, is_zero, kernel_basis,
                     neg, primitive, project_along, rank, rref, scale, solve_linear,
                     sub, zeros)
from .lp import Optimal, feasible_point, lp_maximize
from .representation import HPolyhedron, VPolyhedron

ORACLE_ROW_BUDGET = 16


# --------------------------------------------------------------------------
# cone double description


def _combine(h, p, n):
    hp, hn = dot(h, p), dot(h, n)
    return primitive(tuple(hp * b - hn * a for a, b in zip(p, n)))


def cone_generators(ineqs: Sequence[Sequence], eqs: Sequence[Sequence], d: int):
    """Lines and extreme rays of {y in Q^d : H y <= 0, G y = 0}.

    Constraints are added one at a time; pairs of rays are combined only if
    the rank of their common active rows certifies adjacency.
    """
    lines = [tuple(ONE if j == i else ZERO for j in range(d)) for i in range(d)]
    rays: list = []
    processed: list = []
    for h, is_eq in [(tuple(g), True) for g in eqs] + [(tuple(h), False) for h in ineqs]:
        pivot = next((l for l in lines if dot(h, l)), None)
        if pivot is not None:
            hl = dot(h, pivot)
            lines = [primitive(sub(l, scale(dot(h, l) / hl, pivot)))
                     for l in lines if l is not pivot]
            rays = [primitive(sub(r, scale(dot(h, r) / hl, pivot))) for r in rays]
            if not is_eq:
                rays.append(primitive(pivot if hl < 0 else neg(pivot)))
            processed.append(h)
            continue
        pos, zero, negs = [], [], []
        for r in rays:
            s = dot(h, r)
            (pos if s > 0 else negs if s < 0 else zero).append(r)
        target = d - len(lines) - 2
        new = []
        if pos and negs:
            tight = {r: frozenset(i for i, g in enumerate(processed) if not dot(g, r))
                     for r in pos + negs}
            for p in pos:
                for q in negs:
                    common = tight[p] & tight[q]
                    if len(common) < target:
                        continue
                    if rank([processed[i] for i in common], d) == target:
                        new.append(_combine(h, p, q))
        rays = zero + new + ([] if is_eq else negs)
        rays = list(dict.fromkeys(rays))
        processed.append(h)
    return lines, rays


# --------------------------------------------------------------------------
# H -> V


@lru_cache(maxsize=8192)
def _h_to_v(P: HPolyhedron) -> Optional[VPolyhedron]:
    n = P.dim
    ineqs = [tuple(a) + (-bi,) for a, bi in zip(P.A, P.b)]
    ineqs.insert(0, zeros(n) + (-ONE,))
    eqs = [tuple(e) + (-di,) for e, di in zip(P.E, P.d)]
    lines, rays = cone_generators(ineqs, eqs, n + 1)
    L = Subspace.span([l[:n] for l in lines], n)
    Lperp = L.complement()
    verts, recs = set(), set()
    for r in rays:
        t = r[n]
        x = r[:n]
        if t > 0:
            verts.add(project_along(scale(ONE / t, x), Lperp, L))
        else:
            recs.add(primitive(project_along(x, Lperp, L)))
    if not verts:
        return None
    recs.discard(zeros(n))
    return VPolyhedron(n, tuple(sorted(verts)), tuple(sorted(recs)), L.basis)


def dd_h_to_v(P: HPolyhedron) -> VPolyhedron:
    """Canonical generators: slice vertices, primitive extreme rays modulo lines, RREF lines."""
    G = _h_to_v(P)
    if G is None:
        raise EmptyPolyhedron("polyhedron has no points")
    return G


def is_empty(P: HPolyhedron) -> bool:
    return _h_to_v(P) is None


# --------------------------------------------------------------------------
# V -> H


def canonical_rows(n: int, ineq: Iterable, eq: Iterable) -> HPolyhedron:
    """Normalize rows: RREF equalities, inequalities reduced modulo them and made primitive."""
    aug_eq = [tuple(a) + (Q(b),) for a, b in eq]
    E_rows, pivots = rref(aug_eq, n + 1) if aug_eq else ([], [])
    if n in pivots:
        raise EmptyPolyhedron("inconsistent equalities")
    E_rows = [tuple(r) for r in E_rows]
    out = set()
    for a, b in ineq:
        row = list(a) + [Q(b)]
        for er, p in zip(E_rows, pivots):
            f = row[p]
            if f:
                row = [x - f * y for x, y in zip(row, er)]
        if is_zero(row[:n]):
            if row[n] < 0:
                raise EmptyPolyhedron("inconsistent inequality")
            continue
        out.add(primitive(row))
    ineq_rows = sorted(out)
    return HPolyhedron(n, tuple(r[:n] for r in ineq_rows), tuple(r[n] for r in ineq_rows),
                       tuple(r[:n] for r in E_rows), tuple(r[n] for r in E_rows))


@lru_cache(maxsize=8192)
def dd_v_to_h(G: VPolyhedron) -> HPolyhedron:
    """Irredundant canonical H-form of conv(V) + cone(R) + span(L)."""
    n = G.dim
    if not G.vertices:
        raise EmptyPolyhedron("V-representation without vertices")
    # facets of the homogenized cone are the extreme rays of its dual
    cons = [tuple(v) + (ONE,) for v in G.vertices] + [tuple(r) + (ZERO,) for r in G.rays]
    eqs = [tuple(l) + (ZERO,) for l in G.lines]
    lines, rays = cone_generators(cons, eqs, n + 1)
    ineq = [(r[:n], -r[n]) for r in rays if not is_zero(r[:n])]
    eq = [(l[:n], -l[n]) for l in lines]
    return canonical_rows(n, ineq, eq)


def canonicalize(P: HPolyhedron) -> HPolyhedron:
    return dd_v_to_h(dd_h_to_v(P))


def remove_redundant(P: HPolyhedron) -> HPolyhedron:
    """LP-based redundancy removal (independent of double description)."""
    keep = list(range(P.m))
    for i in range(P.m):
        rest = [j for j in keep if j != i]
        Q_ = HPolyhedron(P.dim, tuple(P.A[j] for j in rest), tuple(P.b[j] for j in rest), P.E, P.d)
        out = lp_maximize(Q_, P.A[i])
        if isinstance(out, Optimal) and out.value <= P.b[i]:
            keep = rest
    return HPolyhedron(P.dim, tuple(P.A[j] for j in keep), tuple(P.b[j] for j in keep), P.E, P.d)


# --------------------------------------------------------------------------
# containment and equality


def v_inside_h(G: VPolyhedron, P: HPolyhedron) -> bool:
    """conv V + cone R + span L is a subset of P."""
    if not all(P.contains(v) for v in G.vertices):
        return False
    for r in G.rays:
        if any(dot(a, r) > 0 for a in P.A) or any(dot(e, r) for e in P.E):
            return False
    for l in G.lines:
        if any(dot(a, l) for a in P.A) or any(dot(e, l) for e in P.E):
            return False
    return True


def subset(P: HPolyhedron, Q_: HPolyhedron) -> bool:
    if P.dim != Q_.dim:
        raise DimensionMismatch("ambient dimensions differ")
    G = _h_to_v(P)
    return True if G is None else v_inside_h(G, Q_)


def set_equal(P: HPolyhedron, Q_: HPolyhedron) -> bool:
    return subset(P, Q_) and subset(Q_, P)


def v_equal(G: VPolyhedron, P: HPolyhedron) -> bool:
    return set_equal(dd_v_to_h(G), P)


def affine_dim(P: HPolyhedron) -> int:
    """Dimension of the affine hull; -1 when empty."""
    G = _h_to_v(P)
    if G is None:
        return -1
    v0 = G.vertices[0]
    dirs = [sub(v, v0) for v in G.vertices[1:]] + list(G.rays) + list(G.lines)
    return rank(dirs, P.dim) if dirs else 0


def affine_hull(P: HPolyhedron) -> HPolyhedron:
    """aff P as an H-polyhedron made of equalities only."""
    G = dd_h_to_v(P)
    v0 = G.vertices[0]
    dirs = Subspace.span([sub(v, v0) for v in G.vertices[1:]] + list(G.rays) + list(G.lines), P.dim)
    normals = dirs.complement().basis
    return HPolyhedron(P.dim, (), (), normals, tuple(dot(a, v0) for a in normals))


def flat(point: Sequence, L: Subspace) -> HPolyhedron:
    """The affine flat point + L."""
    normals = L.complement().basis
    return HPolyhedron(L.ambient_dim, (), (), normals, tuple(dot(a, point) for a in normals))


def minkowski_sum_h(P: HPolyhedron, Q_: HPolyhedron) -> HPolyhedron:
    return dd_v_to_h(dd_h_to_v(P).minkowski_sum(dd_h_to_v(Q_)))


# --------------------------------------------------------------------------
# unions of polyhedra


def _strict_region_nonempty(base: HPolyhedron, closed: list, strict: list) -> bool:
    """Is {x in base, a.x <= b for closed, a.x > b for strict} nonempty?"""
    n = base.dim
    A = [tuple(a) + (ZERO,) for a in base.A] + [tuple(a) + (ZERO,) for a, _ in closed]
    b = list(base.b) + [bb for _, bb in closed]
    for a, bb in strict:
        A.append(tuple(-x for x in a) + (ONE,))
        b.append(-bb)
    A.append(zeros(n) + (ONE,))
    b.append(ONE)
    E = tuple(tuple(e) + (ZERO,) for e in base.E)
    lifted = HPolyhedron(n + 1, tuple(A), tuple(b), E, base.d)
    out = lp_maximize(lifted, zeros(n) + (ONE,))
    return isinstance(out, Optimal) and out.value > 0


def _halfspaces(P: HPolyhedron):
    rows = list(zip(P.A, P.b))
    for e, di in zip(P.E, P.d):
        rows.append((e, di))
        rows.append((neg(e), -di))
    return rows


def uncovered_point_exists(P: HPolyhedron, pieces: Sequence[HPolyhedron]) -> bool:
    """Exact test of P \\ (union of pieces) != {} for closed polyhedra."""
    if is_empty(P):
        return False
    # what is left of P is relatively open in P, so pieces meeting P in
    # lower dimension cannot help cover it
    top = affine_dim(P)
    pieces = [Pc for Pc in pieces if affine_dim(P.intersect(Pc)) == top]
    if any(subset(P, Pc) for Pc in pieces):
        return False

    def rec(closed, strict, k):
        if not _strict_region_nonempty(P, closed, strict):
            return False
        if k == len(pieces):
            return True
        # split the complement of piece k into disjoint strict half-space cells
        hs = _halfspaces(pieces[k])
        for j, (a, bb) in enumerate(hs):
            if rec(closed + hs[:j], strict + [(a, bb)], k + 1):
                return True
        return False

    return rec([], [], 0)


def union_covers(P: HPolyhedron, pieces: Sequence[HPolyhedron]) -> bool:
    return not uncovered_point_exists(P, pieces)


def union_contains_point(pieces: Sequence[HPolyhedron], x: Sequence) -> bool:
    return any(Pc.contains(x) for Pc in pieces)


def unions_equal(first: Sequence[HPolyhedron], second: Sequence[HPolyhedron]) -> bool:
    return (all(union_covers(P, second) for P in first)
            and all(union_covers(P, first) for P in second))


# --------------------------------------------------------------------------
# face oracle


@dataclass(frozen=True)
class Face:
    """A nonempty face: the inequality rows in ``active_ineq`` held with equality."""

    active_ineq: frozenset
    as_h: HPolyhedron
    dim: int
    interior_point: QVector


def _relint_probe(P: HPolyhedron, S: frozenset):
    """max t over {A_S x = b_S, a_i x + t <= b_i (i not in S), t <= 1, Ex = d}."""
    n = P.dim
    A, b = [], []
    for i in range(P.m):
        if i not in S:
            A.append(tuple(P.A[i]) + (ONE,))
            b.append(P.b[i])
    A.append(zeros(n) + (ONE,))
    b.append(ONE)
    E = [tuple(e) + (ZERO,) for e in P.E] + [tuple(P.A[i]) + (ZERO,) for i in sorted(S)]
    d = list(P.d) + [P.b[i] for i in sorted(S)]
    lifted = HPolyhedron(n + 1, tuple(A), tuple(b), tuple(E), tuple(d))
    return lp_maximize(lifted, zeros(n) + (ONE,))


def _face_from_closure(P: HPolyhedron, S: frozenset, point) -> Face:
    face_h = P.tighten(S)
    rows = list(P.E) + [P.A[i] for i in S]
    return Face(S, face_h, P.dim - rank(rows, P.dim) if rows else P.dim, point)


@lru_cache(maxsize=1024)
def _oracle(P: HPolyhedron) -> tuple:
    m = P.m
    faces = []
    infeasible: list[frozenset] = []
    for size in range(m + 1):
        for S in combinations(range(m), size):
            S = frozenset(S)
            if any(bad <= S for bad in infeasible):
                continue
            out = _relint_probe(P, S)
            if not isinstance(out, Optimal):
                infeasible.append(S)
                continue
            if out.value > 0:
                # every row outside S is strictly slack: S is the full active set
                faces.append(_face_from_closure(P, S, out.point[:-1]))
    return tuple(faces)


def enumerate_faces_oracle(P: HPolyhedron) -> list[Face]:
    """All nonempty faces by brute force over active sets (exponential by design)."""
    if P.m > ORACLE_ROW_BUDGET:
        raise TooLarge(f"{P.m} inequality rows exceed the oracle budget of {ORACLE_ROW_BUDGET}")
    faces = _oracle(P)
    if not faces:
        raise EmptyPolyhedron("polyhedron has no points")
    return list(faces)


def minimal_oracle_faces(P: HPolyhedron) -> list[Face]:
    faces = enumerate_faces_oracle(P)
    low = min(f.dim for f in faces)
    return [f for f in faces if f.dim == low]


def smallest_face_containing(P: HPolyhedron, a: Sequence) -> Face:
    if not P.contains(a):
        raise NotAMember(f"point {list(map(str, a))} is not in the polyhedron")
    S = P.tight(a)
    return _face_from_closure(P, S, tuple(a))


def face_of(P: HPolyhedron, F: HPolyhedron) -> Optional[Face]:
    """The oracle face set-equal to F, if any."""
    for face in enumerate_faces_oracle(P):
        if set_equal(face.as_h, F):
            return face
    return None


def brute_force_vertices(P: HPolyhedron) -> list[QVector]:
    """Extreme points by solving every n-subset of rows (pointed P only)."""
    n = P.dim
    if n == 0:
        return [()] if P.contains(()) else []
    rows = list(zip(P.A, P.b))
    out = set()
    for S in combinations(range(len(rows)), max(0, n - len(P.E))):
        M = list(P.E) + [rows[i][0] for i in S]
        rhs = list(P.d) + [rows[i][1] for i in S]
        if rank(M, n) < n:
            continue
        x = solve_linear(M, rhs)
        if x is not None and P.contains(x):
            out.add(x)
    return sorted(out)


def lineality(P: HPolyhedron) -> Subspace:
    return kernel_basis(P.A + P.E, P.dim)


def require_nonempty(P: HPolyhedron) -> QVector:
    x = feasible_point(P)
    if x is None:
        raise EmptyPolyhedron("polyhedron has no points")
    return x

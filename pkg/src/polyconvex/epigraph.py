"""Piecewise-linear convex functions viewed through their epigraphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (DomainNotConeAt, EmptyPolyhedron, InvariantViolation, NotInDomain,
                     NotSublinear)
from .linalg import (ONE, ZERO, Q, QVector, Rational, Subspace, dot, is_zero, kernel_basis,
                     qvec, sub, zeros)
from .lp import Optimal, lp_maximize
from .polyhedron import (canonical_rows, canonicalize, dd_h_to_v, dd_v_to_h,
                         enumerate_faces_oracle, is_empty, set_equal, union_covers)
from .report import Report
from .representation import HPolyhedron, VPolyhedron
from .structure import (ConeUnion, lineality_space, minimal_faces, normal_cone_at, polar_cone,
                        recession_cone, total_normal_cone, translated_cone_apex)


@dataclass(frozen=True)
class PLFunction:
    """f(x) = max_i <a_i, x> + b_i on ``domain``, +inf elsewhere."""

    pieces: tuple
    domain: HPolyhedron

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a PL function needs at least one piece")
        pieces = tuple((qvec(a), Q(b)) for a, b in self.pieces)
        for a, _ in pieces:
            if len(a) != self.domain.dim:
                raise ValueError("piece gradient has the wrong dimension")
        object.__setattr__(self, "pieces", pieces)
        if is_empty(self.domain):
            raise EmptyPolyhedron("empty domain: the function is not proper")

    @classmethod
    def build(cls, pieces, domain: Optional[HPolyhedron] = None, dim: Optional[int] = None):
        pieces = tuple((qvec(a), Q(b)) for a, b in pieces)
        n = len(pieces[0][0]) if dim is None else dim
        return cls(pieces, domain if domain is not None else HPolyhedron.universe(n))

    @property
    def dim(self) -> int:
        return self.domain.dim

    def __call__(self, x: Sequence) -> Optional[Rational]:
        """Value at x; None stands for +infinity."""
        x = qvec(x)
        if not self.domain.contains(x):
            return None
        return max(dot(a, x) + b for a, b in self.pieces)

    def in_domain(self, x: Sequence) -> bool:
        return self.domain.contains(qvec(x))

    def is_sublinear(self) -> bool:
        return all(b == 0 for _, b in self.pieces) and self.domain.is_cone()

    def active_pieces(self, x: Sequence) -> list:
        fx = self(x)
        return [a for a, b in self.pieces if dot(a, x) + b == fx]


@dataclass(frozen=True)
class SubdifferentialSet:
    as_h: HPolyhedron

    def contains(self, y: Sequence) -> bool:
        return self.as_h.contains(qvec(y))


@dataclass(frozen=True)
class SubdifferentialRange:
    """A finite union of subdifferentials covering the range of the subdifferential map."""

    pieces: tuple

    def contains(self, y: Sequence) -> bool:
        y = qvec(y)
        return any(P.contains(y) for P in self.pieces)

    def equals_set(self, P: HPolyhedron) -> bool:
        from .polyhedron import subset
        return all(subset(S, P) for S in self.pieces) and union_covers(P, self.pieces)


# --------------------------------------------------------------------------
# epigraph and its inverse


def epi(f: PLFunction) -> HPolyhedron:
    D = f.domain
    A = [tuple(a) + (-ONE,) for a, _ in f.pieces] + [tuple(a) + (ZERO,) for a in D.A]
    b = [-bi for _, bi in f.pieces] + list(D.b)
    E = [tuple(e) + (ZERO,) for e in D.E]
    return HPolyhedron(f.dim + 1, tuple(A), tuple(b), tuple(E), D.d)


def from_epigraph(H: HPolyhedron) -> PLFunction:
    """Read pieces back from an epigraph's rows (t is the last coordinate)."""
    n = H.dim - 1
    pieces, dom_A, dom_b = [], [], []
    for a, bi in zip(H.A, H.b):
        c = a[n]
        if c < 0:
            pieces.append((tuple(x / -c for x in a[:n]), bi / c))
        elif c == 0:
            dom_A.append(a[:n])
            dom_b.append(bi)
        else:
            raise ValueError("row bounds t from above: not an epigraph")
    if any(e[n] for e in H.E):
        raise ValueError("equality involves t: not an epigraph")
    if not pieces:
        raise ValueError("no lower bound on t: function is not proper")
    dom = HPolyhedron(n, tuple(dom_A), tuple(dom_b), tuple(e[:n] for e in H.E), H.d)
    return PLFunction(tuple(pieces), dom)


def shift(f: PLFunction, u: Sequence, v) -> PLFunction:
    """g(x) = f(x + u) - v, so that epi g = epi f - (u, v)."""
    u, v = qvec(u), Q(v)
    pieces = tuple((a, b + dot(a, u) - v) for a, b in f.pieces)
    return PLFunction(pieces, f.domain.translate(tuple(-x for x in u)))


# --------------------------------------------------------------------------
# recession function and lineality


def recession_function(f: PLFunction) -> PLFunction:
    g = PLFunction(tuple((a, ZERO) for a, _ in f.pieces), recession_cone(f.domain))
    if not set_equal(epi(g), recession_cone(epi(f))):
        raise InvariantViolation("epi of the recession function is not the recession cone of epi f")
    return g


def graph_subspace(f: PLFunction, S: Subspace) -> Subspace:
    """{(d, f0+(d)) : d in S} for a subspace on which f0+ is linear."""
    a0 = f.pieces[0][0]
    return Subspace.span([tuple(d) + (dot(a0, d),) for d in S.basis], f.dim + 1)


def lin_f(f: PLFunction) -> Subspace:
    """Directions d with f0+(-d) = -f0+(d)."""
    a0 = f.pieces[0][0]
    rows = list(f.domain.A) + list(f.domain.E) + [sub(a, a0) for a, _ in f.pieces[1:]]
    S = kernel_basis(rows, f.dim)
    if graph_subspace(f, S) != lineality_space(epi(f)):
        raise InvariantViolation("graph of f0+ over lin f differs from lin epi f")
    return S


# --------------------------------------------------------------------------
# subdifferentials


def _subdifferential_h(f: PLFunction, x: QVector) -> HPolyhedron:
    N = dd_h_to_v(normal_cone_at(f.domain, x))
    grads = tuple(sorted(set(f.active_pieces(x))))
    return dd_v_to_h(VPolyhedron(f.dim, grads, N.rays, N.lines))


def subdifferential_at(f: PLFunction, x: Sequence) -> SubdifferentialSet:
    """conv of the active gradients plus the domain's normal cone at x."""
    x = qvec(x)
    if len(x) != f.dim or not f.in_domain(x):
        raise NotInDomain(f"{[str(a) for a in x]} is outside dom f")
    H = _subdifferential_h(f, x)
    if f.is_sublinear() and not is_zero(x):
        at0 = _subdifferential_h(f, zeros(f.dim))
        if not set_equal(H, at0.with_equalities([x], [f(x)])):
            raise InvariantViolation("sublinear subdifferential formula fails")
    return SubdifferentialSet(H)


def subdifferential_range(f: PLFunction) -> SubdifferentialRange:
    """One subdifferential per lower face of epi f, at its relative-interior point."""
    E = epi(f)
    k = len(f.pieces)
    out = []
    for face in enumerate_faces_oracle(E):
        if not any(i < k for i in face.active_ineq):
            continue
        H = _subdifferential_h(f, face.interior_point[:-1])
        if H not in out:
            out.append(H)
    return SubdifferentialRange(tuple(out))


def subgradient_via_support(f: PLFunction, x: Sequence, y: Sequence) -> bool:
    """x attains sup <y, .> - f, i.e. (x, f(x)) maximizes <(y, -1), .> over epi f."""
    x, y = qvec(x), qvec(y)
    out = lp_maximize(epi(f), tuple(y) + (-ONE,))
    return isinstance(out, Optimal) and out.value == dot(y, x) - f(x)


# --------------------------------------------------------------------------
# sublinear shifts and the polar of a sublinear epigraph


def _is_cone_set(P: HPolyhedron) -> bool:
    zero = zeros(P.dim)
    return P.contains(zero) and set_equal(P, P.homogeneous())


def sublinear_shift(f: PLFunction) -> Optional[tuple[QVector, Rational]]:
    """(u, v) with f(. + u) - v sublinear, when epi f has a single minimal face."""
    apex = translated_cone_apex(epi(f))
    if apex is None:
        return None
    p = apex[0]
    u, v = p[:-1], p[-1]
    g = from_epigraph(canonicalize(epi(shift(f, u, v))))
    if not g.is_sublinear():
        raise InvariantViolation("shifted function is not sublinear after re-expression")
    return u, v


def verify_sublinear_shift_criterion(f: PLFunction, u: Sequence) -> Report:
    u = qvec(u)
    if not f.in_domain(u):
        raise NotInDomain("u is outside dom f")
    if not _is_cone_set(f.domain.translate(tuple(-x for x in u))):
        raise DomainNotConeAt(f"dom f - {[str(a) for a in u]} is not a cone")
    rep = Report("sublinear_shift_criterion")
    g = shift(f, u, f(u))
    shift_ok = _is_cone_set(epi(g))
    range_ok = subdifferential_range(f).equals_set(subdifferential_at(f, u).as_h)
    rep.details["shift_is_sublinear"] = shift_ok
    rep.details["range_equals_subdifferential_at_u"] = range_ok
    rep.check("criterion_sides_agree", shift_ok == range_ok)
    # the shift at u works exactly when (u, f(u)) lies on a single minimal face of epi f
    mf = minimal_faces(epi(f))
    on_apex = len(mf) == 1 and mf.contains(tuple(u) + (f(u),))
    rep.check("agrees_with_single_minimal_face", shift_ok == on_apex)
    return rep


def polar_epi_sublinear(s: PLFunction) -> ConeUnion:
    """((dom s)^0 x {0}) union R+(ds(0) x {-1}), checked against the direct polar."""
    if not s.is_sublinear():
        raise NotSublinear("offsets must vanish and the domain must be a cone")
    n = s.dim
    pol_dom = polar_cone(s.domain)
    flat_part = HPolyhedron(
        n + 1, tuple(tuple(a) + (ZERO,) for a in pol_dom.A), pol_dom.b,
        tuple(tuple(e) + (ZERO,) for e in pol_dom.E) + (zeros(n) + (ONE,),), pol_dom.d + (ZERO,),
    )
    G = dd_h_to_v(subdifferential_at(s, zeros(n)).as_h)
    rays = [tuple(v) + (-ONE,) for v in G.vertices] + [tuple(r) + (ZERO,) for r in G.rays]
    lines = [tuple(l) + (ZERO,) for l in G.lines]
    slanted = dd_v_to_h(VPolyhedron(n + 1, (zeros(n + 1),), tuple(rays), tuple(lines)))
    flat_part = canonical_rows(n + 1, zip(flat_part.A, flat_part.b), zip(flat_part.E, flat_part.d))
    U = ConeUnion((flat_part, slanted))
    if not U.equals_set(polar_cone(epi(s))):
        raise InvariantViolation("polar of a sublinear epigraph differs from the two-part formula")
    return U


def verify_motzkin_function_criteria(f: PLFunction) -> Report:
    rep = Report("motzkin_function_criteria")
    f0 = recession_function(f)
    pol = polar_cone(f0.domain)
    tnc = total_normal_cone(f.domain)
    rep.check("polar_of_recession_domain_is_domain_normal_range", tnc.equals_set(pol))
    at0 = subdifferential_at(f0, zeros(f.dim)).as_h
    rep.check("recession_subdifferential_is_subdifferential_range",
              subdifferential_range(f).equals_set(at0))
    if set_equal(f.domain, HPolyhedron.universe(f.dim)):
        origin = HPolyhedron(f.dim, (), (), kernel_basis([], f.dim).basis, zeros(f.dim))
        rep.check("full_domain_degenerate_clause", set_equal(pol, origin) and tnc.equals_set(origin))
    else:
        rep.skip("full_domain_degenerate_clause", "dom f is not the whole space")
    return rep


# --------------------------------------------------------------------------
# random instances


def random_pl_function(rng: random.Random, n: Optional[int] = None) -> PLFunction:
    from .generators import random_general

    n = n if n is not None else rng.randint(1, 3)
    k = rng.randint(1, 5)
    pieces = [(tuple(Q(rng.randint(-2, 2)) for _ in range(n)),
               Q(rng.randint(-3, 3)) / rng.choice((1, 1, 2))) for _ in range(k)]
    domain = HPolyhedron.universe(n) if rng.random() < 0.5 else random_general(rng, n, rng.randint(1, 3))
    return PLFunction(tuple(pieces), domain)


def random_sublinear(rng: random.Random, n: Optional[int] = None) -> PLFunction:
    from .generators import random_cone

    n = n if n is not None else rng.randint(1, 3)
    k = rng.randint(1, 4)
    pieces = [(tuple(Q(rng.randint(-2, 2)) for _ in range(n)), ZERO) for _ in range(k)]
    domain = HPolyhedron.universe(n) if rng.random() < 0.5 else random_cone(rng, n)[0]
    return PLFunction(tuple(pieces), domain)

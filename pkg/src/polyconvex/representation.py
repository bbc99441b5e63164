"""H- and V-representations of polyhedra as immutable values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .linalg import (Q, QVector, Subspace, add, dot, is_zero, mat_vec,
                     qvec, scale, sub, zeros)


@dataclass(frozen=True)
class HPolyhedron:
    """The set {x in Q^dim : A x <= b, E x = d}."""

    dim: int
    A: tuple = ()
    b: tuple = ()
    E: tuple = ()
    d: tuple = ()

    def __post_init__(self):
        if len(self.A) != len(self.b) or len(self.E) != len(self.d):
            raise DimensionMismatch("row count and right-hand side length differ")
        for row in self.A + self.E:
            if len(row) != self.dim:
                raise DimensionMismatch(f"row of length {len(row)} in R^{self.dim}")

    @classmethod
    def from_rows(cls, dim: int, ineq: Iterable = (), eq: Iterable = ()) -> "HPolyhedron":
        """Build from ``[(a, b), ...]`` pairs meaning a.x <= b and a.x == b."""
        ineq = list(ineq)
        eq = list(eq)
        return cls(
            dim,
            tuple(qvec(a) for a, _ in ineq),
            tuple(Q(b) for _, b in ineq),
            tuple(qvec(a) for a, _ in eq),
            tuple(Q(b) for _, b in eq),
        )

    @classmethod
    def universe(cls, dim: int) -> "HPolyhedron":
        return cls(dim)

    @property
    def m(self) -> int:
        return len(self.A)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatch("point has wrong dimension")
        return all(dot(a, x) <= bi for a, bi in zip(self.A, self.b)) and all(
            dot(e, x) == di for e, di in zip(self.E, self.d)
        )

    def tight(self, x: Sequence) -> frozenset:
        """Indices of inequality rows active at ``x``."""
        return frozenset(i for i, (a, bi) in enumerate(zip(self.A, self.b)) if dot(a, x) == bi)

    def is_cone(self) -> bool:
        return is_zero(self.b) and is_zero(self.d)

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if other.dim != self.dim:
            raise DimensionMismatch("ambient dimensions differ")
        return HPolyhedron(self.dim, self.A + other.A, self.b + other.b,
                           self.E + other.E, self.d + other.d)

    def with_equalities(self, rows: Iterable, rhs: Iterable = None) -> "HPolyhedron":
        rows = tuple(qvec(r) for r in rows)
        rhs = zeros(len(rows)) if rhs is None else qvec(rhs)
        return HPolyhedron(self.dim, self.A, self.b, self.E + rows, self.d + rhs)

    def tighten(self, active: Iterable[int]) -> "HPolyhedron":
        """Turn the listed inequality rows into equalities (the face they define)."""
        active = sorted(set(active))
        return HPolyhedron(
            self.dim, self.A, self.b,
            self.E + tuple(self.A[i] for i in active),
            self.d + tuple(self.b[i] for i in active),
        )

    def translate(self, v: Sequence) -> "HPolyhedron":
        """The set self + v."""
        return HPolyhedron(
            self.dim, self.A, tuple(bi + dot(a, v) for a, bi in zip(self.A, self.b)),
            self.E, tuple(di + dot(e, v) for e, di in zip(self.E, self.d)),
        )

    def scaled(self, t) -> "HPolyhedron":
        """The set t * self for t > 0."""
        t = Q(t)
        return HPolyhedron(self.dim, self.A, tuple(t * bi for bi in self.b),
                           self.E, tuple(t * di for di in self.d))

    def homogeneous(self) -> "HPolyhedron":
        """Same rows with zero right-hand sides."""
        return HPolyhedron(self.dim, self.A, zeros(self.m), self.E, zeros(len(self.E)))

    def slack(self, x: Sequence) -> QVector:
        return tuple(bi - v for bi, v in zip(self.b, mat_vec(self.A, x)))


@dataclass(frozen=True)
class VPolyhedron:
    """conv(vertices) + cone(rays) + span(lines)."""

    dim: int
    vertices: tuple = ()
    rays: tuple = ()
    lines: tuple = ()

    @classmethod
    def from_lists(cls, dim: int, vertices=(), rays=(), lines=()) -> "VPolyhedron":
        return cls(dim, tuple(qvec(v) for v in vertices), tuple(qvec(r) for r in rays),
                   tuple(qvec(l) for l in lines))

    @property
    def lineality(self) -> Subspace:
        return Subspace.span(self.lines, self.dim)

    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    def minkowski_sum(self, other: "VPolyhedron") -> "VPolyhedron":
        verts = tuple(add(u, v) for u in self.vertices for v in other.vertices)
        return VPolyhedron(self.dim, verts, self.rays + other.rays, self.lines + other.lines)

    def translate(self, v: Sequence) -> "VPolyhedron":
        return VPolyhedron(self.dim, tuple(add(u, v) for u in self.vertices), self.rays, self.lines)

    def interior_point(self) -> QVector:
        """A relative-interior point: vertex barycenter plus the sum of the rays."""
        n = len(self.vertices)
        p = zeros(self.dim)
        for v in self.vertices:
            p = add(p, v)
        p = scale(Q(1) / n, p)
        for r in self.rays:
            p = add(p, r)
        return p

    def points_sample(self) -> list:
        """Vertices and vertex-plus-generator points, all inside the set."""
        out = list(self.vertices)
        for v in self.vertices:
            for g in self.rays + self.lines:
                out.append(add(v, g))
            for g in self.lines:
                out.append(sub(v, g))
        return out

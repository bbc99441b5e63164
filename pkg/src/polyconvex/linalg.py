"""Exact rational linear algebra.

Scalars are ``gmpy2.mpq`` values (always in lowest terms, arbitrary
precision).  Vectors are tuples of scalars and matrices are tuples of row
tuples; nothing here mutates its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))
QVector = tuple
QMatrix = tuple

ZERO = mpq(0)
ONE = mpq(1)


def Q(value, den=None) -> Rational:
    """Coerce an int, str ("p/q"), Fraction or mpq to an exact rational."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return mpq(value)


def qvec(values: Iterable) -> QVector:
    return tuple(Q(v) for v in values)


def qmat(rows: Iterable[Iterable]) -> QMatrix:
    return tuple(qvec(r) for r in rows)


def zeros(n: int) -> QVector:
    return (ZERO,) * n


def unit(n: int, i: int) -> QVector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def dot(u: Sequence, v: Sequence) -> Rational:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def add(u: Sequence, v: Sequence) -> QVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> QVector:
    return tuple(a - b for a, b in zip(u, v))


def scale(t, v: Sequence) -> QVector:
    return tuple(t * a for a in v)


def neg(v: Sequence) -> QVector:
    return tuple(-a for a in v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def mat_vec(A: Sequence[Sequence], x: Sequence) -> QVector:
    return tuple(dot(row, x) for row in A)


def transpose(A: Sequence[Sequence], ncols: int) -> QMatrix:
    return tuple(tuple(row[j] for row in A) for j in range(ncols))


def primitive(v: Sequence) -> QVector:
    """Positive rescaling of ``v`` to a primitive integer vector."""
    den = 1
    for a in v:
        d = int(a.denominator)
        den = den * d // gcd(den, d)
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    if g == 0:
        return tuple(ZERO for _ in v)
    return tuple(mpq(a // g) for a in ints)


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        if pv != 1:
            M[r] = [a / pv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n stored by its canonical RREF basis."""

    basis: tuple
    ambient_dim: int

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int) -> "Subspace":
        vs = [tuple(Q(a) for a in v) for v in vectors]
        for v in vs:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in R^{n}")
        reduced, _ = rref(vs, n)
        return cls(tuple(tuple(r) for r in reduced), n)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls((), n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(tuple(unit(n, i) for i in range(n)), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return rank(self.basis + (tuple(v),), self.ambient_dim) == self.dim

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        # x in both iff x is orthogonal to both complements
        rows = orthogonal_complement(self).basis + orthogonal_complement(other).basis
        return kernel_basis(rows, self.ambient_dim)

    def complement(self) -> "Subspace":
        return orthogonal_complement(self)

    def coordinates(self, v: Sequence) -> Optional[QVector]:
        """Coefficients of ``v`` in the stored basis, or None if v is outside."""
        if not self.basis:
            return () if is_zero(v) else None
        return solve_linear(transpose(self.basis, self.ambient_dim), v)


def kernel_basis(A: Sequence[Sequence], n: int) -> Subspace:
    """{y : Ay = 0} as a canonical Subspace of Q^n."""
    reduced, pivots = rref(A, n)
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, n)


def orthogonal_complement(S: Subspace) -> Subspace:
    return kernel_basis(S.basis, S.ambient_dim)


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[QVector]:
    """One exact solution of Ax = b (free variables set to 0), or None."""
    if not A:
        return None if any(b) else ()
    n = len(A[0])
    aug = [list(row) + [Q(bi)] for row, bi in zip(A, b)]
    reduced, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [ZERO] * n
    for row, p in zip(reduced, pivots):
        x[p] = row[n]
    return tuple(x)


def project_along(v: Sequence, U: Subspace, L: Subspace) -> QVector:
    """Component of ``v`` in U for the direct sum U (+) L = Q^n."""
    n = U.ambient_dim
    cols = U.basis + L.basis
    if not cols:
        return zeros(n)
    coeffs = solve_linear(transpose(cols, n), v)
    if coeffs is None:
        raise ValueError("U and L do not span the ambient space")
    out = zeros(n)
    for c, u in zip(coeffs[: U.dim], U.basis):
        if c:
            out = add(out, scale(c, u))
    return out


def supplementary(U: Subspace, L: Subspace) -> bool:
    """True iff U (+) L is a direct sum equal to the whole space."""
    n = U.ambient_dim
    return U.dim + L.dim == n and rank(U.basis + L.basis, n) == n


def fmt(v) -> str:
    return str(v)


def fmt_vec(v: Sequence) -> list[str]:
    return [str(a) for a in v]

"""Exact two-phase tableau simplex with Bland's rule.

Every outcome carries a certificate that can be re-checked by substitution:
an optimal point, a feasible point plus improving ray, or a Farkas vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DimensionMismatch, InvariantViolation
from .linalg import ONE, ZERO, QVector, Rational, dot, qvec, solve_linear, transpose
from .representation import HPolyhedron


@dataclass(frozen=True)
class Optimal:
    value: Rational
    point: QVector


@dataclass(frozen=True)
class Unbounded:
    feasible_point: QVector
    improving_ray: QVector


@dataclass(frozen=True)
class Infeasible:
    # multipliers for the inequality rows (>= 0) followed by the equality rows (free)
    farkas_certificate: QVector


LPOutcome = Optimal | Unbounded | Infeasible


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        row = T[r]
        pv = row[c]
        if pv != 1:
            row = [a / pv for a in row]
            T[r] = row
        nz = [j for j, a in enumerate(row) if a]
        for i, other in enumerate(T):
            if i != r:
                f = other[c]
                if f:
                    for j in nz:
                        other[j] -= f * row[j]
        self.basis[r] = c

    def reduced_profit(self, cost, ncols):
        prof = list(cost[:ncols])
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.T[i]
                for j in range(ncols):
                    if row[j]:
                        prof[j] -= cb * row[j]
        return prof

    def run(self, cost, ncols):
        """Maximize cost.z over the tableau; returns None or the unbounded column."""
        while True:
            prof = self.reduced_profit(cost, ncols)
            enter = next((j for j in range(ncols) if prof[j] > 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)

    def values(self, ncols):
        z = [ZERO] * ncols
        for i, bi in enumerate(self.basis):
            if bi < ncols:
                z[bi] = self.T[i][-1]
        return z


def _standard_form(P: HPolyhedron):
    """Rows of [A -A I; E -E 0] z = [b; d], z >= 0."""
    m, k = P.m, len(P.E)
    rows, rhs = [], []
    for i in range(m):
        slack = [ZERO] * m
        slack[i] = ONE
        rows.append(list(P.A[i]) + [-a for a in P.A[i]] + slack)
        rhs.append(P.b[i])
    for j in range(k):
        rows.append(list(P.E[j]) + [-a for a in P.E[j]] + [ZERO] * m)
        rhs.append(P.d[j])
    return rows, rhs


def _phase_one(P: HPolyhedron):
    """Returns (tableau, ncols) on success or an Infeasible outcome."""
    n, m = P.dim, P.m
    rows, rhs = _standard_form(P)
    nrows = len(rows)
    ncols = 2 * n + m
    sign = []
    for i in range(nrows):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
            sign.append(-1)
        else:
            sign.append(1)
    # slack columns serve as the starting basis where possible
    art_rows = [i for i in range(nrows) if not (i < m and sign[i] == 1)]
    art_col = {i: ncols + t for t, i in enumerate(art_rows)}
    total = ncols + len(art_rows)
    full = []
    basis = []
    for i in range(nrows):
        extra = [ZERO] * len(art_rows)
        if i in art_col:
            extra[art_col[i] - ncols] = ONE
            basis.append(art_col[i])
        else:
            basis.append(2 * n + i)
        full.append(rows[i] + extra)
    tab = _Tableau(full, rhs, basis)
    cost = [ZERO] * ncols + [-ONE] * len(art_rows)
    tab.run(cost, total)
    infeas = sum((tab.T[i][-1] for i, bi in enumerate(tab.basis) if bi >= ncols), ZERO)
    if infeas > 0:
        # dual multipliers of the phase-one optimum give a Farkas vector
        B = [[full[i][bi] for bi in tab.basis] for i in range(nrows)]
        cB = [ONE if bi >= ncols else ZERO for bi in tab.basis]
        pi = solve_linear(transpose(B, nrows), cB)
        if pi is None:
            raise InvariantViolation("singular phase-one basis")
        y = tuple(-s * p for s, p in zip(sign, pi))
        return Infeasible(y)
    # drive zero-level artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tab.T):
        if tab.basis[r] >= ncols:
            c = next((j for j in range(ncols) if tab.T[r][j]), None)
            if c is None:
                del tab.T[r]
                del tab.basis[r]
                continue
            tab.pivot(r, c)
        r += 1
    tab.T = [row[:ncols] + [row[-1]] for row in tab.T]
    return tab, ncols


def _extract_x(z, n):
    return tuple(z[j] - z[n + j] for j in range(n))


def lp_maximize(P: HPolyhedron, c: Sequence) -> LPOutcome:
    """Maximize <c, x> over P exactly."""
    c = qvec(c)
    if len(c) != P.dim:
        raise DimensionMismatch(f"objective has length {len(c)}, polyhedron lives in R^{P.dim}")
    n = P.dim
    res = _phase_one(P)
    if isinstance(res, Infeasible):
        return res
    tab, ncols = res
    cost = list(c) + [-a for a in c] + [ZERO] * P.m
    enter = tab.run(cost, ncols)
    z = tab.values(ncols)
    x = _extract_x(z, n)
    if enter is not None:
        dz = [ZERO] * ncols
        dz[enter] = ONE
        for i, bi in enumerate(tab.basis):
            dz[bi] = -tab.T[i][enter]
        return Unbounded(x, _extract_x(dz, n))
    return Optimal(dot(c, x), x)


def feasible_point(P: HPolyhedron) -> Optional[QVector]:
    res = _phase_one(P)
    if isinstance(res, Infeasible):
        return None
    tab, ncols = res
    return _extract_x(tab.values(ncols), P.dim)


def farkas_certificate(P: HPolyhedron) -> Optional[QVector]:
    res = _phase_one(P)
    return res.farkas_certificate if isinstance(res, Infeasible) else None


def verify_outcome(P: HPolyhedron, c: Sequence, out: LPOutcome) -> bool:
    """Re-check a certificate by direct substitution."""
    c = qvec(c)
    if isinstance(out, Optimal):
        return P.contains(out.point) and dot(c, out.point) == out.value
    if isinstance(out, Unbounded):
        r = out.improving_ray
        return (P.contains(out.feasible_point)
                and all(dot(a, r) <= 0 for a in P.A)
                and all(dot(e, r) == 0 for e in P.E)
                and dot(c, r) > 0)
    y = out.farkas_certificate
    m = P.m
    if len(y) != m + len(P.E) or any(yi < 0 for yi in y[:m]):
        return False
    rows = P.A + P.E
    rhs = P.b + P.d
    combo = [sum((yi * row[j] for yi, row in zip(y, rows)), ZERO) for j in range(P.dim)]
    return not any(combo) and dot(y, rhs) < 0


def support_value(P: HPolyhedron, c: Sequence) -> Optional[Rational]:
    """sigma_P(c); None when the supremum is infinite (or P is empty)."""
    out = lp_maximize(P, c)
    return out.value if isinstance(out, Optimal) else None


def argmax_face(P: HPolyhedron, c: Sequence) -> Optional[HPolyhedron]:
    """The face of maximizers of <c, .> over P, or None when unbounded/empty."""
    out = lp_maximize(P, c)
    if not isinstance(out, Optimal):
        return None
    return P.with_equalities([qvec(c)], [out.value])


__all__ = ["Optimal", "Unbounded", "Infeasible", "LPOutcome", "lp_maximize",
           "feasible_point", "farkas_certificate", "verify_outcome", "support_value",
           "argmax_face"]

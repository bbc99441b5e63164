"""Seeded random instance families.

Each generator takes a ``random.Random`` and returns an instance; the seed
alone fixes every instance, which keeps CLI reports reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .linalg import Q, QVector, Subspace, add, dot, is_zero, rank
from .polyhedron import dd_v_to_h
from .representation import HPolyhedron, VPolyhedron

FAMILIES = ("polytope", "cone", "translated-cone", "product-with-subspace", "general",
            "pl-function", "sublinear")
SET_FAMILIES = FAMILIES[:5]
FUNCTION_FAMILIES = FAMILIES[5:]


@dataclass(frozen=True)
class Instance:
    family: str
    index: int
    polyhedron: Optional[HPolyhedron] = None
    function: object = None
    apex: Optional[QVector] = None  # planted apex for the cone families


def _rational(rng: random.Random, lo=-3, hi=3, dens=(1, 1, 1, 2)) -> object:
    return Q(rng.randint(lo, hi)) / rng.choice(dens)


def _vector(rng, n, lo=-3, hi=3, nonzero=False, dens=(1,)):
    while True:
        v = tuple(_rational(rng, lo, hi, dens) for _ in range(n))
        if not nonzero or not is_zero(v):
            return v


def random_general(rng: random.Random, n: Optional[int] = None, m: Optional[int] = None) -> HPolyhedron:
    """Random rows shifted so a planted point is feasible."""
    n = n if n is not None else rng.randint(1, 4)
    m = m if m is not None else rng.randint(1, 8)
    x0 = _vector(rng, n, -2, 2, dens=(1, 2))
    A, b = [], []
    for _ in range(m):
        a = _vector(rng, n, -3, 3, nonzero=True)
        A.append(a)
        b.append(dot(a, x0) + rng.choice((0, 0, 1, 2, Q(1, 2))))
    E, d = [], []
    if n >= 2 and rng.random() < 0.15:
        e = _vector(rng, n, -2, 2, nonzero=True)
        E.append(e)
        d.append(dot(e, x0))
    return HPolyhedron(n, tuple(A), tuple(b), tuple(E), tuple(d))


def random_polytope(rng: random.Random, n: Optional[int] = None) -> HPolyhedron:
    n = n if n is not None else rng.randint(1, 3)
    while True:
        k = rng.randint(2, n + 3)
        pts = [_vector(rng, n, -3, 3) for _ in range(k)]
        if len(set(pts)) >= 2:
            H = dd_v_to_h(VPolyhedron(n, tuple(pts)))
            if H.m <= 10:
                return H


def random_cone_generators(rng: random.Random, n: int):
    k = rng.randint(1, n + 1)
    rays = [_vector(rng, n, -2, 2, nonzero=True) for _ in range(k)]
    lines = []
    if n >= 2 and rng.random() < 0.3:
        lines.append(_vector(rng, n, -2, 2, nonzero=True))
    return rays, lines


def random_cone(rng: random.Random, n: Optional[int] = None, apex: Optional[QVector] = None):
    n = n if n is not None else rng.randint(1, 3)
    while True:
        rays, lines = random_cone_generators(rng, n)
        zero = tuple(Q(0) for _ in range(n))
        H = dd_v_to_h(VPolyhedron(n, (zero,), tuple(rays), tuple(lines)))
        if H.m <= 10:
            break
    if apex is None:
        return H, zero
    return H.translate(apex), apex


def random_product_with_subspace(rng: random.Random, n: Optional[int] = None) -> HPolyhedron:
    n = n if n is not None else rng.randint(2, 4)
    k = rng.randint(1, n - 1)
    lines = []
    while len(lines) < n - k:
        v = _vector(rng, n, -2, 2, nonzero=True)
        if rank(lines + [v], n) == len(lines) + 1:
            lines.append(v)
    L = Subspace.span(lines, n)
    U = L.complement()
    pts = []
    for _ in range(rng.randint(2, k + 3)):
        c = _vector(rng, U.dim, -2, 2)
        p = tuple(Q(0) for _ in range(n))
        for ci, u in zip(c, U.basis):
            p = add(p, tuple(ci * a for a in u))
        pts.append(p)
    return dd_v_to_h(VPolyhedron(n, tuple(pts), (), tuple(lines)))


def random_supplement(rng: random.Random, L: Subspace) -> Subspace:
    """A random subspace U with U (+) L = whole space (a skewed copy of L's complement)."""
    n = L.ambient_dim
    vecs = []
    for w in L.complement().basis:
        for l in L.basis:
            c = Q(rng.randint(-2, 2))
            w = add(w, tuple(c * a for a in l))
        vecs.append(w)
    return Subspace.span(vecs, n)


def generate_set(family: str, rng: random.Random, index: int = 0) -> Instance:
    if family == "polytope":
        return Instance(family, index, random_polytope(rng))
    if family == "cone":
        H, apex = random_cone(rng)
        return Instance(family, index, H, apex=apex)
    if family == "translated-cone":
        n = rng.randint(1, 3)
        H, apex = random_cone(rng, n, apex=_vector(rng, n, -3, 3, dens=(1, 2)))
        return Instance(family, index, H, apex=apex)
    if family == "product-with-subspace":
        return Instance(family, index, random_product_with_subspace(rng))
    if family == "general":
        return Instance(family, index, random_general(rng))
    raise ValueError(f"unknown set family {family!r}")


def generate(family: str, seed: int, count: int) -> list[Instance]:
    """``count`` instances of ``family`` ("mixed" cycles through every family)."""
    from .epigraph import random_pl_function, random_sublinear

    rng = random.Random(f"{family}:{seed}")
    out = []
    for i in range(count):
        fam = FAMILIES[i % len(FAMILIES)] if family == "mixed" else family
        if fam == "pl-function":
            out.append(Instance(fam, i, function=random_pl_function(rng)))
        elif fam == "sublinear":
            out.append(Instance(fam, i, function=random_sublinear(rng)))
        else:
            out.append(generate_set(fam, rng, i))
    return out


__all__ = ["FAMILIES", "Instance", "generate", "generate_set", "random_general",
           "random_polytope", "random_cone", "random_product_with_subspace",
           "random_supplement"]

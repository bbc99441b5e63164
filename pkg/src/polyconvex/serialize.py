"""JSON schemas ``polyhedron.v1`` and ``plfunction.v1`` with exact rational strings."""

from __future__ import annotations

from .linalg import Q, Subspace, qvec
from .representation import HPolyhedron, VPolyhedron

POLYHEDRON_SCHEMA = "polyhedron.v1"
PLFUNCTION_SCHEMA = "plfunction.v1"


class SchemaError(ValueError):
    pass


def _strs(v):
    return [str(a) for a in v]


def _vec(raw, n, what):
    if not isinstance(raw, list) or len(raw) != n:
        raise SchemaError(f"{what}: expected a list of {n} rationals")
    try:
        return qvec(str(a) if isinstance(a, (int, str)) else _bad(a) for a in raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"{what}: {exc}") from exc


def _bad(a):
    raise SchemaError(f"rational must be an integer or 'p/q' string, got {a!r}")


def _scalar(raw, what):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise SchemaError(f"{what}: expected an integer or 'p/q' string")
    try:
        return Q(str(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{what}: {exc}") from exc


def h_to_json(P: HPolyhedron) -> dict:
    return {
        "schema": POLYHEDRON_SCHEMA,
        "dim": P.dim,
        "ineq": [{"a": _strs(a), "b": str(b)} for a, b in zip(P.A, P.b)],
        "eq": [{"a": _strs(e), "b": str(d)} for e, d in zip(P.E, P.d)],
    }


def v_to_json(G: VPolyhedron) -> dict:
    return {
        "schema": POLYHEDRON_SCHEMA,
        "dim": G.dim,
        "vertices": [_strs(v) for v in G.vertices],
        "rays": [_strs(r) for r in G.rays],
        "lines": [_strs(l) for l in G.lines],
    }


def _dim(obj):
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    schema = obj.get("schema", POLYHEDRON_SCHEMA)
    if schema != POLYHEDRON_SCHEMA:
        raise SchemaError(f"unsupported schema {schema!r}")
    n = obj.get("dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise SchemaError("'dim' must be a nonnegative integer")
    return n


def is_v_json(obj) -> bool:
    return isinstance(obj, dict) and any(k in obj for k in ("vertices", "rays", "lines"))


def h_from_json(obj) -> HPolyhedron:
    n = _dim(obj)
    rows = {}
    for key in ("ineq", "eq"):
        raw = obj.get(key, [])
        if not isinstance(raw, list):
            raise SchemaError(f"'{key}' must be a list")
        rows[key] = []
        for k, r in enumerate(raw):
            if not isinstance(r, dict) or "a" not in r or "b" not in r:
                raise SchemaError(f"{key}[{k}] must have 'a' and 'b'")
            rows[key].append((_vec(r["a"], n, f"{key}[{k}].a"), _scalar(r["b"], f"{key}[{k}].b")))
    return HPolyhedron.from_rows(n, rows["ineq"], rows["eq"])


def v_from_json(obj) -> VPolyhedron:
    n = _dim(obj)
    parts = {}
    for key in ("vertices", "rays", "lines"):
        raw = obj.get(key, [])
        if not isinstance(raw, list):
            raise SchemaError(f"'{key}' must be a list")
        parts[key] = tuple(_vec(v, n, f"{key}[{k}]") for k, v in enumerate(raw))
    return VPolyhedron(n, parts["vertices"], parts["rays"], parts["lines"])


def subspace_from_json(raw, n) -> Subspace:
    if not isinstance(raw, list):
        raise SchemaError("subspace must be a list of vectors")
    return Subspace.span([_vec(v, n, f"subspace[{k}]") for k, v in enumerate(raw)], n)


def f_to_json(f) -> dict:
    return {
        "schema": PLFUNCTION_SCHEMA,
        "dim": f.dim,
        "pieces": [{"a": _strs(a), "b": str(b)} for a, b in f.pieces],
        "domain": h_to_json(f.domain),
    }


def f_from_json(obj):
    from .epigraph import PLFunction

    if not isinstance(obj, dict) or obj.get("schema", PLFUNCTION_SCHEMA) != PLFUNCTION_SCHEMA:
        raise SchemaError("expected a plfunction.v1 object")
    n = obj.get("dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise SchemaError("'dim' must be a nonnegative integer")
    raw = obj.get("pieces")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("'pieces' must be a nonempty list")
    pieces = []
    for k, p in enumerate(raw):
        if not isinstance(p, dict) or "a" not in p or "b" not in p:
            raise SchemaError(f"pieces[{k}] must have 'a' and 'b'")
        pieces.append((_vec(p["a"], n, f"pieces[{k}].a"), _scalar(p["b"], f"pieces[{k}].b")))
    dom = obj.get("domain", {"dim": n})
    domain = h_from_json(dom)
    if domain.dim != n:
        raise SchemaError("domain dimension differs from function dimension")
    return PLFunction(tuple(pieces), domain)

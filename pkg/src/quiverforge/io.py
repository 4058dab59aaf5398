"""
JSON forms of the package's values.

Scalars are {"num", "den"}, {"re", "im"} or {"novikov": [{"exp", "coeff"}],
"trunc"}; plain integers and "p/q" strings are accepted on input.  Elements
are lists of {"coeff", "path": [arrow ids]} or {"coeff", "e": vertex}.
Algebras may be given inline or by a built-in model name (see ``MODELS``).
"""

import json
from fractions import Fraction

from .algebra import QuiverAlgebra
from .localization import _rebase_pair
from .quiver import Arrow, Graph, Quiver
from .representation import MatrixRep
from .scalars import GaussianRational, Novikov
from .symbolic import SymbolicRep

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def _need(d, key, where):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError("%s: missing field %r" % (where, key))
    return d[key]


# scalars

def scalar_from_json(x):
    if isinstance(x, bool):
        raise SchemaError("boolean is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise SchemaError("bad rational %r" % x) from None
    if isinstance(x, dict):
        if "novikov" in x:
            terms = [(Fraction(_need(t, "exp", "novikov term")),
                      scalar_from_json(_need(t, "coeff", "novikov term")))
                     for t in x["novikov"]]
            return Novikov(terms, Fraction(x.get("trunc", 10)))
        if "re" in x or "im" in x:
            re = scalar_from_json(x.get("re", 0))
            im = scalar_from_json(x.get("im", 0))
            return GaussianRational(re, im)
        if "num" in x:
            den = x.get("den", 1)
            if not isinstance(den, int) or den <= 0:
                raise SchemaError("den must be a positive integer")
            return Fraction(int(x["num"]), den)
    raise SchemaError("cannot read scalar %r" % (x,))


def scalar_to_json(c):
    if isinstance(c, int):
        c = Fraction(c)
    if isinstance(c, Fraction):
        return {"num": c.numerator, "den": c.denominator}
    if isinstance(c, GaussianRational):
        return {"re": scalar_to_json(c.re), "im": scalar_to_json(c.im)}
    if isinstance(c, Novikov):
        return {"novikov": [{"exp": str(e), "coeff": scalar_to_json(k)} for e, k in c.terms],
                "trunc": str(c.trunc)}
    raise TypeError("unsupported scalar %r" % (c,))


# elements

def element_from_json(A, items):
    if isinstance(items, str):
        return A.parse(items)
    if not isinstance(items, list):
        raise SchemaError("element must be a list of terms")
    out = A.zero()
    for t in items:
        c = scalar_from_json(_need(t, "coeff", "term"))
        if "path" in t:
            path = t["path"]
            if not path:
                raise SchemaError("empty path; use {\"e\": vertex}")
            for a in path:
                if a not in A.quiver.arrows:
                    raise SchemaError("unknown arrow %r" % a)
            out = out + A.scalar(c) * A.path(*path)
        elif "e" in t:
            if str(t["e"]) not in A.quiver.framing:
                raise SchemaError("unknown vertex %r" % t["e"])
            out = out + A.scalar(c) * A.e(t["e"])
        else:
            raise SchemaError("term needs 'path' or 'e'")
    return out


def element_to_json(f):
    out = []
    for (h, t, w), c in sorted(f.terms.items(), key=lambda kv: (len(kv[0][2]), kv[0])):
        term = {"coeff": scalar_to_json(c)}
        if w:
            term["path"] = list(w)
        else:
            term["e"] = h
        out.append(term)
    return out


def _matrix_from(A, M):
    return [[element_from_json(A, x) for x in row] for row in M]


def _matrix_to(M):
    return [[element_to_json(x) for x in row] for row in M]


# graphs and quivers

def graph_from_json(d):
    vs = []
    for v in _need(d, "vertices", "graph"):
        if isinstance(v, dict):
            vs.append((str(_need(v, "id", "vertex")), int(v.get("euler", 2))))
        else:
            vs.append((str(v), 2))
    es = []
    for e in d.get("edges", []):
        if isinstance(e, dict):
            es.append((str(_need(e, "a", "edge")), str(_need(e, "b", "edge")),
                       int(e.get("euler", 1)), int(e.get("jump", 1)), int(e.get("codim", 2))))
        else:
            es.append(tuple(e))
    try:
        return Graph(vs, es)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def graph_to_json(g):
    return {"vertices": [{"id": v, "euler": chi} for v, chi in g.vertices],
            "edges": [{"a": a, "b": b, "euler": chi, "jump": j, "codim": c}
                      for a, b, chi, j, c in g.edges]}


def quiver_from_json(d):
    vs = []
    for v in _need(d, "vertices", "quiver"):
        if isinstance(v, dict):
            vs.append((str(_need(v, "id", "vertex")), bool(v.get("framing", False))))
        else:
            vs.append((str(v), False))
    arrows = []
    for a in _need(d, "arrows", "quiver"):
        arrows.append(Arrow(str(_need(a, "id", "arrow")), str(_need(a, "tail", "arrow")),
                            str(_need(a, "head", "arrow")), int(a.get("degree", 0))))
    try:
        return Quiver(vs, arrows, d.get("partner"))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def quiver_to_json(q):
    out = {"vertices": [{"id": v, "framing": q.framing[v]} for v in q.vertices],
           "arrows": [{"id": a.id, "tail": a.tail, "head": a.head, "degree": a.degree}
                      for a in q.arrows.values()]}
    if q.partner:
        out["partner"] = dict(q.partner)
    return out


# algebras

def _models():
    from . import models
    return {
        "adhm": lambda: models.adhm(framed=True),
        "jordan": lambda: models.adhm(framed=False),
        "affine-d4": models.affine_d4,
        "affine-an": lambda n: models.affine_an(int(n)),
        "affine-an-framed": lambda n: models.affine_an(int(n), framed=True),
    }


MODELS = ("adhm", "jordan", "affine-d4", "affine-an:<n>", "affine-an-framed:<n>")


def builtin_model(name):
    """(algebra, eps) for a built-in model name such as "affine-an-framed:1"."""
    base, _, arg = name.partition(":")
    table = _models()
    if base not in table:
        raise SchemaError("unknown built-in algebra %r (known: %s)" % (name, ", ".join(MODELS)))
    try:
        return table[base](arg) if arg else table[base]()
    except (TypeError, ValueError):
        raise SchemaError("bad built-in algebra reference %r" % name) from None


def builtin_algebra(name):
    return builtin_model(name)[0]


def model_from_json(d):
    """(algebra, eps or None) from a model name or an inline algebra with optional "eps"."""
    if isinstance(d, str):
        return builtin_model(d)
    eps = d.get("eps") if isinstance(d, dict) else None
    return algebra_from_json(d), ({k: int(v) for k, v in eps.items()} if eps else None)


def algebra_from_json(d):
    if isinstance(d, str):
        return builtin_algebra(d)
    q = quiver_from_json(_need(d, "quiver", "algebra"))
    weights = {k: Fraction(v) if isinstance(v, str) else v for k, v in d.get("weights", {}).items()}
    kw = dict(weights=weights, order=d.get("order"), name=d.get("name"),
              inverse_weight=d.get("inverse_weight", 1))
    scratch = QuiverAlgebra(q, **kw)
    rels = [element_from_json(scratch, r) for r in d.get("relations", [])]
    pairs = []
    for p in d.get("inverses", []):
        if p.get("kind", "scalar") == "scalar":
            pairs.append(("scalar", (element_from_json(scratch, _need(p, "inverseOf", "inverse")),
                                     str(_need(p, "arrow", "inverse")))))
        else:
            pairs.append(("matrix", (_matrix_from(scratch, _need(p, "inverseOf", "inverse")),
                                     [list(r) for r in _need(p, "arrows", "inverse")])))
    try:
        A = QuiverAlgebra(q, rels, inverse_pairs=[], **kw)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    A.inverse_pairs = [_rebase_pair(p, A) for p in pairs]
    for kind, data in A.inverse_pairs:
        if kind == "scalar":
            A._inverse_letter[frozenset(data[0].terms.items())] = data[1]
    return A


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def algebra_to_json(A):
    out = {"name": A.name, "quiver": quiver_to_json(A.quiver),
           "relations": [element_to_json(r) for r in A.relations],
           "weights": {a: _num(w) for a, w in A.weights.items()},
           "order": list(A.order), "inverse_weight": _num(A.inverse_weight)}
    inv = []
    for kind, data in A.inverse_pairs:
        if kind == "scalar":
            inv.append({"kind": "scalar", "arrow": data[1], "inverseOf": element_to_json(data[0])})
        else:
            inv.append({"kind": "matrix", "arrows": data[1], "inverseOf": _matrix_to(data[0])})
    if inv:
        out["inverses"] = inv
    return out


# representations

def matrix_rep_from_json(d, quiver=None):
    if quiver is None:
        quiver = algebra_from_json(_need(d, "algebra", "matrix rep")).quiver
    mats = {a: [[scalar_from_json(x) for x in row] for row in M]
            for a, M in _need(d, "matrices", "matrix rep").items()}
    try:
        return MatrixRep(quiver, _need(d, "dims", "matrix rep"), mats)
    except (KeyError, ValueError) as exc:
        raise SchemaError("matrix rep: %s" % exc) from None


def matrix_rep_to_json(rho, algebra=None):
    out = {"dims": dict(rho.dims),
           "matrices": {a: [[scalar_to_json(x) for x in row] for row in M]
                        for a, M in rho.matrices.items() if any(any(r) for r in M)}}
    if algebra is not None:
        out["algebra"] = algebra
    return out


def symbolic_rep_from_json(d, algebras=None):
    algebras = algebras or {}

    def alg(ref):
        if isinstance(ref, str) and ref in algebras:
            return algebras[ref]
        return algebra_from_json(ref)

    src = alg(_need(d, "source", "symbolic rep"))
    tgt = alg(_need(d, "target", "symbolic rep"))
    amap = {a: _matrix_from(tgt, M) for a, M in _need(d, "arrow_map", "symbolic rep").items()}
    try:
        return SymbolicRep(src, tgt, _need(d, "vertex_map", "symbolic rep"), amap,
                           d.get("rank"), d.get("name"))
    except (KeyError, ValueError) as exc:
        raise SchemaError("symbolic rep: %s" % exc) from None


def symbolic_rep_to_json(G, source_ref=None, target_ref=None):
    return {"name": G.name,
            "source": source_ref if source_ref is not None else algebra_to_json(G.source),
            "target": target_ref if target_ref is not None else algebra_to_json(G.target),
            "vertex_map": dict(G.vertex_map), "rank": dict(G.rank),
            "arrow_map": {a: _matrix_to(M) for a, M in G.arrow_map.items()}}


# stacks

def _on(key):
    return sorted(key[-1]) if key and isinstance(key[-1], frozenset) else None


def stack_to_json(s):
    """Serialize a StaticStack (see stack.materialize for the others)."""
    algebras, refs = {}, {}

    def ref(A):
        if id(A) not in refs:
            k = "A%d" % len(refs)
            refs[id(A)] = k
            algebras[k] = algebra_to_json(A)
        return refs[id(A)]

    charts = []
    for key, A in s.charts.items():
        entry = {"open": key[0], "algebra": ref(A)}
        if _on(key) is not None:
            entry["on"] = _on(key)
        charts.append(entry)
    transitions = []
    for key, G in s.transitions.items():
        entry = {"i": key[0], "j": key[1],
                 "rep": symbolic_rep_to_json(G, ref(G.source), ref(G.target))}
        if _on(key) is not None:
            entry["on"] = _on(key)
        transitions.append(entry)
    gerbes = []
    for key, (C, Ci) in s.gerbes.items():
        entry = {"i": key[0], "j": key[1], "k": key[2], "vertex": key[3],
                 "matrix": _matrix_to(C), "inverse": _matrix_to(Ci)}
        if _on(key) is not None:
            entry["on"] = _on(key)
        gerbes.append(entry)
    return {"schema": SCHEMA_VERSION, "name": s.name, "framed": s.framed,
            "opens": list(s.opens), "pairs": [list(p) for p in s.pairs],
            "algebras": algebras, "charts": charts, "transitions": transitions,
            "gerbes": gerbes}


def stack_from_json(d):
    from .stack import StaticStack
    algebras = {k: algebra_from_json(v) for k, v in d.get("algebras", {}).items()}

    def key(entry, *ids):
        k = tuple(str(_need(entry, x, "stack entry")) for x in ids)
        return k + (frozenset(map(str, entry["on"])),) if "on" in entry else k

    def lookup(ref):
        if isinstance(ref, str) and ref in algebras:
            return algebras[ref]
        return algebra_from_json(ref)

    charts = {key(c, "open"): lookup(_need(c, "algebra", "chart"))
              for c in _need(d, "charts", "stack")}
    transitions = {key(t, "i", "j"): symbolic_rep_from_json(_need(t, "rep", "transition"), algebras)
                   for t in _need(d, "transitions", "stack")}
    gerbes = {}
    for g in d.get("gerbes", []):
        k = key(g, "i", "j", "k", "vertex")
        A = charts.get((k[0],) + k[4:]) or charts.get((k[0],))
        if A is None:
            raise SchemaError("gerbe %r refers to an unknown chart" % (k[:4],))
        gerbes[k] = (_matrix_from(A, _need(g, "matrix", "gerbe")),
                     _matrix_from(A, _need(g, "inverse", "gerbe")))
    pairs = [tuple(map(str, p)) for p in d["pairs"]] if "pairs" in d else None
    return StaticStack(d.get("name", "stack"), charts, transitions, gerbes,
                       bool(d.get("framed", False)), d.get("opens"), pairs)


def load(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("%s: %s" % (path, exc)) from None


def dump(obj, path=None, indent=1):
    text = json.dumps(obj, indent=indent, ensure_ascii=False)
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text + "\n")
    return text

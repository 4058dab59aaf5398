"""
Quivers, intersection graphs and their quadratic forms.

A ``Graph`` records the plumbing data of a configuration of Lagrangian
components: vertices carry the Euler characteristic of the component, edges the
Euler characteristic, jump degree and codimension of the intersection.  Doubling
a graph gives a ``Quiver``; framing adds one framing vertex per chosen vertex.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from . import linalg


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str
    degree: int = 0


@dataclass
class Graph:
    vertices: list                      # [(vertexId, componentEuler)]
    edges: list = field(default_factory=list)   # [(a, b, chi, jump, codim)]

    def __post_init__(self):
        vs = []
        for v in self.vertices:
            if isinstance(v, (tuple, list)):
                vs.append((str(v[0]), int(v[1]) if len(v) > 1 else 2))
            else:
                vs.append((str(v), 2))
        self.vertices = vs
        ids = set(self.vertex_ids())
        es = []
        for e in self.edges:
            e = tuple(e)
            a, b = str(e[0]), str(e[1])
            chi = e[2] if len(e) > 2 else 1
            jump = e[3] if len(e) > 3 else 1
            codim = e[4] if len(e) > 4 else 2
            if a not in ids or b not in ids:
                raise ValueError("edge %r references an unknown vertex" % (e,))
            es.append((a, b, int(chi), int(jump), int(codim)))
        self.edges = es

    def vertex_ids(self):
        return [v for v, _ in self.vertices]

    def euler(self, v):
        return dict(self.vertices)[v]

    def is_default(self):
        return (all(chi == 2 for _, chi in self.vertices)
                and all(e[2:] == (1, 1, 2) for e in self.edges))

    def is_simple(self):
        seen = set()
        for a, b, *_ in self.edges:
            if a == b:
                return False
            key = frozenset((a, b))
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_connected(self):
        ids = self.vertex_ids()
        if not ids:
            return True
        adj = {v: set() for v in ids}
        for a, b, *_ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {ids[0]}
        stack = [ids[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(ids)


class Quiver:
    """Vertices (with framing flags) and arrows; immutable after construction."""

    def __init__(self, vertices, arrows, partner=None):
        self.vertices = []
        self.framing = {}
        for v in vertices:
            if isinstance(v, (tuple, list)):
                vid, fr = str(v[0]), bool(v[1])
            else:
                vid, fr = str(v), False
            if vid in self.framing:
                raise ValueError("duplicate vertex %r" % vid)
            self.vertices.append(vid)
            self.framing[vid] = fr
        self.arrows = {}
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), str(a[1]), str(a[2]), int(a[3]) if len(a) > 3 else 0)
            if a.id in self.arrows:
                raise ValueError("duplicate arrow id %r" % a.id)
            if a.tail not in self.framing or a.head not in self.framing:
                raise ValueError("arrow %r has an unknown endpoint" % a.id)
            self.arrows[a.id] = a
        self.partner = dict(partner or {})

    def arrow_ids(self):
        return list(self.arrows)

    def tail(self, a):
        return self.arrows[a].tail

    def head(self, a):
        return self.arrows[a].head

    def unframed_vertices(self):
        return [v for v in self.vertices if not self.framing[v]]

    def framing_vertices(self):
        return [v for v in self.vertices if self.framing[v]]

    def with_arrows(self, extra, vertices=()):
        return Quiver([(v, self.framing[v]) for v in self.vertices] + list(vertices),
                      list(self.arrows.values()) + list(extra), self.partner)

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.framing == other.framing and self.arrows == other.arrows)

    def __repr__(self):
        return "Quiver(%d vertices, %d arrows)" % (len(self.vertices), len(self.arrows))


def double_quiver(g, orientation=None, names=None):
    """
    Double the graph: each edge gives an arrow a in the orientation and its
    partner abar in the opposite direction.  Returns (quiver, eps) with
    eps[a] = +1 and eps[abar] = -1.

    ``orientation`` maps an edge index to True (a points endA -> endB) or False.
    By default a points from the lower vertex id to the higher one; for a
    self-edge the first copy is the + arrow.  ``names`` maps an edge index to
    the pair (a, abar) of arrow ids.
    """
    orientation = orientation or {}
    names = names or {}
    order = {v: k for k, v in enumerate(g.vertex_ids())}
    arrows = []
    eps = {}
    partner = {}
    for k, (a, b, *_rest) in enumerate(g.edges):
        if k in orientation:
            forward = orientation[k]
        else:
            forward = order[a] <= order[b]
        t, h = (a, b) if forward else (b, a)
        plus, minus = names.get(k, ("a%d" % k, "abar%d" % k))
        arrows.append(Arrow(plus, t, h))
        arrows.append(Arrow(minus, h, t))
        eps[plus] = 1
        eps[minus] = -1
        partner[plus] = minus
        partner[minus] = plus
    return Quiver(g.vertex_ids(), arrows, partner), eps


def frame_quiver(q, framed, names=None):
    """Add a framing vertex f_v with i_v: f_v -> v and j_v: v -> f_v for each v."""
    names = names or {}
    framed = [str(v) for v in framed]
    for v in framed:
        if v not in q.framing:
            raise ValueError("unknown vertex %r" % v)
        if q.framing[v]:
            raise ValueError("cannot frame the framing vertex %r" % v)
    new_vertices = []
    arrows = []
    for v in framed:
        fv, iv, jv = names.get(v, ("f%s" % v, "i%s" % v, "j%s" % v))
        new_vertices.append((fv, True))
        arrows.append(Arrow(iv, fv, v))
        arrows.append(Arrow(jv, v, fv))
    return q.with_arrows(arrows, new_vertices)


def cartan_matrix(g):
    """Symmetric matrix C with r^T C r = floer_euler_form(g, r)."""
    ids = g.vertex_ids()
    idx = {v: k for k, v in enumerate(ids)}
    n = len(ids)
    C = linalg.zeros(n, n)
    for v, chi in g.vertices:
        C[idx[v]][idx[v]] += chi
    for a, b, chi, jump, codim in g.edges:
        if codim % 2:
            continue
        s = (-1) ** jump * chi
        i, j = idx[a], idx[b]
        if i == j:
            C[i][i] += 2 * s
        else:
            C[i][j] += s
            C[j][i] += s
    return C


def _check_ranks(g, r):
    for v in g.vertex_ids():
        if v not in r:
            raise KeyError("missing rank entry for vertex %r" % v)


def floer_euler_form(g, r):
    """Euler characteristic of the Floer cohomology of rank r."""
    r = {str(k): v for k, v in dict(r).items()}
    _check_ranks(g, r)
    total = 0
    for v, chi in g.vertices:
        total += chi * r[v] * r[v]
    for a, b, chi, jump, codim in g.edges:
        if codim % 2 == 0:
            total += 2 * (-1) ** jump * chi * r[a] * r[b]
    return total


def _ldl_signs(C):
    """
    Symmetric elimination.  Returns ('pd'|'psd'|'indef').  A zero pivot whose
    row is not zero signals an indefinite form.
    """
    M = [[Fraction(x) for x in row] for row in C]
    n = len(M)
    active = list(range(n))
    singular = False
    while active:
        k = None
        for i in active:
            if M[i][i] != 0:
                k = i
                break
        if k is None:
            if any(M[i][j] != 0 for i in active for j in active):
                return "indef"
            singular = True
            break
        p = M[k][k]
        if p < 0:
            return "indef"
        rest = [i for i in active if i != k]
        for i in rest:
            if M[i][k] != 0:
                f = M[i][k] / p
                for j in rest:
                    M[i][j] -= f * M[k][j]
        active = rest
        for i in list(active):
            if M[i][i] == 0 and all(M[i][j] == 0 for j in active):
                singular = True
                active.remove(i)
    return "psd" if singular else "pd"


POSITIVE_DEFINITE = "positive-definite"
SEMI_POSITIVE = "strictly-semi-positive"
INDEFINITE = "indefinite"


def classify_form(g):
    if not g.is_default():
        raise ValueError("unsupported: classify_form needs sphere-plumbing defaults")
    s = _ldl_signs(cartan_matrix(g))
    return {"pd": POSITIVE_DEFINITE, "psd": SEMI_POSITIVE, "indef": INDEFINITE}[s]


def affine_delta(g):
    """Primitive positive kernel vector of an affine form, else None."""
    if classify_form(g) != SEMI_POSITIVE:
        return None
    C = cartan_matrix(g)
    ker = linalg.nullspace(C)
    if len(ker) != 1:
        return None
    v = ker[0]
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    if all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        return None
    d = 0
    for x in ints:
        d = gcd(d, x)
    return dict(zip(g.vertex_ids(), [x // d for x in ints]))


def positive_roots(g, bound):
    """All nonzero theta with 0 <= theta <= bound and theta^T C theta <= 2."""
    bound = {str(k): v for k, v in dict(bound).items()}
    ids = g.vertex_ids()
    C = cartan_matrix(g)
    out = []
    for theta in product(*[range(bound.get(v, 0) + 1) for v in ids]):
        if not any(theta):
            continue
        q = sum(theta[i] * C[i][j] * theta[j] for i in range(len(ids)) for j in range(len(ids)))
        if q <= 2:
            out.append(dict(zip(ids, theta)))
    return out


def on_wall(zeta, theta):
    return sum(Fraction(zeta.get(v, 0)) * theta[v] for v in theta) == 0


def ade_type(g):
    """Dynkin label for connected ADE / affine ADE graphs with default data."""
    kind = classify_form(g)
    if kind == INDEFINITE or not g.is_connected():
        return None
    ids = g.vertex_ids()
    n = len(ids)
    deg = {v: 0 for v in ids}
    for a, b, *_ in g.edges:
        deg[a] += 1
        deg[b] += 1
    m = len(g.edges)
    if kind == SEMI_POSITIVE:
        if m == n:
            return "~A%d" % (n - 1)
        branch = [v for v in ids if deg[v] >= 3]
        if len(branch) == 1 and deg[branch[0]] == 4:
            return "~D4"
        if len(branch) == 2:
            return "~D%d" % (n - 1)
        arms = _arms(g, branch[0])
        return {(2, 2, 2): "~E6", (1, 3, 3): "~E7", (1, 2, 5): "~E8"}.get(tuple(arms))
    branch = [v for v in ids if deg[v] >= 3]
    if not branch:
        return "A%d" % n
    arms = tuple(_arms(g, branch[0]))
    if arms[:2] == (1, 1):
        return "D%d" % n
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(arms)


def _arms(g, center):
    adj = {v: [] for v in g.vertex_ids()}
    for a, b, *_ in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if len(nxt) != 1:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


# standard graphs

def path_graph(n):
    vs = [str(k) for k in range(1, n + 1)]
    return Graph(vs, [(vs[k], vs[k + 1]) for k in range(n - 1)])


def affine_a_graph(n):
    """Cycle on n+1 vertices (n >= 1); n = 0 gives the Jordan self-edge."""
    vs = [str(k) for k in range(1, n + 2)]
    if n == 0:
        return Graph(vs, [(vs[0], vs[0])])
    return Graph(vs, [(vs[k], vs[(k + 1) % (n + 1)]) for k in range(n + 1)])


def affine_d4_graph():
    return Graph(["v0", "v1", "v2", "v3", "v4"],
                 [("v0", "v1"), ("v0", "v2"), ("v0", "v3"), ("v0", "v4")])


def jordan_graph():
    return Graph(["0"], [("0", "0")])

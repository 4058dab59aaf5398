"""
Standard algebras: preprojective and framed preprojective algebras of graphs,
the ADHM algebra, affine A_n and D_4 with the naming used by the built-in
stacks, and the extended dg algebra with degree -1 loops.
"""

from .algebra import QuiverAlgebra
from .quiver import Arrow, Quiver, double_quiver, frame_quiver, jordan_graph


def preprojective_relation(A, eps, v):
    """Sum over arrows a with tail v of eps(a) xbar_a x_a, plus i_v j_v if framed."""
    q = A.quiver
    out = A.zero()
    for a, s in eps.items():
        if q.tail(a) == v:
            out = out + s * (A.arrow(q.partner[a]) * A.arrow(a))
    for i, j in framing_pairs(q).get(v, []):
        out = out + A.arrow(i) * A.arrow(j)
    return out


def framing_pairs(q):
    """vertex -> [(i, j)] for framing arrows i: f -> v and j: v -> f."""
    ins, outs = {}, {}
    for a in q.arrows.values():
        if q.framing[a.tail] and not q.framing[a.head]:
            ins.setdefault((a.head, a.tail), []).append(a.id)
        elif q.framing[a.head] and not q.framing[a.tail]:
            outs.setdefault((a.tail, a.head), []).append(a.id)
    pairs = {}
    for key, iis in ins.items():
        for i, j in zip(iis, outs.get(key, [])):
            pairs.setdefault(key[0], []).append((i, j))
    return pairs


def preprojective(g, framed=(), orientation=None, names=None, framing_names=None,
                  free=False, **kw):
    """
    (Framed) preprojective algebra of a graph.  Returns (A, eps).  With
    free=True no relations are imposed (the free path algebra of the framed
    double quiver).
    """
    q, eps = double_quiver(g, orientation, names)
    if framed:
        q = frame_quiver(q, framed, framing_names)
    A = QuiverAlgebra(q, **kw)
    if free:
        return A, eps
    rels = [preprojective_relation(A, eps, v) for v in q.unframed_vertices()]
    return QuiverAlgebra(q, [r for r in rels if r], **kw), eps


def adhm(framed=True, free=False):
    """Jordan quiver with loops x (eps -1), y (eps +1); relation xy - yx (+ ij)."""
    return preprojective(jordan_graph(), ["0"] if framed else (), names={0: ("y", "x")},
                         framing_names={"0": ("f", "i", "j")}, free=free)


def affine_an_quiver(n, framed=False):
    """Vertices 1..n+1, u_j: j -> j+1 and v_j: j+1 -> j (indices mod n+1)."""
    N = n + 1
    vs = [str(k) for k in range(1, N + 1)]
    arrows = []
    eps = {}
    partner = {}
    for j in range(1, N + 1):
        nxt = str(j % N + 1)
        arrows.append(Arrow("u%d" % j, str(j), nxt))
        arrows.append(Arrow("v%d" % j, nxt, str(j)))
        eps["u%d" % j], eps["v%d" % j] = 1, -1
        partner["u%d" % j], partner["v%d" % j] = "v%d" % j, "u%d" % j
    q = Quiver(vs, arrows, partner)
    if framed:
        q = frame_quiver(q, vs, {v: ("f%s" % v, "i%s" % v, "j%s" % v) for v in vs})
    return q, eps


def affine_an(n, framed=False, **kw):
    """Preprojective affine A_n: relation v_j u_j - u_{j-1} v_{j-1} (+ i_j j_j) at j."""
    q, eps = affine_an_quiver(n, framed)
    A = QuiverAlgebra(q, **kw)
    rels = [preprojective_relation(A, eps, v) for v in q.unframed_vertices()]
    return QuiverAlgebra(q, rels, name="A0(~A%d)" % n, **kw), eps


def d4_quiver():
    vs = ["v0", "v1", "v2", "v3", "v4"]
    arrows = []
    for i in range(1, 5):
        arrows.append(Arrow("a%d" % i, "v%d" % i, "v0"))
        arrows.append(Arrow("b%d" % i, "v0", "v%d" % i))
    partner = {}
    eps = {}
    for i in range(1, 5):
        partner["a%d" % i], partner["b%d" % i] = "b%d" % i, "a%d" % i
        eps["a%d" % i], eps["b%d" % i] = 1, -1
    return Quiver(vs, arrows, partner), eps


def affine_d4(**kw):
    """a_i: v_i -> v0, b_i: v0 -> v_i; relations sum a_i b_i and each b_i a_i."""
    q, eps = d4_quiver()
    A = QuiverAlgebra(q, **kw)
    rels = [A.parse("a1 b1 + a2 b2 + a3 b3 + a4 b4")]
    rels += [A.parse("b%d a%d" % (i, i)) for i in range(1, 5)]
    return QuiverAlgebra(q, rels, name="A0(~D4)", **kw), eps


def extended_dga(g, framed=None, orientation=None, names=None, coords=None):
    """
    Free path algebra of the framed double quiver with one degree -1 loop t_v
    at each unframed vertex, and the derivation with d(x) = 0 on degree-0
    letters and d(t_v) = the framed preprojective relation at v.

    ``coords`` optionally maps letters to replacement images (for instance the
    standardized coordinates) used inside d(t_v).  Returns (A, d, B) where B is
    the framed preprojective algebra that the dga should present in degree 0.
    """
    B, eps = preprojective(g, g.vertex_ids() if framed is None else framed,
                           orientation, names)
    q = B.quiver
    loops = [Arrow("t%s" % v, v, v, -1) for v in q.unframed_vertices()]
    A = QuiverAlgebra(q.with_arrows(loops), name="extended dga")
    d = {}
    for v in q.unframed_vertices():
        r = preprojective_relation(A, eps, v)
        if coords:
            from .representation import substitute
            r = substitute(r, coords, max(r.degree(), 0) + 8)
        d["t%s" % v] = r
    return A, d, B

"""
Scalar and matrix localization of quiver algebras.

Localizing at a vertex-homogeneous element gamma from v to w adds a letter
gamma^-1 from w to v with the two inverse relations.  Localizing at a matrix S
of paths (rows sharing heads, columns sharing tails) adds a matrix of letters of
the transposed shape with S*G and G*S equal to the diagonal idempotents.
"""

from .algebra import Element, QuiverAlgebra
from .quiver import Arrow


def _as_element(A, g):
    if isinstance(g, Element):
        return g.rebase(A) if g.alg is not A else g
    if isinstance(g, str):
        if g in A.quiver.arrows:
            return A.arrow(g)
        return A.parse(g)
    raise TypeError("cannot localize at %r" % (g,))


def _inverse_name(A, g):
    if len(g.terms) == 1:
        (h, t, w), c = next(iter(g.terms.items()))
        if c == 1 and len(w) == 1:
            return "%s^-1" % w[0]
    return "(%s)^-1" % A.format(g).replace(" ", "")


def _extend(A, new_arrows, new_relations_fn, pairs, name=None, weight=None):
    weight = A.inverse_weight if weight is None else weight
    q = A.quiver.with_arrows(new_arrows)
    weights = dict(A.weights)
    for a in new_arrows:
        weights[a.id] = weight
    order = list(A.order)
    for a in new_arrows:
        # the inverse of a single letter sits right after it in the order,
        # which keeps the rewriting systems of Laurent-type charts finite
        base = a.id[:-3] if a.id.endswith("^-1") else None
        if base in order:
            order.insert(order.index(base) + 1, a.id)
        else:
            order.append(a.id)
    B = QuiverAlgebra(q, [], weights, order, [], name or A.name, A.inverse_weight)
    rels = [r.rebase(B) for r in A.relations]
    new_pairs = [_rebase_pair(p, B) for p in A.inverse_pairs]
    extra_rels, extra_pairs = new_relations_fn(B)
    B.relations = [r for r in rels + extra_rels if r]
    B.inverse_pairs = new_pairs + extra_pairs
    for kind, data in B.inverse_pairs:
        if kind == "scalar":
            gamma, letter = data
            B._inverse_letter[frozenset(gamma.terms.items())] = letter
    return B


def _rebase_pair(p, B):
    kind, data = p
    if kind == "scalar":
        gamma, letter = data
        return (kind, (gamma.rebase(B), letter))
    S, letters = data
    return (kind, ([[s.rebase(B) for s in row] for row in S], letters))


def localize_scalar(A, S, names=None, weight=None):
    """Adjoin two-sided inverses of each element of S."""
    gammas = [_as_element(A, g) for g in S]
    names = list(names) if names else [None] * len(gammas)
    arrows = []
    info = []
    for g, nm in zip(gammas, names):
        if not g:
            raise ValueError("cannot invert zero")
        ht = g.head_tail()
        if ht is None:
            raise ValueError("element %s is not vertex-homogeneous" % g)
        h, t = ht
        nm = nm or _inverse_name(A, g)
        if nm in A.quiver.arrows or nm in [a.id for a in arrows]:
            raise ValueError("inverse letter %r already exists" % nm)
        arrows.append(Arrow(nm, h, t))
        info.append((g, nm, h, t))

    def rels(B):
        out, pairs = [], []
        for g, nm, h, t in info:
            gb = g.rebase(B)
            inv = B.arrow(nm)
            out.append(gb * inv - B.e(h))
            out.append(inv * gb - B.e(t))
            pairs.append(("scalar", (gb, nm)))
        return out, pairs

    return _extend(A, arrows, rels, None, weight=weight)


def localize_matrix(A, S, names=None, weight=None):
    """Adjoin the inverse of a matrix of paths (list of rows)."""
    S = [[_as_element(A, s) for s in row] for row in S]
    m = len(S)
    n = len(S[0]) if m else 0
    if any(len(row) != n for row in S):
        raise ValueError("ragged matrix")
    heads = []
    for i in range(m):
        hs = {s.head_tail()[0] for s in S[i] if s}
        if len(hs) != 1:
            raise ValueError("row %d entries do not share a head" % i)
        heads.append(hs.pop())
    tails = []
    for j in range(n):
        ts = {S[i][j].head_tail()[1] for i in range(m) if S[i][j]}
        if len(ts) != 1:
            raise ValueError("column %d entries do not share a tail" % j)
        tails.append(ts.pop())
    for i in range(m):
        for j in range(n):
            if S[i][j] and not S[i][j].is_homogeneous():
                raise ValueError("entry (%d,%d) is not vertex-homogeneous" % (i, j))
    if names is None:
        if m == 1:
            names = [["alpha%d" % (j + 1)] for j in range(n)]
        else:
            names = [["alpha%d_%d" % (j + 1, i + 1) for i in range(m)] for j in range(n)]
    arrows = []
    for j in range(n):
        for i in range(m):
            nm = names[j][i]
            if nm in A.quiver.arrows:
                raise ValueError("inverse letter %r already exists" % nm)
            # G[j][i] goes from head(row i) to tail(column j)
            arrows.append(Arrow(nm, heads[i], tails[j]))

    def rels(B):
        Sb = [[s.rebase(B) for s in row] for row in S]
        G = [[B.arrow(names[j][i]) for i in range(m)] for j in range(n)]
        out = []
        for j in range(n):
            for k in range(n):
                acc = B.zero()
                for i in range(m):
                    acc = acc + G[j][i] * Sb[i][k]
                if j == k:
                    acc = acc - B.e(tails[j])
                out.append(acc)
        for i in range(m):
            for k in range(m):
                acc = B.zero()
                for j in range(n):
                    acc = acc + Sb[i][j] * G[j][k]
                if i == k:
                    acc = acc - B.e(heads[i])
                out.append(acc)
        pairs = [("matrix", (Sb, [list(r) for r in names]))]
        if m == 1 and n == 1:
            pairs.append(("scalar", (Sb[0][0], names[0][0])))
        return out, pairs

    return _extend(A, arrows, rels, None, weight=weight)


def inverse_letters(A):
    out = []
    for kind, data in A.inverse_pairs:
        if kind == "scalar":
            out.append(data[1])
        else:
            out.extend(x for row in data[1] for x in row)
    return out

"""
Representations of one quiver algebra by matrices over another.

A SymbolicRep sends each source vertex v to a target vertex with a rank, and
each arrow a: v -> w to a rank(w) x rank(v) matrix of target elements running
from vertexMap(v) to vertexMap(w).
"""

from .algebra import Element


class SymbolicRep:

    def __init__(self, source, target, vertex_map, arrow_map, rank=None, name=None):
        self.source = source
        self.target = target
        self.vertex_map = {str(k): str(v) for k, v in vertex_map.items()}
        self.rank = {v: 1 for v in source.quiver.vertices}
        if rank:
            self.rank.update({str(k): int(v) for k, v in rank.items()})
        self.name = name
        self.arrow_map = {}
        for a, M in arrow_map.items():
            self.arrow_map[a] = self._matrix(a, M)

    def _entry(self, x):
        if isinstance(x, Element):
            return x.rebase(self.target) if x.alg is not self.target else x
        if isinstance(x, str):
            return self.target.parse(x)
        return self.target.scalar(x)

    def _matrix(self, a, M):
        if not isinstance(M, list):
            M = [[M]]
        elif M and not isinstance(M[0], list):
            M = [[x] for x in M] if self.rank[self.source.quiver.head(a)] == len(M) and len(M) > 1 else [M]
        arrow = self.source.quiver.arrows[a]
        hv, tv = self.vertex_map[arrow.head], self.vertex_map[arrow.tail]
        out = []
        for row in M:
            r = []
            for x in row:
                e = self._entry(x)
                # restrict scalars to the right corner
                e = self.target.e(hv) * e * self.target.e(tv)
                r.append(e)
            out.append(r)
        rh, rt = self.rank[arrow.head], self.rank[arrow.tail]
        if len(out) != rh or any(len(r) != rt for r in out):
            raise ValueError("image of %s must be %dx%d" % (a, rh, rt))
        return out

    def image_vertex(self, v):
        return self.vertex_map[v]

    def identity_block(self, v):
        r = self.rank[v]
        e = self.target.e(self.vertex_map[v])
        z = self.target.zero()
        return [[e if i == j else z for j in range(r)] for i in range(r)]

    def apply(self, f):
        """Image of a source element as a matrix of target elements."""
        if f.alg is not self.source:
            f = f.rebase(self.source)
        comps = f.components()
        if len(comps) > 1:
            raise ValueError("apply() expects a vertex-homogeneous element")
        if not comps:
            return None
        (h, t), _ = next(iter(comps.items()))
        rh, rt = self.rank[h], self.rank[t]
        acc = [[self.target.zero() for _ in range(rt)] for _ in range(rh)]
        for (hh, tt, w), c in f.terms.items():
            M = self.word_image(tt, w)
            for i in range(rh):
                for j in range(rt):
                    if M[i][j]:
                        acc[i][j] = acc[i][j] + c * M[i][j]
        return acc

    def apply_scalar(self, f):
        """Image when all ranks involved are one."""
        M = self.apply(f)
        if M is None:
            return self.target.zero()
        if len(M) != 1 or len(M[0]) != 1:
            raise ValueError("element maps to a %dx%d matrix" % (len(M), len(M[0])))
        return M[0][0]

    def word_image(self, tail, word):
        if not word:
            return self.identity_block(tail)
        M = None
        for a in reversed(word):
            A = self.arrow_map.get(a)
            if A is None:
                raise KeyError("no image for arrow %r" % a)
            M = A if M is None else matmul(A, M)
        return M

    def missing_arrows(self):
        return [a for a in self.source.quiver.arrows if a not in self.arrow_map]


def matmul(A, B):
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        r = []
        for j in range(n):
            acc = None
            for k, x in enumerate(row):
                if not x:
                    continue
                y = B[k][j]
                if not y:
                    continue
                p = x * y
                acc = p if acc is None else acc + p
            r.append(acc if acc is not None else _zero_like(A, B))
        out.append(r)
    return out


def _zero_like(A, B):
    for row in A:
        for x in row:
            return x.alg.zero()
    for row in B:
        for x in row:
            return x.alg.zero()
    raise ValueError("empty matrices")


def compose(G, H, name=None):
    """G o H : first H, then G applied entrywise (block substitution)."""
    if H.target is not G.source:
        raise ValueError("incompatible representations")
    vmap = {}
    rank = {}
    for v in H.source.quiver.vertices:
        w = H.vertex_map[v]
        vmap[v] = G.vertex_map[w]
        rank[v] = H.rank[v] * G.rank[w]
    arrows = {}
    for a, M in H.arrow_map.items():
        arr = H.source.quiver.arrows[a]
        rows = []
        for i, row in enumerate(M):
            blocks = [G.apply(x) if x else None for x in row]
            hw = H.vertex_map[arr.head]
            tw = H.vertex_map[arr.tail]
            for bi in range(G.rank[hw]):
                r = []
                for j, blk in enumerate(blocks):
                    for bj in range(G.rank[tw]):
                        if blk is None:
                            r.append(G.target.zero())
                        else:
                            r.append(blk[bi][bj])
                rows.append(r)
        arrows[a] = rows
    out = SymbolicRep(H.source, G.target, vmap, {}, rank, name)
    out.arrow_map = arrows
    return out


def identity_rep(A):
    return SymbolicRep(A, A, {v: v for v in A.quiver.vertices},
                       {a: [[A.arrow(a)]] for a in A.quiver.arrows})

"""
Three-term complexes of free left modules over a quiver algebra.

A term is a list of generators (label, vertex w, multiplicity m); the
generator stands for k^m tensor A e_w.  A differential entry is a
BimoduleOperator, a formal sum of pairs (L, r) acting by eta -> L eta r with
L a scalar m_target x m_source matrix and r a path from the target vertex to
the source vertex.  These maps are left A-linear.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import prove
from .models import framing_pairs
from .report import Report
from .representation import moment_map_is_zero


@dataclass(frozen=True)
class Gen:
    label: str
    vertex: str
    mult: int


class BimoduleOperator:

    def __init__(self, pairs=()):
        self.pairs = [(L, r) for L, r in pairs]

    def then(self, other):
        """other after self: (L2, r2) o (L1, r1) = (L2 L1, r1 r2)."""
        out = []
        for L1, r1 in self.pairs:
            for L2, r2 in other.pairs:
                r = r1 * r2
                if r:
                    out.append((linalg.matmul(L2, L1, len(L1)), r))
        return BimoduleOperator(out)

    def entries(self, m_out, m_in, alg):
        """Matrix of algebra elements sum_p L_p[i][j] r_p."""
        M = [[alg.zero() for _ in range(m_in)] for _ in range(m_out)]
        for L, r in self.pairs:
            for i in range(m_out):
                for j in range(m_in):
                    c = L[i][j]
                    if c != 0:
                        M[i][j] = M[i][j] + _q(c) * r
        return M

    def __add__(self, other):
        return BimoduleOperator(self.pairs + other.pairs)

    def __repr__(self):
        return "BimoduleOperator(%s)" % ", ".join("(%s, %s)" % (L, r) for L, r in self.pairs)


def _q(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def _eye(n):
    return linalg.identity(n)


def _neg(M):
    return [[-x for x in row] for row in M]


@dataclass
class FreeComplex:
    alg: object
    terms: list                                  # three lists of Gen
    d: list = field(default_factory=lambda: [{}, {}])   # (target, source) -> operator
    name: str = "complex"

    def gen(self, k, label):
        for g in self.terms[k]:
            if g.label == label:
                return g
        raise KeyError(label)

    def ranks(self):
        return tuple(sum(g.mult for g in t) for t in self.terms)

    def add(self, k, target, source, L, r):
        if not r:
            return
        gt, gs = self.gen(k + 1, target), self.gen(k, source)
        if len(L) != gt.mult or any(len(row) != gs.mult for row in L):
            raise ValueError("block %s <- %s must be %dx%d" % (target, source, gt.mult, gs.mult))
        if gt.mult == 0 or gs.mult == 0:
            return
        op = self.d[k].setdefault((target, source), BimoduleOperator())
        op.pairs.append((L, r))

    def composite(self):
        """d1 o d0 as (target, source) -> operator."""
        out = {}
        for (mid, src), op0 in self.d[0].items():
            for (tgt, mid2), op1 in self.d[1].items():
                if mid2 == mid:
                    comp = op0.then(op1)
                    if (tgt, src) in out:
                        out[(tgt, src)] = out[(tgt, src)] + comp
                    else:
                        out[(tgt, src)] = comp
        return out

    def to_dict(self):
        def op_dict(op):
            return [{"L": [[str(x) for x in row] for row in L], "r": str(r)} for L, r in op.pairs]
        return {"name": self.name,
                "terms": [[{"label": g.label, "vertex": g.vertex, "mult": g.mult} for g in t]
                          for t in self.terms],
                "d0": {"%s<-%s" % k: op_dict(v) for k, v in self.d[0].items()},
                "d1": {"%s<-%s" % k: op_dict(v) for k, v in self.d[1].items()}}


def _framed_complex(rho, A, eps, with_framing, name):
    """
    Generic complex over A from a framed representation rho:
      C0: M_v (mult V_v, vertex v)
      C1: X_a (mult V_h(a), vertex t(a)), J_v (mult W_v, vertex v),
          and I_v (mult V_v, vertex f_v) when with_framing
      C2: P_v (mult V_v, vertex v), and F_v (mult W_v, vertex f_v) when with_framing
    d0(eta) = sum_a (B_a eta_t(a) - eta_h(a) x_a) X_a + sum_v (eta_v i_v) I_v + (j_v eta_v) J_v
    d1: X_a -> eps(a) (B_abar xi P_t(a) - xi x_abar P_h(a)),
        I_v -> -xi j_v P_v + j_v xi F_v,  J_v -> i_v zeta P_v - zeta i_v F_v.
    """
    q = rho.quiver
    B = rho.matrices
    dims = rho.dims
    pairs = framing_pairs(q)
    vs = q.unframed_vertices()
    arrows = [a for a in q.arrows if a in eps]
    t0 = [Gen("M_%s" % v, v, dims[v]) for v in vs]
    t1 = [Gen("X_%s" % a, q.tail(a), dims[q.head(a)]) for a in arrows]
    t2 = [Gen("P_%s" % v, v, dims[v]) for v in vs]
    for v in vs:
        for i, j in pairs.get(v, []):
            f = q.tail(i)
            if with_framing:
                t1.append(Gen("I_%s" % v, f, dims[v]))
            t1.append(Gen("J_%s" % v, v, dims[f]))
            if with_framing:
                t2.append(Gen("F_%s" % v, f, dims[f]))
    C = FreeComplex(A, [t0, t1, t2], name=name)
    for a in arrows:
        h, t = q.head(a), q.tail(a)
        ab = q.partner[a]
        C.add(0, "X_%s" % a, "M_%s" % t, B[a], A.e(t))
        C.add(0, "X_%s" % a, "M_%s" % h, _neg(_eye(dims[h])), A.arrow(a))
        s = eps[a]
        C.add(1, "P_%s" % t, "X_%s" % a, [[s * x for x in row] for row in B[ab]], A.e(t))
        C.add(1, "P_%s" % h, "X_%s" % a, [[-s if p == r else 0 for r in range(dims[h])]
                                          for p in range(dims[h])], A.arrow(ab))
    for v in vs:
        for i, j in pairs.get(v, []):
            f = q.tail(i)
            C.add(0, "J_%s" % v, "M_%s" % v, B[j], A.e(v))
            C.add(1, "P_%s" % v, "J_%s" % v, B[i], A.e(v))
            if with_framing:
                C.add(0, "I_%s" % v, "M_%s" % v, _eye(dims[v]), A.arrow(i))
                C.add(1, "P_%s" % v, "I_%s" % v, _neg(_eye(dims[v])), A.arrow(j))
                C.add(1, "F_%s" % v, "I_%s" % v, B[j], A.e(f))
                C.add(1, "F_%s" % v, "J_%s" % v, _neg(_eye(dims[f])), A.arrow(i))
    return C


def _require_unobstructed(rho, eps, check):
    if check and not moment_map_is_zero(rho, eps):
        raise ValueError("representation does not satisfy the moment map equations")


def build_adhm_monad(rho, A, eps, check=True):
    """ADHM monad over the Jordan-quiver algebra: ranks (n, 2n + r, n)."""
    _require_unobstructed(rho, eps, check)
    return _framed_complex(rho, A, eps, False, "ADHM monad")


def build_nakajima_monad(rho, A, eps, check=True):
    """Nakajima's monad over the (unframed) preprojective algebra of a graph."""
    _require_unobstructed(rho, eps, check)
    return _framed_complex(rho, A, eps, False, "Nakajima monad")


def build_framed_functor_complex(rho, A, eps, check=True):
    """The complex with I_v and F_v terms over the framed algebra."""
    _require_unobstructed(rho, eps, check)
    return _framed_complex(rho, A, eps, True, "framed functor complex")


def verify_d_squared(C, effort):
    rep = Report("d1 d0 = 0 for %s" % C.name)
    for (tgt, src), op in sorted(C.composite().items()):
        gt, gs = C.gen(2, tgt), C.gen(0, src)
        M = op.entries(gt.mult, gs.mult, C.alg)
        bad = []
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if not prove(x, C.alg, effort)[0]:
                    bad.append("(%d,%d)" % (i, j))
        rep.add("%s <- %s" % (tgt, src), not bad, " ".join(bad))
    return rep


def _eval(r, point):
    total = 0
    for (_, _, w), c in r.terms.items():
        v = c
        for a in w:
            v = v * point[a]
        total = total + v
    return total


def specialize(C, k, point):
    """Scalar matrix of d_k with the letters replaced by the scalars in point."""
    src, tgt = C.terms[k], C.terms[k + 1]
    offs_s, offs_t = _offsets(src), _offsets(tgt)
    M = linalg.zeros(sum(g.mult for g in tgt), sum(g.mult for g in src))
    for (t, s), op in C.d[k].items():
        ot, os_ = offs_t[t], offs_s[s]
        for L, r in op.pairs:
            x = _eval(r, point)
            if x == 0:
                continue
            for i, row in enumerate(L):
                for j, c in enumerate(row):
                    if c != 0:
                        M[ot + i][os_ + j] += c * x
    return M


def _offsets(term):
    out, k = {}, 0
    for g in term:
        out[g.label] = k
        k += g.mult
    return out


@dataclass
class PointEval:
    rank_d0: int
    rank_d1: int
    cohomology: int


def evaluate_adhm_at_point(C, x, y, names=("x", "y")):
    point = {names[0]: Fraction(x), names[1]: Fraction(y)}
    D0, D1 = specialize(C, 0, point), specialize(C, 1, point)
    r0 = linalg.rank(D0) if D0 and D0[0] else 0
    r1 = linalg.rank(D1) if D1 and D1[0] else 0
    mid = C.ranks()[1]
    return PointEval(r0, r1, mid - r0 - r1)


# slice exactness

def normal_words(A, basis, tail, L):
    """Words of length <= L with the given tail avoiding all leading words."""
    leads = [r.lm for r in basis.alive_rules() if r.lm]
    q = A.quiver

    def ok(w):
        for lm in leads:
            n = len(lm)
            if len(w) >= n and w[:n] == lm:
                return False
        return True

    # grow on the left, so the tail stays fixed
    out = [()]
    frontier = [()]
    for _ in range(L):
        nxt = []
        for w in frontier:
            cur = q.arrows[w[0]].head if w else tail
            for a, arr in q.arrows.items():
                if arr.tail == cur and ok((a,) + w):
                    nxt.append((a,) + w)
        out.extend(nxt)
        frontier = nxt
    return out


class _Slice:
    """Coordinates of a term restricted to words of length <= L."""

    def __init__(self, C, k, words, L):
        self.index = {}
        for g in C.terms[k]:
            for p in range(g.mult):
                for w in words[g.vertex]:
                    if len(w) <= L:
                        self.index[(g.label, p, w)] = len(self.index)

    def __len__(self):
        return len(self.index)


def _apply_rows(C, k, dom, words_by_vertex, basis):
    """Images of the domain basis vectors as sparse dicts keyed by (gen, p, word)."""
    A = C.alg
    cols = []
    cache = {}
    for (label, p, w) in dom.index:
        img = {}
        for (tgt, src), op in C.d[k].items():
            if src != label:
                continue
            gs = C.gen(k, src)
            u = A.e(gs.vertex) if not w else A.path(*w)
            for L, r in op.pairs:
                key = (w, id(r))
                prod = cache.get(key)
                if prod is None:
                    prod = basis.reduce(u * r)
                    cache[key] = prod
                for q_, row in enumerate(L):
                    c = row[p]
                    if c == 0:
                        continue
                    for (_, _, ww), x in prod.terms.items():
                        kk = (tgt, q_, ww)
                        v = img.get(kk, 0) + c * x
                        if v == 0:
                            img.pop(kk, None)
                        else:
                            img[kk] = v
        cols.append(img)
    return cols


def _rank_of(cols, keep=None):
    rows = []
    for img in cols:
        rows.append({k: v for k, v in img.items() if keep is None or keep(k)})
    # rank of the column set equals rank of the transposed row set
    index = {}
    out = []
    for r in rows:
        out.append({index.setdefault(k, len(index)): v for k, v in r.items()})
    return linalg.sparse_rank(out)


@dataclass
class SliceResult:
    level: int
    h0: int
    h1: int


def slice_exactness(C, level, slack=2):
    """
    Homology dimensions at positions 0 and 1 on the filtration piece F_L of
    words of length <= L.  Position 1 counts ker d1 on F_L minus the part of
    d0(F_{L+slack}) that lies in F_L, so a zero is a certificate of exactness
    on the slice.
    """
    if level < 0:
        raise ValueError("level must be nonnegative")
    A = C.alg
    top = level + slack
    basis = A.basis(top + 4)
    verts = {g.vertex for t in C.terms for g in t}
    words = {v: normal_words(A, basis, v, top + 1) for v in verts}
    dom0 = _Slice(C, 0, words, level)
    h0 = len(dom0) - _rank_of(_apply_rows(C, 0, dom0, words, basis))
    dom1 = _Slice(C, 1, words, level)
    ker1 = len(dom1) - _rank_of(_apply_rows(C, 1, dom1, words, basis))
    big0 = _Slice(C, 0, words, top)
    cols = _apply_rows(C, 0, big0, words, basis)
    full = _rank_of(cols)
    outside = _rank_of(cols, keep=lambda k: len(k[2]) > level)
    h1 = ker1 - (full - outside)
    return SliceResult(level, h0, h1)

"""
Representations: matrix representations over exact fields, symbolic
representations into other quiver algebras, affine charts, substitutions and
the coordinate change that standardizes the obstruction relation.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from . import linalg
from .algebra import Element, prove
from .localization import inverse_letters
from .models import framing_pairs
from .report import FAIL, PASS, UNRESOLVED, Report
from .scalars import valuation as scalar_valuation
from .symbolic import SymbolicRep, compose


# substitutions and derivations

def _check_image(a, img, quiver):
    arr = quiver.arrows.get(a)
    if arr is None:
        raise KeyError("unknown arrow %r" % a)
    for (h, t, _w) in img.terms:
        if (h, t) != (arr.head, arr.tail):
            raise ValueError("image of %s runs %s <- %s, expected %s <- %s"
                             % (a, h, t, arr.head, arr.tail))


def substitute(f, sigma, trunc, target=None):
    """
    Replace every letter a of f by sigma[a] (letters not in sigma are kept) and
    drop all terms of weighted length above ``trunc``.
    """
    if target is None:
        target = next((x.alg for x in sigma.values() if isinstance(x, Element)), f.alg)
    images = {}
    for a, img in sigma.items():
        if isinstance(img, str):
            img = target.parse(img)
        elif img.alg is not target:
            img = img.rebase(target)
        if target.quiver.framing == f.alg.quiver.framing:
            _check_image(a, img, f.alg.quiver)
        images[a] = img
    out = {}
    for (h, t, w), c in f.terms.items():
        if not w:
            term = target.e(h)
        else:
            term = None
            for a in reversed(w):
                img = images.get(a)
                if img is None:
                    img = target.arrow(a)
                term = img if term is None else (img * term).truncate(trunc)
                if not term:
                    break
        if not term:
            continue
        for m, x in term.truncate(trunc).terms.items():
            v = out.get(m, 0) + c * x
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
    return Element._raw(target, out)


def compose_substitutions(tau, sigma, trunc, alg):
    """The substitution 'first sigma, then tau' on the letters of alg."""
    out = {}
    for a in alg.quiver.arrows:
        img = sigma.get(a, alg.arrow(a))
        out[a] = substitute(img, tau, trunc, alg)
    return out


def inverse_substitution(sigma, alg, trunc):
    """
    Series inverse of a substitution a -> a + (longer terms), by the fixed
    point rho(a) = a - (sigma(a) - a) evaluated at rho, truncated.
    """
    rho = {a: alg.arrow(a) for a in sigma}
    tails = {a: sigma[a] - alg.arrow(a) for a in sigma}
    for _ in range(trunc + 1):
        new = {a: (alg.arrow(a) - substitute(tails[a], rho, trunc, alg)).truncate(trunc)
               for a in sigma}
        if new == rho:
            break
        rho = new
    return rho


def _grade(alg, word):
    return sum(alg.quiver.arrows[a].degree for a in word)


def _cdegree(f):
    """Cohomological degree of a homogeneous element (None for zero)."""
    ds = {_grade(f.alg, w) for (_, _, w) in f.terms}
    if not ds:
        return None
    if len(ds) > 1:
        raise ValueError("element %s is not homogeneous in degree" % f)
    return ds.pop()


def derive(f, d):
    """Graded Leibniz extension: d(a1...ak) = sum (-1)^{|a1..a_{i-1}|} a1..d(a_i)..ak."""
    A = f.alg
    out = A.zero()
    for (h, t, w), c in f.terms.items():
        sign_deg = 0
        for k, a in enumerate(w):
            da = d.get(a)
            if da:
                left = A.path(*w[:k]) if k else None
                right = A.path(*w[k + 1:]) if k + 1 < len(w) else None
                term = da
                if left is not None:
                    term = left * term
                if right is not None:
                    term = term * right
                sign = -1 if sign_deg % 2 else 1
                out = out + (c * sign) * term
            sign_deg += A.quiver.arrows[a].degree
    return out


@dataclass
class DgReport:
    ok: bool
    report: Report

    def __bool__(self):
        return self.ok


def check_dg(A, d, effort, presents=None):
    """
    Check a derivation of degree +1 given on the letters of A.  Requires d(r)
    proved-member for every relation r and d(d(a)) proved-member for every
    letter a.  When ``presents`` is an algebra B on the degree-0 letters, also
    requires that the images d(t) of the degree -1 letters generate the
    relation ideal of B: each d(t) lies in B's ideal and each relation of B
    lies in the ideal generated by the d(t).
    """
    d = {a: (x.rebase(A) if x.alg is not A else x) for a, x in d.items() if x}
    for a, x in d.items():
        arr = A.quiver.arrows[a]
        if any((h, t) != (arr.head, arr.tail) for (h, t, _) in x.terms):
            raise ValueError("d(%s) must run from %s to %s" % (a, arr.tail, arr.head))
        deg = _cdegree(x)
        if deg is not None and deg != A.quiver.arrows[a].degree + 1:
            raise ValueError("d(%s) has degree %d, expected %d"
                             % (a, deg, A.quiver.arrows[a].degree + 1))
    rep = Report("dg check")
    for k, r in enumerate(A.relations):
        ok, _ = prove(derive(r, d), A, effort)
        rep.add("d(relation %d)" % k, ok)
    for a in A.quiver.arrows:
        dd = derive(d[a], d) if a in d else A.zero()
        ok, _ = prove(dd, A, effort)
        rep.add("d^2(%s)" % a, ok)
    if presents is not None:
        from .algebra import QuiverAlgebra
        gens = [x for a, x in d.items() if A.quiver.arrows[a].degree == -1]
        for a, x in d.items():
            if A.quiver.arrows[a].degree != -1:
                continue
            try:
                xb = x.rebase(presents)
            except KeyError:
                rep.add("d(%s) in presented ideal" % a, FAIL, "uses letters outside degree 0")
                continue
            ok, _ = prove(xb, presents, effort)
            rep.add("d(%s) in presented ideal" % a, ok)
        C = QuiverAlgebra(presents.quiver, [g.rebase(presents) for g in gens
                                            if all(l in presents.quiver.arrows
                                                   for (_, _, w) in g.terms for l in w)],
                          presents.weights, presents.order)
        for k, r in enumerate(presents.relations):
            ok, _ = prove(r.rebase(C), C, effort)
            rep.add("presented relation %d generated" % k, ok)
    return DgReport(rep.ok, rep)


def valuation(f, weights=None):
    """min over terms of (scalar valuation + sum of arrow weights); +inf for 0."""
    weights = weights or {}
    best = float("inf")
    for (_, _, w), c in f.terms.items():
        v = scalar_valuation(c) + sum(Fraction(weights.get(a, 0)) for a in w)
        if v < best:
            best = v
    return best


# matrix representations

def _mat(rows, m, n, zero=0):
    if rows is None:
        return [[zero] * n for _ in range(m)]
    if len(rows) != m or any(len(r) != n for r in rows):
        raise ValueError("expected a %dx%d matrix" % (m, n))
    return [list(r) for r in rows]


def _mm(A, B, n):
    """A (m x k) times B (k x n), with n given so that k = 0 works."""
    out = []
    for row in A:
        r = [0] * n
        for t, a in enumerate(row):
            if a == 0:
                continue
            Bt = B[t]
            for j in range(n):
                if Bt[j] != 0:
                    r[j] = r[j] + a * Bt[j]
        out.append(r)
    return out


def _coef(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class MatrixRep:
    """dims: vertex -> int (framing vertices included); matrices: arrow -> rows."""

    def __init__(self, quiver, dims, matrices, one=1):
        self.quiver = quiver
        self.dims = {str(k): int(v) for k, v in dims.items()}
        for v in quiver.vertices:
            self.dims.setdefault(v, 0)
        self.one = one
        self.matrices = {}
        for a, arr in quiver.arrows.items():
            self.matrices[a] = _mat(matrices.get(a), self.dims[arr.head], self.dims[arr.tail],
                                    0 * one)
        for a in matrices:
            if a not in quiver.arrows:
                raise KeyError("unknown arrow %r" % a)

    def identity(self, v):
        n = self.dims[v]
        return [[self.one if i == j else 0 * self.one for j in range(n)] for i in range(n)]

    def word(self, tail, w):
        M = self.identity(tail)
        n = self.dims[tail]
        for a in reversed(w):
            M = _mm(self.matrices[a], M, n)
        return M

    def evaluate(self, f):
        """Matrix of a vertex-homogeneous element."""
        ht = f.head_tail()
        if ht is None:
            if not f:
                return []
            raise ValueError("evaluate() expects a vertex-homogeneous element")
        h, t = ht
        acc = [[0 * self.one] * self.dims[t] for _ in range(self.dims[h])]
        for (_, _, w), c in f.terms.items():
            M = self.word(t, w)
            c = _coef(c)
            for i in range(len(acc)):
                for j in range(len(acc[i])):
                    if M[i][j] != 0:
                        acc[i][j] = acc[i][j] + c * M[i][j]
        return acc

    def conjugate(self, g):
        """Gauge transform by g: vertex -> invertible matrix (identity if absent)."""
        ginv = {v: linalg.inverse(M) for v, M in g.items() if self.dims[v]}
        mats = {}
        for a, arr in self.quiver.arrows.items():
            M = self.matrices[a]
            nt = self.dims[arr.tail]
            if arr.head in g and self.dims[arr.head]:
                M = _mm(g[arr.head], M, nt)
            if arr.tail in ginv:
                M = _mm(M, ginv[arr.tail], nt)
            mats[a] = M
        return MatrixRep(self.quiver, self.dims, mats, self.one)

    def to_dict(self):
        return {"dims": dict(self.dims),
                "matrices": {a: [[_scalar_out(x) for x in r] for r in M]
                             for a, M in self.matrices.items()}}

    def __repr__(self):
        return "MatrixRep(%s)" % self.dims


def _scalar_out(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return x
    return repr(x)


@dataclass
class RepCheck:
    status: str
    relation: object = None
    residual: list = None

    def __bool__(self):
        return self.status == PASS


def check_matrix_rep(rho, A):
    """PASS when every relation of A evaluates to the zero matrix exactly."""
    for r in A.relations:
        for comp in r.components().values():
            M = rho.evaluate(comp)
            if not linalg.is_zero(M):
                return RepCheck(FAIL, comp, M)
    return RepCheck(PASS)


def moment_map(rho, quiver=None, eps=None):
    """vertex -> sum over t(a)=v of eps(a) B_abar B_a + i_v j_v."""
    q = quiver or rho.quiver
    if eps is None:
        raise ValueError("moment_map needs the sign function eps")
    for a, arr in q.arrows.items():
        if not q.framing[arr.tail] and not q.framing[arr.head] and a not in eps:
            raise ValueError("missing eps for arrow %r" % a)
    pairs = framing_pairs(q)
    out = {}
    for v in q.unframed_vertices():
        n = rho.dims[v]
        acc = [[0 * rho.one] * n for _ in range(n)]
        terms = [(eps[a], q.partner[a], a) for a in eps if q.tail(a) == v]
        terms += [(1, i, j) for i, j in pairs.get(v, [])]
        for s, left, right in terms:
            P = _mm(rho.matrices[left], rho.matrices[right], n)
            for i in range(n):
                for j in range(n):
                    if P[i][j] != 0:
                        acc[i][j] = acc[i][j] + s * P[i][j]
        out[v] = acc
    return out


def moment_map_is_zero(rho, eps):
    return all(linalg.is_zero(M) for M in moment_map(rho, eps=eps).values())


# symbolic representations

def check_symbolic_rep(G, effort, report=None, label=""):
    """Every relation of the source must map to a matrix of proved members."""
    rep = report if report is not None else Report("relations of %s" % (G.name or "G"))
    missing = G.missing_arrows()
    if missing:
        raise ValueError("no image for arrows %s" % missing)
    q = G.source.quiver
    for v in q.vertices:
        if q.framing[v]:
            w = G.vertex_map[v]
            if not G.target.quiver.framing.get(w) or G.rank[v] != 1:
                raise ValueError("framing vertex %s must map to a rank-one framing vertex" % v)
    for k, r in enumerate(G.source.relations):
        for comp in r.components().values():
            M = G.apply(comp)
            bad = []
            used = effort
            for i, row in enumerate(M):
                for j, x in enumerate(row):
                    ok, u = prove(x, G.target, effort)
                    used = max(used, u)
                    if not ok:
                        bad.append("(%d,%d): %s" % (i, j, x))
            detail = "; ".join(bad)
            if used > effort and not bad:
                detail = "needed effort %d" % used
            rep.add("%srelation %s" % (label, G.source.format(comp)), not bad, detail)
    return rep


def compose_symbolic(G, H, name=None):
    """First H, then G."""
    return compose(G, H, name)


@dataclass
class ChartTriple:
    chart: object           # single-vertex QuiverAlgebra
    big: object             # localized big algebra
    G0i: SymbolicRep        # chart -> big
    Gi0: SymbolicRep        # big -> chart
    gerbe: dict = field(default_factory=dict)   # vertex -> (column, inverse row)
    name: str = "chart"


def _as_entries(A, xs):
    out = []
    for x in xs:
        if isinstance(x, Element):
            out.append(x.rebase(A) if x.alg is not A else x)
        elif isinstance(x, str):
            out.append(A.parse(x))
        else:
            out.append(A.scalar(x))
    return out


def gerbe_matrix(A, v, rank, data):
    """Normalize gerbe data at v to (column of length rank, inverse row)."""
    if data is None:
        if rank != 1:
            raise ValueError("missing gerbe entry at %s" % v)
        return [A.e(v)], [A.e(v)]
    col, inv = data
    col = _as_entries(A, col if isinstance(col, list) else [col])
    inv = _as_entries(A, inv if isinstance(inv, list) else [inv])
    if len(col) != rank or len(inv) != rank:
        raise ValueError("gerbe at %s must have %d entries" % (v, rank))
    return col, inv


def verify_chart(c, effort):
    rep = Report("chart %s" % c.name)
    G0i, Gi0, big, chart = c.G0i, c.Gi0, c.big, c.chart
    # (1) Gi0 o G0i = Id on chart letters
    for X in chart.quiver.arrows:
        img = G0i.apply_scalar(chart.arrow(X))
        back = Gi0.apply(img) if img else [[chart.zero()]]
        ok, _ = prove(back[0][0] - chart.arrow(X), chart, effort)
        rep.add("Gi0.G0i(%s) = %s" % (X, X), ok)
    # (3) gerbe witnesses
    gerbes = {}
    for v in big.quiver.vertices:
        col, inv = gerbe_matrix(big, v, Gi0.rank[v], c.gerbe.get(v))
        gerbes[v] = (col, inv)
        r = len(col)
        v1 = G0i.vertex_map[chart.quiver.vertices[0]]
        bad = []
        for k in range(r):
            for l in range(r):
                f = col[k] * inv[l] - (big.e(v1) if k == l else big.zero())
                if not prove(f, big, effort)[0]:
                    bad.append("c*c^-1 (%d,%d)" % (k, l))
        f = sum((inv[l] * col[l] for l in range(r)), big.zero()) - big.e(v)
        if not prove(f, big, effort)[0]:
            bad.append("c^-1*c")
        rep.add("gerbe inverse at %s" % v, not bad, "; ".join(bad))
    # (2) conjugation identity on every letter of the big algebra
    for a, arr in big.quiver.arrows.items():
        M = Gi0.arrow_map[a]
        ch, _ = gerbes[arr.head]
        _, ct = gerbes[arr.tail]
        bad = []
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                lhs = G0i.apply_scalar(x) if x else big.zero()
                rhs = ch[i] * big.arrow(a) * ct[j]
                if not prove(lhs - rhs, big, effort)[0]:
                    bad.append("(%d,%d)" % (i, j))
        rep.add("G0i.Gi0(%s) = c %s c^-1" % (a, a), not bad, " ".join(bad))
    return rep


# coordinate change

def raw_obstruction(A, eps, a_coeffs, b_coeffs, trunc):
    """
    Obstruction before the coordinate change: at each unframed vertex v,
    sum over t(a)=v of eps(a) u_a (1 + sum_j a_j u_a^j) with u_a = xbar_a x_a,
    plus i_v j_v (1 + sum_k b_k (i_v j_v)^k), truncated.
    """
    q = A.quiver
    pairs = framing_pairs(q)
    out = []
    for v in q.unframed_vertices():
        f = A.zero()
        for a, s in eps.items():
            if q.tail(a) != v:
                continue
            u = A.arrow(q.partner[a]) * A.arrow(a)
            f = f + s * (u * _series(A, u, a_coeffs, v, trunc))
        for i, j in pairs.get(v, []):
            u = A.arrow(i) * A.arrow(j)
            f = f + u * _series(A, u, b_coeffs, v, trunc)
        out.append(f.truncate(trunc))
    return out


def _series(A, u, coeffs, v, trunc):
    s = A.e(v)
    p = A.e(v)
    for c in coeffs:
        p = (p * u).truncate(trunc)
        if c:
            s = s + Fraction(c) * p
    return s


def standard_generators(A, eps):
    from .models import preprojective_relation
    return [preprojective_relation(A, eps, v) for v in A.quiver.unframed_vertices()]


@dataclass
class Standardization:
    sigma: dict
    inverse: dict
    report: Report

    @property
    def verified(self):
        return self.report.ok

    def __iter__(self):
        return iter((self.sigma, self.verified))


def coordinate_standardize(raw, a_coeffs, b_coeffs, effort, eps):
    """
    Build x~_a = x_a (1 + sum a_j (xbar_a x_a)^j) for eps(a) = +1 and
    i~_v = (1 + sum b_k (i_v j_v)^k) i_v, then verify three ways at path
    length ``effort``: sigma applied to the standard generators gives the raw
    obstruction; the series inverse applied to the raw obstruction gives the
    standard generators; the inverse undoes sigma on every letter.
    """
    if not raw:
        raise ValueError("empty obstruction")
    A = raw[0].alg
    q = A.quiver
    unframed = q.unframed_vertices()
    if len(raw) != len(unframed):
        raise ValueError("need one obstruction element per unframed vertex")
    for v, f in zip(unframed, raw):
        ht = f.head_tail()
        if f and ht != (v, v):
            raise ValueError("obstruction at %s is not a loop at %s" % (v, v))
    sigma = {}
    for a, s in eps.items():
        if s == 1:
            u = A.arrow(q.partner[a]) * A.arrow(a)
            sigma[a] = (A.arrow(a) * _series(A, u, a_coeffs, q.tail(a), effort)).truncate(effort)
    for v, prs in framing_pairs(q).items():
        for i, j in prs:
            u = A.arrow(i) * A.arrow(j)
            sigma[i] = (_series(A, u, b_coeffs, v, effort) * A.arrow(i)).truncate(effort)
    rho = inverse_substitution(sigma, A, effort)
    std = standard_generators(A, eps)
    rep = Report("coordinate change")
    for v, s, r in zip(unframed, std, raw):
        fwd = substitute(s, sigma, effort) - r.truncate(effort)
        rep.add("sigma(standard) = raw at %s" % v, not fwd.truncate(effort))
        back = substitute(r, rho, effort) - s
        rep.add("inverse(raw) = standard at %s" % v, not back.truncate(effort))
    for a in q.arrows:
        img = substitute(sigma.get(a, A.arrow(a)), rho, effort) - A.arrow(a)
        rep.add("inverse.sigma(%s) = %s" % (a, a), not img.truncate(effort))
    return Standardization(sigma, rho, rep)


# stable families

def invertible_letters(A):
    out = set()
    for kind, data in A.inverse_pairs:
        if kind != "scalar":
            continue
        gamma, letter = data
        if len(gamma.terms) == 1:
            (_, _, w), c = next(iter(gamma.terms.items()))
            if len(w) == 1:
                out.add(w[0])
                out.add(letter)
    return out


def is_unit(x, units):
    """Sufficient test: nonzero scalar times a word in invertible letters."""
    if len(x.terms) != 1:
        return False
    (_, _, w), c = next(iter(x.terms.items()))
    return c != 0 and all(a in units for a in w)


def _triangular_certificate(cols, r, units):
    for pick in combinations(range(len(cols)), r):
        M = [[cols[p][i] for p in pick] for i in range(r)]
        for rows in permutations(range(r)):
            if all(is_unit(M[rows[k]][k], units) and
                   all(not M[rows[k]][l] for l in range(k + 1, r)) for k in range(r)):
                return pick
    return None


@dataclass
class FamilyCheck:
    status: str
    certificates: dict

    def __bool__(self):
        return self.status == "stable"


def stable_family_check(G, v1, effort, max_columns=12):
    """
    Generation certificate for a family over a single-vertex chart: columns
    G(p) for paths p out of v1 are collected breadth first (normal forms mod
    the chart ideal); a vertex is certified once some square matrix of its
    columns is triangular with unit diagonal after reordering.
    """
    if G.rank.get(v1) != 1:
        raise ValueError("the reference vertex must have rank one")
    chart = G.target
    units = invertible_letters(chart)
    basis = chart.basis(effort)
    q = G.source.quiver
    cols = {v: [] for v in q.vertices}
    seen = {v: set() for v in q.vertices}

    def add(v, col):
        key = tuple(frozenset(x.terms.items()) for x in col)
        if key in seen[v] or all(not x for x in col) or len(cols[v]) >= max_columns:
            return False
        seen[v].add(key)
        cols[v].append(col)
        return True

    e = chart.e(chart.quiver.vertices[0])
    add(v1, [e])
    frontier = [(v1, [e])]
    for _ in range(effort):
        nxt = []
        for v, col in frontier:
            for a, arr in q.arrows.items():
                if arr.tail != v:
                    continue
                M = G.arrow_map[a]
                new = []
                for row in M:
                    acc = chart.zero()
                    for x, y in zip(row, col):
                        if x and y:
                            acc = acc + x * y
                    new.append(basis.reduce(acc))
                if add(arr.head, new):
                    nxt.append((arr.head, new))
        frontier = nxt
        if not frontier:
            break
    certs = {}
    for v in q.vertices:
        r = G.rank[v]
        if r == 0:
            certs[v] = ()
            continue
        pick = _triangular_certificate(cols[v], r, units)
        if pick is None:
            return FamilyCheck("not-proved", certs)
        certs[v] = [cols[v][p] for p in pick]
    return FamilyCheck("stable", certs)


def identity_chart(A, v=None):
    """The trivial chart of a single-vertex algebra."""
    from .symbolic import identity_rep
    G = identity_rep(A)
    return ChartTriple(A, A, G, G, {}, "identity")


__all__ = [
    "substitute", "compose_substitutions", "inverse_substitution", "derive", "check_dg",
    "valuation", "MatrixRep", "check_matrix_rep", "moment_map", "moment_map_is_zero",
    "check_symbolic_rep", "compose_symbolic", "ChartTriple", "verify_chart",
    "raw_obstruction", "coordinate_standardize", "stable_family_check", "identity_chart",
    "PASS", "FAIL", "UNRESOLVED", "inverse_letters",
]

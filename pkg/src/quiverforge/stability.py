"""
King/Nakajima stability for representations of (framed) double quivers.

A representation is a MatrixRep.  Arrows between unframed vertices form the
B part; arrows out of a framing vertex are the "a" maps (their images seed
condition 2) and arrows into a framing vertex are the "b" maps (their common
kernel bounds condition 1).  Graded subspaces are stored as an exact basis at
each unframed vertex.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .scalars import Novikov, as_fraction, valuation

STABLE = "stable"
SEMISTABLE = "semistable-only"
UNSTABLE = "unstable"
UNKNOWN = "unknown"

VALID = "valid-destabilizer"
NOT_DESTABILIZING = "not-a-destabilizer"
NOT_INVARIANT = "not-invariant"


@dataclass
class GradedSubspace:
    """basis: vertex -> list of independent vectors, so dims are exact."""
    basis: dict

    @property
    def dims(self):
        return {v: len(b) for v, b in self.basis.items()}

    def is_zero(self):
        return all(not b for b in self.basis.values())

    def total(self):
        return sum(len(b) for b in self.basis.values())

    def to_dict(self):
        return {"dims": self.dims,
                "basis": {v: [[_out(x) for x in vec] for vec in b]
                          for v, b in self.basis.items()}}


def _out(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, int):
        return x
    return repr(x)


def _parts(rho):
    """(unframed vertices, B arrows, framing-in arrows, framing-out arrows)."""
    cached = getattr(rho, "_stability_parts", None)
    if cached is not None:
        return cached
    q = rho.quiver
    vs = list(q.unframed_vertices())
    B, ins, outs = [], [], []
    for a, arr in q.arrows.items():
        ft, fh = q.framing[arr.tail], q.framing[arr.head]
        if not ft and not fh:
            B.append(a)
        elif ft and not fh:
            ins.append(a)
        elif fh and not ft:
            outs.append(a)
    rho._stability_parts = (vs, B, ins, outs)
    return rho._stability_parts


def _apply(M, vec):
    out = []
    for row in M:
        acc = 0
        for x, y in zip(row, vec):
            if x != 0 and y != 0:
                acc = acc + x * y
        out.append(acc)
    return out


def _reduce(vectors):
    """Echelon basis of the span."""
    return linalg.Echelon(vectors).basis()


def _span_contains(basis, vec):
    return linalg.Echelon(basis).contains(vec)


def _saturate(rho, seeds):
    """Smallest B-invariant graded subspace containing seeds (vertex -> vectors)."""
    vs, B, _, _ = _parts(rho)
    q = rho.quiver
    span = {v: linalg.Echelon() for v in vs}
    out = {v: [a for a in B if q.tail(a) == v and rho.dims[q.head(a)]] for v in vs}
    queue = []
    for v in vs:
        for vec in seeds.get(v, []):
            queue.append((v, vec))
    while queue:
        v, vec = queue.pop()
        if not span[v].add(vec):
            continue
        for a in out[v]:
            queue.append((q.head(a), _apply(rho.matrices[a], vec)))
    return GradedSubspace({v: span[v].basis() for v in vs})


def framing_image(rho):
    """Image of the framing-in maps, as seed vectors per unframed vertex."""
    _, _, ins, _ = _parts(rho)
    q = rho.quiver
    seeds = {}
    for a in ins:
        M = rho.matrices[a]
        h = q.head(a)
        cols = linalg.transpose(M, rho.dims[q.tail(a)])
        seeds.setdefault(h, []).extend(c for c in cols if len(c) == rho.dims[h])
    return seeds


def min_invariant_containing(rho, seed=None):
    """Smallest B-invariant graded subspace containing the seed (default Im a)."""
    return _saturate(rho, framing_image(rho) if seed is None else seed)


def max_invariant_in_kernel(rho, constraints=None):
    """
    Largest B-invariant graded subspace inside the common kernel of the
    framing-out maps (or of the given constraint rows per vertex).  Each vertex
    keeps a set of linear constraints; an arrow a: v -> h pulls back the
    constraints at h to v.  Iterates until no constraint rank grows.
    """
    vs, B, _, outs = _parts(rho)
    q = rho.quiver
    rows = {v: linalg.Echelon() for v in vs}
    if constraints is None:
        for b in outs:
            for r in rho.matrices[b]:
                rows[q.tail(b)].add(r)
    else:
        for v, rs in constraints.items():
            for r in rs:
                rows[v].add(r)
    arrows = [a for a in B if rho.dims[q.tail(a)] and rho.dims[q.head(a)]]
    changed = True
    while changed:
        changed = False
        for a in arrows:
            t, h = q.tail(a), q.head(a)
            if not rows[h]:
                continue
            pulled = linalg.matmul(rows[h].basis(), rho.matrices[a], rho.dims[h])
            for r in pulled:
                if rows[t].add(r):
                    changed = True
    basis = {}
    for v in vs:
        n = rho.dims[v]
        if rows[v]:
            kern = [[rho.one * x for x in vec] for vec in linalg.nullspace(rows[v].basis(), n)]
            basis[v] = _reduce(kern)
        else:
            basis[v] = _reduce(rho.identity(v))
    return GradedSubspace(basis)


def full_space(rho):
    vs = rho.quiver.unframed_vertices()
    return GradedSubspace({v: _reduce(rho.identity(v)) for v in vs})


def _zeta(rho, zeta):
    vs = list(rho.quiver.unframed_vertices())
    if isinstance(zeta, dict):
        z = {str(k): as_fraction(x) if not isinstance(x, float) else x for k, x in zeta.items()}
    else:
        zeta = list(zeta)
        if len(zeta) != len(vs):
            raise ValueError("zeta has %d entries for %d vertices" % (len(zeta), len(vs)))
        z = {v: as_fraction(x) if not isinstance(x, float) else x for v, x in zip(vs, zeta)}
    for v in vs:
        z.setdefault(v, 0)
    return z


def _pair(z, dims):
    return sum(z[v] * d for v, d in dims.items())


def _is_invariant(rho, S):
    _, B, _, _ = _parts(rho)
    q = rho.quiver
    for a in B:
        t, h = q.tail(a), q.head(a)
        for vec in S.basis.get(t, []):
            if not _span_contains(S.basis.get(h, []), _apply(rho.matrices[a], vec)):
                return False
    return True


def _in_kernel(rho, S):
    _, _, _, outs = _parts(rho)
    q = rho.quiver
    for b in outs:
        for vec in S.basis.get(q.tail(b), []):
            if any(x != 0 for x in _apply(rho.matrices[b], vec)):
                return False
    return True


def _contains_image(rho, S):
    for v, vecs in framing_image(rho).items():
        for vec in vecs:
            if not _span_contains(S.basis.get(v, []), vec):
                return False
    return True


def _violation(rho, S, z, framed):
    """
    How S fails the strict inequalities: None, "equal" (breaks stability only)
    or "strict" (breaks semistability).  S must be B-invariant.
    """
    dS = S.dims
    dV = {v: rho.dims[v] for v in dS}
    worst = None
    if framed:
        cands = []
        if not S.is_zero() and _in_kernel(rho, S):
            cands.append(_pair(z, dS))
        if dS != dV and _contains_image(rho, S):
            cands.append(_pair(z, dS) - _pair(z, dV))
    else:
        cands = [_pair(z, dS)] if (not S.is_zero() and dS != dV) else []
    for val in cands:
        if val > 0:
            return "strict"
        if val == 0:
            worst = "equal"
    return worst


@dataclass
class Verdict:
    status: str
    witness: GradedSubspace = None
    exact: bool = True
    detail: str = ""
    candidates: int = 0

    def to_dict(self):
        out = {"status": self.status, "exact": self.exact, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def _sign_definite(rho, z):
    support = [v for v in rho.quiver.unframed_vertices() if rho.dims[v]]
    if not support:
        return 0
    if all(z[v] < 0 for v in support):
        return -1
    if all(z[v] > 0 for v in support):
        return 1
    return 0


def _coordinate_subspaces(rho):
    """All B-invariant graded subspaces when every unframed dim is at most 1."""
    vs, B, _, _ = _parts(rho)
    q = rho.quiver
    live = [v for v in vs if rho.dims[v]]
    edges = [(q.tail(a), q.head(a)) for a in B
             if rho.dims[q.tail(a)] and rho.dims[q.head(a)] and rho.matrices[a][0][0] != 0]
    for bits in itertools.product((0, 1), repeat=len(live)):
        on = {v for v, b in zip(live, bits) if b}
        if all(h in on for t, h in edges if t in on):
            yield GradedSubspace({v: ([[rho.one]] if v in on else []) for v in vs})


def _random_vector(rng, n, one):
    return [rng.randint(-3, 3) * one for _ in range(n)]


def _search_candidates(rho, rng, rounds):
    """Invariant subspaces built from structured and random seeds."""
    vs = [v for v in rho.quiver.unframed_vertices() if rho.dims[v]]
    one = rho.one
    K = max_invariant_in_kernel(rho)
    yield K
    img = framing_image(rho)
    M = min_invariant_containing(rho)
    yield M
    for v in vs:
        for vec in K.basis.get(v, []):
            yield _saturate(rho, {v: [vec]})
        for k in range(rho.dims[v]):
            e = [one if i == k else 0 * one for i in range(rho.dims[v])]
            yield _saturate(rho, {v: [e]})
            seeds = {w: list(x) for w, x in img.items()}
            seeds.setdefault(v, []).append(e)
            yield _saturate(rho, seeds)
    for _ in range(rounds):
        v = rng.choice(vs)
        vec = _random_vector(rng, rho.dims[v], one)
        yield _saturate(rho, {v: [vec]})
        seeds = {w: list(x) for w, x in img.items()}
        seeds.setdefault(v, []).append(vec)
        yield _saturate(rho, seeds)
        kv = K.basis.get(v, [])
        if kv:
            comb = [0 * one] * rho.dims[v]
            for b in kv:
                c = rng.randint(-3, 3)
                comb = [x + c * y for x, y in zip(comb, b)]
            yield _saturate(rho, {v: [comb]})


def is_stable(rho, zeta, mode="framed", seed=0, rounds=32):
    """
    Stability verdict.  Exact when zeta is sign-definite on the support (framed
    mode) or when every unframed dimension is at most 1; otherwise a bounded
    search that may answer UNKNOWN.  Returned witnesses are re-verified.
    """
    framed = mode == "framed"
    if mode not in ("framed", "unframed"):
        raise ValueError("mode must be 'framed' or 'unframed'")
    z = _zeta(rho, zeta)
    vs = rho.quiver.unframed_vertices()
    dV = {v: rho.dims[v] for v in vs}
    if not framed and _pair(z, dV) != 0:
        raise ValueError("unframed stability needs zeta . dim V = 0")

    sign = _sign_definite(rho, z) if framed else 0
    if sign < 0:
        T = min_invariant_containing(rho)
        if T.dims == dV:
            return Verdict(STABLE, detail="closure of Im a is V")
        return _checked(rho, Verdict(UNSTABLE, T, detail="proper invariant subspace contains Im a"),
                        z, mode)
    if sign > 0:
        S = max_invariant_in_kernel(rho)
        if S.is_zero():
            return Verdict(STABLE, detail="no invariant subspace in ker b")
        return _checked(rho, Verdict(UNSTABLE, S, detail="nonzero invariant subspace in ker b"),
                        z, mode)

    if all(d <= 1 for d in dV.values()):
        equal = None
        n = 0
        for S in _coordinate_subspaces(rho):
            n += 1
            kind = _violation(rho, S, z, framed)
            if kind == "strict":
                return _checked(rho, Verdict(UNSTABLE, S, detail="coordinate subspace", candidates=n),
                                z, mode)
            if kind == "equal" and equal is None:
                equal = S
        if equal is not None:
            return _checked(rho, Verdict(SEMISTABLE, equal, detail="equality on a subspace",
                                         candidates=n), z, mode)
        return Verdict(STABLE, detail="all coordinate subspaces checked", candidates=n)

    rng = random.Random(seed)
    equal = None
    n = 0
    for S in _search_candidates(rho, rng, rounds):
        n += 1
        kind = _violation(rho, S, z, framed)
        if kind == "strict":
            return _checked(rho, Verdict(UNSTABLE, S, exact=True, detail="search witness",
                                         candidates=n), z, mode)
        if kind == "equal" and equal is None:
            equal = S
    detail = "no strict destabilizer among %d candidates" % n
    if equal is not None:
        detail += "; equality witness found"
    return Verdict(UNKNOWN, equal, exact=False, detail=detail, candidates=n)


def _checked(rho, verdict, z, mode):
    w = verify_witness(rho, verdict.witness, z, mode)
    if w.status != VALID:
        raise AssertionError("internal witness failed verification: %s" % w.status)
    return verdict


@dataclass
class WitnessCheck:
    status: str
    strict: bool = False
    detail: str = ""


def verify_witness(rho, S, zeta, mode="framed"):
    """Check that S is a B-invariant subspace violating a strict inequality."""
    if not isinstance(S, GradedSubspace):
        S = GradedSubspace({str(v): [list(x) for x in b] for v, b in S.items()})
    z = _zeta(rho, zeta)
    for v, b in S.basis.items():
        if v not in rho.dims or rho.quiver.framing[v]:
            raise ValueError("witness uses non-vertex %r" % v)
        if any(len(x) != rho.dims[v] for x in b):
            raise ValueError("witness vector of wrong length at %s" % v)
        if b and linalg.rank(b) != len(b):
            raise ValueError("witness basis at %s is not independent" % v)
    basis = {v: _reduce(S.basis.get(v, [])) for v in rho.quiver.unframed_vertices()}
    S = GradedSubspace(basis)
    if not _is_invariant(rho, S):
        return WitnessCheck(NOT_INVARIANT)
    kind = _violation(rho, S, z, mode == "framed")
    if kind is None:
        return WitnessCheck(NOT_DESTABILIZING)
    return WitnessCheck(VALID, kind == "strict", kind)


def gauge_normalize_an(rho, i):
    """
    Rank-one representation of the affine A_n double quiver (vertices 1..n+1,
    u_j: j -> j+1, v_j: j+1 -> j).  Rescales so that v_1..v_{i-1} and
    u_{i+1}..u_{n+1} become 1; these arrows form a spanning tree.
    """
    N = len(rho.quiver.unframed_vertices())
    if not 1 <= i <= N:
        raise ValueError("chart index must be in 1..%d" % N)

    def scalar(a):
        M = rho.matrices[a]
        if not M or not M[0]:
            raise ValueError("gauge_normalize_an needs rank-one data")
        return M[0][0]

    for j in list(range(1, i)) + list(range(i + 1, N + 1)):
        a = ("v%d" if j < i else "u%d") % j
        if scalar(a) == 0:
            raise ValueError("designated arrow %s is zero" % a)
    one = rho.one
    g = {"1": one}
    for j in range(1, i):
        g[str(j + 1)] = g[str(j)] * scalar("v%d" % j)
    if i < N:
        g[str(N)] = g["1"] * scalar("u%d" % N)
        for j in range(N - 1, i, -1):
            g[str(j)] = g[str(j + 1)] * scalar("u%d" % j)
    return rho.conjugate({v: [[x]] for v, x in g.items()})


def _val(x):
    if isinstance(x, Novikov):
        return x.valuation()
    if isinstance(x, (int, Fraction)):
        return valuation(x)
    raise TypeError("malformed scalar %r" % (x,))


def _parse_key(k):
    name, idx = k[0], k[1:]
    if name not in "uvxy" or not idx.isdigit():
        raise ValueError("malformed variable %r" % k)
    return name, int(idx)


def mc_region_classify(values, areas, n):
    """
    Region tag for a Maurer-Cartan solution with Novikov values.

    values: {"u<j>": s, "v<j>": s} for a sphere chart or {"x<i>": s, "y<i>": s}
    for a torus chart.  areas: j -> (A_j, A_j').  Returns "Def(S_j)",
    "Def(T_i)" or "none".
    """
    keys = {}
    for k, x in values.items():
        name, idx = _parse_key(k)
        keys.setdefault(idx, {})[name] = x
        _val(x)
    if len(keys) != 1:
        raise ValueError("expected the coordinates of a single chart")
    (j, vals), = keys.items()
    if j not in areas and str(j) not in areas:
        raise ValueError("no areas for index %d" % j)
    A, Ap = (as_fraction(x) for x in areas.get(j, areas.get(str(j))))
    gap = abs(A - Ap)
    if set(vals) == {"u", "v"}:
        u, v = vals["u"], vals["v"]
        vu, vv = _val(u), _val(v)
        if vu < 0 or vv < 0:
            return "none"
        if j == 1:
            ok = vu >= A
        elif j == n + 1:
            ok = vv >= Ap
        elif 1 < j <= n:
            ok = vu >= max(gap, 0) and vv >= max(gap, 0) and _val(u * v) > 0
        else:
            raise ValueError("sphere index %d out of range" % j)
        return "Def(S_%d)" % j if ok else "none"
    if set(vals) == {"x", "y"}:
        if not 1 <= j <= n:
            raise ValueError("torus index %d out of range" % j)
        x, y = vals["x"], vals["y"]
        if _val(x) != 0 or _val(y) != 0:
            return "none"
        return "Def(T_%d)" % j if _val(x + 1) >= gap else "none"
    raise ValueError("need both u,v or both x,y")

"""
Acceptance suite: one test per criterion, each timed against its budget.
Every test records a PASS/FAIL line that is printed in the pytest terminal
summary; running this file directly prints the same lines.
"""
import random
import time
from fractions import Fraction

from quiverforge.algebra import PROVED, ideal_membership, normal_form
from quiverforge.cli import main
from quiverforge.models import adhm, affine_an, extended_dga
from quiverforge.quiver import affine_a_graph, affine_d4_graph, affine_delta, cartan_matrix, classify_form
from quiverforge.report import PASS
from quiverforge.representation import (MatrixRep, check_dg, coordinate_standardize,
                                        moment_map_is_zero, raw_obstruction)
from quiverforge.monad import (build_adhm_monad, build_framed_functor_complex,
                               evaluate_adhm_at_point, slice_exactness, verify_d_squared)
from quiverforge.stability import STABLE, is_stable
from quiverforge.stack import (builtin_an_stack, builtin_d4_stack, builtin_framed_a1_stack,
                               check_displayed, compare_transitions, unframe, verify_stack)

from stability_oracle import oracle_stable
from test_quiver import eigen_sign_class, small_connected_graphs
from test_stability import f2_reps

A, EPS = adhm()
A0, _ = adhm(framed=False)


def timed(k, title, limit, body, record=print):
    t = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - t
    ok = ok and elapsed < limit
    record("criterion %d %s: %s (%.2fs, limit %ds) %s"
           % (k, "PASS" if ok else "FAIL", title, elapsed, limit, detail))
    return ok, detail


# 1

def d4_identities():
    import contextlib
    import io
    with contextlib.redirect_stdout(io.StringIO()):
        code = main(["stack", "verify", "--builtin", "d4"])
    s = builtin_d4_stack()
    G = s.G("0", "2", {"0", "2"})
    C, T = G.source, G.target
    effort = 10
    status = {}
    for e in ("X2 Y2 - Y2 X2", "X2 Z2 - Z2 X2", "Y2 Z2 - Z2 Y2", "Z2 (X2 + 1) - X2 Y2"):
        status[e] = ideal_membership(G.apply_scalar(C.parse(e)), T, effort)
    X, Y = (G.apply_scalar(C.arrow(x)) for x in ("X2", "Y2"))
    rhs = T.parse("-(b2 a1)^-1 b2 a3 (b3 a1)")
    same = normal_form(X * Y, T, effort) == normal_form(rhs, T, effort)
    ok = code == 0 and all(v == PROVED for v in status.values()) and same
    return ok, "verify exit %d, %d/4 proved at effort %d, normal forms equal: %s" % (
        code, sum(v == PROVED for v in status.values()), effort, same)


def test_criterion_1_d4(acceptance):
    ok, detail = timed(1, "D4 commutativity identities", 30, d4_identities, acceptance)
    assert ok, detail


# 2

def an_stack(n):
    def body():
        rep = verify_stack(builtin_an_stack(n), 8)
        names = [c.name for c in rep.checks]
        # gerbe conjugation G0i∘Gi0(u_j) for j below, at and above i
        ranges_ok = True
        for i in range(1, n + 2):
            prefix = "cocycle (0,%d,0): G0%d∘G%d0(u" % (i, i, i)
            js = {int(x[len(prefix):].split(")")[0]) for x in names if x.startswith(prefix)
                  and x[len(prefix):].split(")")[0].isdigit()}
            want = {j for j in range(1, n + 2)}
            ranges_ok &= js == want
        kinds = {k: sum(1 for x in names if k in x) for k in ("relation", "cocycle (0,", "tetrahedron")}
        ok = rep.ok and ranges_ok and all(kinds.values())
        return ok, "%d/%d checks proved, all j-ranges present: %s" % (
            sum(c.status == PASS for c in rep.checks), len(rep.checks), ranges_ok)
    return body


def test_criterion_2_an_stacks(acceptance):
    results = [timed(2, "A_%d stack at effort 8" % n, 60, an_stack(n), acceptance) for n in range(1, 6)]
    assert all(ok for ok, _ in results), results


# 3

def framed_a1():
    f = builtin_framed_a1_stack()
    live = verify_stack(f, 8)
    shown = check_displayed(f, 8)
    same = compare_transitions(unframe(f), builtin_an_stack(1), 8)
    ok = live.ok and shown.ok and same.ok
    return ok, "%s; %s; %s" % (
        live.summary(), shown.summary(), same.summary())


def test_criterion_3_framed_a1(acceptance):
    ok, detail = timed(3, "framed A1 stack", 10, framed_a1, acceptance)
    assert ok, detail


# 4

def diagonal(points, r, seed):
    """Distinct diagonal points with generic i and j = 0."""
    rng = random.Random(seed)
    n = len(points)
    B1 = [[Fraction(points[k][0]) if c == k else 0 for c in range(n)] for k in range(n)]
    B2 = [[Fraction(points[k][1]) if c == k else 0 for c in range(n)] for k in range(n)]
    i = [[Fraction(rng.randint(1, 9)) for _ in range(r)] for _ in range(n)]
    return MatrixRep(A.quiver, {"0": n, "f": r}, {"x": B1, "y": B2, "i": i})


def random_adhm(rng):
    n, r = rng.randint(1, 4), rng.randint(1, 2)
    pts = rng.sample([(a, b) for a in range(-2, 3) for b in range(-2, 3)], n)
    return pts, r, diagonal(pts, r, rng.random())


def adhm_pipeline():
    rng = random.Random(2024)
    bad = []
    for trial in range(100):
        pts, r, rho = random_adhm(rng)
        if not moment_map_is_zero(rho, EPS):
            bad.append((trial, "moment"))
            continue
        if is_stable(rho, [-1]).status != STABLE:
            bad.append((trial, "stability"))
        C = build_adhm_monad(rho, A0, EPS)
        if not verify_d_squared(C, 6).ok:
            bad.append((trial, "d^2"))
        # off points: the chosen points shifted in each direction, plus a far point
        off = {(x + dx, y + dy) for x, y in pts for dx, dy in ((1, 0), (0, 1), (-1, -1))}
        off = (off | {(7, -5)}) - set(pts)
        for p in pts:
            if evaluate_adhm_at_point(C, *p).cohomology <= r:
                bad.append((trial, "jump at %s" % (p,)))
        for p in off:
            if evaluate_adhm_at_point(C, *p).cohomology != r:
                bad.append((trial, "off point %s" % (p,)))
    return not bad, "100 instances, failures: %s" % (bad[:5] or "none")


def test_criterion_4_adhm_pipeline(acceptance):
    ok, detail = timed(4, "ADHM pipeline", 20, adhm_pipeline, acceptance)
    assert ok, detail


# 5

def exactness():
    cases = []
    for n in (1, 2, 3):
        rho = diagonal([(k, 1 - k) for k in range(n)], 1, n)
        assert is_stable(rho, [-1]).status == STABLE
        cases.append(("ADHM n=%d" % n, build_framed_functor_complex(rho, A, EPS)))
    Af, eps = affine_an(1, framed=True)
    a1 = MatrixRep(Af.quiver, {"1": 1, "2": 1, "f1": 1, "f2": 1}, {"u1": [[1]], "i1": [[1]]})
    assert is_stable(a1, [-1, -1]).status == STABLE
    cases.append(("A1 rank (1,1)", build_framed_functor_complex(a1, Af, eps)))
    nonzero = []
    for name, C in cases:
        for L in range(4):
            s = slice_exactness(C, L, slack=2)
            if (s.h0, s.h1) != (0, 0):
                nonzero.append((name, L, s.h0, s.h1))
    # corrupt [B1,B2] + ij = 0 by a nonzero j, and the A1 relation likewise
    rho = diagonal([(0, 1), (2, 3)], 1, 7)
    bad = MatrixRep(A.quiver, rho.dims, dict(rho.matrices, j=[[1, 0]]))
    broken = [not verify_d_squared(build_framed_functor_complex(bad, A, EPS, check=False), 6).ok]
    bad = MatrixRep(Af.quiver, a1.dims, dict(a1.matrices, j1=[[1]]))
    broken.append(not verify_d_squared(build_framed_functor_complex(bad, Af, eps, check=False), 6).ok)
    ok = not nonzero and all(broken)
    return ok, "nonzero homology: %s; corruption detected: %s" % (nonzero or "none", broken)


def test_criterion_5_exactness(acceptance):
    ok, detail = timed(5, "framed-functor exactness", 60, exactness, acceptance)
    assert ok, detail


# 6

def classification():
    graphs = list(small_connected_graphs())
    disagree = [g.edges for g in graphs if classify_form(g) != eigen_sign_class(g)]
    deltas = []
    for g, want in [(affine_a_graph(n), {str(k): 1 for k in range(1, n + 2)}) for n in range(1, 7)] + \
            [(affine_d4_graph(), {"v0": 2, "v1": 1, "v2": 1, "v3": 1, "v4": 1})]:
        d = affine_delta(g)
        ids = g.vertex_ids()
        vec = [d[v] for v in ids] if d else None
        kernel = vec is not None and all(sum(c * x for c, x in zip(row, vec)) == 0
                                         for row in cartan_matrix(g))
        deltas.append(d == want and kernel)
    ok = len(graphs) == 143 and not disagree and all(deltas)
    return ok, "%d graphs, %d disagreements, deltas ok %d/%d" % (
        len(graphs), len(disagree), sum(deltas), len(deltas))


def test_criterion_6_classification(acceptance):
    ok, detail = timed(6, "classification", 10, classification, acceptance)
    assert ok, detail


# 7

def f2_sweep():
    total, bad = 0, []
    for n in range(3):
        for w in range(3):
            for ints, r in f2_reps(n, w):
                for sign in (-1, 1):
                    total += 1
                    if (is_stable(r, [sign]).status == STABLE) != oracle_stable(n, ints, sign):
                        bad.append((n, w, ints, sign))
    return not bad, "%d (rep, chamber) pairs, %d disagreements" % (total, len(bad))


def test_criterion_7_f2_oracle(acceptance):
    ok, detail = timed(7, "stability oracle over F_2", 30, f2_sweep, acceptance)
    assert ok, detail


# 8

def standardization():
    rng = random.Random(8)
    Af, eps = adhm(free=True)

    def coeff():
        return Fraction(rng.randint(-10, 10), rng.randint(1, 10))
    bad = []
    for trial in range(25):
        a, b = [coeff(), coeff()], [coeff()]
        raw = raw_obstruction(Af, eps, a, b, 8)
        if not coordinate_standardize(raw, a, b, 8, eps).verified:
            bad.append((a, b))
    return not bad, "25 random (a1, a2, b1), failures: %s" % (bad or "none")


def test_criterion_8_standardization(acceptance):
    ok, detail = timed(8, "coordinate standardization", 10, standardization, acceptance)
    assert ok, detail


# 9

def extended():
    out = []
    for g in [affine_a_graph(n) for n in (1, 2, 3)] + [affine_d4_graph()]:
        Ax, d, B = extended_dga(g)
        good = check_dg(Ax, d, 8, presents=B).ok
        # perturb d(t_v) by one of its own quadratic terms: the result leaves B's ideal
        t = sorted(a for a in d if Ax.quiver.arrows[a].degree == -1)[0]
        (h, tl, word) = next(k for k in d[t].terms if len(k[2]) == 2)
        d[t] = d[t] + Ax.parse(" ".join(word))
        perturbed = check_dg(Ax, d, 8, presents=B)
        out.append(good and not perturbed.ok)
    return all(out), "passes clean and fails perturbed on %d/%d graphs" % (sum(out), len(out))


def test_criterion_9_extended_dga(acceptance):
    ok, detail = timed(9, "extended dga", 10, extended, acceptance)
    assert ok, detail


if __name__ == "__main__":
    timed(1, "D4 commutativity identities", 30, d4_identities)
    for n in range(1, 6):
        timed(2, "A_%d stack at effort 8" % n, 60, an_stack(n))
    timed(3, "framed A1 stack", 10, framed_a1)
    timed(4, "ADHM pipeline", 20, adhm_pipeline)
    timed(5, "framed-functor exactness", 60, exactness)
    timed(6, "classification", 10, classification)
    timed(7, "stability oracle over F_2", 30, f2_sweep)
    timed(8, "coordinate standardization", 10, standardization)
    timed(9, "extended dga", 10, extended)

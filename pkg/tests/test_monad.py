import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverforge import linalg
from quiverforge.models import adhm, affine_an
from quiverforge.monad import (FreeComplex, Gen, build_adhm_monad, build_framed_functor_complex,
                               build_nakajima_monad, evaluate_adhm_at_point, slice_exactness,
                               specialize, verify_d_squared)
from quiverforge.representation import MatrixRep

A, EPS = adhm()
A0, _ = adhm(framed=False)


def diagonal_rep(points, r=1, seed=0):
    """Distinct diagonal points with generic i and j = 0."""
    rng = random.Random(seed)
    n = len(points)
    B1 = [[Fraction(points[k][0]) if c == k else 0 for c in range(n)] for k in range(n)]
    B2 = [[Fraction(points[k][1]) if c == k else 0 for c in range(n)] for k in range(n)]
    i = [[Fraction(rng.randint(1, 9)) for _ in range(r)] for _ in range(n)]
    return MatrixRep(A.quiver, {"0": n, "f": r}, {"x": B1, "y": B2, "i": i})


def test_ranks():
    for n, r in ((0, 1), (1, 1), (2, 1), (3, 2)):
        pts = [(k, 2 * k + 1) for k in range(n)]
        C = build_adhm_monad(diagonal_rep(pts, r), A0, EPS)
        assert C.ranks() == (n, 2 * n + r, n)


def test_empty_monad():
    C = build_adhm_monad(diagonal_rep([], 2), A0, EPS)
    assert C.ranks() == (0, 2, 0)
    assert not C.composite()
    assert verify_d_squared(C, 4).ok
    for p in ((0, 0), (3, -1)):
        assert evaluate_adhm_at_point(C, *p).cohomology == 2


def test_specialization_matches_adhm_matrices():
    # at a point p the differentials are (B2 - y, B1 - x, j) and (B1 - x, -(B2 - y), i)
    rho = diagonal_rep([(1, 3), (2, 5)])
    C = build_adhm_monad(rho, A0, EPS)
    x, y = Fraction(7), Fraction(11)
    B1, B2, i = rho.matrices["x"], rho.matrices["y"], rho.matrices["i"]
    n = 2
    I = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    B1p = [[B1[a][b] - x * I[a][b] for b in range(n)] for a in range(n)]
    B2p = [[B2[a][b] - y * I[a][b] for b in range(n)] for a in range(n)]
    D0 = B2p + B1p + [[0] * n]
    D1 = [B1p[a] + [-c for c in B2p[a]] + i[a] for a in range(n)]
    assert specialize(C, 0, {"x": x, "y": y}) == D0
    assert specialize(C, 1, {"x": x, "y": y}) == D1


def test_evaluate_examples():
    rho = MatrixRep(A.quiver, {"0": 1, "f": 1}, {"i": [[1]]})
    C = build_adhm_monad(rho, A0, EPS)
    e = evaluate_adhm_at_point(C, 1, 0)
    assert (e.rank_d0, e.rank_d1, e.cohomology) == (1, 1, 1)
    e = evaluate_adhm_at_point(C, 0, 0)
    assert (e.rank_d0, e.rank_d1, e.cohomology) == (0, 1, 2)


@given(st.integers(1, 3), st.integers(0, 50))
@settings(max_examples=20, deadline=None)
def test_cohomology_bound_on_grid(n, seed):
    rng = random.Random(seed)
    pts = rng.sample([(a, b) for a in range(-2, 3) for b in range(-2, 3)], n)
    C = build_adhm_monad(diagonal_rep(pts, 1, seed), A0, EPS)
    for x in range(-3, 4):
        for y in range(-3, 4):
            e = evaluate_adhm_at_point(C, x, y)
            D1 = specialize(C, 1, {"x": Fraction(x), "y": Fraction(y)})
            kernel = C.ranks()[1] - e.rank_d1
            assert kernel - e.rank_d0 >= 1
            expected = 2 if (x, y) in pts else 1
            assert e.cohomology == expected
            assert linalg.rank(D1) == e.rank_d1


def test_d_squared_and_corruption():
    rho = diagonal_rep([(0, 1), (2, 3)])
    C = build_adhm_monad(rho, A0, EPS)
    assert verify_d_squared(C, 6).ok
    bad = MatrixRep(A.quiver, rho.dims, dict(rho.matrices, j=[[1, 0]]))
    with pytest.raises(ValueError):
        build_adhm_monad(bad, A0, EPS)
    C = build_adhm_monad(bad, A0, EPS, check=False)
    rep = verify_d_squared(C, 6)
    assert not rep.ok
    (fail,) = rep.failures()
    assert fail.name == "P_0 <- M_0" and fail.detail


def test_zero_complex_is_proved():
    C = FreeComplex(A0, [[Gen("M", "0", 1)], [Gen("X", "0", 1)], [Gen("P", "0", 1)]])
    assert verify_d_squared(C, 4).ok
    with pytest.raises(ValueError):
        C.add(0, "X", "M", [[1, 0]], A0.arrow("x"))


def test_nakajima_on_jordan_matches_adhm():
    rho = diagonal_rep([(1, 1), (2, -1)])
    a = build_adhm_monad(rho, A0, EPS).to_dict()
    b = build_nakajima_monad(rho, A0, EPS).to_dict()
    a.pop("name"), b.pop("name")
    assert a == b


def test_nakajima_affine_a1():
    Af, eps = affine_an(1, framed=True)
    B, _ = affine_an(1)
    rho = MatrixRep(Af.quiver, {"1": 1, "2": 1, "f1": 1, "f2": 0}, {"u1": [[1]], "i1": [[1]]})
    C = build_nakajima_monad(rho, B, eps)
    # ends: v1 + v2; middle: one X_a per arrow of rank V_h(a), plus J_v of rank W_v
    assert C.ranks() == (2, 4 + 1, 2)
    assert verify_d_squared(C, 6).ok


def test_framed_functor_complex():
    rho = MatrixRep(A.quiver, {"0": 1, "f": 1}, {"i": [[1]]})
    C = build_framed_functor_complex(rho, A, EPS)
    labels = [[g.label for g in t] for t in C.terms]
    assert any(l.startswith("I_") for l in labels[1])
    assert verify_d_squared(C, 6).ok


def test_slice_known_complexes():
    C = FreeComplex(A0, [[Gen("M", "0", 1)], [Gen("X", "0", 1)], [Gen("P", "0", 1)]])
    # k[x,y] has 1, 3, 6 monomials of degree <= 0, 1, 2
    assert [slice_exactness(C, L).h0 for L in range(3)] == [1, 3, 6]
    C.add(0, "X", "M", [[1]], A0.arrow("x"))
    got = [slice_exactness(C, L) for L in range(3)]
    assert [s.h0 for s in got] == [0, 0, 0]
    # cokernel of multiplication by x: the monomials in y alone
    assert [s.h1 for s in got] == [1, 2, 3]
    with pytest.raises(ValueError):
        slice_exactness(C, -1)


def test_slice_exactness_stable_data():
    for n in (1, 2):
        rho = diagonal_rep([(k, 2 * k + 1) for k in range(n)])
        C = build_framed_functor_complex(rho, A, EPS)
        for L in range(3):
            s = slice_exactness(C, L)
            assert (s.h0, s.h1) == (0, 0)
            t = slice_exactness(C, L, slack=3)
            assert (t.h0, t.h1) == (0, 0)


def test_slice_exactness_empty():
    C = build_framed_functor_complex(diagonal_rep([]), A, EPS)
    s = slice_exactness(C, 2)
    assert (s.h0, s.h1) == (0, 0)


def test_slice_exactness_affine_a1():
    Af, eps = affine_an(1, framed=True)
    rho = MatrixRep(Af.quiver, {"1": 1, "2": 1, "f1": 1, "f2": 1}, {"u1": [[1]], "i1": [[1]]})
    C = build_framed_functor_complex(rho, Af, eps)
    assert verify_d_squared(C, 6).ok
    for L in range(3):
        s = slice_exactness(C, L)
        assert (s.h0, s.h1) == (0, 0)

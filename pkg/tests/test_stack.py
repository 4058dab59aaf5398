import json

import pytest

from quiverforge.algebra import PROVED, QuiverAlgebra, ideal_membership, loop_quiver
from quiverforge.io import stack_from_json, stack_to_json
from quiverforge.report import FAIL, PASS
from quiverforge.representation import check_symbolic_rep, compose_symbolic, verify_chart
from quiverforge.stack import (StaticStack, builtin_an_stack, builtin_d4_stack,
                               builtin_framed_a1_stack, check_displayed, commutativity_check,
                               compare_transitions, corrupt_gerbe, exponent_matrix,
                               materialize, unframe, verify_stack)
from quiverforge.symbolic import SymbolicRep, identity_rep


def commutative():
    return QuiverAlgebra(loop_quiver(["x", "y"]), ["x y - y x"])


def test_identity_two_chart_stack():
    J = commutative()
    s = StaticStack("id", {"0": J, "1": J}, {("0", "1"): identity_rep(J), ("1", "0"): identity_rep(J)})
    rep = verify_stack(s, 4)
    assert rep.ok and rep.checks


def test_missing_transition_is_reported():
    J = commutative()
    s = StaticStack("half", {"0": J, "1": J}, {("0", "1"): identity_rep(J)},
                    pairs=[("0", "1"), ("1", "0")])
    with pytest.raises((ValueError, KeyError)):
        verify_stack(s, 4)


def test_an_stack_verifies():
    rep = verify_stack(builtin_an_stack(2), 8)
    assert rep.ok, rep.render()
    names = [c.name for c in rep.checks]
    assert any(n.startswith("cocycle") for n in names)
    assert any(n.startswith("tetrahedron") for n in names)


def test_an_transition_closed_form():
    s = builtin_an_stack(3)
    for i in (1, 2, 3):
        a, b = str(i), str(i + 1)
        G = s.G(a, b, {a, b})
        A = G.target
        u, v = G.arrow_map["u%d" % (i + 1)][0][0], G.arrow_map["v%d" % (i + 1)][0][0]
        assert ideal_membership(u - A.parse("v%d^-1" % i), A, 8) == PROVED
        assert ideal_membership(v - A.parse("u%d v%d v%d" % (i, i, i)), A, 8) == PROVED


def test_an_transitions_mutually_inverse():
    s = builtin_an_stack(2)
    for i in (1, 2):
        a, b = str(i), str(i + 1)
        S = {a, b}
        H = compose_symbolic(s.G(b, a, S), s.G(a, b, S))
        A = H.target
        for x in ("u%d" % (i + 1), "v%d" % (i + 1)):
            assert ideal_membership(H.arrow_map[x][0][0] - A.arrow(x), A, 8) == PROVED


def test_an_gerbe_paths():
    s = builtin_an_stack(3)
    # c_0i0 at the head of u_j for j < i is the path v_1 ... v_j
    for i in range(2, 5):
        g = s.gerbe_data(str(i))
        for j in range(1, i):
            col, _ = g[str(j + 1)]
            assert col == [" ".join("v%d" % k for k in range(1, j + 1))]


def test_an_torus_charts():
    s = builtin_an_stack(2, include_torus_charts=True)
    for i in (1, 2):
        k = "%d'" % i
        G = s.G(k, "0", {"0", k})
        A = G.target
        img = G.arrow_map["v%d" % (i + 1)][0][0]
        assert img == A.parse("(x%d - e_T%d) y%d" % (i, i, i))


def test_an_commutativity_transfer():
    s = builtin_an_stack(2)
    for i in ("1", "2", "3"):
        proved, rep = commutativity_check(s.algebra(i, {i}), 8, s.G("0", i, {"0", i}))
        assert len(proved) == 1
        assert rep.find("[u%s,v%s] via G0%s" % (i, i, i)).ok


def test_commutativity_free_algebra():
    proved, rep = commutativity_check(QuiverAlgebra(loop_quiver(["x", "y"])), 4)
    assert proved == []
    assert not rep.ok


def test_framed_a1_stack():
    f = builtin_framed_a1_stack()
    rep = verify_stack(f, 8)
    assert rep.ok, rep.render()
    assert check_displayed(f, 8).ok
    G = f.G("1", "0", {"0", "1"})
    assert G.arrow_map["v2"][0][0] == G.target.parse("v1 u1 + i11 j11")


def test_corrupt_gerbe_is_located():
    f = builtin_framed_a1_stack()
    rep = verify_stack(corrupt_gerbe(f, "1", "2", ["u1 v1"], ["u1 v1"]), 8)
    assert rep.status == FAIL
    assert rep.find("cocycle (0,1,0): G01∘G10(u1) = c u1 c^-1").status == FAIL


def test_unframe_matches_a1():
    rep = compare_transitions(unframe(builtin_framed_a1_stack()), builtin_an_stack(1), 8)
    assert rep.ok and len(rep.checks) == 20


def test_d4_stack():
    s = builtin_d4_stack()
    rep = verify_stack(s, s.default_effort)
    assert rep.ok, rep.render()
    assert rep.find("normal_form(G02(X2) G02(Y2)) = normal_form(-(b2 a1)^-1 b2 a3 b3 a1)").ok


def test_d4_curves_and_gluings():
    s = builtin_d4_stack()
    G = s.G("2", "2'", {"2", "2'"})
    A = G.target
    assert ideal_membership(G.arrow_map["Z2'"][0][0] - A.arrow("Z2"), A, 8) == PROVED
    assert exponent_matrix(G, ["X2'", "Y2'"], ["X2", "Y2"]) == [[1, 2], [0, -1]]
    # chart 3 inverts X3 + 1 on its overlap with chart 2
    B = s.algebra("3", {"2", "3"})
    assert B.inverse_of(B.parse("X3 + 1")) is not None


def test_d4_charts_and_commutativity():
    s = builtin_d4_stack()
    for k in ("2", "2'", "3", "4'"):
        assert verify_chart(s.chart_triple(k), 12).ok
    proved, _ = commutativity_check(s.algebra("2", {"2"}), 10, s.G("0", "2", {"0", "2"}))
    assert len(proved) == 3


def test_d4_literal_chart3_b1_fails():
    # with b1 -> (0, X Y^2 - Z X Y) the relation sum a_i b_i is not preserved
    s = builtin_d4_stack()
    G = s.G("3", "0", {"0", "3"})
    A = G.target
    H = SymbolicRep(G.source, A, G.vertex_map, {}, G.rank)
    H.arrow_map = dict(G.arrow_map, b1=[[A.zero(), A.parse("X3 Y3 Y3 - Z3 X3 Y3")]])
    assert check_symbolic_rep(G, 8).ok
    assert not check_symbolic_rep(H, 8).ok


def test_materialize_and_json_round_trip():
    s = builtin_an_stack(2)
    m = materialize(s)
    live = verify_stack(m, 8)
    assert live.ok
    text = json.dumps(stack_to_json(m))
    back = stack_from_json(json.loads(text))
    assert json.dumps(stack_to_json(back)) == text
    again = verify_stack(back, 8)
    assert again.ok and len(again.checks) == len(live.checks)
    assert [c.name for c in again.checks] == [c.name for c in live.checks]
    assert all(c.status == PASS for c in again.checks)

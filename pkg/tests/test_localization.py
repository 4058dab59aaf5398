import pytest

from quiverforge.algebra import PROVED, QuiverAlgebra, ideal_membership, loop_quiver
from quiverforge.localization import inverse_letters, localize_matrix, localize_scalar
from quiverforge.models import affine_an, affine_d4


def test_localize_jordan_at_x():
    J = QuiverAlgebra(loop_quiver(["x", "y"]), ["x y - y x"])
    L = localize_scalar(J, ["x"])
    assert len(L.quiver.arrows) == 3
    assert len(L.relations) == len(J.relations) + 2
    assert inverse_letters(L) == ["x^-1"]
    # the inverse of the inverse is x: the defining relations with roles swapped
    xi = L.arrow("x^-1")
    assert L.inverse_of(L.arrow("x")) == xi
    assert ideal_membership(xi * L.arrow("x") - L.e("0"), L) == PROVED
    assert ideal_membership(L.arrow("x") * xi - L.e("0"), L) == PROVED
    assert ideal_membership(L.parse("x^-1 y - y x^-1"), L, 6) == PROVED


def test_localize_preserves_relations():
    A, _ = affine_an(3)
    for i in range(1, 5):
        S = ["v%d" % j for j in range(1, i)] + ["u%d" % j for j in range(i + 1, 5)]
        L = localize_scalar(A, S)
        assert [str(r) for r in L.relations[:len(A.relations)]] == [str(r) for r in A.relations]
        assert len(L.quiver.arrows) == len(A.quiver.arrows) + len(S)
        for r in A.relations:
            assert ideal_membership(r.rebase(L), L) == PROVED


def test_localize_rejects_inhomogeneous():
    A, _ = affine_an(1)
    with pytest.raises(ValueError):
        localize_scalar(A, [A.arrow("u1") + A.arrow("v1")])


def test_matrix_one_by_one_matches_scalar():
    J = QuiverAlgebra(loop_quiver(["x", "y"]), ["x y - y x"])
    M = localize_matrix(J, [["x"]], names=[["x^-1"]])
    S = localize_scalar(J, ["x"])
    assert sorted(M.quiver.arrows) == sorted(S.quiver.arrows)
    assert {str(r) for r in M.relations} == {str(r) for r in S.relations}


def test_matrix_diagonal_matches_scalar():
    A, _ = affine_an(1)
    M = localize_matrix(A, [[A.arrow("u1"), A.zero()], [A.zero(), A.arrow("v1")]])
    S = localize_scalar(A, ["u1", "v1"])
    # the diagonal letters satisfy the scalar inverse relations
    for r in S.relations[len(A.relations):]:
        renamed = str(r).replace("u1^-1", "alpha1_1").replace("v1^-1", "alpha2_2")
        assert ideal_membership(M.parse(renamed), M, 6) == PROVED
    # and the off-diagonal letters vanish
    assert ideal_membership(M.arrow("alpha1_2"), M, 6) == PROVED
    assert ideal_membership(M.arrow("alpha2_1"), M, 6) == PROVED


def test_matrix_localization_d4():
    A, _ = affine_d4()
    L = localize_matrix(A, [["a1", "a2"]])
    assert {"alpha1", "alpha2"} <= set(L.quiver.arrows)
    assert L.quiver.tail("alpha1") == "v0" and L.quiver.head("alpha1") == "v1"
    assert len(L.relations) == len(A.relations) + 5
    assert ideal_membership(L.parse("alpha2 a1"), L, 4) == PROVED
    for text in ("a1 alpha1 + a2 alpha2 - e_v0", "alpha1 a2", "alpha2 a1",
                 "alpha1 a1 - e_v1", "alpha2 a2 - e_v2"):
        assert ideal_membership(L.parse(text), L, 4) == PROVED


def test_matrix_shape_errors():
    A, _ = affine_d4()
    with pytest.raises(ValueError):
        localize_matrix(A, [["a1"], ["b1"]])
    with pytest.raises(ValueError):
        localize_matrix(A, [["a1", "b2"]])

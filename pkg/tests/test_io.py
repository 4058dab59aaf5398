import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from quiverforge import io
from quiverforge.localization import localize_matrix
from quiverforge.models import affine_d4
from quiverforge.scalars import GaussianRational, Novikov

FIX = Path(__file__).parent / "fixtures"


@pytest.mark.parametrize("name", sorted(p.name for p in FIX.glob("*.json") if p.name != "bad_rep.json"))
def test_fixture_round_trip(name):
    d = json.loads((FIX / name).read_text())
    if "vertices" in d and "edges" in d:
        out = io.graph_to_json(io.graph_from_json(d))
    elif "matrices" in d:
        out = io.matrix_rep_to_json(io.matrix_rep_from_json(d), d.get("algebra"))
    else:
        out = d
    assert out == d


def test_bad_rep_is_schema_error():
    d = json.loads((FIX / "bad_rep.json").read_text())
    with pytest.raises(io.SchemaError):
        io.matrix_rep_from_json(d)


@given(st.integers(-50, 50), st.integers(1, 50))
def test_rational_round_trip(p, q):
    x = Fraction(p, q)
    assert io.scalar_from_json(io.scalar_to_json(x)) == x


def test_scalar_forms():
    assert io.scalar_from_json("3/4") == Fraction(3, 4)
    assert io.scalar_from_json(5) == 5
    z = GaussianRational(Fraction(1, 2), 3)
    assert io.scalar_from_json(io.scalar_to_json(z)) == z
    n = Novikov([(Fraction(1, 2), 1), (2, -3)])
    assert io.scalar_from_json(io.scalar_to_json(n)) == n
    assert io.scalar_from_json({"num": 3}) == 3
    for bad in ({"den": 2}, {"num": 1, "den": 0}, "x/y", True, [1]):
        with pytest.raises(io.SchemaError):
            io.scalar_from_json(bad)


def test_algebra_round_trip():
    A, _ = affine_d4()
    L = localize_matrix(A, [["a1", "a2"]])
    d = io.algebra_to_json(L)
    B = io.algebra_from_json(json.loads(json.dumps(d)))
    assert io.algebra_to_json(B) == d
    f = L.parse("alpha1 a1")
    assert io.element_to_json(io.element_from_json(B, io.element_to_json(f))) == io.element_to_json(f)


def test_builtin_models():
    for name in ("adhm", "jordan", "affine-d4", "affine-an:2", "affine-an-framed:1"):
        A = io.builtin_algebra(name)
        assert A.quiver.vertices
    with pytest.raises(io.SchemaError):
        io.builtin_algebra("affine-e8")


def test_dump_and_load(tmp_path):
    d = json.loads((FIX / "a3.json").read_text())
    path = tmp_path / "g.json"
    io.dump(d, path)
    assert io.load(path) == d

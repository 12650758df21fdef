import json
from fractions import Fraction

from socone.algebra import build_algebra
from socone.jsonio import (
    fraction_from_str,
    fraction_to_str,
    gaussian_from_json,
    gaussian_to_json,
    matrix_from_json,
    matrix_to_json,
    multi_index_label,
    poly_from_json,
    poly_to_json,
    state_to_json,
)
from socone.poly import MultiPoly, TAU
from socone.scalars import gr
from socone.states import coherent_state


def test_fraction_strings():
    assert fraction_to_str(Fraction(3, 1)) == "3"
    assert fraction_to_str(Fraction(-6, 4)) == "-3/2"
    assert fraction_from_str("-3/2") == Fraction(-3, 2)
    assert fraction_from_str("7") == 7


def test_gaussian_roundtrip():
    x = gr(Fraction(1, 2), Fraction(-5, 3))
    encoded = gaussian_to_json(x)
    assert encoded == {"re": "1/2", "im": "-5/3"}
    assert gaussian_from_json(encoded) == x


def test_matrix_roundtrip():
    alg = build_algebra(2)
    encoded = matrix_to_json(alg.R(1))
    assert matrix_from_json(encoded) == alg.R(1)
    # row-major nested arrays of {re, im}: R1 has i at (1,3) and 1 at (1,4)
    assert encoded[0][2] == {"re": "0", "im": "1"}
    assert encoded[0][3] == {"re": "1", "im": "0"}


def test_poly_roundtrip_and_canonical_order():
    p = 2 * TAU * TAU + MultiPoly.var("x1") - 1
    encoded = poly_to_json(p)
    assert poly_from_json(encoded) == p
    # graded lex, leading term first, so t^2 precedes x1 precedes the constant
    assert [term["exps"] for term in encoded] == [{"t": 2}, {"x1": 1}, {}]
    # byte stability
    assert json.dumps(encoded) == json.dumps(poly_to_json(p))


def test_state_encoding():
    state = coherent_state([1])
    assert state_to_json(state) == [
        {"re": "0", "im": "2"},
        {"re": "2", "im": "0"},
        {"re": "0", "im": "0"},
    ]


def test_multi_index_labels():
    assert multi_index_label((0, 2, 1)) == "0,2,1"
    assert multi_index_label((3,)) == "3"


def test_algebra_export_order_and_stability():
    from socone.jsonio import algebra_to_json

    alg = build_algebra(3)
    payload = algebra_to_json(alg)
    labels = [e["label"] for e in payload["basis"]]
    assert labels == ["R1", "R2", "R3", "L1", "L2", "L3", "rho0", "rho12", "rho13", "rho23"]
    assert json.dumps(payload) == json.dumps(algebra_to_json(build_algebra(3)))

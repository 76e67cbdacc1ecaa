import pytest

from services.errors import InputError
from services.matrix_service import Mat2
from services.ring_service import POLY_RING, POLY_X, POLY_Y, RingSpec
from utils.parsing import (
    parse_element,
    parse_element_rows,
    parse_int_list,
    parse_mat2,
    parse_mat3,
    parse_ring,
    split_top_level,
)


@pytest.mark.parametrize(
    "text, label",
    [
        ("Z", "Z"),
        ("Z/12", "Z/12"),
        ("Q[-5]", "Q[-5]"),
        ("Q[ 2 ]", "Q[2]"),
        ("ZXYZ", "ZXYZ"),
        ("(Z/2)x(Z/3)", "(Z/2)x(Z/3)"),
        ("((Z/2)x(Z/2))x(Z/3)", "((Z/2)x(Z/2))x(Z/3)"),
    ],
)
def test_parse_ring(text, label):
    assert parse_ring(text).label == label


@pytest.mark.parametrize("text", ["Q", "Z/1", "Q[4]", "(Z/2)x", "R"])
def test_bad_rings(text):
    with pytest.raises(InputError):
        parse_ring(text)


def test_split_top_level_respects_parentheses():
    assert split_top_level("(1,2),(3,4)", ",") == ["(1,2)", "(3,4)"]
    with pytest.raises(InputError):
        split_top_level("(1,2", ",")


def test_quadratic_literals():
    Q = RingSpec.quadratic(-5)
    assert parse_element(Q, "2+3*w").value == (2, 3)
    assert parse_element(Q, "w**2").value == (-5, 0)
    assert parse_element(Q, "1-1*w").value == (1, -1)
    with pytest.raises(InputError):
        parse_element(Q, "w/2")


def test_polynomial_literals():
    spec = RingSpec.poly_z3()
    assert parse_element(spec, "x*y + 1").value == POLY_X * POLY_Y + POLY_RING(1)


def test_product_literals():
    spec = parse_ring("(Z/2)x(Z/3)")
    assert parse_element(spec, "(1,2)").value == (1, 2)
    assert parse_element(spec, "5").value == (1, 2)


def test_reduction_mod_n():
    assert parse_element(RingSpec.mod_n(6), "-1").value == 5


def test_matrices(Z):
    assert parse_mat2(Z, "15,6;10,14") == Mat2.of(Z, 15, 6, 10, 14)
    assert len(parse_mat3(Z, "1,0,0;0,1,0;0,0,1").rows) == 3
    with pytest.raises(InputError):
        parse_mat2(Z, "1,0,0;0,1,0;0,0,1")
    with pytest.raises(InputError):
        parse_mat2(Z, "1,2;3")


def test_payload_rows_reparse():
    Q = RingSpec.quadratic(-5)
    rows = parse_element_rows(Q, [["1+1*w", "2"], ["3", "1-1*w"]])
    assert rows[0][0].value == (1, 1)


def test_int_lists():
    assert parse_int_list("6, 5,7,-3") == [6, 5, 7, -3]
    with pytest.raises(InputError):
        parse_int_list("1,x")

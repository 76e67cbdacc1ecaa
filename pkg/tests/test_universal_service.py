import pytest

from services.errors import InputError
from services.matrix_service import Mat2
from services.ring_service import POLY_Y, POLY_Z, RingSpec
from services.universal_service import (
    companion_test_matrix,
    e_transform_factors,
    evaluate_hom,
    g_evaluation_extension,
    substitute_z,
    universal_matrix,
)


def test_e_is_a_transform_of_d():
    L, R = e_transform_factors()
    assert L * universal_matrix("D") * R == universal_matrix("E")
    assert L.det() == 1 and R.det() == 1


def test_f_specializes_to_e():
    F = universal_matrix("F")
    assert substitute_z(F, 2 * POLY_Z - POLY_Y * POLY_Z**2) == universal_matrix("E")


def test_unknown_universal_name():
    with pytest.raises(InputError):
        universal_matrix("H")


def test_evaluation_into_z_mod_n():
    Z5 = RingSpec.mod_n(5)
    image = evaluate_hom(universal_matrix("G"), [Z5.elem(2), Z5.elem(3), Z5.elem(4)])
    assert image == Mat2.of(Z5, 2, 3, 0, (1 - 2 - 12) % 5)


@pytest.mark.parametrize("rows", [(15, 6, 10, 14), (30, 42, 70, 105), (2, 1, 1, 1), (0, 3, 2, 6)])
def test_companion_matches_universal_d(Z, rows):
    data = companion_test_matrix(Mat2.of(Z, *rows))
    assert data.triangular.is_upper_triangular
    assert evaluate_hom(universal_matrix("D"), data.phi) == data.D
    assert data.to_payload()["matches_universal"]


def test_g_evaluation_has_a_simple_extension(Z):
    result = g_evaluation_extension(Mat2.of(Z, 6, -10, 0, -15))
    assert result.image.is_upper_triangular
    assert result.extension.is_valid() and result.extension.simple


def test_g_evaluation_needs_triangular_input(Z):
    with pytest.raises(InputError):
        g_evaluation_extension(Mat2.of(Z, 1, 2, 3, 4))

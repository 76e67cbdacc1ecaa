import math

import pytest

from services.errors import InputError
from services.matrix_service import Mat2
from services.ring_service import RingSpec
from services.witness_service import (
    c9_extension,
    c14_witness,
    cr3_statement3_witness,
    cr3_witness,
    th2_2_witness,
    th5_8_witness,
    th5_9_witness,
)


def test_th5_8_succeeds_at_t_zero():
    witness = th5_8_witness(6, 5, 7, 3)
    assert witness.exact
    assert witness.solution["t"] == "0"
    d1, d2 = int(witness.solution["d1"]), int(witness.solution["d2"])
    assert d1 * d2 == 3 and math.gcd(6, d1) == 1 and math.gcd(5, d2) == 1


def test_th5_8_needs_unimodular_pairs():
    with pytest.raises(InputError):
        th5_8_witness(2, 4, 1, 1)


@pytest.mark.parametrize("a, d, k", [(3, 5, 0), (4, 9, 1), (-2, 7, 2)])
def test_th5_9(a, d, k):
    witness = th5_9_witness(a, d, k)
    assert witness.exact
    assert witness.solution["b"] == str(1 - a)


@pytest.mark.parametrize("a, b, s", [(2, 3, 1), (5, -4, 7), (0, 0, 0), (6, 10, 15)])
def test_cr3_membership(a, b, s):
    assert cr3_witness(a, b, s).exact


@pytest.mark.parametrize("a, b, s", [(2, 3, 5), (6, 10, 15), (4, 6, 9)])
def test_cr3_statement3_pairs(a, b, s):
    witness = cr3_statement3_witness(a, b, s)
    e, f = int(witness.solution["e"]), int(witness.solution["f"])
    assert math.gcd(e, f) == 1
    assert math.gcd(a, e) == 1
    assert math.gcd(b * e + a * f, 1 - b * s - a) == 1


@pytest.mark.parametrize("a, u, t", [(2, 3, 1), (-3, 5, 4), (1, -1, 0)])
def test_c14(a, u, t):
    assert c14_witness(a, u, t).exact


def test_c14_needs_nonzero_u():
    with pytest.raises(InputError):
        c14_witness(1, 0, 1)


def test_c9_family(Z):
    witness = c9_extension(Mat2.of(Z, 6, -10, 0, -15))
    assert (witness.e, witness.f, witness.s, witness.t) == (1, -1, 1, -1)
    assert witness.is_valid()


def test_c9_with_zero_corner(Z):
    witness = c9_extension(Mat2.of(Z, 0, 1, 0, 5))
    assert witness.e == 1 and witness.is_valid()


def test_c9_rejects_lower_entries(Z):
    with pytest.raises(InputError):
        c9_extension(Mat2.of(Z, 0, 3, 2, 6))


def test_th2_2_over_z(Z, settings):
    assert th2_2_witness(Mat2.of(Z, 15, 6, 10, 14), settings).exact


def test_th2_2_over_a_finite_ring(settings):
    witness = th2_2_witness(Mat2.of(RingSpec.mod_n(9), 2, 1, 1, 4), settings)
    assert witness.exact and witness.route == "exhaustive"

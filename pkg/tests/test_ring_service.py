import pytest

from services.errors import InputError, RingMismatchError, UnsupportedRingError
from services.ring_service import (
    RElem,
    RingSpec,
    bezout_tuple,
    divides,
    enumerate_elements,
    integer_bezout,
    inverse,
    irreducible_in_quadratic,
    is_unimodular_tuple,
    is_unit,
    norm,
    random_element,
    unimodular_certificate,
)


def test_integer_bezout_picks_least_nonnegative_cofactor():
    assert integer_bezout(7, 11) == (8, -5, 1)
    assert integer_bezout(1, 5) == (1, 0, 1)


def test_bezout_tuple_combines_to_gcd():
    g, coeffs = bezout_tuple([6, 10, 15])
    assert g == 1
    assert sum(c * v for c, v in zip(coeffs, [6, 10, 15])) == 1


@pytest.mark.parametrize("n", [0, 1])
def test_mod_n_rejects_small_modulus(n):
    with pytest.raises(InputError):
        RingSpec.mod_n(n)


def test_quadratic_rejects_square_discriminant():
    with pytest.raises(InputError):
        RingSpec.quadratic(4)


def test_labels():
    assert RingSpec.mod_n(6).label == "Z/6"
    assert RingSpec.quadratic(-5).label == "Q[-5]"
    assert RingSpec.product(RingSpec.mod_n(2), RingSpec.mod_n(3)).label == "(Z/2)x(Z/3)"


def test_quadratic_arithmetic():
    Q = RingSpec.quadratic(-5)
    w = RElem(Q, (0, 1))
    assert w * w == -5
    assert norm(Q.one() + w) == 6
    assert str(Q.one() - w) == "1-1*w"


def test_mixed_rings_raise():
    with pytest.raises(RingMismatchError):
        RingSpec.mod_n(4).elem(RingSpec.mod_n(6).one())


def test_unimodular_tuples_over_z_and_z_mod_n(Z):
    assert is_unimodular_tuple([Z.elem(2), Z.elem(3)])
    assert not is_unimodular_tuple([Z.elem(2), Z.elem(4)])
    Z6 = RingSpec.mod_n(6)
    assert is_unimodular_tuple([Z6.elem(2), Z6.elem(3)])
    assert not is_unimodular_tuple([Z6.elem(2), Z6.elem(4)])


def test_quadratic_unimodularity_follows_the_ideal():
    Q = RingSpec.quadratic(-5)
    w = RElem(Q, (0, 1))
    assert not is_unimodular_tuple([Q.elem(2), Q.one() + w])
    pair = [Q.elem(2), w]
    coeffs = unimodular_certificate(pair)
    assert coeffs is not None
    assert coeffs[0] * pair[0] + coeffs[1] * pair[1] == 1


def test_certificate_over_z_mod_n():
    Z6 = RingSpec.mod_n(6)
    values = [Z6.elem(2), Z6.elem(3)]
    coeffs = unimodular_certificate(values)
    assert coeffs[0] * values[0] + coeffs[1] * values[1] == 1
    assert unimodular_certificate([Z6.elem(2), Z6.elem(4)]) is None


def test_units_and_inverses():
    Z9 = RingSpec.mod_n(9)
    assert is_unit(Z9.elem(4))
    assert inverse(Z9.elem(4)) * 4 == 1
    assert not is_unit(Z9.elem(3))
    with pytest.raises(InputError):
        inverse(Z9.elem(3))


def test_real_quadratic_units_are_unsupported():
    with pytest.raises(UnsupportedRingError):
        is_unit(RingSpec.quadratic(2).one())


def test_divides(Z):
    assert divides(Z.elem(3), Z.elem(12)) == 4
    assert divides(Z.elem(5), Z.elem(12)) is None
    with pytest.raises(UnsupportedRingError):
        divides(RingSpec.mod_n(6).elem(2), RingSpec.mod_n(6).elem(4))


def test_two_is_irreducible_in_z_sqrt_minus_five():
    cert = irreducible_in_quadratic(RingSpec.quadratic(-5).elem(2))
    assert cert.irreducible
    assert cert.factors is None


def test_six_factors_in_z_sqrt_minus_five():
    cert = irreducible_in_quadratic(RingSpec.quadratic(-5).elem(6))
    assert not cert.irreducible
    left, right = cert.factors
    assert left * right == 6


def test_product_enumeration_order():
    spec = RingSpec.product(RingSpec.mod_n(2), RingSpec.mod_n(3))
    values = [e.value for e in enumerate_elements(spec)]
    assert len(values) == spec.order == 6
    assert values[:3] == [(0, 0), (0, 1), (0, 2)]


AXIOM_RINGS = [
    RingSpec.integers(),
    RingSpec.mod_n(12),
    RingSpec.quadratic(-5),
    RingSpec.quadratic(3),
    RingSpec.poly_z3(),
    RingSpec.product(RingSpec.mod_n(4), RingSpec.quadratic(-1)),
]


@pytest.mark.parametrize("spec", AXIOM_RINGS, ids=lambda s: s.label)
def test_ring_axioms_on_random_elements(spec, rng):
    zero, one = spec.zero(), spec.one()
    for _ in range(200):
        x, y, z = (random_element(spec, rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x + y == y + x
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert x + zero == x
        assert x * one == x
        assert x + (-x) == zero
        assert x - y == x + (-y)


@pytest.mark.parametrize("D", [-1, -5, -7, 2, 3])
def test_norm_is_multiplicative(D, rng):
    Q = RingSpec.quadratic(D)
    for _ in range(300):
        x, y = random_element(Q, rng, 50), random_element(Q, rng, 50)
        assert norm(x * y) == norm(x) * norm(y)


@pytest.mark.parametrize("n", range(2, 9))
def test_unimodular_pairs_over_z_mod_n_match_the_ideal(n):
    spec = RingSpec.mod_n(n)
    elements = list(enumerate_elements(spec))
    for x in elements:
        for y in elements:
            generates_one = any(u * x + v * y == 1 for u in elements for v in elements)
            assert is_unimodular_tuple([x, y]) == generates_one

from services.finite_service import finite_ring, mask_members
from services.ring_service import RingSpec


def test_z6_structure():
    T = finite_ring(RingSpec.mod_n(6))
    assert T.order == 6
    assert T.units == [1, 5]
    assert len(T.maximal_ideals) == 2
    assert T.is_reduced


def test_z4_is_not_reduced():
    T = finite_ring(RingSpec.mod_n(4))
    assert not T.is_reduced
    assert mask_members(T.jacobson) == [0, 2]


def test_product_ring_has_two_maximal_ideals():
    T = finite_ring(RingSpec.product(RingSpec.mod_n(2), RingSpec.mod_n(3)))
    assert T.order == 6
    assert len(T.maximal_ideals) == 2


def test_quotient_by_an_element():
    T = finite_ring(RingSpec.mod_n(6))
    Q = T.quotient_by(2)
    assert Q.order == 2
    assert Q.unit_reps == [1]
    assert Q.is_unit(3) and not Q.is_unit(4)


def test_combination_reaches_one():
    T = finite_ring(RingSpec.mod_n(6))
    coeffs = T.combination([2, 3])
    assert (coeffs[0] * 2 + coeffs[1] * 3) % 6 == 1
    assert T.combination([2, 4]) is None


def test_is_um_and_det():
    T = finite_ring(RingSpec.mod_n(12))
    assert T.is_um(4, 9)
    assert not T.is_um(4, 6)
    assert T.det(2, 3, 5, 7) == (14 - 15) % 12


def test_unimodular_matrices_over_z2():
    T = finite_ring(RingSpec.mod_n(2))
    assert len(list(T.unimodular_matrices())) == 15


def test_nonfull_factorization_multiplies_back():
    T = finite_ring(RingSpec.mod_n(6))
    l, m, n, q = T.nonfull_factorization(2, 4, 1, 2)
    assert [T.mul[l][n], T.mul[l][q], T.mul[m][n], T.mul[m][q]] == [2, 4, 1, 2]


def test_tables_are_cached_per_ring():
    assert finite_ring(RingSpec.mod_n(5)) is finite_ring(RingSpec.mod_n(5))

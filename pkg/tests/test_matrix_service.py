import pytest

from services.errors import InputError, RingMismatchError
from services.matrix_service import (
    Mat2,
    Mat3,
    apply_equivalence,
    det3,
    extension_orbit_move,
    identity2,
    identity3,
    inverse2,
    kernel_free_certificate,
    kernel_gens,
    lift_to_integers,
    reduce_mod,
    sigma,
    theta,
    transpose2,
    transpose3,
)
from services.ring_service import RingSpec, is_unit, random_element


def test_det_and_product(Z):
    A = Mat2.of(Z, 1, 2, 3, 4)
    B = Mat2.of(Z, 0, 1, 1, 0)
    assert A.det() == -2
    assert A * B == Mat2.of(Z, 2, 1, 4, 3)
    assert (A * B).det() == A.det() * B.det()


def test_mixed_rings_are_rejected(Z):
    with pytest.raises(RingMismatchError):
        Mat2(Z.elem(1), Z.elem(0), Z.elem(0), RingSpec.mod_n(5).one())


def test_sigma_theta_round_trip(Z):
    M = Mat2.of(Z, 2, 1, 1, 1)
    bordered = sigma(M)
    assert det3(bordered) == 1
    assert theta(bordered) == M


def test_sigma_needs_unit_determinant(Z):
    with pytest.raises(InputError):
        sigma(Mat2.of(Z, 2, 0, 0, 1))


def test_theta_needs_determinant_one(Z):
    with pytest.raises(InputError):
        theta(Mat3.from_rows(Z, [[2, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_inverse_over_z_mod_n():
    Z7 = RingSpec.mod_n(7)
    A = Mat2.of(Z7, 2, 1, 3, 4)
    assert A * inverse2(A) == identity2(Z7)


def test_kernel_generators_annihilate(Z):
    A = Mat2.of(Z, 2, 4, 3, 6)
    assert kernel_gens(A).annihilated_by(A)


def test_kernel_combination_of_a_pair_witness(Z):
    A = Mat2.of(Z, 2, 4, 3, 6)
    e, f, s, t = (Z.elem(x) for x in (-1, 1, 1, 0))
    certificate = kernel_free_certificate(A, e, f, s, t)
    assert certificate.vector == (Z.elem(-2), Z.elem(1))
    assert certificate.is_valid()


def test_kernel_combination_rejects_a_non_witness(Z):
    A = Mat2.of(Z, 2, 4, 3, 6)
    with pytest.raises(InputError):
        kernel_free_certificate(A, Z.elem(-1), Z.elem(1), Z.zero(), Z.zero())


def test_reduce_and_lift(Z):
    A = Mat2.of(Z, 15, 6, 10, 14)
    reduced = reduce_mod(A, 7)
    assert reduced.ring == RingSpec.mod_n(7)
    assert [x.value for x in lift_to_integers(reduced).entries] == [1, 6, 3, 0]


def test_equivalence_moves_extensions(Z):
    A = Mat2.of(Z, 2, 1, 1, 1)
    M = Mat2.of(Z, 1, 1, 0, 1)
    N = Mat2.of(Z, 1, 0, -1, 1)
    moved, corner = extension_orbit_move(sigma(A), M, N)
    assert det3(moved) == 1
    assert corner == apply_equivalence(A, M, N).result


def _random_sl3(ring, rng):
    Q = identity3(ring)
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        rows = [[ring.one() if r == c else ring.zero() for c in range(3)] for r in range(3)]
        rows[i][j] = random_element(ring, rng)
        Q = Q * Mat3.from_rows(ring, rows)
    return Q


def _random_invertible(ring, rng):
    while True:
        M = Mat2(*(random_element(ring, rng) for _ in range(4)))
        if is_unit(M.det()):
            return M


@pytest.mark.parametrize("n", range(4, 13))
def test_truncation_commutes_with_bordering(n, rng):
    ring = RingSpec.mod_n(n)
    for _ in range(100):
        Q = _random_sl3(ring, rng)
        M, N = _random_invertible(ring, rng), _random_invertible(ring, rng)
        moved, corner = extension_orbit_move(Q, M, N)
        assert det3(moved) == 1
        assert corner == theta(sigma(M) * Q * sigma(N)) == M * theta(Q) * N
        assert theta(transpose3(Q)) == transpose2(theta(Q))

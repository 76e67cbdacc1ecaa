import math

import pytest

from services.errors import BudgetExhaustedError, InputError
from services.extension_service import (
    assemble_extension,
    decide_nonfull_quadratic,
    diagonal_nu_progression,
    diagonal_nu_realizable,
    ex11_certificate,
    extend_via_reduction,
    extendability_witness,
    lift_det_zero,
    nonfull_decompose,
    nu_enumerate,
    pell_simple_extendable,
    pr5_remark_variant,
    prescribed_extension,
    revalidate_extension_payload,
    simple_det_value,
    simple_extension,
    simple_extension_pr5,
    simple_extension_snf,
    smith2,
)
from services.matrix_service import Mat2, det3, diag2, theta
from services.ring_service import RElem, RingSpec
from utils.parsing import parse_mat2


@pytest.mark.parametrize(
    "rows, efst",
    [
        ((0, 3, 2, 6), (1, -1, 1, -1)),
        ((6, -10, 0, -15), (1, -1, 1, -1)),
        ((15, 6, 10, 14), (-1, -2, -1, 1)),
        ((30, 42, 70, 105), (-3, 1, 1, -1)),
    ],
)
def test_worked_extensions(Z, rows, efst):
    A = Mat2.of(Z, *rows)
    aplus = assemble_extension(A, *efst)
    assert det3(aplus) == 1
    assert theta(aplus) == A
    assert simple_det_value(A, *(Z.elem(x) for x in efst)) == 1


def test_smith_form_over_z(Z):
    A = Mat2.of(Z, 15, 6, 10, 14)
    snf = smith2(A)
    assert snf.M * A * snf.N == diag2(snf.d1, snf.d2)
    assert snf.d1 == 1 and snf.d2 == A.det()


@pytest.mark.parametrize("rows", [(15, 6, 10, 14), (30, 42, 70, 105), (4, 6, 6, 9), (0, 3, 2, 6), (-7, 12, 5, 11)])
def test_snf_route_is_simple(Z, rows):
    A = Mat2.of(Z, *rows)
    witness = simple_extension_snf(A)
    assert witness.is_valid() and witness.simple
    assert witness.nu == A.det() + witness.e * witness.s + witness.f * witness.t


def test_snf_route_over_z_mod_n():
    A = Mat2.of(RingSpec.mod_n(12), 2, 3, 4, 6)
    assert simple_extension_snf(A).is_valid()


def test_non_unimodular_input_is_rejected(Z):
    with pytest.raises(InputError):
        simple_extension(Mat2.of(Z, 2, 4, 6, 8))


def test_prescribed_shapes(Z):
    witness = prescribed_extension(Mat2.of(Z, 1, 5, 7, 9))
    assert witness.route == "prescribed:unit-a"
    assert witness.is_valid()
    diagonal = prescribed_extension(Mat2.of(Z, 7, 0, 0, 11))
    assert diagonal.route == "prescribed:diagonal"
    assert prescribed_extension(Mat2.of(Z, 15, 6, 10, 14)) is None


@pytest.mark.parametrize("rows", [(15, 6, 10, 14), (30, 42, 70, 105), (6, -10, 0, -15)])
def test_gcd_construction_and_variant(Z, rows):
    A = Mat2.of(Z, *rows)
    assert simple_extension_pr5(A).is_valid()
    assert pr5_remark_variant(A).is_valid()


@pytest.mark.parametrize("rows", [(15, 6, 10, 14), (2, 1, 1, 1), (2, 4, 3, 6)])
def test_reduction_route(Z, rows):
    witness = extend_via_reduction(Mat2.of(Z, *rows))
    assert witness.is_valid()


def test_nonfull_decompose_over_z(Z):
    A = Mat2.of(Z, 2, 4, 3, 6)
    assert nonfull_decompose(A).product() == A


def test_finite_extendability():
    A = Mat2.of(RingSpec.mod_n(6), 2, 3, 4, 5)
    witness = extendability_witness(A)
    assert witness is not None and witness.is_valid()


def test_printed_extension_revalidates(Z):
    A = Mat2.of(Z, 15, 6, 10, 14)
    payload = simple_extension(A).to_payload()
    assert revalidate_extension_payload(Z, payload)
    payload["aplus"][2][2] = "1"
    assert not revalidate_extension_payload(Z, payload)


def test_quadratic_box_search():
    Q = RingSpec.quadratic(-5)
    A = parse_mat2(Q, "2,1+1*w;1-1*w,3*w")
    witness = simple_extension(A, budget=3)
    assert witness.is_valid() and witness.simple


def test_full_quadratic_matrix_reports_certificate():
    Q = RingSpec.quadratic(-5)
    A = parse_mat2(Q, "3,1-1*w;1+1*w,2")
    assert decide_nonfull_quadratic(A).full
    with pytest.raises(BudgetExhaustedError) as info:
        simple_extension(A, budget=2)
    assert "fullness_certificate" in info.value.note


def test_nonfull_quadratic_matrix_factors():
    Q = RingSpec.quadratic(-5)
    w = RElem(Q, (0, 1))
    A = Mat2(Q.elem(2) * w, w * w, Q.elem(2), w)
    cert = decide_nonfull_quadratic(A)
    assert not cert.full
    assert cert.witness.product() == A


def test_diagonal_nu_progressions(Z):
    sample = nu_enumerate(Mat2.of(Z, 7, 0, 0, 11), 40)
    assert sample.progression.describe() == "4Z"
    assert sample.values and all(sample.progression.contains(v) for v in sample.values)
    assert 40 in sample.values
    window = set(range(-40, 41, 4))
    assert window & sample.values == {v for v in window if diagonal_nu_realizable(7, 11, v, 40)}
    other = nu_enumerate(Mat2.of(Z, 1, 0, 0, 5), 4)
    assert other.progression.describe() == "2+4Z"
    assert all(v % 4 == 2 for v in other.values)


def test_upper_triangular_nu_meets_both_progressions(Z):
    values = nu_enumerate(Mat2.of(Z, 6, -10, 0, -15), 5).values
    assert -88 in values and -88 % 7 == 3
    assert -83 in values and -83 % 14 == 1


@pytest.mark.parametrize("a", range(2, 30))
def test_closed_form_nu_agrees_with_the_box(Z, a):
    bound = 6
    for d in range(a + 1, 31):
        if math.gcd(a, d) != 1:
            continue
        progression = diagonal_nu_progression(a, d)
        values = nu_enumerate(Mat2.of(Z, a, 0, 0, d), bound).values
        assert all(progression.contains(v) for v in values)
        reach = 2 * bound * bound
        window = range(a * d - reach, a * d + reach + 1)
        expected = {v for v in window if progression.contains(v) and diagonal_nu_realizable(a, d, v, bound)}
        assert values == expected


def test_nu_witnesses_reproduce_their_values(Z):
    A = Mat2.of(Z, 15, 6, 10, 14)
    sample = nu_enumerate(A, 3)
    assert 149 not in sample.values or sample.witnesses[149]
    for value, (e, f, s, t) in sample.witnesses.items():
        assert A.det().value + e * s + f * t == value
        assert simple_det_value(A, *(Z.elem(x) for x in (e, f, s, t))) == 1


def test_lift_det_zero(Z):
    A = Mat2.of(Z, 2, 1, 1, 3)
    sequence = lift_det_zero(A, 5, 3)
    assert sequence.holds()
    assert sequence.exponents == (1, 2, 4, 8)
    assert sequence.steps[-1].det().value % 5**8 == 0


def test_lift_needs_t_dividing_det(Z):
    with pytest.raises(InputError):
        lift_det_zero(Mat2.of(Z, 2, 1, 1, 1), 5, 2)


def test_pell_witness(Z):
    result = pell_simple_extendable(Mat2.of(Z, 4, 2, 2, 1))
    assert result is not None
    assert (result.e.value, result.f.value) == (0, -1)
    assert result.witness.is_valid()


def test_pell_witness_over_z_mod_n():
    Z5 = RingSpec.mod_n(5)
    result = pell_simple_extendable(Mat2.of(Z5, 4, 2, 2, 1))
    assert result is not None
    assert result.witness.is_valid()


def test_pell_needs_symmetric_det_zero(Z):
    with pytest.raises(InputError):
        pell_simple_extendable(Mat2.of(Z, 1, 2, 3, 4))


@pytest.mark.parametrize("k", [1, 2])
def test_non_extendability_certificate(k):
    cert = ex11_certificate(k, box=2)
    assert cert.valid
    assert cert.q == 4 * k + 1


def _random_unimodular(Z, rng, bound):
    while True:
        entries = [rng.randint(-bound, bound) for _ in range(4)]
        if math.gcd(*entries) == 1 and (entries[0] or entries[2]):
            return Mat2.of(Z, *entries)


def test_gcd_construction_agrees_with_smith(Z, rng):
    for _ in range(300):
        A = _random_unimodular(Z, rng, 100)
        for witness in (simple_extension_pr5(A), simple_extension_snf(A)):
            assert witness.is_valid()
            assert witness.simple
            assert theta(witness.aplus) == A
            assert simple_det_value(A, witness.e, witness.f, witness.s, witness.t) == 1


@pytest.mark.parametrize("t", [2, 3, 7])
def test_lifting_for_several_moduli(Z, rng, t):
    done = 0
    while done < 20:
        A = _random_unimodular(Z, rng, 30)
        if A.det().value % t:
            continue
        sequence = lift_det_zero(A, t, 6)
        assert sequence.holds()
        assert sequence.exponents == (1, 2, 4, 8, 16, 32, 64)
        assert sequence.steps[-1].det().value % t**64 == 0
        done += 1

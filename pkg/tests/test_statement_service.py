import pytest

from services.errors import InputError
from services.finite_service import finite_ring
from services.matrix_service import Mat2, diag2
from services.ring_service import RingSpec
from services.statement_service import (
    STATEMENTS,
    FiniteStatements,
    chain_consistent,
    check_statement,
    revalidate_status,
    statement_five_witness,
    statement_report,
    verify_th8_chain,
)
from utils.parsing import parse_mat2


def test_every_statement_holds_over_z_mod_6(settings):
    A = Mat2.of(RingSpec.mod_n(6), 2, 3, 4, 5)
    report = statement_report(A, settings)
    assert [s.status for s in report.statements] == ["holds"] * 10
    assert report.chain_ok
    assert all(revalidate_status(A, s) for s in report.statements)


def test_every_statement_holds_over_z(Z, settings):
    A = Mat2.of(Z, 15, 6, 10, 14)
    report = statement_report(A, settings)
    assert report.delta == "150"
    assert all(s.status == "holds" for s in report.statements)
    assert all(revalidate_status(A, s) for s in report.statements)


def test_full_quadratic_matrix_fails_with_certificate(settings):
    A = parse_mat2(RingSpec.quadratic(-5), "3,1-1*w;1+1*w,2")
    status = check_statement(A, 2, settings)
    assert status.status == "fails"
    assert "fullness" in status.certificate
    assert check_statement(A, 7, settings).status == "holds"


def test_tampered_witness_does_not_revalidate(Z, settings):
    A = Mat2.of(Z, 15, 6, 10, 14)
    status = check_statement(A, 3, settings)
    status.witness["s"] = "0"
    status.witness["t"] = "0"
    assert not revalidate_status(A, status)


def test_det_zero_pair_witness_carries_kernel_vector(Z, settings):
    A = Mat2.of(Z, 2, 4, 3, 6)
    status = check_statement(A, 3, settings)
    assert status.status == "holds"
    assert "kernel" in status.witness
    assert revalidate_status(A, status)
    status.witness["kernel"]["vector"] = ["0", "1"]
    assert not revalidate_status(A, status)


def test_statement_index_is_checked(Z, settings):
    with pytest.raises(InputError):
        check_statement(Mat2.of(Z, 1, 0, 0, 1), 11, settings)


def test_statement_five_witness_over_z_mod_n(settings):
    A = Mat2.of(RingSpec.mod_n(8), 2, 3, 4, 6)
    x, y, z, w = statement_five_witness(A, settings)
    assert A.a * x + A.b * y + A.c * z + A.d * w == 1
    assert (x * w - y * z).is_zero


def test_chain_consistency_rule():
    assert chain_consistent({3: "holds", 4: "holds"}, reduced=False)
    assert not chain_consistent({3: "holds", 4: "fails"}, reduced=False)
    assert chain_consistent({10: "holds", 9: "fails"}, reduced=False)
    assert not chain_consistent({10: "holds", 9: "fails"}, reduced=True)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_chain_over_small_z_mod_n(n):
    report = verify_th8_chain(RingSpec.mod_n(n))
    assert report.chain_ok
    assert all(report.holds[k] == report.matrices for k in STATEMENTS)
    assert report.reduced == (n != 4)


def test_chain_sample_is_seeded():
    first = verify_th8_chain(RingSpec.mod_n(5), sample=20, seed=3)
    second = verify_th8_chain(RingSpec.mod_n(5), sample=20, seed=3)
    assert first.matrices == 20
    assert first.holds == second.holds


def test_statement_one_has_its_own_search(monkeypatch):
    T = finite_ring(RingSpec.mod_n(6))
    monkeypatch.setattr(FiniteStatements, "three", lambda self, a, b, c, d: None)
    verdict = FiniteStatements(T).verdicts(T.one, T.zero, T.zero, T.one)
    assert verdict[1] is True
    assert verdict[3] is False


def test_statement_one_diagonalizes_over_z_mod_n(settings):
    Z12 = RingSpec.mod_n(12)
    A = Mat2.of(Z12, 2, 3, 5, 7)
    status = check_statement(A, 1, settings)
    assert status.status == "holds"
    assert status.route == "exhaustive"
    assert revalidate_status(A, status)
    M, N = (parse_mat2(Z12, ";".join(",".join(row) for row in status.witness[key])) for key in ("M", "N"))
    assert M * A * N == diag2(Z12.one(), A.det())

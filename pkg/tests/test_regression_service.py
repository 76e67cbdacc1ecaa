import random

import pytest

from services.errors import InputError
from services.regression_service import (
    REGRESSION_GROUPS,
    check_chain,
    check_classes,
    check_ex11,
    check_lift,
    check_nu,
    check_pell,
    check_sec5,
    check_sec26,
    check_snf,
    check_witness,
    random_unimodular,
    verify_paper,
)


def test_worked_examples_pass():
    passed, detail = check_sec5()
    assert passed, detail


def test_corrupted_determinant_is_caught():
    passed, detail = check_sec5(det_value=lambda A, e, f, s, t: A.ring.zero())
    assert not passed
    assert "sec5-1" in detail


def test_nu_laws():
    passed, detail = check_nu(bound=12)
    assert passed, detail


@pytest.mark.parametrize(
    "check",
    [
        lambda rng: check_snf(rng, count=50),
        lambda rng: check_lift(rng, count=10, steps=3),
        lambda rng: check_sec26(rng, count=10),
        lambda rng: check_witness(rng, count=20),
        lambda rng: check_pell(rng, count=20),
    ],
)
def test_randomized_groups(check):
    passed, detail = check(random.Random(0))
    assert passed, detail


def test_chain_and_classes_on_small_moduli(settings):
    assert check_chain(range(2, 5))[0]
    passed, detail = check_classes(range(2, 6), settings)
    assert passed, detail


def test_non_extendability_certificates():
    assert check_ex11((1,), box=2)[0]


def test_random_unimodular_is_seeded():
    first = random_unimodular(random.Random(7), 100)
    second = random_unimodular(random.Random(7), 100)
    assert first == second


def test_verify_paper_subset(settings):
    report = verify_paper(["sec5", "ex11"], settings)
    assert [c.group for c in report.criteria] == ["sec5", "ex11"]
    assert report.passed
    assert report.failures() == []


def test_verify_paper_rejects_unknown_groups(settings):
    with pytest.raises(InputError):
        verify_paper(["sec9"], settings)


def test_groups_are_stable():
    assert REGRESSION_GROUPS[0] == "sec5" and REGRESSION_GROUPS[-1] == "classes"

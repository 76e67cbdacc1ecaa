import pytest

from services.class_service import (
    CLASS_NAMES,
    classify,
    classify_sweep,
    decide_class,
    parse_class_names,
    parse_sweep,
    revalidate_counterexample,
    revalidate_report,
    stable_range_flags,
    sweep_csv,
    th2_4_surjective,
)
from services.errors import InputError, UnsupportedRingError
from services.ring_service import RingSpec


def test_parse_class_names():
    assert parse_class_names(None) == list(CLASS_NAMES)
    assert parse_class_names("se2, wz2,U_2") == ["SE2", "WZ2", "U2"]
    with pytest.raises(InputError):
        parse_class_names("SE3")


@pytest.mark.parametrize("text, moduli", [("2-5", [2, 3, 4, 5]), ("4,6,9", [4, 6, 9])])
def test_parse_sweep(text, moduli):
    assert parse_sweep(text) == moduli


def test_parse_sweep_rejects_garbage():
    with pytest.raises(InputError):
        parse_sweep("a-b")


def test_z4_memberships(settings):
    report = classify(RingSpec.mod_n(4), ["SE2", "E2", "Z2", "WZ2"], settings)
    assert [v.status for v in report.verdicts] == ["member"] * 4
    assert not report.reduced
    assert report.stable_range.sr1
    verdict = report.verdict("SE2")
    assert verdict.checked == verdict.space == 240


@pytest.mark.parametrize("name", ["U2", "WU2", "V2", "PI2"])
def test_three_argument_classes_over_z6(name, settings):
    assert decide_class(RingSpec.mod_n(6), name, settings).status == "member"


def test_containments_are_confirmed(settings):
    report = classify(RingSpec.mod_n(6), ["SE2", "E2", "Z2", "WZ2"], settings)
    checked = [c for c in report.containments if c.confirmed is not None]
    assert checked and all(c.confirmed for c in checked)


def test_guard_skips_large_rings(settings):
    tight = settings.with_overrides(j21_order_guard=3)
    verdict = decide_class(RingSpec.mod_n(4), "J21", tight)
    assert verdict.status == "skipped"
    assert "j21_order_guard" in verdict.note


def test_member_tuple_does_not_replay_as_counterexample():
    assert not revalidate_counterexample(RingSpec.mod_n(2), "SE2", ["1", "0", "0", "1"])
    assert not revalidate_counterexample(RingSpec.mod_n(2), "SE2", ["0", "0", "0", "0"])


def test_report_replay_has_no_failures(settings):
    report = classify(RingSpec.mod_n(3), ["SE2", "V2"], settings)
    assert all(revalidate_report(RingSpec.mod_n(3), report).values())


def test_infinite_rings_are_rejected(Z, settings):
    with pytest.raises(UnsupportedRingError):
        classify(Z, ["SE2"], settings)


def test_stable_range_of_a_product_ring():
    flags = stable_range_flags(RingSpec.product(RingSpec.mod_n(2), RingSpec.mod_n(3)))
    assert flags.sr1 and flags.fsr15 and flags.asr1
    assert flags.counterexamples == {}


def test_reduction_is_onto_det_zero_matrices():
    result = th2_4_surjective(RingSpec.mod_n(4), 2)
    assert result.surjective
    assert result.targets == 9


def test_sweep_csv(settings):
    reports = classify_sweep([2, 3], ["SE2"], settings)
    lines = sweep_csv(reports).splitlines()
    assert lines[0] == "ring,class,status,checked,space,counterexample"
    assert lines[1].startswith("Z/2,SE2,member,15,15")
    assert len(lines) == 3

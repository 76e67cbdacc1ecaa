"""
Regression suite replaying the worked examples and the property checks.

Each criterion belongs to a group (sec5, nu, snf, chain, lift, ex11, sec26,
witness, pell, classes) and returns a pass flag with a one-line detail.
Random inputs come from a seeded random.Random, so reruns are identical.
"""

import math
import random
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, computed_field

from utils.streaming import stream_status

from .class_service import classify, revalidate_counterexample, revalidate_report
from .config import SearchSettings, load_settings
from .errors import InputError, LabError
from .extension_service import (
    assemble_extension,
    diagonal_nu_realizable,
    ex11_certificate,
    lift_det_zero,
    nu_enumerate,
    pell_simple_extendable,
    simple_det_value,
    simple_extension_snf,
)
from .matrix_service import Mat2, det3, theta
from .ring_service import POLY_Y, POLY_Z, RingSpec
from .statement_service import STATEMENTS, verify_th8_chain
from .universal_service import (
    companion_test_matrix,
    e_transform_factors,
    evaluate_hom,
    substitute_z,
    universal_matrix,
)
from .witness_service import c9_extension, c14_witness, cr3_witness, th5_8_witness

REGRESSION_GROUPS = ("sec5", "nu", "snf", "chain", "lift", "ex11", "sec26", "witness", "pell", "classes")

# (label, matrix, (e, f, s, t), expected nu)
WORKED_EXTENSIONS = (
    ("sec5-1", ((0, 3), (2, 6)), (1, -1, 1, -1), None),
    ("sec5-2", ((6, -10), (0, -15)), (1, -1, 1, -1), None),
    ("sec5-3", ((15, 6), (10, 14)), (-1, -2, -1, 1), 149),
    ("sec5-4", ((30, 42), (70, 105)), (-3, 1, 1, -1), None),
)

SANITY_CLASSES = ("PI2", "SE2", "E2", "Z2", "WZ2", "U2", "V2")

DetEvaluator = Callable[..., object]


class CriterionResult(BaseModel):
    group: str
    name: str
    passed: bool
    detail: str
    seconds: float


class RegressionReport(BaseModel):
    criteria: List[CriterionResult]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def failures(self) -> List[str]:
        return [c.name for c in self.criteria if not c.passed]


def _integers() -> RingSpec:
    return RingSpec.integers()


def random_unimodular(rng: random.Random, bound: int) -> Mat2:
    """Uniform entries in [-bound, bound], redrawn until their gcd is 1."""
    while True:
        entries = [rng.randint(-bound, bound) for _ in range(4)]
        if math.gcd(*entries) == 1:
            return Mat2.of(_integers(), *entries)


# criteria


def check_sec5(det_value: DetEvaluator = simple_det_value) -> Tuple[bool, str]:
    Z = _integers()
    bad = []
    for label, rows, (e, f, s, t), nu in WORKED_EXTENSIONS:
        A = Mat2.from_rows(Z, [[Z.elem(x) for x in row] for row in rows])
        aplus = assemble_extension(A, e, f, s, t)
        ok = det3(aplus) == 1 and theta(aplus) == A and det_value(A, *(Z.elem(x) for x in (e, f, s, t))) == 1
        if nu is not None:
            ok = ok and A.det() + e * s + f * t == nu
        if not ok:
            bad.append(label)
    family = c9_extension(Mat2.of(Z, 6, -10, 0, -15))
    if family is None or family.e != 1 or not family.is_valid():
        bad.append("sec5-2 family")
    if bad:
        return False, "failed: " + ", ".join(bad)
    return True, f"{len(WORKED_EXTENSIONS)} extensions with det 1 and Theta = A"


def check_nu(bound: int = 40) -> Tuple[bool, str]:
    Z = _integers()
    sample = nu_enumerate(Mat2.of(Z, 7, 0, 0, 11), bound)
    fours = bool(sample.values) and all(v % 4 == 0 for v in sample.values)
    window = set(range(-(bound // 4) * 4, bound + 1, 4))
    realizable = {v for v in window if diagonal_nu_realizable(7, 11, v, bound)}
    covered = window & sample.values == realizable
    first = sample.progression is not None and sample.progression.describe() == "4Z"
    other = nu_enumerate(Mat2.of(Z, 1, 0, 0, 5), min(bound, 10)).progression
    second = other is not None and other.describe() == "2+4Z"
    # [[6, -10], [0, -15]] reaches both 3+7Z and 1+14Z
    upper = nu_enumerate(Mat2.of(Z, 6, -10, 0, -15), min(bound, 5)).values
    progressions = any(v % 7 == 3 for v in upper) and any(v % 14 == 1 for v in upper)
    ok = fours and covered and first and second and progressions
    return ok, (
        f"{len(sample.values)} values for Diag(7, 11), {len(realizable)} multiples of 4 in the box: {covered}; "
        f"4Z and 2+4Z: {first and second}; 3+7Z and 1+14Z met: {progressions}"
    )


def check_snf(rng: random.Random, count: int = 1000, bound: int = 10**6) -> Tuple[bool, str]:
    for i in range(count):
        A = random_unimodular(rng, bound)
        w = simple_extension_snf(A)
        if not (w.is_valid() and w.simple and theta(w.aplus) == A):
            return False, f"sample {i}: {A}"
    return True, f"{count} random matrices extended simply"


def check_chain(moduli: Sequence[int] = range(2, 13), workers: int = 1) -> Tuple[bool, str]:
    total = 0
    for n in moduli:
        report = verify_th8_chain(RingSpec.mod_n(n), workers=workers)
        total += report.matrices
        if not report.chain_ok:
            return False, f"Z/{n}: {len(report.violations)} violation(s)"
        if any(report.holds[k] != report.matrices for k in STATEMENTS):
            return False, f"Z/{n}: some statement fails on a unimodular matrix"
    return True, f"{total} matrices, no violations"


def check_lift(rng: random.Random, count: int = 100, t: int = 5, steps: int = 5) -> Tuple[bool, str]:
    Z = _integers()
    done = 0
    while done < count:
        entries = [rng.randint(-50, 50) for _ in range(4)]
        A = Mat2.of(Z, *entries)
        if math.gcd(*entries) != 1 or A.det().value % t:
            continue
        if not lift_det_zero(A, t, steps).holds():
            return False, f"lifting broke on {A}"
        done += 1
    return True, f"{count} lifts of {steps} steps modulo {t}"


def check_ex11(ks: Sequence[int] = (1, 2, 3), box: int = 10) -> Tuple[bool, str]:
    bad = [k for k in ks if not ex11_certificate(k, box).valid]
    if bad:
        return False, f"certificate invalid for k in {bad}"
    return True, f"certificates valid for k in {list(ks)}"


def check_sec26(rng: random.Random, count: int = 100) -> Tuple[bool, str]:
    L, R = e_transform_factors()
    D, E, F = (universal_matrix(name) for name in "DEF")
    if L * D * R != E:
        return False, "E != L * D * R"
    if substitute_z(F, 2 * POLY_Z - POLY_Y * POLY_Z**2) != E:
        return False, "F(z -> 2z - yz^2) != E"
    for _ in range(count):
        data = companion_test_matrix(random_unimodular(rng, 50))
        if evaluate_hom(D, data.phi) != data.D:
            return False, f"companion mismatch for {data.M}"
    return True, f"identities hold; {count} companions match"


def _pair(rng: random.Random, bound: int) -> Tuple[int, int]:
    while True:
        x, y = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if math.gcd(x, y) == 1:
            return x, y


def check_witness(rng: random.Random, count: int = 200, bound: int = 20) -> Tuple[bool, str]:
    for _ in range(count):
        a, b = _pair(rng, bound)
        c, d = _pair(rng, bound)
        if not th5_8_witness(a, b, c, d).exact:
            return False, f"TH5-8 residual at {(a, b, c, d)}"
        a, b, s = (rng.randint(-bound, bound) for _ in range(3))
        if not cr3_witness(a, b, s).exact:
            return False, f"CR3-2 residual at {(a, b, s)}"
        a, t = rng.randint(-bound, bound), rng.randint(-bound, bound)
        u = rng.choice([x for x in range(-bound, bound + 1) if x])
        if not c14_witness(a, u, t).exact:
            return False, f"C14 residual at {(a, u, t)}"
    return True, f"{count} inputs per equation"


def check_pell(rng: random.Random, count: int = 100, bound: int = 64) -> Tuple[bool, str]:
    """Samples [[g^2 u, ghu], [ghu, h^2 u]] with g or h a unit, where the criterion applies over Z."""
    Z = _integers()
    for _ in range(count):
        u = rng.choice((1, -1))
        g, h = rng.randint(-20, 20), rng.choice((1, -1))
        if rng.random() < 0.5:
            g, h = h, g
        A = Mat2.of(Z, g * g * u, g * h * u, g * h * u, h * h * u)
        result = pell_simple_extendable(A, bound)
        if result is None or not result.witness.is_valid():
            return False, f"no Pell witness for {A}"
    return True, f"{count} symmetric det-0 matrices"


def check_classes(
    moduli: Sequence[int] = range(2, 17),
    settings: Optional[SearchSettings] = None,
    workers: int = 1,
) -> Tuple[bool, str]:
    for n in moduli:
        spec = RingSpec.mod_n(n)
        report = classify(spec, SANITY_CLASSES, settings, workers)
        outside = [v.name for v in report.verdicts if v.status != "member"]
        if outside:
            return False, f"Z/{n} outside {outside}"
        if any(c.confirmed is False for c in report.containments):
            return False, f"Z/{n}: a containment fails"
        if not all(revalidate_report(spec, report).values()):
            return False, f"Z/{n}: a counterexample does not replay"
    # an injected member tuple must not replay as a counterexample
    if revalidate_counterexample(RingSpec.mod_n(2), "SE2", ["1", "0", "0", "1"]):
        return False, "negative control replayed as a counterexample"
    return True, f"Z/n for n in {moduli[0]}..{moduli[-1]}: members of {', '.join(SANITY_CLASSES)}"


def _run(group: str, name: str, func: Callable[[], Tuple[bool, str]]) -> CriterionResult:
    started = time.perf_counter()
    try:
        passed, detail = func()
    except LabError as e:
        passed, detail = False, f"{type(e).__name__}: {e}"
    return CriterionResult(
        group=group,
        name=name,
        passed=passed,
        detail=detail,
        seconds=round(time.perf_counter() - started, 3),
    )


def verify_paper(
    only: Optional[Sequence[str]] = None,
    settings: Optional[SearchSettings] = None,
    seed: int = 0,
    det_value: DetEvaluator = simple_det_value,
) -> RegressionReport:
    """
    Run the regression groups in order; `only` restricts to named groups.

    Args:
        only: group names from REGRESSION_GROUPS
        settings: budgets, worker count and verbosity
        seed: seed for every randomized criterion
        det_value: evaluator of the simple-extension determinant, replaceable for negative controls
    """
    settings = settings or load_settings()
    groups = list(only) if only else list(REGRESSION_GROUPS)
    unknown = [g for g in groups if g not in REGRESSION_GROUPS]
    if unknown:
        raise InputError(f"unknown group(s) {unknown}; expected {', '.join(REGRESSION_GROUPS)}")

    rng = random.Random(seed)
    workers = settings.workers
    plan: Dict[str, Tuple[str, Callable[[], Tuple[bool, str]]]] = {
        "sec5": ("worked extensions", lambda: check_sec5(det_value)),
        "nu": ("nu-set laws", lambda: check_nu()),
        "snf": ("Smith route over Z", lambda: check_snf(rng)),
        "chain": ("ten-statement chain over Z/n", lambda: check_chain(workers=workers)),
        "lift": ("determinant lifting", lambda: check_lift(rng)),
        "ex11": ("non-extendability certificate", lambda: check_ex11()),
        "sec26": ("universal matrix identities", lambda: check_sec26(rng)),
        "witness": ("witness equations", lambda: check_witness(rng)),
        "pell": ("Pell criterion", lambda: check_pell(rng, bound=settings.pell_bound)),
        "classes": ("class sanity over Z/n", lambda: check_classes(settings=settings, workers=workers)),
    }
    results = []
    for group in groups:
        name, func = plan[group]
        if settings.verbose:
            stream_status(f"running {group}: {name}")
        result = _run(group, name, func)
        results.append(result)
        if settings.verbose:
            stream_status(f"{group}: {result.detail}", "ok" if result.passed else "error")
    return RegressionReport(criteria=results)

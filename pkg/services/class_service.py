"""
Exhaustive ring-class membership on finite rings.

Every class is a universally quantified statement over tuples of ring
elements. A class is described by its domain (which tuples are quantified
over), a checker (does the existential part hold at one tuple) and an
optional size guard. classify() scans the domain in index order and reports
the first failing tuple, so counterexamples are minimal in scan order and
independent of the worker count.
"""

import itertools
import time
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel

from utils.parallel import map_chunks
from utils.parsing import parse_element
from utils.streaming import csv_text, stream_status

from .config import SearchSettings, load_settings
from .errors import InputError, UnsupportedRingError
from .extension_service import finite_extension_witness, finite_simple_witness
from .finite_service import FiniteRing, Quotient, finite_ring
from .ring_service import RingSpec
from .statement_service import FiniteStatements

Failure = Optional[Tuple[int, ...]]


class ClassVerdict(BaseModel):
    name: str
    status: Literal["member", "non-member", "skipped"]
    counterexample: Optional[List[str]] = None
    checked: int = 0
    space: int = 0
    seconds: float = 0.0
    note: Optional[str] = None


class ContainmentCheck(BaseModel):
    premise: str
    conclusion: str
    confirmed: Optional[bool] = None


class StableRangeFlags(BaseModel):
    ring: str
    sr1: bool
    fsr15: bool
    asr1: bool
    counterexamples: Dict[str, List[str]] = {}


class ClassReport(BaseModel):
    ring: str
    order: int
    reduced: bool
    verdicts: List[ClassVerdict]
    containments: List[ContainmentCheck]
    stable_range: Optional[StableRangeFlags] = None
    seconds: float = 0.0

    def verdict(self, name: str) -> Optional[ClassVerdict]:
        for v in self.verdicts:
            if v.name == name:
                return v
        return None


class ReductionSurjectivity(BaseModel):
    ring: str
    modulus: str
    targets: int
    surjective: bool
    missing: Optional[List[str]] = None


class ClassKernel:
    """Index-level domains and checkers for one finite ring."""

    def __init__(self, T: FiniteRing):
        self.T = T
        self.statements = FiniteStatements(T)
        self._images: Dict[Tuple[int, int], FrozenSet[int]] = {}
        self._gl2: Optional[List[Tuple[int, int, int, int]]] = None

    # domains

    def um_matrix(self, a, b, c, d) -> bool:
        return self.T.is_um(a, b, c, d)

    def um_det_zero(self, a, b, c, d) -> bool:
        T = self.T
        return T.is_um(a, b, c, d) and T.det(a, b, c, d) == T.zero

    def um_triangular(self, a, b, c, d) -> bool:
        T = self.T
        return (b == T.zero or c == T.zero) and T.is_um(a, b, c, d)

    def um_symmetric(self, a, b, c, d) -> bool:
        return b == c and self.T.is_um(a, b, c, d)

    def any_tuple(self, *_) -> bool:
        return True

    def um_first_pair(self, a, b, c) -> bool:
        return self.T.is_um(a, b)

    def um_triple(self, a, b, c) -> bool:
        return self.T.is_um(a, b, c)

    def um_last_pair(self, a, b, c) -> bool:
        return self.T.is_um(b, c)

    # helpers

    def image(self, source: Quotient, target: Quotient) -> FrozenSet[int]:
        """Image of U(source) in U(target); needs ideal(source) inside ideal(target)."""
        key = (source.ideal, target.ideal)
        cached = self._images.get(key)
        if cached is None:
            cached = frozenset(target.rep[x] for x in source.unit_lifts)
            self._images[key] = cached
        return cached

    @property
    def gl2(self) -> List[Tuple[int, int, int, int]]:
        if self._gl2 is None:
            T = self.T
            units = set(T.units)
            r = range(T.order)
            self._gl2 = [n for n in itertools.product(r, repeat=4) if T.det(*n) in units]
        return self._gl2

    # checkers: None when the definition holds at the tuple

    def extendable(self, a, b, c, d) -> Failure:
        return None if finite_extension_witness(self.T, a, b, c, d) is not None else ()

    def simply_extendable(self, a, b, c, d) -> Failure:
        return None if finite_simple_witness(self.T, a, b, c, d) is not None else ()

    def congruent_um_zero(self, a, b, c, d) -> Failure:
        return None if self.statements.seven(a, b, c, d) is not None else ()

    def congruent_zero(self, a, b, c, d) -> Failure:
        return None if self.statements.ten(a, b, c, d) is not None else ()

    def _u2_product(self, a, b, c) -> Tuple[Quotient, set]:
        T = self.T
        qc = T.quotient_by(c)
        first = self.image(T.quotient_by(T.mul[a][c]), qc)
        second = self.image(T.quotient_by(T.mul[b][c]), qc)
        return qc, {qc.mul(u, v) for u in first for v in second}

    def u2(self, a, b, c) -> Failure:
        qc, product = self._u2_product(a, b, c)
        return None if product == set(qc.unit_reps) else ()

    def wu2(self, a, b, c) -> Failure:
        qc, product = self._u2_product(a, b, c)
        squares = {qc.mul(u, u) for u in qc.unit_reps}
        return None if squares <= product else ()

    def _v2_solution(self, a, b, c):
        # (1-ax)(1-cw) = y(b+acz) with xw = yz
        T = self.T
        mul, sub, add, solve, one = T.mul, T.sub, T.add, T.solve, T.one
        ac = mul[a][c]
        r = range(T.order)
        for x in r:
            p = sub[one][mul[a][x]]
            coef = mul[p][c]
            for y in r:
                for z in r:
                    rhs = sub[p][mul[y][add[b][mul[ac][z]]]]
                    yz = mul[y][z]
                    for w in solve[coef][rhs]:
                        if mul[x][w] == yz:
                            return (x, y, z, w)
        return None

    def v2(self, a, b, c) -> Failure:
        return None if self._v2_solution(a, b, c) is not None else ()

    def wv2(self, a, b, c) -> Failure:
        if self._v2_solution(a, b, c) is not None:
            return None
        T = self.T
        mul, sub, add, solve = T.mul, T.sub, T.add, T.solve
        r = range(T.order)
        a_pairs = [(p, q) for p in r for q in r if T.is_um(a, mul[p][q])]
        c_pairs = [(p, q) for p in r for q in r if T.is_um(c, mul[p][q])]
        for a1, a2 in a_pairs:
            for c1, c2 in c_pairs:
                base = mul[mul[a1][c1]][b]
                for x in r:
                    left = sub[a2][mul[a][x]]
                    for w in r:
                        right = sub[c2][mul[c][w]]
                        lr = mul[left][right]
                        for y in r:
                            yc = mul[y][c]
                            for z1 in r:
                                partial_sum = add[base][mul[a][z1]]
                                rhs = sub[lr][mul[y][partial_sum]]
                                for z2 in solve[yc][rhs]:
                                    third = add[partial_sum][mul[c][z2]]
                                    if T.is_um(left, y, third, right):
                                        return None
        return ()

    def w2(self, a, b, c) -> Failure:
        T = self.T
        big = T.quotient_by(T.mul[T.mul[a][b]][c])
        qa, qb = T.quotient_by(a), T.quotient_by(b)
        pairs = {(qa.rep[x], qb.rep[x]) for x in big.unit_lifts}
        left = {p for p, _ in pairs}
        right = {q for _, q in pairs}
        return None if len(pairs) == len(left) * len(right) else ()

    def ww2(self, a, b, c) -> Failure:
        T = self.T
        co_a = T.sub[T.one][a]
        q0, q1 = T.quotient_by(a, c), T.quotient_by(co_a, c)
        b0 = q0.rep[b]
        b1_inv = q1.inverse[q1.rep[b]]
        first = self.image(T.quotient_by(a), q0)
        second = self.image(T.quotient_by(co_a), q1)
        qc = T.quotient_by(c)
        for w in qc.unit_lifts:
            h0, h1 = q0.rep[w], q1.rep[w]
            if q0.mul(b0, q0.inverse[h0]) in first and q1.mul(b1_inv, q1.inverse[h1]) in second:
                return None
        return ()

    def _j21_values(self, a, b, c, d) -> Dict[int, set]:
        T = self.T
        mul, add, sub = T.mul, T.add, T.sub
        reached: Dict[int, set] = {}
        r = range(T.order)
        for x in r:
            ax = mul[a][x]
            for y in r:
                axy = add[ax][mul[b][y]]
                xy = mul[x][y]
                for z in r:
                    axyz = add[axy][mul[c][z]]
                    for w in r:
                        alpha = add[axyz][mul[d][w]]
                        reached.setdefault(alpha, set()).add(sub[xy][mul[z][w]])
        return reached

    def j21(self, a, b, c, d) -> Failure:
        """First (alpha, Delta) with alpha reachable but no solution of xy - zw = Delta."""
        full = set(range(self.T.order))
        reached = self._j21_values(a, b, c, d)
        for alpha in sorted(reached):
            missing = full - reached[alpha]
            if missing:
                return (alpha, min(missing))
        return None

    def symmetrizable(self, a, b, c, d) -> Failure:
        T = self.T
        mul, add = T.mul, T.add
        for n1, n2, n3, n4 in self.gl2:
            if add[mul[a][n2]][mul[b][n4]] == add[mul[c][n1]][mul[d][n3]]:
                return None
        return ()


@dataclass(frozen=True)
class ClassDef:
    name: str
    arity: int
    domain: str
    check: str
    guard: Optional[str] = None
    description: str = ""


CLASS_DEFS: Dict[str, ClassDef] = {
    d.name: d
    for d in (
        ClassDef("PI2", 4, "um_det_zero", "extendable", "matrix_order_guard", "det-zero unimodular matrices extend"),
        ClassDef("E2", 4, "um_matrix", "extendable", "matrix_order_guard", "unimodular matrices extend"),
        ClassDef("SE2", 4, "um_matrix", "simply_extendable", "matrix_order_guard", "unimodular matrices extend simply"),
        ClassDef("E2TRI", 4, "um_triangular", "extendable", "matrix_order_guard", "triangular ones extend"),
        ClassDef(
            "SE2TRI", 4, "um_triangular", "simply_extendable", "matrix_order_guard", "triangular ones extend simply"
        ),
        ClassDef(
            "Z2", 4, "um_matrix", "congruent_um_zero", "matrix_order_guard", "unimodular det-zero B = A mod det A"
        ),
        ClassDef("WZ2", 4, "um_matrix", "congruent_zero", "matrix_order_guard", "det-zero B = A mod det A"),
        ClassDef("U2", 3, "um_first_pair", "u2", None, "U(R/Rac) x U(R/Rbc) onto U(R/Rc)"),
        ClassDef("WU2", 3, "um_first_pair", "wu2", None, "the product covers the squares of U(R/Rc)"),
        ClassDef("V2", 3, "um_triple", "v2", None, "(1-ax)(1-cw) = y(b+acz) with xw = yz"),
        ClassDef("WV2", 3, "um_triple", "wv2", "wv2_order_guard", "the weighted form of the V2 equation"),
        ClassDef("W2", 3, "um_first_pair", "w2", None, "image of U(R/Rabc) is a product"),
        ClassDef("WW2", 3, "um_last_pair", "ww2", None, "(b0, 1/b1) lies in the product of images"),
        ClassDef("J21", 4, "any_tuple", "j21", "j21_order_guard", "solvable ax+by+cz+dw = alpha hits every xy - zw"),
        ClassDef("WJ21", 4, "um_matrix", "j21", "j21_order_guard", "the same for unimodular (a, b, c, d)"),
        ClassDef("SU2", 4, "any_tuple", "symmetrizable", "matrix_order_guard", "AN symmetric for some N in GL2"),
        ClassDef("WSU2", 4, "um_matrix", "symmetrizable", "matrix_order_guard", "the same for unimodular A"),
        ClassDef("E2SYM", 4, "um_symmetric", "extendable", None, "symmetric unimodular matrices extend"),
        ClassDef("SE2SYM", 4, "um_symmetric", "simply_extendable", None, "symmetric ones extend simply"),
    )
}
CLASS_NAMES = tuple(CLASS_DEFS)

CONTAINMENTS = (
    ("SE2", "E2"),
    ("SE2", "SE2TRI"),
    ("E2", "E2TRI"),
    ("SE2TRI", "E2TRI"),
    ("E2", "PI2"),
    ("E2", "WZ2"),
    ("SE2", "Z2"),
    ("Z2", "WZ2"),
    ("V2", "WV2"),
    ("U2", "WU2"),
    ("J21", "WJ21"),
    ("WJ21", "V2"),
    ("SU2", "WSU2"),
    ("E2", "E2SYM"),
    ("SE2", "SE2SYM"),
)


@lru_cache(maxsize=64)
def class_kernel(spec: RingSpec) -> ClassKernel:
    return ClassKernel(finite_ring(spec))


def parse_class_names(text: Optional[str]) -> List[str]:
    if not text:
        return list(CLASS_NAMES)
    lookup = {name.upper(): name for name in CLASS_NAMES}
    names = []
    for part in text.split(","):
        key = part.strip().upper().replace("_", "").replace("^", "")
        if not key:
            continue
        if key not in lookup:
            raise InputError(f"unknown class {part.strip()!r}; expected one of {', '.join(CLASS_NAMES)}")
        names.append(lookup[key])
    return names


def _require_finite(spec: RingSpec) -> None:
    if not spec.is_finite:
        raise UnsupportedRingError("class membership is decided on finite rings only")


def _domain(kernel: ClassKernel, definition: ClassDef) -> List[Tuple[int, ...]]:
    member = getattr(kernel, definition.domain)
    r = range(kernel.T.order)
    return [item for item in itertools.product(r, repeat=definition.arity) if member(*item)]


def _scan_chunk(spec: RingSpec, name: str, chunk: List[Tuple[int, Tuple[int, ...]]]):
    """First failing (position, counterexample) in the chunk, or None."""
    kernel = class_kernel(spec)
    check = getattr(kernel, CLASS_DEFS[name].check)
    for position, item in chunk:
        extra = check(*item)
        if extra is not None:
            return position, item + extra
    return None


def _lift_tuple(T: FiniteRing, indices: Sequence[int]) -> List[str]:
    return [str(T.lift(i)) for i in indices]


def decide_class(
    spec: RingSpec, name: str, settings: Optional[SearchSettings] = None, workers: int = 1
) -> ClassVerdict:
    _require_finite(spec)
    settings = settings or load_settings()
    definition = CLASS_DEFS[name]
    kernel = class_kernel(spec)
    T = kernel.T
    if definition.guard is not None:
        limit = getattr(settings, definition.guard)
        if T.order > limit:
            note = f"|R| = {T.order} exceeds {definition.guard} = {limit}"
            return ClassVerdict(name=name, status="skipped", note=note)

    started = time.perf_counter()
    items = list(enumerate(_domain(kernel, definition)))
    results = map_chunks(partial(_scan_chunk, spec, name), items, workers)
    failure = next((found for found in results if found is not None), None)
    elapsed = round(time.perf_counter() - started, 3)
    if failure is None:
        return ClassVerdict(name=name, status="member", checked=len(items), space=len(items), seconds=elapsed)
    position, counterexample = failure
    return ClassVerdict(
        name=name,
        status="non-member",
        counterexample=_lift_tuple(T, counterexample),
        checked=position + 1,
        space=len(items),
        seconds=elapsed,
    )


def _containments(verdicts: Dict[str, ClassVerdict]) -> List[ContainmentCheck]:
    checks = []
    for premise, conclusion in CONTAINMENTS:
        first, second = verdicts.get(premise), verdicts.get(conclusion)
        confirmed = None
        if first and second and "skipped" not in (first.status, second.status):
            confirmed = not (first.status == "member" and second.status == "non-member")
        checks.append(ContainmentCheck(premise=premise, conclusion=conclusion, confirmed=confirmed))
    return checks


def classify(
    spec: RingSpec,
    classes: Optional[Iterable[str]] = None,
    settings: Optional[SearchSettings] = None,
    workers: Optional[int] = None,
) -> ClassReport:
    """
    Decide each requested class on a finite ring by literal enumeration.

    Classes whose guard is exceeded come back as skipped with a note.
    """
    _require_finite(spec)
    settings = settings or load_settings()
    workers = workers or settings.workers
    names = list(classes) if classes is not None else list(CLASS_NAMES)
    for name in names:
        if name not in CLASS_DEFS:
            raise InputError(f"unknown class {name!r}")

    started = time.perf_counter()
    T = finite_ring(spec)
    verdicts: Dict[str, ClassVerdict] = {}
    for name in names:
        verdict = decide_class(spec, name, settings, workers)
        verdicts[name] = verdict
        if settings.verbose:
            level = {"member": "ok", "non-member": "warning", "skipped": "warning"}[verdict.status]
            stream_status(f"{spec.label} {name}: {verdict.status} ({verdict.checked}/{verdict.space})", level)

    return ClassReport(
        ring=spec.label,
        order=T.order,
        reduced=T.is_reduced,
        verdicts=[verdicts[n] for n in names],
        containments=_containments(verdicts),
        stable_range=stable_range_flags(spec),
        seconds=round(time.perf_counter() - started, 3),
    )


def stable_range_flags(spec: RingSpec) -> StableRangeFlags:
    """
    sr = 1, fsr = 1.5 and asr = 1 through surjectivity of unit reductions:

        sr1    U(R) -> U(R/Rb) onto for every b
        fsr15  U(R/Rc) -> U(R/(Rb+Rc)) onto for every b and every c != 0
        asr1   the same for every c outside the Jacobson radical
    """
    _require_finite(spec)
    kernel = class_kernel(spec)
    T = kernel.T
    whole = T.quotient(1 << T.zero)
    r = range(T.order)
    counterexamples: Dict[str, List[str]] = {}

    sr1 = True
    for b in r:
        qb = T.quotient_by(b)
        if kernel.image(whole, qb) != set(qb.unit_reps):
            sr1 = False
            counterexamples["sr1"] = _lift_tuple(T, (b,))
            break

    def onto(c: int) -> Optional[int]:
        qc = T.quotient_by(c)
        for b in r:
            qbc = T.quotient_by(b, c)
            if kernel.image(qc, qbc) != set(qbc.unit_reps):
                return b
        return None

    fsr15 = asr1 = True
    for c in r:
        if c == T.zero:
            continue
        bad = onto(c)
        if bad is None:
            continue
        if fsr15:
            fsr15 = False
            counterexamples["fsr15"] = _lift_tuple(T, (bad, c))
        if asr1 and not T.contains(T.jacobson, c):
            asr1 = False
            counterexamples["asr1"] = _lift_tuple(T, (bad, c))
        if not asr1:
            break

    return StableRangeFlags(ring=spec.label, sr1=sr1, fsr15=fsr15, asr1=asr1, counterexamples=counterexamples)


def wsu2_check(spec: RingSpec, settings: Optional[SearchSettings] = None) -> ClassVerdict:
    return decide_class(spec, "WSU2", settings)


def se2_sym_check(spec: RingSpec, settings: Optional[SearchSettings] = None) -> ClassVerdict:
    return decide_class(spec, "SE2SYM", settings)


def th2_4_surjective(spec: RingSpec, a) -> ReductionSurjectivity:
    """
    Is reduction modulo Ra onto the det-zero unimodular matrices of R/Ra?

    Matrices over R/Ra are named by coset representatives; one is
    unimodular there iff its entries together with a generate R.
    """
    _require_finite(spec)
    T = finite_ring(spec)
    ai = T.to_index(spec.elem(a))
    quotient = T.quotient_by(ai)
    ideal = T.principal[ai]
    rep = quotient.rep

    image = set()
    for A in T.unimodular_matrices():
        if T.det(*A) == T.zero:
            image.add(tuple(rep[x] for x in A))

    targets = 0
    missing = None
    for Abar in itertools.product(quotient.reps, repeat=4):
        if not T.is_um(*Abar, ai) or not T.contains(ideal, T.det(*Abar)):
            continue
        targets += 1
        if missing is None and Abar not in image:
            missing = _lift_tuple(T, Abar)
    return ReductionSurjectivity(
        ring=spec.label,
        modulus=str(T.lift(ai)),
        targets=targets,
        surjective=missing is None,
        missing=missing,
    )


def _in_domain(kernel: ClassKernel, definition: ClassDef, item: Tuple[int, ...]) -> bool:
    return getattr(kernel, definition.domain)(*item)


def revalidate_counterexample(spec: RingSpec, name: str, counterexample: Sequence[str]) -> bool:
    """
    Replay a reported counterexample: True iff the tuple lies in the class's
    domain and the existential part really fails there.
    """
    _require_finite(spec)
    if name not in CLASS_DEFS:
        raise InputError(f"unknown class {name!r}")
    definition = CLASS_DEFS[name]
    kernel = class_kernel(spec)
    T = kernel.T
    indices = tuple(T.to_index(parse_element(spec, str(x))) for x in counterexample)
    if len(indices) < definition.arity:
        return False
    item, extra = indices[: definition.arity], indices[definition.arity:]
    if not _in_domain(kernel, definition, item):
        return False
    if definition.check == "j21":
        if len(extra) != 2:
            return False
        alpha, delta = extra
        reached = kernel._j21_values(*item)
        return alpha in reached and delta not in reached[alpha]
    return getattr(kernel, definition.check)(*item) is not None


def revalidate_report(spec: RingSpec, report: ClassReport) -> Dict[str, bool]:
    """Replay every non-member verdict of a report."""
    return {
        v.name: revalidate_counterexample(spec, v.name, v.counterexample or [])
        for v in report.verdicts
        if v.status == "non-member"
    }


def parse_sweep(text: str) -> List[int]:
    """'2-16' or '4,6,9' -> moduli."""
    text = text.strip()
    try:
        if "-" in text:
            low, high = (int(x) for x in text.split("-", 1))
            return list(range(low, high + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad sweep range {text!r}")


def classify_sweep(
    moduli: Iterable[int],
    classes: Optional[Iterable[str]] = None,
    settings: Optional[SearchSettings] = None,
    workers: Optional[int] = None,
) -> List[ClassReport]:
    names = list(classes) if classes is not None else None
    return [classify(RingSpec.mod_n(n), names, settings, workers) for n in moduli]


def sweep_csv(reports: Iterable[ClassReport]) -> str:
    rows = []
    for report in reports:
        for v in report.verdicts:
            counterexample = " ".join(v.counterexample) if v.counterexample else ""
            rows.append([report.ring, v.name, v.status, v.checked, v.space, counterexample])
    return csv_text(rows, ["ring", "class", "status", "checked", "space", "counterexample"])


"""
Solvers for the named witness equations over Z.

Each solver scans its unknowns in the deterministic box order and returns
the first solution as an EqWitness whose residual is recomputed exactly.
Tags:

    TH5-8  d + ct = d1*d2 with gcd(a, d1) = gcd(b, d2) = 1
    TH5-9  the same with b = 1 - a and c in 1 + Zd
    CR3-2  t in Zy + Z(at) for y = r+s-asq-bqr, t = 1+q-aq-br
    CR3-3  (e, f), (a, e), (be+af, 1-bs-a) all unimodular
    C14    (1-su-la)^2 + l - sul - l^2 a = z(s+t-sut)
    C9     simple extension of [[a, b], [0, d]] with e = 1
    TH2-2  C, A + det(A) C unimodular with det C = det(A + det(A) C) = 0
"""

import math
from typing import Dict, Iterable, Optional, Tuple

from pydantic import BaseModel
from sympy import divisors

from utils.search import box_order, value_order

from .config import SearchSettings, load_settings
from .errors import BudgetExhaustedError, InputError, UnsupportedRingError
from .extension_service import ExtWitness, build_witness
from .finite_service import finite_ring
from .matrix_service import Mat2, is_unimodular_mat
from .ring_service import INTEGERS, integer_bezout
from .statement_service import FiniteStatements, statement_five_witness

WITNESS_TAGS = ("TH5-8", "TH5-9", "CR3-2", "CR3-3", "C14", "C9", "TH2-2")


class EqWitness(BaseModel):
    tag: str
    inputs: Dict[str, str]
    solution: Dict[str, str]
    residual: str
    route: str = "scan"

    @property
    def exact(self) -> bool:
        return self.residual == "0"


def _witness(tag: str, inputs: Dict[str, int], solution: Dict[str, object], residual: int, route="scan") -> EqWitness:
    return EqWitness(
        tag=tag,
        inputs={k: str(v) for k, v in inputs.items()},
        solution={k: str(v) for k, v in solution.items()},
        residual=str(residual),
        route=route,
    )


def _signed_divisors(n: int) -> Iterable[int]:
    for d in divisors(abs(n)):
        yield int(d)
        yield -int(d)


def _split(a: int, b: int, n: int) -> Optional[Tuple[int, int]]:
    """n = d1*d2 with gcd(a, d1) == gcd(b, d2) == 1."""
    if n == 0:
        if abs(a) == 1:
            return (0, 1)
        if abs(b) == 1:
            return (1, 0)
        return None
    for d1 in _signed_divisors(n):
        d2 = n // d1
        if math.gcd(a, d1) == 1 and math.gcd(b, d2) == 1:
            return (d1, d2)
    return None


def _factor_scan(a: int, b: int, c: int, d: int, budget: int) -> Optional[Tuple[int, int, int]]:
    for t in value_order(budget):
        found = _split(a, b, d + c * t)
        if found is not None:
            return (t,) + found
    return None


def th5_8_witness(a: int, b: int, c: int, d: int, budget: int = 200) -> EqWitness:
    """First t in scan order with d + ct = d1*d2, gcd(a, d1) = gcd(b, d2) = 1."""
    if math.gcd(a, b) != 1 or math.gcd(c, d) != 1:
        raise InputError("(a, b) and (c, d) must be unimodular pairs")
    found = _factor_scan(a, b, c, d, budget)
    if found is None:
        raise BudgetExhaustedError(f"no t within {budget}", budget=budget)
    t, d1, d2 = found
    return _witness("TH5-8", {"a": a, "b": b, "c": c, "d": d}, {"t": t, "d1": d1, "d2": d2}, d + c * t - d1 * d2)


def th5_9_witness(a: int, d: int, k: int = 0, budget: int = 200) -> EqWitness:
    """The TH5-8 search for b = 1 - a and c = 1 + k*d."""
    b, c = 1 - a, 1 + k * d
    found = _factor_scan(a, b, c, d, budget)
    if found is None:
        raise BudgetExhaustedError(f"no t within {budget}", budget=budget)
    t, d1, d2 = found
    return _witness(
        "TH5-9",
        {"a": a, "d": d, "k": k},
        {"b": b, "c": c, "t": t, "d1": d1, "d2": d2},
        d + c * t - d1 * d2,
    )


def _ideal_member(target: int, y: int, at: int) -> Optional[Tuple[int, int]]:
    """(alpha, beta) with alpha*y + beta*at == target, or None."""
    alpha, beta, g = integer_bezout(y, at)
    if g == 0:
        return (0, 0) if target == 0 else None
    if target % g:
        return None
    k = target // g
    return (alpha * k, beta * k)


def cr3_witness(a: int, b: int, s: int, budget: int = 25) -> EqWitness:
    """First (q, r) in box order with t in Zy + Z(at)."""
    for q, r in box_order(2, budget):
        y = r + s - a * s * q - b * q * r
        t = 1 + q - a * q - b * r
        member = _ideal_member(t, y, a * t)
        if member is None:
            continue
        alpha, beta = member
        return _witness(
            "CR3-2",
            {"a": a, "b": b, "s": s},
            {"q": q, "r": r, "y": y, "t": t, "alpha": alpha, "beta": beta},
            alpha * y + beta * a * t - t,
        )
    raise BudgetExhaustedError(f"no (q, r) within box {budget}", budget=budget)


def _cr3_three_ok(a: int, b: int, s: int, e: int, f: int) -> bool:
    return math.gcd(e, f) == 1 and math.gcd(a, e) == 1 and math.gcd(b * e + a * f, 1 - b * s - a) == 1


def cr3_statement3_witness(a: int, b: int, s: int, budget: int = 25) -> EqWitness:
    """
    (e, f) with (e, f), (a, e) and (be+af, 1-bs-a) unimodular.

    The shortcuts (s, -1) when gcd(a, s) = 1, (1, 0) when gcd(1-a, b) = 1,
    and (1-a, b-q) when gcd(b+aq, 1-bs-a) = 1 are tried before the box.
    """
    inputs = {"a": a, "b": b, "s": s}
    candidates = []
    if math.gcd(a, s) == 1:
        candidates.append(("coprime-a-s", s, -1))
    if math.gcd(1 - a, b) == 1:
        candidates.append(("coprime-1-a-b", 1, 0))
    for q in value_order(budget):
        if math.gcd(b + a * q, 1 - b * s - a) == 1:
            candidates.append(("shift-q", 1 - a, b - q))
            break
    for route, e, f in candidates:
        if _cr3_three_ok(a, b, s, e, f):
            return _witness("CR3-3", inputs, {"e": e, "f": f}, 0, route=route)
    for e, f in box_order(2, budget):
        if _cr3_three_ok(a, b, s, e, f):
            return _witness("CR3-3", inputs, {"e": e, "f": f}, 0)
    raise BudgetExhaustedError(f"no (e, f) within box {budget}", budget=budget)


def c14_witness(a: int, u: int, t: int, budget: int = 25) -> EqWitness:
    """First (s, l) in box order for which the equation is solvable in z."""
    if u == 0:
        raise InputError("u must be nonzero")
    for s, l in box_order(2, budget):
        k = s + t - s * u * t
        rest = (1 - s * u - l * a) ** 2 + l - s * u * l - l * l * a
        if k == 0:
            if rest:
                continue
            z = 0
        elif rest % k:
            continue
        else:
            z = rest // k
        return _witness("C14", {"a": a, "u": u, "t": t}, {"s": s, "l": l, "z": z}, rest - z * k)
    raise BudgetExhaustedError(f"no (s, l) within box {budget}", budget=budget)


def c9_extension(A: Mat2, budget: int = 200) -> Optional[ExtWitness]:
    """
    Simple extension of [[a, b], [0, d]] with (2,3) entry -1, i.e. e = 1:
    as + (b + df)t = 1. With a == 0 this needs b + df = +-1, which Z need
    not provide; None then.
    """
    if A.ring.kind != INTEGERS:
        raise UnsupportedRingError("C9 extensions are built over Z")
    if not A.is_upper_triangular or not is_unimodular_mat(A):
        raise InputError("needs a unimodular upper triangular matrix")
    a, b, _, d = (x.value for x in A.entries)
    for f in value_order(budget):
        pivot = b + d * f
        if a == 0:
            if abs(pivot) != 1:
                continue
            s, t = 0, pivot
        else:
            s, t, g = integer_bezout(a, pivot)
            if g != 1:
                continue
        return build_witness(A, 1, f, s, t, route="c9")
    return None


def th2_2_witness(A: Mat2, settings: Optional[SearchSettings] = None) -> EqWitness:
    """C with C and A + det(A) C unimodular and both determinants zero."""
    if not is_unimodular_mat(A):
        raise InputError(f"matrix {A} is not unimodular")
    settings = settings or load_settings()
    ring = A.ring
    delta = A.det()
    route = "det-zero"
    if delta.is_zero:
        C = A
    elif ring.is_finite:
        T = finite_ring(ring)
        found = FiniteStatements(T).six(*(T.to_index(x) for x in A.entries))
        if found is None:
            raise BudgetExhaustedError(f"{ring.label} has no such C for {A}")
        C = Mat2(*(T.lift(i) for i in found))
        route = "exhaustive"
    else:
        five = statement_five_witness(A, settings)
        if five is None:
            raise BudgetExhaustedError("no statement-5 witness found", budget=settings.box_bound)
        x, y, z, w = five
        C = Mat2(-w, z, y, -x)
        route = "from-statement-5"
    moved = A + C.scale(delta)
    residual = f"{C.det()},{moved.det()}"
    return EqWitness(
        tag="TH2-2",
        inputs={"matrix": str(A), "ring": ring.label},
        solution={"C": str(C), "A+det(A)C": str(moved)},
        residual="0" if C.det().is_zero and moved.det().is_zero else residual,
        route=route,
    )

"""
The ten per-matrix statements and the implication chain between them.

For A = [[a, b], [c, d]] unimodular with delta = ad - bc:

    1  A is equivalent to Diag(1, delta)
    2  A is simply extendable
    3  (ae+cf, be+df) is unimodular for some (e, f)
    4  ax+by+cz+dw = 1 with [[x, y], [z, w]] non-full
    5  ax+by+cz+dw = 1 with xw - yz = 0
    6  B unimodular, A + delta*B unimodular, det B = det(A + delta*B) = 0
    7  C unimodular, C == A mod delta, det C = 0
    8  det B = det(A + delta*B) = 0
    9  ax+by+cz+dw - delta*(xw - yz) = 1
    10 C == A mod delta, det C = 0

Finite rings are decided by exhaustion. Infinite rings get constructive
routes from a simple extension, bounded searches, and the fullness
certificate over imaginary quadratic rings; nothing there is ever reported
as failing without a certificate.
"""

import math
import random
from dataclasses import dataclass
from functools import partial
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, computed_field

from utils.parallel import map_chunks
from utils.parsing import parse_element
from utils.search import box_order, value_order
from utils.streaming import stream_status

from .config import SearchSettings, load_settings
from .errors import BudgetExhaustedError, InputError, UndecidedError, UnsupportedRingError
from .extension_service import (
    ExtWitness,
    FullnessCertificate,
    build_witness,
    decide_nonfull_quadratic,
    finite_simple_witness,
    nonfull_decompose,
    nonfull_extension,
    prescribed_extension,
    simple_extension_box_quadratic,
    simple_extension_snf,
)
from .finite_service import FiniteRing, finite_ring
from .matrix_service import Mat2, diag2, is_unimodular_mat, kernel_free_certificate, kernel_gens, reduce_mod
from .ring_service import INTEGERS, QUADRATIC, RElem, RingSpec, divides, is_unimodular_tuple, unimodular_certificate

STATEMENTS = tuple(range(1, 11))

# 1<=>2<=>3<=>4 => 5<=>6<=>7<=>8 => 9 => 10
CHAIN_IMPLICATIONS = (
    (1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3),
    (4, 5),
    (5, 6), (6, 5), (6, 7), (7, 6), (7, 8), (8, 7),
    (8, 9), (9, 10),
)
# holds for reduced rings only
REDUCED_IMPLICATION = (10, 9)

_QUADRATIC_EQUATION_RADIUS = 1

# R^3 scans stay interactive up to this order
FINITE_STATEMENT_ORDER_LIMIT = 64

Status = Literal["holds", "fails", "unknown"]


class StatementStatus(BaseModel):
    k: int
    status: Status
    witness: Optional[dict] = None
    certificate: Optional[dict] = None
    route: str = ""
    budget: Optional[int] = None


class StatementReport(BaseModel):
    matrix: List[List[str]]
    ring: str
    delta: str
    budget: int
    statements: List[StatementStatus]
    chain_ok: bool

    def status_of(self, k: int) -> StatementStatus:
        return next(s for s in self.statements if s.k == k)


class ChainViolation(BaseModel):
    matrix: str
    premise: int
    conclusion: int


class ChainReport(BaseModel):
    ring: str
    matrices: int
    reduced: bool
    holds: Dict[int, int]
    implications: List[Tuple[int, int]]
    violations: List[ChainViolation] = Field(default_factory=list)
    ten_without_nine: int = 0

    @computed_field
    @property
    def chain_ok(self) -> bool:
        return not self.violations


# witness constructions shared by every ring family


@dataclass(frozen=True)
class Diagonalization:
    M: Mat2
    N: Mat2
    result: Mat2


def diagonalize_from_witness(A: Mat2, e: RElem, f: RElem, s: RElem, t: RElem) -> Diagonalization:
    """
    M in SL2 with first row [e f], N in SL2 with first column [s t]^T; then
    M A N has (1,1) entry 1 and is cleared to Diag(1, det A).
    """
    row = unimodular_certificate([e, f])
    col = unimodular_certificate([s, t])
    if row is None or col is None:
        raise InputError("(e, f) and (s, t) must be unimodular")
    M = Mat2(e, f, -row[1], row[0])
    N = Mat2(s, -col[1], t, col[0])
    P = M * A * N
    if P.a != 1:
        raise InputError("witness does not give a unit corner")
    ring = A.ring
    one, zero = ring.one(), ring.zero()
    M = Mat2(one, zero, -P.c, one) * M
    N = N * Mat2(one, -P.b, zero, one)
    result = M * A * N
    if result != diag2(one, A.det()):
        raise InputError("diagonalization did not reach Diag(1, det A)")
    return Diagonalization(M, N, result)


def zero_det_pair_from_witness(A: Mat2, x: RElem, y: RElem, z: RElem, w: RElem) -> Tuple[Mat2, Mat2]:
    """
    B = [[-w, z], [y, -x]] and C = A + delta*B; det C expands to
    delta(1 - ax - by - cz - dw) + delta^2 (xw - zy), which vanishes on a
    statement-5 witness.
    """
    delta = A.det()
    B = Mat2(-w, z, y, -x)
    C = A + B.scale(delta)
    if not (B.det().is_zero and C.det().is_zero):
        raise InputError("(x, y, z, w) is not a statement-5 witness")
    return B, C


def _elements(values: Sequence[RElem]) -> List[str]:
    return [str(v) for v in values]


def _pairing(A: Mat2, x, y, z, w) -> RElem:
    return A.a * x + A.b * y + A.c * z + A.d * w


def _holds(k: int, witness: dict, route: str, budget: Optional[int] = None) -> StatementStatus:
    return StatementStatus(k=k, status="holds", witness=witness, route=route, budget=budget)


def _fails(k: int, route: str, certificate: Optional[dict] = None) -> StatementStatus:
    return StatementStatus(k=k, status="fails", certificate=certificate, route=route)


def _unknown(k: int, route: str, budget: Optional[int] = None) -> StatementStatus:
    return StatementStatus(k=k, status="unknown", route=route, budget=budget)


def _one_payload(d: Diagonalization) -> dict:
    return {"M": d.M.to_payload(), "N": d.N.to_payload(), "product": d.result.to_payload()}


def _three_payload(A: Mat2, e, f, s, t) -> dict:
    payload = {
        "e": str(e),
        "f": str(f),
        "s": str(s),
        "t": str(t),
        "pair": _elements([A.a * e + A.c * f, A.b * e + A.d * f]),
    }
    if A.det().is_zero:
        payload["kernel"] = kernel_free_certificate(A, e, f, s, t).to_payload()
    return payload


def _xyzw_payload(x, y, z, w) -> dict:
    return {"x": str(x), "y": str(y), "z": str(z), "w": str(w)}


def _four_payload(l, m, n, q) -> dict:
    payload = _xyzw_payload(l * n, l * q, m * n, m * q)
    payload.update({"col": _elements([l, m]), "row": _elements([n, q])})
    return payload


def _pair_payload(B: Mat2, C: Mat2) -> dict:
    return {"B": B.to_payload(), "C": C.to_payload()}


# finite rings


class FiniteStatements:
    """Exhaustive index-level deciders; each returns a witness tuple or None."""

    def __init__(self, T: FiniteRing):
        self.T = T

    def _mul2(self, X, Y):
        mul, add = self.T.mul, self.T.add
        return (
            add[mul[X[0]][Y[0]]][mul[X[1]][Y[2]]],
            add[mul[X[0]][Y[1]]][mul[X[1]][Y[3]]],
            add[mul[X[2]][Y[0]]][mul[X[3]][Y[2]]],
            add[mul[X[2]][Y[1]]][mul[X[3]][Y[3]]],
        )

    def one(self, a, b, c, d):
        """
        (M, N) in SL2 x SL2 with M A N == Diag(1, det A), as two index 4-tuples.
        M runs over completions of unimodular rows [e f], N over completions
        of unimodular columns [s t]; the (1,1) corner is cleared and the
        product compared entrywise.
        """
        T = self.T
        mul, add, sub, neg, solve = T.mul, T.add, T.sub, T.neg, T.solve
        A = (a, b, c, d)
        target = (T.one, T.zero, T.zero, T.det(a, b, c, d))
        r = range(T.order)
        for e in r:
            for f in r:
                if not T.is_um(e, f):
                    continue
                g, h = T.combination([e, f])
                M = (e, f, neg[h], g)
                p, q = add[mul[a][e]][mul[c][f]], add[mul[b][e]][mul[d][f]]
                for s in r:
                    for t in solve[q][sub[T.one][mul[s][p]]]:
                        u, v = T.combination([s, t])
                        N = (s, neg[v], t, u)
                        P = self._mul2(self._mul2(M, A), N)
                        M1 = self._mul2((T.one, T.zero, neg[P[2]], T.one), M)
                        N1 = self._mul2(N, (T.one, neg[P[1]], T.zero, T.one))
                        if self._mul2(self._mul2(M1, A), N1) == target:
                            return M1, N1
        return None

    def three(self, a, b, c, d):
        T = self.T
        mul, add = T.mul, T.add
        for e in range(T.order):
            for f in range(T.order):
                p = add[mul[a][e]][mul[c][f]]
                q = add[mul[b][e]][mul[d][f]]
                if T.is_um(p, q):
                    s, t = T.combination([p, q])
                    return (e, f, s, t)
        return None

    def two(self, a, b, c, d):
        return finite_simple_witness(self.T, a, b, c, d)

    def four(self, a, b, c, d):
        T = self.T
        mul, add, sub, solve = T.mul, T.add, T.sub, T.solve
        r = range(T.order)
        for l in r:
            al, bl = mul[a][l], mul[b][l]
            for m in r:
                cm, dm = mul[c][m], mul[d][m]
                coef = add[bl][dm]
                for n in r:
                    rhs = sub[sub[T.one][mul[al][n]]][mul[cm][n]]
                    options = solve[coef][rhs]
                    if options:
                        return (l, m, n, options[0])
        return None

    def five(self, a, b, c, d):
        T = self.T
        mul, add, sub, solve = T.mul, T.add, T.sub, T.solve
        r = range(T.order)
        for x in r:
            ax = sub[T.one][mul[a][x]]
            for y in r:
                axy = sub[ax][mul[b][y]]
                for z in r:
                    yz = mul[y][z]
                    for w in solve[d][sub[axy][mul[c][z]]]:
                        if mul[x][w] == yz:
                            return (x, y, z, w)
        return None

    def _zero_det_pairs(self, a, b, c, d, unimodular: bool):
        T = self.T
        mul, add, solve = T.mul, T.add, T.solve
        delta = T.det(a, b, c, d)
        r = range(T.order)
        for p in r:
            cp = add[a][mul[delta][p]]
            for q in r:
                cq = add[b][mul[delta][q]]
                for rr in r:
                    cr = add[c][mul[delta][rr]]
                    for s in solve[p][mul[q][rr]]:
                        cs = add[d][mul[delta][s]]
                        if mul[cp][cs] != mul[cq][cr]:
                            continue
                        if unimodular and not (T.is_um(p, q, rr, s) and T.is_um(cp, cq, cr, cs)):
                            continue
                        return (p, q, rr, s)
        return None

    def six(self, a, b, c, d):
        return self._zero_det_pairs(a, b, c, d, unimodular=True)

    def eight(self, a, b, c, d):
        return self._zero_det_pairs(a, b, c, d, unimodular=False)

    def _congruent_zero_det(self, a, b, c, d, unimodular: bool):
        T = self.T
        mul, add, solve = T.mul, T.add, T.solve
        delta = T.det(a, b, c, d)
        ideal = T.principal[delta]
        members = sorted(set(mul[delta]))
        for u in members:
            c1 = add[a][u]
            for v in members:
                c2 = add[b][v]
                for x in members:
                    c3 = add[c][x]
                    for c4 in solve[c1][mul[c2][c3]]:
                        if not T.contains(ideal, T.sub[c4][d]):
                            continue
                        if unimodular and not T.is_um(c1, c2, c3, c4):
                            continue
                        return (c1, c2, c3, c4)
        return None

    def seven(self, a, b, c, d):
        return self._congruent_zero_det(a, b, c, d, unimodular=True)

    def ten(self, a, b, c, d):
        return self._congruent_zero_det(a, b, c, d, unimodular=False)

    def nine(self, a, b, c, d):
        T = self.T
        mul, add, sub, solve = T.mul, T.add, T.sub, T.solve
        delta = T.det(a, b, c, d)
        r = range(T.order)
        for x in r:
            coef = sub[d][mul[delta][x]]
            ax = sub[T.one][mul[a][x]]
            for y in r:
                axy = sub[ax][mul[b][y]]
                dy = mul[delta][y]
                for z in r:
                    rhs = sub[sub[axy][mul[c][z]]][mul[dy][z]]
                    options = solve[coef][rhs]
                    if options:
                        return (x, y, z, options[0])
        return None

    def verdicts(self, a, b, c, d) -> Dict[int, bool]:
        """Truth values of all ten statements, each from its own search."""
        found = {
            1: self.one(a, b, c, d),
            2: self.two(a, b, c, d),
            3: self.three(a, b, c, d),
            4: self.four(a, b, c, d),
            5: self.five(a, b, c, d),
            6: self.six(a, b, c, d),
            7: self.seven(a, b, c, d),
            8: self.eight(a, b, c, d),
            9: self.nine(a, b, c, d),
            10: self.ten(a, b, c, d),
        }
        return {k: v is not None for k, v in found.items()}


def _finite_status(A: Mat2, k: int) -> StatementStatus:
    T = finite_ring(A.ring)
    kernel = FiniteStatements(T)
    idx = tuple(T.to_index(x) for x in A.entries)
    lift = T.lift
    route = "exhaustive"

    if k == 1:
        found = kernel.one(*idx)
        if found is None:
            return _fails(1, route)
        M, N = (Mat2(*(lift(i) for i in X)) for X in found)
        return _holds(1, _one_payload(Diagonalization(M, N, M * A * N)), route)
    if k == 3:
        found = kernel.three(*idx)
        if found is None:
            return _fails(3, route)
        e, f, s, t = (lift(i) for i in found)
        return _holds(3, _three_payload(A, e, f, s, t), route)
    if k == 2:
        found = kernel.two(*idx)
        if found is None:
            return _fails(2, route)
        return _holds(2, build_witness(A, *(lift(i) for i in found), route=route).to_payload(), route)
    if k == 4:
        found = kernel.four(*idx)
        return _fails(4, route) if found is None else _holds(4, _four_payload(*(lift(i) for i in found)), route)
    if k in (5, 9):
        found = kernel.five(*idx) if k == 5 else kernel.nine(*idx)
        return _fails(k, route) if found is None else _holds(k, _xyzw_payload(*(lift(i) for i in found)), route)
    if k in (6, 8):
        found = kernel.six(*idx) if k == 6 else kernel.eight(*idx)
        if found is None:
            return _fails(k, route)
        B = Mat2(*(lift(i) for i in found))
        return _holds(k, _pair_payload(B, A + B.scale(A.det())), route)
    if k in (7, 10):
        found = kernel.seven(*idx) if k == 7 else kernel.ten(*idx)
        if found is None:
            return _fails(k, route)
        return _holds(k, {"C": Mat2(*(lift(i) for i in found)).to_payload()}, route)
    raise InputError(f"statement index must be 1..10, got {k}")


# infinite rings


def _coprime_lift(u: int, v: int, modulus: int, budget: int) -> Tuple[int, int]:
    """Shift u by multiples of modulus until gcd(u, v) == 1."""
    if v == 0:
        v = modulus
    for k in value_order(budget):
        if math.gcd(u + k * modulus, v) == 1:
            return u + k * modulus, v
    raise BudgetExhaustedError(f"no coprime lift within {budget}", budget=budget)


def residue_zero_det(A: Mat2, cap: int, budget: int = 200) -> Optional[Mat2]:
    """
    C over Z with C == A mod det(A), det C = 0 and C unimodular, from a
    non-full factorization of A modulo |det A| (2 <= |det A| <= cap).
    """
    n = abs(A.det().value)
    if not 2 <= n <= cap:
        return None
    witness = nonfull_decompose(reduce_mod(A, n))
    l, m = (x.value for x in witness.col)
    p, q = (x.value for x in witness.row)
    l, m = _coprime_lift(l, m, n, budget)
    p, q = _coprime_lift(p, q, n, budget)
    C = Mat2.of(A.ring, l * p, l * q, m * p, m * q)
    if any((x.value - y.value) % n for x, y in zip(C.entries, A.entries)):
        raise InputError("residue lift lost the congruence")
    return C


def _integer_four(A: Mat2, bound: int):
    a, b, c, d = (x.value for x in A.entries)
    for l, m, n in box_order(3, bound):
        coef = b * l + d * m
        rhs = 1 - a * l * n - c * m * n
        if coef == 0:
            if rhs == 0:
                return (l, m, n, 0)
            continue
        if rhs % coef == 0:
            return (l, m, n, rhs // coef)
    return None


def _integer_five_nine(A: Mat2, bound: int, nine: bool):
    a, b, c, d = (x.value for x in A.entries)
    delta = a * d - b * c
    for x, y, z in box_order(3, bound):
        coef = d - delta * x if nine else d
        rhs = 1 - a * x - b * y - c * z - (delta * y * z if nine else 0)
        if coef == 0:
            candidates = [0] if rhs == 0 else []
        else:
            candidates = [rhs // coef] if rhs % coef == 0 else []
        for w in candidates:
            if nine or x * w == y * z:
                return (x, y, z, w)
    return None


def _coordinate_elements(spec: RingSpec, radius: int) -> List[RElem]:
    return [RElem(spec, v) for v in box_order(2, radius)]


def _quadratic_five_nine(A: Mat2, nine: bool):
    spec = A.ring
    delta = A.det()
    elements = _coordinate_elements(spec, _QUADRATIC_EQUATION_RADIUS)
    for x in elements:
        coef = A.d - delta * x if nine else A.d
        for y in elements:
            for z in elements:
                rhs = 1 - A.a * x - A.b * y - A.c * z - (delta * y * z if nine else 0)
                w = divides(coef, rhs)
                if w is None:
                    continue
                if nine or (x * w - y * z).is_zero:
                    return (x, y, z, w)
    return None


class _InfiniteDecider:
    """Shares the simple extension and the statement-5 witness across the ten statements."""

    def __init__(self, A: Mat2, settings: SearchSettings):
        self.A = A
        self.settings = settings
        self.ring = A.ring
        self.delta = A.det()
        self._ext: Optional[ExtWitness] = None
        self._ext_note: Optional[Tuple[str, Optional[dict]]] = None
        self._five = None
        self._five_done = False
        self._five_route = ""

    @property
    def budget(self) -> int:
        return self.settings.box_bound

    def extension(self) -> Optional[ExtWitness]:
        """
        A simple extension, or None with the reason stored in _ext_note as
        ("fails", certificate) or ("unknown", None).
        """
        if self._ext is not None or self._ext_note is not None:
            return self._ext
        A, ring = self.A, self.ring
        ext = None
        if ring.kind == INTEGERS:
            ext = simple_extension_snf(A)
        else:
            try:
                ext = prescribed_extension(A)
            except UndecidedError:
                ext = None
            if ext is None and ring.kind == QUADRATIC:
                if ring.D < 0 and self.delta.is_zero:
                    cert: FullnessCertificate = decide_nonfull_quadratic(A)
                    if cert.full:
                        self._ext_note = ("fails", {"fullness": cert.to_payload()})
                        return None
                    ext = nonfull_extension(A, cert.witness)
                else:
                    ext = simple_extension_box_quadratic(A, self.settings.quadratic_box)
        if ext is None:
            self._ext_note = ("unknown", None)
        self._ext = ext
        return ext

    def five(self):
        """Statement-5 witness (x, y, z, w) or None."""
        if self._five_done:
            return self._five
        A = self.A
        found = None
        if self.ring.kind == INTEGERS:
            found = _integer_five_nine(A, self.budget, nine=False)
            if found is not None:
                found = tuple(self.ring.elem(v) for v in found)
                self._five_route = "box"
        elif self.ring.kind == QUADRATIC:
            found = _quadratic_five_nine(A, nine=False)
            self._five_route = "box"
        if found is None:
            ext = self.extension()
            if ext is not None:
                e, f, s, t = ext.e, ext.f, ext.s, ext.t
                found = (e * s, e * t, f * s, f * t)
                self._five_route = "from-extension"
        self._five = found
        self._five_done = True
        return found

    def _missing_extension(self, k: int) -> StatementStatus:
        kind, certificate = self._ext_note or ("unknown", None)
        if kind == "fails":
            return _fails(k, "fullness-certificate", certificate)
        return _unknown(k, "no-extension-found", self.budget)

    def decide(self, k: int) -> StatementStatus:
        A, delta = self.A, self.delta
        if k in (1, 2, 3):
            ext = self.extension()
            if ext is None:
                return self._missing_extension(k)
            if k == 1:
                return _holds(1, _one_payload(diagonalize_from_witness(A, ext.e, ext.f, ext.s, ext.t)), ext.route)
            if k == 2:
                return _holds(2, ext.to_payload(), ext.route)
            return _holds(3, _three_payload(A, ext.e, ext.f, ext.s, ext.t), ext.route)

        if k == 4:
            if self.ring.kind == INTEGERS:
                found = _integer_four(A, self.budget)
                if found is not None:
                    return _holds(4, _four_payload(*(self.ring.elem(v) for v in found)), "box", self.budget)
            ext = self.extension()
            if ext is None:
                return self._missing_extension(4)
            return _holds(4, _four_payload(ext.e, ext.f, ext.s, ext.t), "from-extension")

        if k == 9:
            found = None
            if self.ring.kind == INTEGERS:
                found = _integer_five_nine(A, self.budget, nine=True)
                if found is not None:
                    return _holds(9, _xyzw_payload(*found), "box", self.budget)
            elif self.ring.kind == QUADRATIC:
                found = _quadratic_five_nine(A, nine=True)
                if found is not None:
                    return _holds(9, _xyzw_payload(*found), "box")
            five = self.five()
            if five is None:
                return _unknown(9, "no-witness-found", self.budget)
            # xw - yz == 0 turns the statement-5 equation into statement 9
            return _holds(9, _xyzw_payload(*five), self._five_route)

        if delta.is_zero and k in (6, 7, 8, 10):
            if k in (6, 8):
                return _holds(k, _pair_payload(A, A), "det-zero")
            return _holds(k, {"C": A.to_payload()}, "det-zero")

        if k == 5:
            five = self.five()
            if five is None:
                return _unknown(5, "no-witness-found", self.budget)
            return _holds(5, _xyzw_payload(*five), self._five_route)

        if k in (6, 8):
            five = self.five()
            if five is None:
                return _unknown(k, "no-witness-found", self.budget)
            B, C = zero_det_pair_from_witness(A, *five)
            return _holds(k, _pair_payload(B, C), "from-statement-5")

        if k in (7, 10):
            if self.ring.kind == INTEGERS:
                if abs(delta.value) == 1:
                    return _holds(k, {"C": Mat2.of(self.ring, 1, 0, 0, 0).to_payload()}, "unit-det")
                try:
                    C = residue_zero_det(A, self.settings.residue_cap, self.settings.witness_budget)
                except BudgetExhaustedError:
                    C = None
                if C is not None:
                    return _holds(k, {"C": C.to_payload()}, "residue")
            five = self.five()
            if five is None:
                return _unknown(k, "no-witness-found", self.budget)
            _, C = zero_det_pair_from_witness(A, *five)
            return _holds(k, {"C": C.to_payload()}, "from-statement-5")
        raise InputError(f"statement index must be 1..10, got {k}")


# public entry points


def _validate(A: Mat2) -> None:
    if not is_unimodular_mat(A):
        raise InputError(f"matrix {A} is not unimodular over {A.ring.label}")


def check_statement(A: Mat2, k: int, settings: Optional[SearchSettings] = None) -> StatementStatus:
    """
    Decide statement k for a unimodular matrix.

    Raises:
        InputError: A is not unimodular or k is out of range
    """
    if k not in STATEMENTS:
        raise InputError(f"statement index must be 1..10, got {k}")
    _validate(A)
    settings = settings or load_settings()
    if A.ring.is_finite:
        if A.ring.order > FINITE_STATEMENT_ORDER_LIMIT:
            raise UnsupportedRingError(f"{A.ring.label} is too large for exhaustive decisions")
        return _finite_status(A, k)
    return _InfiniteDecider(A, settings).decide(k)


def statement_five_witness(
    A: Mat2, settings: Optional[SearchSettings] = None
) -> Optional[Tuple[RElem, RElem, RElem, RElem]]:
    """(x, y, z, w) with ax+by+cz+dw = 1 and xw = yz, or None."""
    _validate(A)
    if A.ring.is_finite:
        T = finite_ring(A.ring)
        found = FiniteStatements(T).five(*(T.to_index(x) for x in A.entries))
        return None if found is None else tuple(T.lift(i) for i in found)
    return _InfiniteDecider(A, settings or load_settings()).five()


def chain_consistent(statuses: Dict[int, str], reduced: bool) -> bool:
    implications = CHAIN_IMPLICATIONS + ((REDUCED_IMPLICATION,) if reduced else ())
    return not any(statuses.get(p) == "holds" and statuses.get(q) == "fails" for p, q in implications)


def statement_report(
    A: Mat2, settings: Optional[SearchSettings] = None, statements: Sequence[int] = STATEMENTS
) -> StatementReport:
    _validate(A)
    settings = settings or load_settings()
    if A.ring.is_finite:
        results = [check_statement(A, k, settings) for k in statements]
        reduced = finite_ring(A.ring).is_reduced
    else:
        decider = _InfiniteDecider(A, settings)
        results = [decider.decide(k) for k in statements]
        reduced = A.ring.is_domain
    return StatementReport(
        matrix=A.to_payload(),
        ring=A.ring.label,
        delta=str(A.det()),
        budget=settings.box_bound,
        statements=results,
        chain_ok=chain_consistent({s.k: s.status for s in results}, reduced),
    )


# revalidation through independent arithmetic


def _parse(ring: RingSpec, text: str) -> RElem:
    return parse_element(ring, text)


def _parse_mat(ring: RingSpec, rows) -> Mat2:
    return Mat2.from_rows(ring, [[_parse(ring, str(x)) for x in row] for row in rows])


def _congruent(C: Mat2, A: Mat2) -> bool:
    delta = A.det()
    if delta.is_zero:
        return C == A
    if A.ring.is_finite:
        T = finite_ring(A.ring)
        ideal = T.principal[T.to_index(delta)]
        return all(T.contains(ideal, T.to_index(x - y)) for x, y in zip(C.entries, A.entries))
    return all(divides(delta, x - y) is not None for x, y in zip(C.entries, A.entries))


def revalidate_status(A: Mat2, status: StatementStatus) -> bool:
    """Re-parse a holds-witness and check the defining condition of its statement."""
    if status.status != "holds":
        return True
    ring, w, k = A.ring, status.witness or {}, status.k
    delta = A.det()
    if k == 1:
        M, N, P = (_parse_mat(ring, w[key]) for key in ("M", "N", "product"))
        return M.det() == 1 and N.det() == 1 and M * A * N == P == diag2(ring.one(), delta)
    if k == 2:
        e, f, s, t = (_parse(ring, w[key]) for key in ("e", "f", "s", "t"))
        return _pairing(A, e * s, e * t, f * s, f * t) == 1
    if k == 3:
        e, f, s, t = (_parse(ring, w[key]) for key in ("e", "f", "s", "t"))
        if s * (A.a * e + A.c * f) + t * (A.b * e + A.d * f) != 1:
            return False
        if "kernel" in w:
            p, q = (_parse(ring, x) for x in w["kernel"]["vector"])
            u, v = (_parse(ring, x) for x in w["kernel"]["coefficients"])
            return (p, q) == kernel_gens(A).combine(e, f) and u * p + v * q == 1
        return True
    if k in (4, 5, 9):
        x, y, z, w_ = (_parse(ring, w[key]) for key in ("x", "y", "z", "w"))
        minor = x * w_ - y * z
        if k == 9:
            return _pairing(A, x, y, z, w_) - delta * minor == 1
        if _pairing(A, x, y, z, w_) != 1 or not minor.is_zero:
            return False
        if k == 4:
            l, m = (_parse(ring, v) for v in w["col"])
            n, q = (_parse(ring, v) for v in w["row"])
            return Mat2(l * n, l * q, m * n, m * q) == Mat2(x, y, z, w_)
        return True
    if k in (6, 8):
        B, C = _parse_mat(ring, w["B"]), _parse_mat(ring, w["C"])
        ok = B.det().is_zero and C.det().is_zero and C == A + B.scale(delta)
        if k == 6:
            ok = ok and is_unimodular_tuple(list(B.entries)) and is_unimodular_tuple(list(C.entries))
        return ok
    if k in (7, 10):
        C = _parse_mat(ring, w["C"])
        ok = C.det().is_zero and _congruent(C, A)
        if k == 7:
            ok = ok and is_unimodular_tuple(list(C.entries))
        return ok
    return False


# chain verification over finite rings


def _chain_chunk(spec: RingSpec, reduced: bool, chunk: List[Tuple[int, int, int, int]]):
    T = finite_ring(spec)
    kernel = FiniteStatements(T)
    holds = {k: 0 for k in STATEMENTS}
    violations = []
    ten_without_nine = 0
    for idx in chunk:
        verdict = kernel.verdicts(*idx)
        for k, value in verdict.items():
            holds[k] += value
        for p, q in CHAIN_IMPLICATIONS + ((REDUCED_IMPLICATION,) if reduced else ()):
            if verdict[p] and not verdict[q]:
                violations.append((idx, p, q))
        if verdict[10] and not verdict[9]:
            ten_without_nine += 1
    return holds, violations, ten_without_nine


def verify_th8_chain(
    spec: RingSpec,
    sample: Optional[int] = None,
    workers: int = 1,
    seed: int = 0,
    verbose: bool = False,
) -> ChainReport:
    """
    Decide all ten statements for every unimodular matrix of a finite ring
    (or a seeded sample of `sample` of them) and check each implication of
    the chain. 10 => 9 is asserted only for reduced rings; otherwise the
    count of matrices with 10 but not 9 is reported.
    """
    if not spec.is_finite:
        raise UnsupportedRingError("chain verification needs a finite ring")
    T = finite_ring(spec)
    matrices = list(T.unimodular_matrices())
    if sample is not None and sample < len(matrices):
        matrices = random.Random(seed).sample(matrices, sample)
    if verbose:
        stream_status(f"chain over {spec.label}: {len(matrices)} matrices, {workers} worker(s)")

    reduced = T.is_reduced
    parts = map_chunks(partial(_chain_chunk, spec, reduced), matrices, workers)
    holds = {k: 0 for k in STATEMENTS}
    violations: List[ChainViolation] = []
    ten_without_nine = 0
    for part_holds, part_violations, part_ten in parts:
        for k in STATEMENTS:
            holds[k] += part_holds[k]
        ten_without_nine += part_ten
        for idx, p, q in part_violations:
            matrix = Mat2(*(T.lift(i) for i in idx))
            violations.append(ChainViolation(matrix=str(matrix), premise=p, conclusion=q))

    implications = list(CHAIN_IMPLICATIONS) + ([REDUCED_IMPLICATION] if reduced else [])
    report = ChainReport(
        ring=spec.label,
        matrices=len(matrices),
        reduced=reduced,
        holds=holds,
        implications=implications,
        violations=violations,
        ten_without_nine=ten_without_nine,
    )
    if verbose:
        level = "ok" if report.chain_ok else "error"
        stream_status(f"{spec.label}: {len(violations)} violation(s)", level)
    return report


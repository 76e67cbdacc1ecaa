"""
Constructions of SL3-extensions of unimodular 2x2 matrices.

An extension of A = [[a, b], [c, d]] is a determinant-one 3x3 matrix with A
in its top-left corner. Every construction here borders A as

    [[ a,  b,  f],
     [ c,  d, -e],
     [-t,  s,  v]]

and is simple when v == 0, in which case the determinant expands to
a(es) + b(et) + c(fs) + d(ft).
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy import divisors

from .errors import BudgetExhaustedError, InputError, UndecidedError, UnsupportedRingError
from .finite_service import FiniteRing, finite_ring
from .matrix_service import (
    Mat2,
    Mat3,
    det3,
    diag2,
    inverse2,
    is_unimodular_mat,
    reduce_mod,
    sigma,
)
from .ring_service import (
    INTEGERS,
    MOD_N,
    QUADRATIC,
    RElem,
    RingSpec,
    bezout_tuple,
    divides,
    integer_bezout,
    inverse,
    irreducible_in_quadratic,
    is_unimodular_tuple,
    is_unit,
    norm,
    quadratic_elements_of_norm_at_most,
    quadratic_ideal_index,
    unimodular_certificate,
)
from utils.parsing import parse_element_rows
from utils.search import box_order, scan_key, value_order


@dataclass(frozen=True)
class ExtWitness:
    A: Mat2
    e: RElem
    f: RElem
    s: RElem
    t: RElem
    aplus: Mat3
    simple: bool
    route: str = ""

    @property
    def nu(self) -> RElem:
        return self.A.det() + self.e * self.s + self.f * self.t

    def is_valid(self) -> bool:
        if det3(self.aplus) != 1:
            return False
        rows = self.aplus.rows
        if Mat2(rows[0][0], rows[0][1], rows[1][0], rows[1][1]) != self.A:
            return False
        if self.simple:
            return rows[2][2].is_zero and simple_det_value(self.A, self.e, self.f, self.s, self.t) == 1
        return True

    def to_payload(self) -> dict:
        return {
            "matrix": self.A.to_payload(),
            "e": str(self.e),
            "f": str(self.f),
            "s": str(self.s),
            "t": str(self.t),
            "aplus": self.aplus.to_payload(),
            "det3": str(det3(self.aplus)),
            "simple": self.simple,
            "nu": str(self.nu) if self.simple else None,
            "route": self.route,
        }


@dataclass(frozen=True)
class NonFullWitness:
    """A == [l, m]^T [n, q]"""

    col: Tuple[RElem, RElem]
    row: Tuple[RElem, RElem]

    def product(self) -> Mat2:
        (l, m), (n, q) = self.col, self.row
        return Mat2(l * n, l * q, m * n, m * q)

    def to_payload(self) -> dict:
        return {"col": [str(x) for x in self.col], "row": [str(x) for x in self.row]}


@dataclass(frozen=True)
class SNF2:
    M: Mat2
    N: Mat2
    d1: RElem
    d2: RElem

    def to_payload(self) -> dict:
        return {"M": self.M.to_payload(), "N": self.N.to_payload(), "d1": str(self.d1), "d2": str(self.d2)}


@dataclass(frozen=True)
class LiftSequence:
    t: RElem
    steps: Tuple[Mat2, ...]
    exponents: Tuple[int, ...]

    def holds(self) -> bool:
        """Congruence and determinant invariants of every step."""
        t = self.t.value
        for n, B in enumerate(self.steps):
            if B.det().value % t ** self.exponents[n]:
                return False
            if n:
                modulus = t ** self.exponents[n - 1]
                prev = self.steps[n - 1]
                if any((x.value - y.value) % modulus for x, y in zip(B.entries, prev.entries)):
                    return False
        return True

    def to_payload(self) -> dict:
        return {
            "t": str(self.t),
            "steps": [
                {"exponent": e, "matrix": B.to_payload(), "det": str(B.det())}
                for e, B in zip(self.exponents, self.steps)
            ],
        }


@dataclass(frozen=True)
class NuProgression:
    """nu_A == base + step*Z for a diagonal matrix."""

    base: int
    step: int

    @property
    def modulus(self) -> int:
        return abs(self.step)

    @property
    def residue(self) -> int:
        return self.base % self.modulus if self.modulus else self.base

    def contains(self, value: int) -> bool:
        if self.modulus == 0:
            return value == self.base
        return (value - self.base) % self.modulus == 0

    def describe(self) -> str:
        if self.modulus == 0:
            return f"{{{self.base}}}"
        if self.residue == 0:
            return f"{self.modulus}Z"
        return f"{self.residue}+{self.modulus}Z"


@dataclass
class NuSample:
    bound: int
    values: set = field(default_factory=set)
    witnesses: Dict[int, Tuple[int, int, int, int]] = field(default_factory=dict)
    progression: Optional[NuProgression] = None

    def to_payload(self) -> dict:
        payload = {
            "bound": self.bound,
            "values": [str(v) for v in sorted(self.values)],
            "witnesses": {str(v): [str(x) for x in self.witnesses[v]] for v in sorted(self.values)},
        }
        if self.progression is not None:
            payload["progression"] = {
                "base": str(self.progression.base),
                "step": str(self.progression.step),
                "set": self.progression.describe(),
            }
        return payload


@dataclass(frozen=True)
class PellResult:
    e: RElem
    f: RElem
    unit: RElem
    witness: ExtWitness


@dataclass(frozen=True)
class FullnessCertificate:
    """Outcome of the non-full decision for a det-0 matrix over Q[D], D < 0."""

    matrix: Mat2
    full: bool
    witness: Optional[NonFullWitness]
    divisor_norm_bound: int
    candidates_tried: int

    def to_payload(self) -> dict:
        return {
            "matrix": self.matrix.to_payload(),
            "full": self.full,
            "witness": self.witness.to_payload() if self.witness else None,
            "divisor_norm_bound": str(self.divisor_norm_bound),
            "candidates_tried": self.candidates_tried,
        }


@dataclass(frozen=True)
class Ex11Certificate:
    k: int
    q: int
    matrix: Mat2
    det_zero: bool
    unimodular: bool
    two_irreducible: bool
    two_divides_neither: bool
    fullness: FullnessCertificate
    box: int
    box_witness: Optional[Tuple[RElem, RElem]]

    @property
    def valid(self) -> bool:
        return (
            self.det_zero
            and self.unimodular
            and self.two_irreducible
            and self.two_divides_neither
            and self.fullness.full
            and self.box_witness is None
        )

    def to_payload(self) -> dict:
        return {
            "k": self.k,
            "q": str(self.q),
            "matrix": self.matrix.to_payload(),
            "det_zero": self.det_zero,
            "unimodular": self.unimodular,
            "two_irreducible": self.two_irreducible,
            "two_divides_neither": self.two_divides_neither,
            "fullness": self.fullness.to_payload(),
            "box": self.box,
            "box_witness": None if self.box_witness is None else [str(x) for x in self.box_witness],
            "valid": self.valid,
            "conclusion": (
                "B is full with det 0, so it has no simple extension; "
                "[[2k+1, 1-x], [1+x, 2]] over Z[x] is therefore not extendable"
            ),
        }


def simple_det_value(A: Mat2, e: RElem, f: RElem, s: RElem, t: RElem) -> RElem:
    return A.a * (e * s) + A.b * (e * t) + A.c * (f * s) + A.d * (f * t)


def assemble_extension(A: Mat2, e, f, s, t, v=0) -> Mat3:
    ring = A.ring
    e, f, s, t, v = (ring.elem(x) for x in (e, f, s, t, v))
    return Mat3(((A.a, A.b, f), (A.c, A.d, -e), (-t, s, v)))


def witness_from_extension(A: Mat2, aplus: Mat3, route: str) -> ExtWitness:
    rows = aplus.rows
    f, e = rows[0][2], -rows[1][2]
    t, s = -rows[2][0], rows[2][1]
    return ExtWitness(A, e, f, s, t, aplus, rows[2][2].is_zero, route)


def build_witness(A: Mat2, e, f, s, t, route: str, v=0) -> ExtWitness:
    aplus = assemble_extension(A, e, f, s, t, v)
    witness = witness_from_extension(A, aplus, route)
    if not witness.is_valid():
        raise InputError(f"{route}: assembled matrix is not an extension of {A}")
    return witness


def _require_unimodular(A: Mat2) -> None:
    if not is_unimodular_mat(A):
        raise InputError(f"matrix {A} is not unimodular over {A.ring.label}")


# Smith form


def _integer_smith(a: int, b: int, c: int, d: int):
    S = [[a, b], [c, d]]
    M = [[1, 0], [0, 1]]
    N = [[1, 0], [0, 1]]

    def swap_rows():
        S[0], S[1] = S[1], S[0]
        M[0], M[1] = M[1], M[0]

    def swap_cols():
        for X in (S, N):
            X[0][0], X[0][1] = X[0][1], X[0][0]
            X[1][0], X[1][1] = X[1][1], X[1][0]

    def row_add(dst, src, k):
        for X in (S, M):
            X[dst] = [x + k * y for x, y in zip(X[dst], X[src])]

    def col_add(dst, src, k):
        for X in (S, N):
            for row in X:
                row[dst] += k * row[src]

    while any(S[i][j] for i in range(2) for j in range(2)):
        i, j = min(
            ((i, j) for i in range(2) for j in range(2) if S[i][j]),
            key=lambda p: abs(S[p[0]][p[1]]),
        )
        if i:
            swap_rows()
        if j:
            swap_cols()
        p = S[0][0]
        if S[1][0]:
            row_add(1, 0, -(S[1][0] // p))
            if S[1][0]:
                continue
        if S[0][1]:
            col_add(1, 0, -(S[0][1] // p))
            if S[0][1]:
                continue
        if S[1][1] % p:
            row_add(0, 1, 1)
            continue
        break

    if S[0][0] < 0:
        S[0] = [-x for x in S[0]]
        M[0] = [-x for x in M[0]]
    if M[0][0] * M[1][1] - M[0][1] * M[1][0] == -1:
        S[1] = [-x for x in S[1]]
        M[1] = [-x for x in M[1]]
    if N[0][0] * N[1][1] - N[0][1] * N[1][0] == -1:
        for X in (S, N):
            for row in X:
                row[1] = -row[1]
    return M, N, S[0][0], S[1][1]


def smith2(A: Mat2) -> SNF2:
    """
    Diagonalize a unimodular matrix over Z or Z/n.

    Over Z the transforms land in SL2 and d2 == det(A). Over Z/n the integer
    form of the canonical lift is reduced and its first row rescaled so that
    d1 == 1.
    """
    ring = A.ring
    if ring.kind not in (INTEGERS, MOD_N):
        raise UnsupportedRingError(f"smith2 works over Z or Z/n, not {ring.label}")
    _require_unimodular(A)
    M, N, d1, d2 = _integer_smith(*(x.value for x in A.entries))
    Mm = Mat2.from_rows(ring, M)
    Nm = Mat2.from_rows(ring, N)
    one = ring.elem(d1)
    if ring.kind == MOD_N:
        scale = inverse(one)
        Mm = Mat2(Mm.a * scale, Mm.b * scale, Mm.c, Mm.d)
        one = ring.one()
    snf = SNF2(Mm, Nm, one, ring.elem(d2))
    if Mm * A * Nm != diag2(snf.d1, snf.d2):
        raise InputError("smith2 produced an inconsistent transform")
    return snf


def simple_extension_snf(A: Mat2) -> ExtWitness:
    """sigma(M^-1) [[1,0,0],[0,d2,1],[0,-1,0]] sigma(N^-1) for M A N = Diag(1, d2)."""
    snf = smith2(A)
    ring = A.ring
    core = Mat3.from_rows(ring, [[1, 0, 0], [0, snf.d2, 1], [0, -1, 0]])
    aplus = sigma(inverse2(snf.M)) * core * sigma(inverse2(snf.N))
    witness = witness_from_extension(A, aplus, "snf")
    if not witness.is_valid():
        raise InputError(f"snf route failed on {A}")
    return witness


# special shapes with explicit witnesses


def _certificate_or_none(values: List[RElem]) -> Optional[List[RElem]]:
    try:
        return unimodular_certificate(values)
    except UndecidedError:
        return None


def _unit_inverse_or_none(x: RElem) -> Optional[RElem]:
    try:
        return inverse(x) if is_unit(x) else None
    except UnsupportedRingError:
        return None


def prescribed_extension(A: Mat2) -> Optional[ExtWitness]:
    """
    Explicit simple extensions for special shapes, or None.

    Tried in order: a unit entry; a unimodular pair among (a,b), (c,d),
    (a,c), (b,d); a diagonal matrix; [[a, ab], [ac, d]] with (a, d)
    unimodular.
    """
    ring = A.ring
    zero, one = ring.zero(), ring.one()
    a, b, c, d = A.entries

    for name, entry, pattern in (
        ("unit-a", a, lambda u: (one, zero, u, zero)),
        ("unit-b", b, lambda u: (one, zero, zero, u)),
        ("unit-c", c, lambda u: (zero, one, u, zero)),
        ("unit-d", d, lambda u: (zero, one, zero, u)),
    ):
        inv = _unit_inverse_or_none(entry)
        if inv is not None:
            return build_witness(A, *pattern(inv), route=f"prescribed:{name}")

    for name, pair, pattern in (
        ("row-ab", (a, b), lambda x, y: (one, zero, x, y)),
        ("row-cd", (c, d), lambda x, y: (zero, one, x, y)),
        ("col-ac", (a, c), lambda x, y: (x, y, one, zero)),
        ("col-bd", (b, d), lambda x, y: (x, y, zero, one)),
    ):
        cert = _certificate_or_none(list(pair))
        if cert is not None:
            return build_witness(A, *pattern(*cert), route=f"prescribed:{name}")

    if b.is_zero and c.is_zero:
        cert = _certificate_or_none([a, d])
        if cert is not None:
            e, f = cert
            return build_witness(A, e, f, one, one, route="prescribed:diagonal")

    if ring.is_domain and not a.is_zero:
        b1, c1 = divides(a, b), divides(a, c)
        cert = _certificate_or_none([a, d]) if b1 is not None and c1 is not None else None
        if cert is not None:
            q, f = cert
            e = q - c1 * f * (one - b1)
            return build_witness(A, e, f, one - b1, one, route="prescribed:multiple")
    return None


# finite-ring kernels (indices into a FiniteRing)


def finite_simple_witness(T: FiniteRing, a: int, b: int, c: int, d: int) -> Optional[Tuple[int, int, int, int]]:
    """First (e, f, s, t) with s(ae+cf) + t(be+df) == 1, scanning (e, f) then s."""
    mul, add, sub, solve, one = T.mul, T.add, T.sub, T.solve, T.one
    r = range(T.order)
    for e in r:
        ae, be = mul[a][e], mul[b][e]
        for f in r:
            p = add[ae][mul[c][f]]
            q = add[be][mul[d][f]]
            if not T.is_um(p, q):
                continue
            for s in r:
                options = solve[q][sub[one][mul[s][p]]]
                if options:
                    return (e, f, s, options[0])
    return None


def finite_extension_witness(T: FiniteRing, a: int, b: int, c: int, d: int) -> Optional[Tuple[int, int, int, int, int]]:
    """
    First (e, f, s, t, v) with s(ae+cf) + t(be+df) + v*det == 1.

    Prefers simple witnesses (v == 0); otherwise uses the first (e, f) for
    which (ae+cf, be+df, det) is unimodular.
    """
    simple = finite_simple_witness(T, a, b, c, d)
    if simple is not None:
        return simple + (T.zero,)
    mul, add = T.mul, T.add
    delta = T.det(a, b, c, d)
    r = range(T.order)
    for e in r:
        for f in r:
            p = add[mul[a][e]][mul[c][f]]
            q = add[mul[b][e]][mul[d][f]]
            if T.is_um(p, q, delta):
                s, t, v = T.combination([p, q, delta])
                return (e, f, s, t, v)
    return None


def _finite_indices(A: Mat2) -> Tuple[FiniteRing, Tuple[int, int, int, int]]:
    T = finite_ring(A.ring)
    return T, tuple(T.to_index(x) for x in A.entries)


def extendability_witness(A: Mat2) -> Optional[ExtWitness]:
    """
    An SL3-extension of A if one exists.

    A is extendable exactly when some (e, f) makes (ae+cf, be+df, det A)
    unimodular; finite rings are decided by exhaustion, Z and Z/n always
    have simple extensions.
    """
    _require_unimodular(A)
    if A.ring.is_finite:
        T, idx = _finite_indices(A)
        found = finite_extension_witness(T, *idx)
        if found is None:
            return None
        e, f, s, t, v = (T.lift(x) for x in found)
        return build_witness(A, e, f, s, t, route="finite", v=v)
    if A.ring.kind in (INTEGERS, MOD_N):
        return simple_extension_snf(A)
    raise UnsupportedRingError(f"extendability is not decided over {A.ring.label}")


# structured construction over Z


def _pr5_witness(A: Mat2, g, h, a1, c1, e1, f1, l, m, w, v, route) -> Optional[ExtWitness]:
    x, y, gcd = integer_bezout(g * w, h * (w * m + v * l))
    if gcd != 1:
        return None
    e = w * e1 + c1 * v
    f = w * f1 - a1 * v
    return build_witness(A, e, f, x, y, route=route)


def _pr5_data(A: Mat2):
    if A.ring.kind != INTEGERS:
        raise UnsupportedRingError("the structured construction works over Z")
    _require_unimodular(A)
    a, b, c, d = (x.value for x in A.entries)
    g = math.gcd(a, c)
    if g == 0:
        raise InputError("first column is zero")
    a1, c1 = a // g, c // g
    h = math.gcd(b, d)
    b1, d1 = (b // h, d // h) if h else (0, 1)
    e1, f1, _ = integer_bezout(a1, c1)
    l = b1 * c1 - a1 * d1
    m = b1 * e1 + d1 * f1
    return g, h, a1, c1, e1, f1, l, m


def simple_extension_pr5(A: Mat2, budget: int = 25) -> ExtWitness:
    """
    Column/row gcd construction.

    With a = g*a1, c = g*c1, b = h*b1, d = h*d1 and a1*e1 + c1*f1 = 1, a pair
    (w, v) with (g, wm+vl) and (w, hvl) unimodular gives the witness
    (e, f) = (w*e1 + c1*v, w*f1 - a1*v).
    """
    g, h, a1, c1, e1, f1, l, m = _pr5_data(A)
    cases = []
    if math.gcd(g, l) == 1:
        cases.append(("g,l", g, 1))
    if math.gcd(g, m) == 1:
        cases.append(("g,m", 1, 0))
    if math.gcd(h, m) == 1:
        w, v1, _ = integer_bezout(m, h * l)
        cases.append(("h,m", w, h * v1))
    if math.gcd(h, l) == 1:
        p, q, _ = integer_bezout(l, m)
        cases.append(("h,l", h * q + l, h * p - m))
    for name, w, v in cases:
        witness = _pr5_witness(A, g, h, a1, c1, e1, f1, l, m, w, v, f"pr5:{name}")
        if witness is not None:
            return witness
    for w, v in box_order(2, budget):
        witness = _pr5_witness(A, g, h, a1, c1, e1, f1, l, m, w, v, "pr5:search")
        if witness is not None:
            return witness
    raise BudgetExhaustedError(f"no (w, v) within box {budget}", budget=budget)


def pr5_remark_variant(A: Mat2, budget: int = 25) -> ExtWitness:
    """w = 1 and the first v in scan order with gcd(m + lv, g) == 1."""
    g, h, a1, c1, e1, f1, l, m = _pr5_data(A)
    for v in value_order(budget):
        if math.gcd(m + l * v, g) != 1:
            continue
        witness = _pr5_witness(A, g, h, a1, c1, e1, f1, l, m, 1, v, "pr5:w=1")
        if witness is not None:
            return witness
    raise BudgetExhaustedError(f"no v within {budget}", budget=budget)


def extend_via_reduction(A: Mat2) -> ExtWitness:
    """
    Extension of an integer matrix from a simple extension modulo det(A).

    The lifted border gives det 1 + w*det(A); subtracting w in the corner
    fixes it. |det| == 1 borders with sigma, det == 0 goes through the
    non-full factorization.
    """
    if A.ring.kind != INTEGERS:
        raise UnsupportedRingError("extend_via_reduction takes an integer matrix")
    _require_unimodular(A)
    delta = A.det().value
    if abs(delta) == 1:
        return witness_from_extension(A, sigma(A), "sigma")
    if delta == 0:
        return nonfull_extension(A, nonfull_decompose(A))

    reduced = simple_extension_snf(reduce_mod(A, abs(delta)))
    Z = A.ring
    rows = [[Z.elem(x.value) for x in row] for row in reduced.aplus.rows]
    rows[0][0], rows[0][1], rows[1][0], rows[1][1] = A.entries
    lifted = Mat3(tuple(tuple(row) for row in rows))
    w = (det3(lifted).value - 1) // delta
    rows[2][2] = rows[2][2] - w
    witness = witness_from_extension(A, Mat3(tuple(tuple(row) for row in rows)), "reduction")
    if not witness.is_valid():
        raise InputError(f"reduction route failed on {A}")
    return witness


# non-full matrices


def nonfull_decompose(A: Mat2) -> NonFullWitness:
    """Column-times-row factorization of a unimodular determinant-zero matrix."""
    if not A.det().is_zero:
        raise InputError("non-full factorization needs det 0")
    _require_unimodular(A)
    ring = A.ring
    if ring.kind == INTEGERS:
        a, b, c, d = (x.value for x in A.entries)
        if a or b:
            l = math.gcd(a, b)
            n, q = a // l, b // l
            alpha, beta, _ = integer_bezout(n, q)
            m = c * alpha + d * beta
        else:
            l, m = 0, math.gcd(c, d)
            n, q = c // m, d // m
        witness = NonFullWitness((ring.elem(l), ring.elem(m)), (ring.elem(n), ring.elem(q)))
    elif ring.kind == QUADRATIC:
        witness = decide_nonfull_quadratic(A).witness
        if witness is None:
            raise InputError(f"{A} is full")
    else:
        witness = nonfull_from_extension(A, simple_extension(A))
    if witness.product() != A:
        raise InputError("non-full factorization does not multiply back")
    return witness


def nonfull_from_extension(A: Mat2, ext: ExtWitness) -> NonFullWitness:
    """
    With M = [[e, f], [-p, r]] and N = [[s, -(be+df)], [t, ae+cf]] one has
    M A N = [[1, 0], [w, 0]] for det A == 0, so A = M^-1 [1, w]^T [1, 0] N^-1.
    """
    if not A.det().is_zero:
        raise InputError("needs det 0")
    if not ext.simple:
        raise InputError("needs a simple extension")
    a, b, c, d = A.entries
    e, f, s, t = ext.e, ext.f, ext.s, ext.t
    r, p = unimodular_certificate([e, f])
    M = Mat2(e, f, -p, r)
    N = Mat2(s, -(b * e + d * f), t, a * e + c * f)
    P = M * A * N
    Mi, Ni = inverse2(M), inverse2(N)
    col = Mi.apply((P.a, P.c))
    row = (Ni.a, Ni.b)
    return NonFullWitness(col, row)


def nonfull_extension(A: Mat2, witness: NonFullWitness) -> ExtWitness:
    """[[ln, lq, f], [mn, mq, -e], [-t, s, 0]] with el + fm == sn + tq == 1."""
    if witness.product() != A:
        raise InputError("factorization does not match the matrix")
    e, f = unimodular_certificate(list(witness.col))
    s, t = unimodular_certificate(list(witness.row))
    return build_witness(A, e, f, s, t, route="nonfull")


def _quadratic_divisor_candidates(spec: RingSpec, bound: int):
    for candidate in quadratic_elements_of_norm_at_most(spec, bound):
        n = norm(candidate)
        if n and bound % n == 0:
            yield candidate


def decide_nonfull_quadratic(A: Mat2) -> FullnessCertificate:
    """
    Decide whether a det-0 unimodular matrix over Q[D], D < 0, is non-full.

    A non-full A has a nonzero row equal to l*(n, q) with (n, q)
    unimodular, and norm(l) divides the norms of that row. Enumerating those
    l is exhaustive.
    """
    ring = A.ring
    if ring.kind != QUADRATIC or ring.D >= 0:
        raise UnsupportedRingError("fullness decision needs Q[D] with D < 0")
    if not A.det().is_zero:
        raise InputError("fullness decision needs det 0")
    _require_unimodular(A)
    first, second = (A.a, A.b), (A.c, A.d)
    if first[0].is_zero and first[1].is_zero:
        first, second = second, first
    bound = math.gcd(*(norm(x) for x in first if not x.is_zero))
    tried = 0
    for l in _quadratic_divisor_candidates(ring, bound):
        tried += 1
        n, q = divides(l, first[0]), divides(l, first[1])
        if n is None or q is None or quadratic_ideal_index([n.value, q.value], ring.D) != 1:
            continue
        alpha, beta = unimodular_certificate([n, q])
        m = second[0] * alpha + second[1] * beta
        col = (l, m) if first == (A.a, A.b) else (m, l)
        witness = NonFullWitness(col, (n, q))
        if witness.product() == A:
            return FullnessCertificate(A, False, witness, bound, tried)
    return FullnessCertificate(A, True, None, bound, tried)


# t-adic lifting


def lift_det_zero(A: Mat2, t: int, k: int) -> LiftSequence:
    """
    B_0 = A, B_n = B_{n-1} + tau*X with tau = t^(2^(n-1)), where X solves
    aw + dx - bz - cy == -det(B_{n-1})/tau (mod tau), so det(B_n) == 0 mod tau^2.
    """
    if A.ring.kind != INTEGERS:
        raise UnsupportedRingError("lifting works over Z")
    if t < 2:
        raise InputError(f"t must be at least 2, got {t}")
    if k < 0:
        raise InputError("step count must be nonnegative")
    _require_unimodular(A)
    if A.det().value % t:
        raise InputError(f"{t} does not divide det(A) = {A.det()}")

    Z = A.ring
    steps = [A]
    B = A
    for n in range(1, k + 1):
        tau = t ** (2 ** (n - 1))
        a, b, c, d = (x.value for x in B.entries)
        s = B.det().value // tau
        correction = _first_order_correction(a, b, c, d, -s, tau)
        x, y, z, w = correction
        B = Mat2.of(Z, a + tau * x, b + tau * y, c + tau * z, d + tau * w)
        if B.det().value % (tau * tau):
            raise InputError("lifting step lost the determinant congruence")
        steps.append(B)
    return LiftSequence(Z.elem(t), tuple(steps), tuple(2 ** n for n in range(k + 1)))


def _symmetric(value: int, modulus: int) -> int:
    value %= modulus
    return value - modulus if value > modulus // 2 else value


def _first_order_correction(a, b, c, d, target, tau) -> Tuple[int, int, int, int]:
    """(x, y, z, w) with aw + dx - bz - cy == target (mod tau), small entries."""
    # single-entry corrections first: w via a, x via d, z via -b, y via -c
    for coeff, slot in ((a, 3), (d, 0), (-b, 2), (-c, 1)):
        if math.gcd(coeff, tau) == 1:
            out = [0, 0, 0, 0]
            out[slot] = _symmetric(target * pow(coeff, -1, tau), tau)
            return tuple(out)
    g, coeffs = bezout_tuple([a, d, -b, -c, tau])
    if g != 1:
        raise InputError("entries are not unimodular modulo t")
    w, x, z, y = (_symmetric(target * k, tau) for k in coeffs[:4])
    return (x, y, z, w)


# nu sets


def diagonal_nu_progression(a: int, d: int) -> NuProgression:
    """nu of Diag(a, d): a*d + E0 + F0 + (d - a)Z for a*E0 + d*F0 == 1."""
    E0, F0, g = integer_bezout(a, d)
    if g != 1:
        raise InputError(f"Diag({a}, {d}) is not unimodular")
    return NuProgression(a * d + E0 + F0, d - a)


def _factors_in_box(n: int, bound: int) -> bool:
    if n == 0:
        return True
    return any(g <= bound and abs(n) // g <= bound for g in divisors(abs(n)))


def diagonal_nu_realizable(a: int, d: int, value: int, bound: int) -> bool:
    """
    Whether value is det + es + ft for a witness of Diag(a, d) in the box
    max(|e|, |f|, |s|, |t|) <= bound. X = es and Y = ft are forced by
    aX + dY == 1 and X + Y == value - ad, so only their factorizations matter.
    """
    if a == d:
        raise InputError("the closed form needs a != d")
    shift = value - a * d
    numerator = d * shift - 1
    if numerator % (d - a):
        return False
    X = numerator // (d - a)
    return _factors_in_box(X, bound) and _factors_in_box(shift - X, bound)


def _k_range(base: int, step: int, bound: int) -> Optional[Tuple[int, int]]:
    """k with |base + k*step| <= bound; None means every k (step == 0, |base| <= bound)."""
    if step == 0:
        return None if abs(base) <= bound else (1, 0)
    lo = (-bound - base, bound - base)
    if step < 0:
        lo = (-(bound - base), -(-bound - base))
        step = -step
    return (-((-lo[0]) // step), lo[1] // step)


def nu_enumerate(A: Mat2, bound: int) -> NuSample:
    """
    All det(A) + es + ft over simple-extension witnesses in the box
    max(|e|, |f|, |s|, |t|) <= bound; each value keeps its first witness in
    scan order. Diagonal matrices also get the closed-form progression.
    """
    if A.ring.kind != INTEGERS:
        raise UnsupportedRingError("nu enumeration works over Z")
    _require_unimodular(A)
    a, b, c, d = (x.value for x in A.entries)
    delta = a * d - b * c
    best: Dict[int, Tuple[Tuple, Tuple[int, int, int, int]]] = {}
    span = range(-bound, bound + 1)

    for e in span:
        for f in span:
            p, q = a * e + c * f, b * e + d * f
            s0, t0, g = integer_bezout(p, q)
            if g != 1:
                continue
            # s = s0 + k*q, t = t0 - k*p
            ranges = [r for r in (_k_range(s0, q, bound), _k_range(t0, -p, bound)) if r is not None]
            if not ranges:
                continue
            lo, hi = max(r[0] for r in ranges), min(r[1] for r in ranges)
            for k in range(lo, hi + 1):
                s, t = s0 + k * q, t0 - k * p
                candidate = (e, f, s, t)
                nu = delta + e * s + f * t
                key = scan_key(candidate)
                if nu not in best or key < best[nu][0]:
                    best[nu] = (key, candidate)

    sample = NuSample(bound, set(best), {nu: w for nu, (_, w) in best.items()})
    if b == 0 and c == 0:
        sample.progression = diagonal_nu_progression(a, d)
    return sample


# Pell-type criterion


def pell_simple_extendable(A: Mat2, bound: int = 64) -> Optional[PellResult]:
    """
    For symmetric det-0 A = [[a, b], [b, c]], look for (e, f) with
    ae^2 - cf^2 a unit. Then (ae - bf, be - cf) is unimodular because
    e(ae - bf) + f(be - cf) == ae^2 - cf^2.
    """
    ring = A.ring
    if ring.kind not in (INTEGERS, MOD_N):
        raise UnsupportedRingError("Pell search works over Z or Z/n")
    if not A.is_symmetric or not A.det().is_zero:
        raise InputError("Pell criterion needs a symmetric det-0 matrix")
    _require_unimodular(A)
    a, b, c = A.a, A.b, A.d
    for e_int, f_int in box_order(2, bound):
        e, f = ring.elem(e_int), ring.elem(f_int)
        u = a * e * e - c * f * f
        if not is_unit(u):
            continue
        u_inv = inverse(u)
        witness = build_witness(A, e, -f, e * u_inv, f * u_inv, route="pell")
        return PellResult(e, f, u, witness)
    return None


# non-extendability certificate over Z[sqrt(-q)]


def _pair_unit_ideal(p0, p1, q0, q1, D) -> bool:
    g = math.gcd(p0 * p0 - D * p1 * p1, q0 * q0 - D * q1 * q1)
    if g == 1:
        return True
    g = math.gcd(g, p0 * q1 - q0 * p1)
    if g == 1:
        return True
    return math.gcd(g, p0 * q0 - D * p1 * q1) == 1


def simple_extension_box_quadratic(A: Mat2, box: int) -> Optional[ExtWitness]:
    """First (e, f) with integer coordinates in [-box, box] making (ae+cf, be+df) unimodular."""
    ring = A.ring
    if ring.kind != QUADRATIC:
        raise UnsupportedRingError("quadratic box search needs Q[D]")
    D = ring.D
    (a0, a1), (b0, b1), (c0, c1), (d0, d1) = (x.value for x in A.entries)
    for e0, e1, f0, f1 in box_order(4, box):
        p0 = a0 * e0 + a1 * e1 * D + c0 * f0 + c1 * f1 * D
        p1 = a0 * e1 + a1 * e0 + c0 * f1 + c1 * f0
        q0 = b0 * e0 + b1 * e1 * D + d0 * f0 + d1 * f1 * D
        q1 = b0 * e1 + b1 * e0 + d0 * f1 + d1 * f0
        if not _pair_unit_ideal(p0, p1, q0, q1, D):
            continue
        e, f = RElem(ring, (e0, e1)), RElem(ring, (f0, f1))
        s, t = unimodular_certificate([RElem(ring, (p0, p1)), RElem(ring, (q0, q1))])
        return build_witness(A, e, f, s, t, route="quadratic-box")
    return None


def ex11_certificate(k: int, box: int = 10) -> Ex11Certificate:
    """
    Certificate that B = [[2k+1, 1-w], [1+w, 2]] over Z[sqrt(-(4k+1))] is full.

    det(B) == 0, 2 is irreducible and divides neither 1-w nor 1+w, so no
    factorization as column times row exists; the bounded search is a
    consistency check only.
    """
    if k < 1:
        raise InputError("k must be positive")
    q = 4 * k + 1
    ring = RingSpec.quadratic(-q)
    w = RElem(ring, (0, 1))
    one, two = ring.one(), ring.elem(2)
    B = Mat2(ring.elem(2 * k + 1), one - w, one + w, two)

    irreducible = irreducible_in_quadratic(two).irreducible
    # units are +-1 here, so associates of 2 are +-2
    neither = all(divides(two, x) is None for x in (one - w, one + w))
    found = simple_extension_box_quadratic(B, box)
    return Ex11Certificate(
        k=k,
        q=q,
        matrix=B,
        det_zero=B.det().is_zero,
        unimodular=is_unimodular_tuple(list(B.entries)),
        two_irreducible=irreducible,
        two_divides_neither=neither,
        fullness=decide_nonfull_quadratic(B),
        box=box,
        box_witness=None if found is None else (found.e, found.f),
    )


# dispatch


def simple_extension(A: Mat2, route: str = "auto", budget: int = 25) -> ExtWitness:
    """
    Simple extension by the requested route.

    auto: special shapes first, then Smith over Z and Z/n, exhaustion over
    finite rings, a coefficient box over Q[D].

    Raises:
        BudgetExhaustedError: bounded searches found nothing
        UndecidedError: no route applies (polynomial rings)
    """
    _require_unimodular(A)
    ring = A.ring
    if route == "snf":
        return simple_extension_snf(A)
    if route == "pr5":
        return simple_extension_pr5(A, budget)
    if route == "reduction":
        return extend_via_reduction(A)
    if route != "auto":
        raise InputError(f"unknown route {route!r}")

    prescribed = prescribed_extension(A)
    if prescribed is not None:
        return prescribed
    if ring.kind in (INTEGERS, MOD_N):
        return simple_extension_snf(A)
    if ring.is_finite:
        T, idx = _finite_indices(A)
        found = finite_simple_witness(T, *idx)
        if found is None:
            raise InputError(f"{A} has no simple extension over {ring.label}")
        return build_witness(A, *(T.lift(x) for x in found), route="finite")
    if ring.kind == QUADRATIC:
        note = {}
        if ring.D < 0 and A.det().is_zero:
            cert = decide_nonfull_quadratic(A)
            if cert.full:
                raise BudgetExhaustedError(
                    "no simple extension: the matrix is full with det 0",
                    budget=budget,
                    note={"fullness_certificate": cert.to_payload()},
                )
            return nonfull_extension(A, cert.witness)
        found = simple_extension_box_quadratic(A, budget)
        if found is None:
            raise BudgetExhaustedError(f"no witness within coefficient box {budget}", budget=budget, note=note)
        return found
    raise UndecidedError(f"no simple-extension route over {ring.label}")


def revalidate_extension_payload(spec: RingSpec, payload: dict) -> bool:
    """Re-parse a printed extension and check det 1, the corner and, if simple, the zero (3,3) entry."""
    A = Mat2.from_rows(spec, parse_element_rows(spec, payload["matrix"]))
    aplus = Mat3.from_rows(spec, parse_element_rows(spec, payload["aplus"]))
    rows = aplus.rows
    if det3(aplus) != 1 or Mat2(rows[0][0], rows[0][1], rows[1][0], rows[1][1]) != A:
        return False
    return not payload.get("simple") or rows[2][2].is_zero

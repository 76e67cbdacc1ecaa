"""
2x2 and 3x3 matrices over any RingSpec.

Column-vector convention throughout: A acts on columns, kernel generators
are columns. Matrices are immutable; every operation returns a new value.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import InputError, RingMismatchError
from .ring_service import MOD_N, INTEGERS, RElem, RingSpec, inverse, is_unimodular_tuple, is_unit


def _same_ring(entries: Iterable[RElem]) -> RingSpec:
    entries = list(entries)
    spec = entries[0].ring
    for e in entries[1:]:
        if e.ring != spec:
            raise RingMismatchError(f"matrix mixes {spec.label} and {e.ring.label}")
    return spec


@dataclass(frozen=True)
class Mat2:
    """[[a, b], [c, d]]"""

    a: RElem
    b: RElem
    c: RElem
    d: RElem

    def __post_init__(self):
        _same_ring(self.entries)

    @classmethod
    def of(cls, ring: RingSpec, a, b, c, d) -> "Mat2":
        return cls(ring.elem(a), ring.elem(b), ring.elem(c), ring.elem(d))

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls.of(ring, a, b, c, d)

    @property
    def ring(self) -> RingSpec:
        return self.a.ring

    @property
    def entries(self) -> Tuple[RElem, RElem, RElem, RElem]:
        return (self.a, self.b, self.c, self.d)

    @property
    def rows(self) -> Tuple[Tuple[RElem, RElem], Tuple[RElem, RElem]]:
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> RElem:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "Mat2") -> "Mat2":
        return mul2(self, other)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def scale(self, k) -> "Mat2":
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k)

    def apply(self, vec: Tuple[RElem, RElem]) -> Tuple[RElem, RElem]:
        x, y = vec
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    @property
    def is_upper_triangular(self) -> bool:
        return self.c.is_zero

    @property
    def is_lower_triangular(self) -> bool:
        return self.b.is_zero

    @property
    def is_diagonal(self) -> bool:
        return self.b.is_zero and self.c.is_zero

    @property
    def is_symmetric(self) -> bool:
        return self.b == self.c

    def __str__(self) -> str:
        return f"{self.a},{self.b};{self.c},{self.d}"

    def to_payload(self):
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]


@dataclass(frozen=True)
class Mat3:
    rows: Tuple[Tuple[RElem, RElem, RElem], Tuple[RElem, RElem, RElem], Tuple[RElem, RElem, RElem]]

    def __post_init__(self):
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise InputError("a 3x3 matrix needs three rows of three entries")
        _same_ring(e for row in self.rows for e in row)

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence]) -> "Mat3":
        return cls(tuple(tuple(ring.elem(x) for x in row) for row in rows))

    @property
    def ring(self) -> RingSpec:
        return self.rows[0][0].ring

    def entry(self, i: int, j: int) -> RElem:
        return self.rows[i][j]

    def __mul__(self, other: "Mat3") -> "Mat3":
        return mul3(self, other)

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    def to_payload(self):
        return [[str(x) for x in row] for row in self.rows]


@dataclass(frozen=True)
class KernelGens:
    """Column generators (-b, a) and (-d, c) of the kernel of a det-0 matrix."""

    v1: Tuple[RElem, RElem]
    v2: Tuple[RElem, RElem]

    def annihilated_by(self, A: Mat2) -> bool:
        return all(x.is_zero for v in (self.v1, self.v2) for x in A.apply(v))

    def combine(self, e: RElem, f: RElem) -> Tuple[RElem, RElem]:
        return (e * self.v1[0] + f * self.v2[0], e * self.v1[1] + f * self.v2[1])


@dataclass(frozen=True)
class KernelFreeness:
    """e*v1 + f*v2 for a det-0 matrix, with coefficients pairing it to 1."""

    vector: Tuple[RElem, RElem]
    coefficients: Tuple[RElem, RElem]

    def is_valid(self) -> bool:
        (p, q), (u, v) = self.vector, self.coefficients
        return u * p + v * q == 1

    def to_payload(self):
        return {"vector": [str(x) for x in self.vector], "coefficients": [str(x) for x in self.coefficients]}


@dataclass(frozen=True)
class Equivalence:
    """result == M * A * N, kept with its transforming pair."""

    M: Mat2
    A: Mat2
    N: Mat2
    result: Mat2


def identity2(ring: RingSpec) -> Mat2:
    return Mat2.of(ring, 1, 0, 0, 1)


def diag2(x: RElem, y: RElem) -> Mat2:
    zero = x.ring.zero()
    return Mat2(x, zero, zero, y)


def identity3(ring: RingSpec) -> Mat3:
    return Mat3.from_rows(ring, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def det2(A: Mat2) -> RElem:
    return A.det()


def det3(T: Mat3) -> RElem:
    (a, b, c), (d, e, f), (g, h, i) = T.rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def is_unimodular_mat(A: Mat2) -> bool:
    return is_unimodular_tuple(list(A.entries))


def mul2(P: Mat2, Q: Mat2) -> Mat2:
    return Mat2(
        P.a * Q.a + P.b * Q.c,
        P.a * Q.b + P.b * Q.d,
        P.c * Q.a + P.d * Q.c,
        P.c * Q.b + P.d * Q.d,
    )


def mul3(P: Mat3, Q: Mat3) -> Mat3:
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = P.rows[i][0] * Q.rows[0][j]
            for k in (1, 2):
                acc = acc + P.rows[i][k] * Q.rows[k][j]
            row.append(acc)
        rows.append(tuple(row))
    return Mat3(tuple(rows))


def transpose2(A: Mat2) -> Mat2:
    return Mat2(A.a, A.c, A.b, A.d)


def transpose3(T: Mat3) -> Mat3:
    return Mat3(tuple(tuple(T.rows[j][i] for j in range(3)) for i in range(3)))


def adjugate2(A: Mat2) -> Mat2:
    return Mat2(A.d, -A.b, -A.c, A.a)


def inverse2(A: Mat2) -> Mat2:
    """Inverse of a matrix with unit determinant."""
    return adjugate2(A).scale(inverse(A.det()))


def in_sl3(T: Mat3) -> bool:
    return det3(T) == 1


def theta(Q: Mat3) -> Mat2:
    """Drop the last row and column of an SL3 matrix."""
    if not in_sl3(Q):
        raise InputError(f"theta needs a determinant-one matrix, got det {det3(Q)}")
    rows = Q.rows
    A = Mat2(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    if not is_unimodular_mat(A):
        raise InputError("theta image is not unimodular")
    return A


def sigma(M: Mat2) -> Mat3:
    """Border M with det(M)^-1 in the corner."""
    delta = M.det()
    if not is_unit(delta):
        raise InputError(f"sigma needs a unit determinant, got {delta}")
    zero = M.ring.zero()
    return Mat3(((M.a, M.b, zero), (M.c, M.d, zero), (zero, zero, inverse(delta))))


def kernel_gens(A: Mat2) -> KernelGens:
    if not A.det().is_zero:
        raise InputError("kernel generators need a determinant-zero matrix")
    return KernelGens((-A.b, A.a), (-A.d, A.c))


def kernel_free_certificate(A: Mat2, e: RElem, f: RElem, s: RElem, t: RElem) -> KernelFreeness:
    """
    For det A = 0 and s(ae+cf) + t(be+df) = 1, the kernel vector e*v1 + f*v2
    is (-(be+df), ae+cf), so (-t, s) pairs it to 1.
    """
    vector = kernel_gens(A).combine(e, f)
    certificate = KernelFreeness(vector, (-t, s))
    if not certificate.is_valid():
        raise InputError("(e, f, s, t) is not a unimodularity witness for (ae+cf, be+df)")
    return certificate


def reduce_mod(A: Mat2, m: int) -> Mat2:
    if A.ring.kind != INTEGERS:
        raise InputError("reduce_mod takes an integer matrix")
    if m < 2:
        raise InputError(f"modulus must be at least 2, got {m}")
    target = RingSpec.mod_n(m)
    return Mat2.of(target, *(x.value for x in A.entries))


def lift_to_integers(A: Mat2) -> Mat2:
    """Canonical integer lift of a Z/n matrix (entries in [0, n))."""
    if A.ring.kind != MOD_N:
        raise InputError("lift_to_integers takes a Z/n matrix")
    return Mat2.of(RingSpec.integers(), *(x.value for x in A.entries))


def apply_equivalence(A: Mat2, M: Mat2, N: Mat2) -> Equivalence:
    if not (is_unit(M.det()) and is_unit(N.det())):
        raise InputError("equivalence needs invertible transforms")
    return Equivalence(M, A, N, M * A * N)


def extension_orbit_move(Q: Mat3, M: Mat2, N: Mat2) -> Tuple[Mat3, Mat2]:
    """sigma(M) Q sigma(N) together with its truncation, which equals M theta(Q) N."""
    moved = sigma(M) * Q * sigma(N)
    return moved, theta(moved)

"""
Exact arithmetic for the five ring families used by the lab.

Rings are described by an immutable RingSpec; elements are RElem values
tagged with their ring. All arithmetic is exact and pure.

Families:
    Z          integers
    Z/n        residues in [0, n)
    Q[D]       a + b*w with w^2 = D, D a nonzero non-square
    ZXYZ       polynomials in x, y, z over the integers (sympy sparse ring)
    (S)x(T)    direct products, nesting depth at most 2
"""

import itertools
import math
import random
from dataclasses import dataclass
from functools import reduce
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import ZZ

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring as sparse_poly_ring

from .errors import InputError, RingMismatchError, UndecidedError, UnsupportedRingError

INTEGERS = "Z"
MOD_N = "ModN"
QUADRATIC = "Quadratic"
POLY_Z3 = "PolyZ3"
PRODUCT = "Product"

MAX_PRODUCT_DEPTH = 2

# Shared sparse ring for ZXYZ; PolyElement coefficient maps never store zeros.
POLY_RING, POLY_X, POLY_Y, POLY_Z = sparse_poly_ring("x,y,z", ZZ)


def _is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class RingSpec:
    """Descriptor of one concrete ring."""

    kind: str
    n: int = 0
    D: int = 0
    left: Optional["RingSpec"] = None
    right: Optional["RingSpec"] = None

    def __post_init__(self):
        if self.kind == MOD_N and self.n < 2:
            raise InputError(f"modulus must be at least 2, got {self.n}")
        if self.kind == QUADRATIC and (self.D == 0 or _is_perfect_square(self.D)):
            raise InputError(f"Q[{self.D}] needs a nonzero non-square D")
        if self.kind == PRODUCT:
            if self.left is None or self.right is None:
                raise InputError("product ring needs two factors")
            if self.depth > MAX_PRODUCT_DEPTH:
                raise InputError(f"product nesting deeper than {MAX_PRODUCT_DEPTH}")
        if self.kind not in (INTEGERS, MOD_N, QUADRATIC, POLY_Z3, PRODUCT):
            raise InputError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(INTEGERS)

    @classmethod
    def mod_n(cls, n: int) -> "RingSpec":
        return cls(MOD_N, n=n)

    @classmethod
    def quadratic(cls, D: int) -> "RingSpec":
        return cls(QUADRATIC, D=D)

    @classmethod
    def poly_z3(cls) -> "RingSpec":
        return cls(POLY_Z3)

    @classmethod
    def product(cls, left: "RingSpec", right: "RingSpec") -> "RingSpec":
        return cls(PRODUCT, left=left, right=right)

    @property
    def depth(self) -> int:
        if self.kind != PRODUCT:
            return 0
        return 1 + max(self.left.depth, self.right.depth)

    @property
    def label(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == MOD_N:
            return f"Z/{self.n}"
        if self.kind == QUADRATIC:
            return f"Q[{self.D}]"
        if self.kind == POLY_Z3:
            return "ZXYZ"
        return f"({self.left.label})x({self.right.label})"

    def __str__(self) -> str:
        return self.label

    @property
    def is_finite(self) -> bool:
        if self.kind == MOD_N:
            return True
        if self.kind == PRODUCT:
            return self.left.is_finite and self.right.is_finite
        return False

    @property
    def is_domain(self) -> bool:
        return self.kind in (INTEGERS, QUADRATIC, POLY_Z3)

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise UnsupportedRingError(f"{self.label} is infinite")
        if self.kind == MOD_N:
            return self.n
        return self.left.order * self.right.order

    # raw-value arithmetic; RElem wraps these

    def add_values(self, x, y):
        kind = self.kind
        if kind == INTEGERS or kind == POLY_Z3:
            return x + y
        if kind == MOD_N:
            return (x + y) % self.n
        if kind == QUADRATIC:
            return (x[0] + y[0], x[1] + y[1])
        return (self.left.add_values(x[0], y[0]), self.right.add_values(x[1], y[1]))

    def neg_value(self, x):
        kind = self.kind
        if kind == INTEGERS or kind == POLY_Z3:
            return -x
        if kind == MOD_N:
            return (-x) % self.n
        if kind == QUADRATIC:
            return (-x[0], -x[1])
        return (self.left.neg_value(x[0]), self.right.neg_value(x[1]))

    def mul_values(self, x, y):
        kind = self.kind
        if kind == INTEGERS or kind == POLY_Z3:
            return x * y
        if kind == MOD_N:
            return (x * y) % self.n
        if kind == QUADRATIC:
            a, b = x
            c, d = y
            return (a * c + b * d * self.D, a * d + b * c)
        return (self.left.mul_values(x[0], y[0]), self.right.mul_values(x[1], y[1]))

    def value_of_int(self, k: int):
        kind = self.kind
        if kind == INTEGERS:
            return k
        if kind == MOD_N:
            return k % self.n
        if kind == QUADRATIC:
            return (k, 0)
        if kind == POLY_Z3:
            return POLY_RING(k)
        return (self.left.value_of_int(k), self.right.value_of_int(k))

    def format_value(self, x) -> str:
        kind = self.kind
        if kind in (INTEGERS, MOD_N):
            return str(x)
        if kind == QUADRATIC:
            a, b = x
            if b == 0:
                return str(a)
            return f"{a}{'+' if b > 0 else '-'}{abs(b)}*w"
        if kind == POLY_Z3:
            return str(x)
        return f"({self.left.format_value(x[0])},{self.right.format_value(x[1])})"

    def elem(self, value) -> "RElem":
        """Wrap an int, an RElem of this ring, or a raw value."""
        if isinstance(value, RElem):
            if value.ring != self:
                raise RingMismatchError(f"{value.ring.label} element used in {self.label}")
            return value
        if isinstance(value, int):
            return RElem(self, self.value_of_int(value))
        if self.kind == MOD_N:
            return RElem(self, int(value) % self.n)
        if self.kind == PRODUCT:
            left, right = value
            return RElem(self, (self.left.elem(left).value, self.right.elem(right).value))
        return RElem(self, value)

    def zero(self) -> "RElem":
        return RElem(self, self.value_of_int(0))

    def one(self) -> "RElem":
        return RElem(self, self.value_of_int(1))


@dataclass(frozen=True, eq=False)
class RElem:
    """A ring element tagged by its RingSpec."""

    ring: RingSpec
    value: object

    def _other(self, other):
        if isinstance(other, RElem):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine {self.ring.label} and {other.ring.label}")
            return other.value
        if isinstance(other, int):
            return self.ring.value_of_int(other)
        return None

    def __add__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return RElem(self.ring, self.ring.add_values(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return RElem(self.ring, self.ring.add_values(self.value, self.ring.neg_value(v)))

    def __rsub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return RElem(self.ring, self.ring.add_values(v, self.ring.neg_value(self.value)))

    def __mul__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return RElem(self.ring, self.ring.mul_values(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return RElem(self.ring, self.ring.neg_value(self.value))

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise InputError("negative exponent")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RElem):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.value_of_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    @property
    def is_zero(self) -> bool:
        return self.value == self.ring.value_of_int(0)

    def __str__(self) -> str:
        return self.ring.format_value(self.value)

    def __repr__(self) -> str:
        return f"RElem({self.ring.label}: {self})"


@dataclass(frozen=True)
class BezoutData:
    """a*x + b*y = g."""

    g: RElem
    x: RElem
    y: RElem


@dataclass(frozen=True)
class IrreducibilityCertificate:
    element: RElem
    irreducible: bool
    factors: Optional[Tuple[RElem, RElem]]
    realized_norms: Tuple[int, ...]
    searched_norms: Tuple[int, ...]


def _common_ring(values: Sequence[RElem]) -> RingSpec:
    if not values:
        raise InputError("empty tuple")
    spec = values[0].ring
    for v in values[1:]:
        if v.ring != spec:
            raise RingMismatchError(f"tuple mixes {spec.label} and {v.ring.label}")
    return spec


def add(a: RElem, b: RElem) -> RElem:
    return a + b


def sub(a: RElem, b: RElem) -> RElem:
    return a - b


def mul(a: RElem, b: RElem) -> RElem:
    return a * b


def neg(a: RElem) -> RElem:
    return -a


# integer helpers


def integer_bezout(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid with a canonical cofactor choice.

    Returns (x, y, g) with a*x + b*y = g = gcd(a, b) >= 0. When b != 0 the
    cofactor x is the least nonnegative one, so (7, 11) gives (8, -5, 1).
    """
    x, y, g = igcdex(a, b)
    x, y, g = int(x), int(y), int(g)
    if b != 0 and g != 0:
        step = abs(b) // g
        x = x % step
        y = (g - a * x) // b
    return x, y, g


def bezout_tuple(values: Sequence[int]) -> Tuple[int, List[int]]:
    """Return (g, coeffs) with sum(c*v) == g == gcd(values) >= 0."""
    g = 0
    coeffs: List[int] = []
    for v in values:
        x, y, g_next = integer_bezout(g, v)
        coeffs = [c * x for c in coeffs] + [y]
        g = g_next
    return g, coeffs


def _quadratic_generators(values: Sequence[Tuple[int, int]], D: int) -> List[Tuple[int, int]]:
    gens = []
    for p, q in values:
        gens.append((p, q))
        gens.append((q * D, p))
    return gens


def quadratic_ideal_index(values: Sequence[Tuple[int, int]], D: int) -> int:
    """Index in Z[w] of the ideal generated by the values (0 when not of full rank)."""
    gens = _quadratic_generators(values, D)
    g = 0
    for (p1, q1), (p2, q2) in itertools.combinations(gens, 2):
        g = math.gcd(g, p1 * q2 - p2 * q1)
        if g == 1:
            return 1
    return g


def _reduce_column(rows, col):
    """Integer row reduction on one column; returns (pivot row or None, other rows)."""
    active = [r for r in rows if r[0][col] != 0]
    rest = [r for r in rows if r[0][col] == 0]
    while len(active) > 1:
        active.sort(key=lambda r: abs(r[0][col]))
        pivot = active[0]
        survivors = [pivot]
        for vec, coeffs in active[1:]:
            q = vec[col] // pivot[0][col]
            new_vec = [v - q * p for v, p in zip(vec, pivot[0])]
            new_coeffs = [c - q * p for c, p in zip(coeffs, pivot[1])]
            (survivors if new_vec[col] != 0 else rest).append((new_vec, new_coeffs))
        active = survivors
    if not active:
        return None, rest
    vec, coeffs = active[0]
    if vec[col] < 0:
        vec = [-v for v in vec]
        coeffs = [-c for c in coeffs]
    return (vec, coeffs), rest


def _lattice_unit_combination(gens: Sequence[Tuple[int, int]]) -> Optional[List[int]]:
    size = len(gens)
    rows = [(list(g), [1 if j == i else 0 for j in range(size)]) for i, g in enumerate(gens)]
    first, rest = _reduce_column(rows, 0)
    second, _ = _reduce_column(rest, 1)
    if first is None or second is None or first[0][0] != 1 or second[0][1] != 1:
        return None
    shift = first[0][1]
    return [c1 - shift * c2 for c1, c2 in zip(first[1], second[1])]


_POLY_MULTIPLIERS = (0, 1, -1, POLY_X, -POLY_X, POLY_Y, -POLY_Y, POLY_Z, -POLY_Z)
_POLY_REFUTATION_BOX = range(-2, 3)


def _poly_certificate(values: Sequence) -> Optional[List]:
    if len(values) <= 4:
        table = [[POLY_RING(m) * p for m in _POLY_MULTIPLIERS] for p in values]
        for choice in itertools.product(range(len(_POLY_MULTIPLIERS)), repeat=len(values)):
            total = POLY_RING(0)
            for row, j in zip(table, choice):
                total = total + row[j]
            if total == 1:
                return [POLY_RING(_POLY_MULTIPLIERS[j]) for j in choice]
    for point in itertools.product(_POLY_REFUTATION_BOX, repeat=3):
        g = reduce(math.gcd, (int(p(*point)) for p in values), 0)
        if g != 1:
            return None
    raise UndecidedError("no certificate either way for this polynomial tuple")


def _certificate_values(spec: RingSpec, values: Sequence) -> Optional[List]:
    kind = spec.kind
    if kind == INTEGERS:
        g, coeffs = bezout_tuple(values)
        return coeffs if g == 1 else None
    if kind == MOD_N:
        g, coeffs = bezout_tuple(list(values) + [spec.n])
        if g != 1:
            return None
        return [c % spec.n for c in coeffs[:-1]]
    if kind == QUADRATIC:
        lam = _lattice_unit_combination(_quadratic_generators(values, spec.D))
        if lam is None:
            return None
        return [(lam[2 * i], lam[2 * i + 1]) for i in range(len(values))]
    if kind == POLY_Z3:
        return _poly_certificate(values)
    left = _certificate_values(spec.left, [v[0] for v in values])
    if left is None:
        return None
    right = _certificate_values(spec.right, [v[1] for v in values])
    if right is None:
        return None
    return list(zip(left, right))


def unimodular_certificate(values: Sequence[RElem]) -> Optional[List[RElem]]:
    """
    Find coefficients r with sum(r_i * v_i) == 1.

    Args:
        values: nonempty tuple over one ring

    Returns:
        The coefficients, or None when the entries generate a proper ideal.

    Raises:
        UndecidedError: polynomial tuples with no certificate either way
    """
    spec = _common_ring(values)
    coeffs = _certificate_values(spec, [v.value for v in values])
    if coeffs is None:
        return None
    return [RElem(spec, c) for c in coeffs]


def is_unimodular_tuple(values: Sequence[RElem]) -> bool:
    spec = _common_ring(values)
    if spec.kind == INTEGERS:
        return reduce(math.gcd, (v.value for v in values), 0) == 1
    if spec.kind == MOD_N:
        return reduce(math.gcd, (v.value for v in values), spec.n) == 1
    if spec.kind == QUADRATIC:
        return quadratic_ideal_index([v.value for v in values], spec.D) == 1
    return unimodular_certificate(values) is not None


def _unit_inverse_value(spec: RingSpec, x):
    kind = spec.kind
    if kind == INTEGERS:
        return x if x in (1, -1) else None
    if kind == MOD_N:
        if math.gcd(x, spec.n) != 1:
            return None
        return pow(x, -1, spec.n)
    if kind == QUADRATIC:
        a, b = x
        nrm = a * a - spec.D * b * b
        if nrm not in (1, -1):
            return None
        return (a * nrm, -b * nrm)
    if kind == POLY_Z3:
        if x == 1 or x == -1:
            return x
        return None
    left = _unit_inverse_value(spec.left, x[0])
    right = _unit_inverse_value(spec.right, x[1])
    if left is None or right is None:
        return None
    return (left, right)


def _reject_real_quadratic(spec: RingSpec) -> None:
    if spec.kind == QUADRATIC and spec.D > 0:
        raise UnsupportedRingError(f"unit group of {spec.label} is infinite; not supported")
    if spec.kind == PRODUCT:
        _reject_real_quadratic(spec.left)
        _reject_real_quadratic(spec.right)


def is_unit(a: RElem) -> bool:
    _reject_real_quadratic(a.ring)
    return _unit_inverse_value(a.ring, a.value) is not None


def inverse(a: RElem) -> RElem:
    inv = _unit_inverse_value(a.ring, a.value)
    if inv is None:
        raise InputError(f"{a} is not a unit in {a.ring.label}")
    return RElem(a.ring, inv)


def gcd_bezout(a: RElem, b: RElem) -> BezoutData:
    """
    gcd with cofactors over Z (extended Euclid) or Z/n (lift, then reduce).

    Over Z the gcd is nonnegative and gcd(0, 0) = 0.
    """
    spec = _common_ring([a, b])
    if spec.kind not in (INTEGERS, MOD_N):
        raise UnsupportedRingError(f"gcd_bezout is not available over {spec.label}")
    x, y, g = integer_bezout(a.value, b.value)
    return BezoutData(spec.elem(g), spec.elem(x), spec.elem(y))


def norm(a: RElem) -> int:
    if a.ring.kind != QUADRATIC:
        raise UnsupportedRingError("norm is defined for quadratic rings only")
    x, y = a.value
    return x * x - a.ring.D * y * y


def conjugate(a: RElem) -> RElem:
    if a.ring.kind != QUADRATIC:
        raise UnsupportedRingError("conjugate is defined for quadratic rings only")
    x, y = a.value
    return RElem(a.ring, (x, -y))


def _divides_values(spec: RingSpec, x, y):
    kind = spec.kind
    zero = spec.value_of_int(0)
    if x == zero:
        return zero if y == zero else None
    if kind == INTEGERS:
        return y // x if y % x == 0 else None
    if kind == QUADRATIC:
        a, b = x
        nrm = a * a - spec.D * b * b
        p, q = spec.mul_values(y, (a, -b))
        if p % nrm or q % nrm:
            return None
        return (p // nrm, q // nrm)
    if kind == POLY_Z3:
        try:
            return y.exquo(x)
        except ExactQuotientFailed:
            return None
    if kind == PRODUCT:
        left = _divides_values(spec.left, x[0], y[0])
        right = _divides_values(spec.right, x[1], y[1])
        if left is None or right is None:
            return None
        return (left, right)
    raise UnsupportedRingError(f"divides is not available over {spec.label}")


def divides(a: RElem, b: RElem) -> Optional[RElem]:
    """Return q with b == a*q, or None."""
    spec = _common_ring([a, b])
    if spec.kind == MOD_N:
        raise UnsupportedRingError("divides needs an integral domain family")
    q = _divides_values(spec, a.value, b.value)
    return None if q is None else RElem(spec, q)


def quadratic_elements_of_norm_at_most(spec: RingSpec, bound: int) -> Iterator[RElem]:
    """All a + b*w with norm <= bound (D < 0 only), b-major ascending."""
    if spec.kind != QUADRATIC or spec.D >= 0:
        raise UnsupportedRingError("finite norm boxes need Q[D] with D < 0")
    limit_b = math.isqrt(bound // -spec.D) if bound >= 0 else -1
    for b in range(-limit_b, limit_b + 1):
        rest = bound + spec.D * b * b
        if rest < 0:
            continue
        limit_a = math.isqrt(rest)
        for a in range(-limit_a, limit_a + 1):
            yield RElem(spec, (a, b))


def irreducible_in_quadratic(a: RElem) -> IrreducibilityCertificate:
    """
    Decide irreducibility in Q[D], D < 0, by a finite norm search.

    A proper factor b of a has norm strictly between 1 and norm(a) and
    dividing it, so the box x^2 - D*y^2 < norm(a) is exhaustive.
    """
    spec = a.ring
    if spec.kind != QUADRATIC:
        raise UnsupportedRingError("irreducibility test needs a quadratic ring")
    if spec.D >= 0:
        raise UnsupportedRingError(f"{spec.label}: D >= 0 is not supported")
    total = norm(a)
    if total == 0 or total == 1:
        raise InputError(f"{a} is zero or a unit")

    searched = tuple(m for m in range(2, total) if total % m == 0)
    realized = set()
    for candidate in quadratic_elements_of_norm_at_most(spec, total - 1):
        m = norm(candidate)
        if m not in searched:
            continue
        realized.add(m)
        quotient = divides(candidate, a)
        if quotient is not None:
            return IrreducibilityCertificate(a, False, (candidate, quotient), tuple(sorted(realized)), searched)
    return IrreducibilityCertificate(a, True, None, tuple(sorted(realized)), searched)


def _enumerate_values(spec: RingSpec) -> Iterator:
    if spec.kind == MOD_N:
        yield from range(spec.n)
        return
    if spec.kind == PRODUCT and spec.is_finite:
        rights = list(_enumerate_values(spec.right))
        for left in _enumerate_values(spec.left):
            for right in rights:
                yield (left, right)
        return
    raise UnsupportedRingError(f"{spec.label} is infinite")


def enumerate_elements(spec: RingSpec) -> Iterator[RElem]:
    """Each element of a finite ring once, in canonical ascending order."""
    for value in _enumerate_values(spec):
        yield RElem(spec, value)


def random_element(spec: RingSpec, rng: random.Random, bound: int = 10) -> RElem:
    kind = spec.kind
    if kind == INTEGERS:
        return RElem(spec, rng.randint(-bound, bound))
    if kind == MOD_N:
        return RElem(spec, rng.randrange(spec.n))
    if kind == QUADRATIC:
        return RElem(spec, (rng.randint(-bound, bound), rng.randint(-bound, bound)))
    if kind == POLY_Z3:
        poly = POLY_RING(0)
        for _ in range(rng.randint(0, 3)):
            exps = [rng.randint(0, 2) for _ in range(3)]
            poly += rng.randint(-bound, bound) * POLY_X ** exps[0] * POLY_Y ** exps[1] * POLY_Z ** exps[2]
        return RElem(spec, poly)
    left = random_element(spec.left, rng, bound)
    right = random_element(spec.right, rng, bound)
    return RElem(spec, (left.value, right.value))

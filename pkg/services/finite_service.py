"""
Table-driven kernels for finite rings.

A FiniteRing replaces RElem arithmetic by integer indices into precomputed
addition and multiplication tables, so exhaustive scans over R^4 stay fast.
Index order equals the canonical element order of enumerate_elements, so for
Z/n the index of a residue is the residue itself.
"""

from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import UnsupportedRingError
from .ring_service import RElem, RingSpec, enumerate_elements


def mask_members(mask: int) -> List[int]:
    members = []
    i = 0
    while mask:
        if mask & 1:
            members.append(i)
        mask >>= 1
        i += 1
    return members


class Quotient:
    """R/I for an ideal I given as a bitmask; cosets are named by their least index."""

    def __init__(self, ring: "FiniteRing", ideal: int):
        self.ring = ring
        self.ideal = ideal
        members = mask_members(ideal)
        add = ring.add
        self.rep = [min(add[x][j] for j in members) for x in range(ring.order)]
        self.reps = sorted(set(self.rep))

        one = self.rep[ring.one]
        mul = ring.mul
        self.inverse: Dict[int, int] = {}
        for r in self.reps:
            row = mul[r]
            for y in self.reps:
                if self.rep[row[y]] == one:
                    self.inverse[r] = y
                    break
        self.unit_reps = sorted(self.inverse)
        unit_set = set(self.unit_reps)
        # elements of R whose image is a unit of R/I
        self.unit_lifts = [x for x in range(ring.order) if self.rep[x] in unit_set]

    @property
    def order(self) -> int:
        return len(self.reps)

    def is_unit(self, x: int) -> bool:
        return self.rep[x] in self.inverse

    def mul(self, x: int, y: int) -> int:
        return self.rep[self.ring.mul[x][y]]


class FiniteRing:
    """Indexed view of a finite RingSpec with cached ideal structure."""

    def __init__(self, spec: RingSpec):
        if not spec.is_finite:
            raise UnsupportedRingError(f"{spec.label} is infinite")
        self.spec = spec
        self.elements: List[RElem] = list(enumerate_elements(spec))
        self.order = q = len(self.elements)
        values = [e.value for e in self.elements]
        index = {v: i for i, v in enumerate(values)}
        self.index = index

        self.add = [[index[spec.add_values(x, y)] for y in values] for x in values]
        self.mul = [[index[spec.mul_values(x, y)] for y in values] for x in values]
        self.neg = [index[spec.neg_value(x)] for x in values]
        self.sub = [[self.add[x][self.neg[y]] for y in range(q)] for x in range(q)]
        self.zero = index[spec.value_of_int(0)]
        self.one = index[spec.value_of_int(1)]

        self.inverse: List[Optional[int]] = [None] * q
        for x in range(q):
            row = self.mul[x]
            for y in range(q):
                if row[y] == self.one:
                    self.inverse[x] = y
                    break
        self.units = [x for x in range(q) if self.inverse[x] is not None]

        # solve[d][r] lists every x with d*x == r
        self.solve: List[List[List[int]]] = [[[] for _ in range(q)] for _ in range(q)]
        for d in range(q):
            row = self.mul[d]
            for x in range(q):
                self.solve[d][row[x]].append(x)

        self.principal = [self._mask(set(self.mul[a])) for a in range(q)]
        self._sums: Dict[Tuple[int, int], int] = {}
        self._quotients: Dict[int, Quotient] = {}
        self.ideals = self._all_ideals()
        self.maximal_ideals = self._maximal(self.ideals)
        self.jacobson = self._intersection(self.maximal_ideals)
        full = (1 << len(self.maximal_ideals)) - 1
        self._all_maximal = full
        # avoid[x]: maximal ideals (as bits) that do not contain x
        self.avoid = [
            sum(1 << k for k, m in enumerate(self.maximal_ideals) if not (m >> x) & 1) for x in range(q)
        ]

    def __reduce__(self):
        return (finite_ring, (self.spec,))

    @staticmethod
    def _mask(indices) -> int:
        mask = 0
        for i in indices:
            mask |= 1 << i
        return mask

    def ideal_sum(self, first: int, second: int) -> int:
        key = (first, second) if first <= second else (second, first)
        cached = self._sums.get(key)
        if cached is None:
            add = self.add
            cached = self._mask(add[i][j] for i in mask_members(first) for j in mask_members(second))
            self._sums[key] = cached
        return cached

    def ideal_of(self, generators: Sequence[int]) -> int:
        mask = 1 << self.zero
        for g in generators:
            mask = self.ideal_sum(mask, self.principal[g])
        return mask

    def _all_ideals(self) -> List[int]:
        seen = {1 << self.zero}
        frontier = list(seen)
        while frontier:
            fresh = []
            for ideal in frontier:
                for p in set(self.principal):
                    bigger = self.ideal_sum(ideal, p)
                    if bigger not in seen:
                        seen.add(bigger)
                        fresh.append(bigger)
            frontier = fresh
        return sorted(seen)

    def _maximal(self, ideals: List[int]) -> List[int]:
        proper = [i for i in ideals if not (i >> self.one) & 1]
        return [i for i in proper if not any(j != i and (j & i) == i for j in proper)]

    def _intersection(self, ideals: List[int]) -> int:
        mask = (1 << self.order) - 1
        for ideal in ideals:
            mask &= ideal
        return mask

    def contains(self, ideal: int, x: int) -> bool:
        return bool((ideal >> x) & 1)

    def is_um(self, *xs: int) -> bool:
        hit = 0
        avoid = self.avoid
        for x in xs:
            hit |= avoid[x]
        return hit == self._all_maximal

    @property
    def is_reduced(self) -> bool:
        return self.jacobson == 1 << self.zero

    def quotient(self, ideal: int) -> Quotient:
        cached = self._quotients.get(ideal)
        if cached is None:
            cached = Quotient(self, ideal)
            self._quotients[ideal] = cached
        return cached

    def quotient_by(self, *generators: int) -> Quotient:
        return self.quotient(self.ideal_of(generators))

    def det(self, a: int, b: int, c: int, d: int) -> int:
        return self.sub[self.mul[a][d]][self.mul[b][c]]

    def lift(self, x: int) -> RElem:
        return self.elements[x]

    def to_index(self, element: RElem) -> int:
        return self.index[self.spec.elem(element).value]

    def combination(self, xs: Sequence[int]) -> Optional[List[int]]:
        """Coefficients c with sum(c_i * x_i) == 1, first in scan order."""
        if not xs:
            return None
        if len(xs) == 1:
            inv = self.inverse[xs[0]]
            return None if inv is None else [inv]
        head, last = xs[:-1], xs[-1]
        mul, add, sub = self.mul, self.add, self.sub
        for coeffs in _product(self.order, len(head)):
            acc = self.zero
            for c, x in zip(coeffs, head):
                acc = add[acc][mul[c][x]]
            options = self.solve[last][sub[self.one][acc]]
            if options:
                return list(coeffs) + [options[0]]
        return None

    def unimodular_matrices(self) -> Iterator[Tuple[int, int, int, int]]:
        q = range(self.order)
        for a in q:
            for b in q:
                for c in q:
                    for d in q:
                        if self.is_um(a, b, c, d):
                            yield (a, b, c, d)

    def nonfull_factorization(self, a: int, b: int, c: int, d: int) -> Optional[Tuple[int, int, int, int]]:
        """First (l, m, n, q) with [l, m]^T [n, q] == [[a, b], [c, d]]."""
        mul, solve = self.mul, self.solve
        r = range(self.order)
        for l in r:
            for m in r:
                for n in r:
                    if mul[l][n] != a or mul[m][n] != c:
                        continue
                    choices = set(solve[m][d])
                    for q in solve[l][b]:
                        if q in choices:
                            return (l, m, n, q)
        return None


def _product(size: int, length: int) -> Iterator[Tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for head in _product(size, length - 1):
        for x in range(size):
            yield head + (x,)


@lru_cache(maxsize=64)
def finite_ring(spec: RingSpec) -> FiniteRing:
    """Build (once per process) the tables for a finite ring."""
    return FiniteRing(spec)

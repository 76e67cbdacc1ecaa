"""
Deterministic scan orders for bounded witness searches.

Boxes are scanned by increasing max-norm; inside a shell tuples are
lexicographic in the value order 0, -1, 1, -2, 2, ...
"""

from typing import Iterator, List, Tuple


def value_order(bound: int) -> Iterator[int]:
    """0, -1, 1, -2, 2, ..., -bound, bound"""
    yield 0
    for k in range(1, bound + 1):
        yield -k
        yield k


def value_rank(v: int) -> int:
    return 2 * abs(v) - (1 if v < 0 else 0)


def scan_key(candidate: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    """Position of a tuple in the global box order; smaller comes first."""
    return (max((abs(v) for v in candidate), default=0), tuple(value_rank(v) for v in candidate))


def shell(dim: int, radius: int) -> Iterator[Tuple[int, ...]]:
    """Tuples in [-radius, radius]^dim whose max-norm is exactly radius."""
    values: List[int] = list(value_order(radius))

    def extend(prefix: Tuple[int, ...], hit: bool) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == dim:
            if hit:
                yield prefix
            return
        last = len(prefix) == dim - 1
        for v in values:
            reached = hit or abs(v) == radius
            if last and not reached:
                continue
            yield from extend(prefix + (v,), reached)

    yield from extend((), False)


def box_order(dim: int, bound: int) -> Iterator[Tuple[int, ...]]:
    """Every tuple with max-norm <= bound, in scan order."""
    for radius in range(bound + 1):
        yield from shell(dim, radius)

"""
Parsing of ring specifiers, element literals and matrix text.

    ring:     Z | Z/<n> | Q[<D>] | ZXYZ | (S1)x(S2)
    element:  integer | a+b*w | polynomial in x,y,z | (e1,e2)
    matrix:   "a,b;c,d" or "a,b,c;d,e,f;g,h,i"
"""

import re
from typing import List, Union

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import parse_expr

from services.errors import InputError
from services.matrix_service import Mat2, Mat3
from services.ring_service import (
    INTEGERS,
    MOD_N,
    POLY_RING,
    POLY_Z3,
    PRODUCT,
    QUADRATIC,
    RElem,
    RingSpec,
)

_MOD_N = re.compile(r"^Z/(\d+)$")
_QUADRATIC = re.compile(r"^Q\[\s*(-?\d+)\s*\]$")
_W = Symbol("w")
_POLY_SYMBOLS = {name: Symbol(name) for name in ("x", "y", "z")}


def split_top_level(text: str, separator: str) -> List[str]:
    """Split on separator, ignoring separators nested inside parentheses."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced parentheses in {text!r}")
        if ch == separator and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise InputError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current).strip())
    return parts


def _closing_paren(text: str) -> int:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
    raise InputError(f"unbalanced parentheses in {text!r}")


def parse_ring(text: str) -> RingSpec:
    text = text.strip().replace(" ", "")
    if text == "Z":
        return RingSpec.integers()
    if text == "ZXYZ":
        return RingSpec.poly_z3()
    match = _MOD_N.match(text)
    if match:
        return RingSpec.mod_n(int(match.group(1)))
    match = _QUADRATIC.match(text)
    if match:
        return RingSpec.quadratic(int(match.group(1)))
    if text.startswith("("):
        end = _closing_paren(text)
        rest = text[end + 1:]
        if rest.startswith("x(") and rest.endswith(")") and _closing_paren(rest[1:]) == len(rest) - 2:
            return RingSpec.product(parse_ring(text[1:end]), parse_ring(rest[2:-1]))
    raise InputError(f"unrecognised ring specifier {text!r}")


def _parse_integer(text: str) -> int:
    try:
        return int(text.replace(" ", ""))
    except ValueError:
        raise InputError(f"not an integer literal: {text!r}")


def _parse_quadratic(spec: RingSpec, text: str):
    try:
        expr = parse_expr(text.replace(" ", ""), local_dict={"w": _W}).expand()
        poly = Poly(expr, _W)
    except Exception as e:
        raise InputError(f"not a quadratic literal: {text!r} ({e})")
    a = b = 0
    for (k,), coeff in poly.terms():
        if not coeff.is_integer:
            raise InputError(f"non-integer coefficient in {text!r}")
        # w^k = D^(k//2) * w^(k%2)
        scaled = int(coeff) * spec.D ** (k // 2)
        if k % 2:
            b += scaled
        else:
            a += scaled
    return (a, b)


def _parse_polynomial(text: str):
    try:
        expr = parse_expr(text, local_dict=dict(_POLY_SYMBOLS))
        return POLY_RING.from_expr(expr)
    except Exception as e:
        raise InputError(f"not a polynomial in x,y,z with integer coefficients: {text!r} ({e})")


def parse_element(spec: RingSpec, text: str) -> RElem:
    text = text.strip()
    if not text:
        raise InputError("empty element literal")
    kind = spec.kind
    if kind == INTEGERS:
        return spec.elem(_parse_integer(text))
    if kind == MOD_N:
        return spec.elem(_parse_integer(text))
    if kind == QUADRATIC:
        return RElem(spec, _parse_quadratic(spec, text))
    if kind == POLY_Z3:
        return RElem(spec, _parse_polynomial(text))
    if kind == PRODUCT:
        if not (text.startswith("(") and text.endswith(")")):
            # a bare integer embeds diagonally
            return spec.elem(_parse_integer(text))
        parts = split_top_level(text[1:-1], ",")
        if len(parts) != 2:
            raise InputError(f"product element needs two components: {text!r}")
        left = parse_element(spec.left, parts[0])
        right = parse_element(spec.right, parts[1])
        return RElem(spec, (left.value, right.value))
    raise InputError(f"cannot parse elements of {spec.label}")


def parse_matrix(spec: RingSpec, text: str) -> Union[Mat2, Mat3]:
    rows = [split_top_level(row, ",") for row in split_top_level(text, ";")]
    size = len(rows)
    if size not in (2, 3) or any(len(row) != size for row in rows):
        raise InputError(f"expected a 2x2 or 3x3 matrix, got {text!r}")
    entries = [[parse_element(spec, cell) for cell in row] for row in rows]
    if size == 2:
        return Mat2.from_rows(spec, entries)
    return Mat3.from_rows(spec, entries)


def parse_mat2(spec: RingSpec, text: str) -> Mat2:
    matrix = parse_matrix(spec, text)
    if not isinstance(matrix, Mat2):
        raise InputError(f"expected a 2x2 matrix, got {text!r}")
    return matrix


def parse_mat3(spec: RingSpec, text: str) -> Mat3:
    matrix = parse_matrix(spec, text)
    if not isinstance(matrix, Mat3):
        raise InputError(f"expected a 3x3 matrix, got {text!r}")
    return matrix


def parse_int_list(text: str) -> List[int]:
    return [_parse_integer(part) for part in text.split(",") if part.strip()]


def parse_element_rows(spec: RingSpec, rows) -> List[List[RElem]]:
    """Re-parse a JSON matrix payload (rows of element literals)."""
    return [[parse_element(spec, str(cell)) for cell in row] for row in rows]

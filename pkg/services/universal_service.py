"""
Universal test matrices over Z[x, y, z] and their evaluations.

    D = [[x(1-yz), y], [0, (1-x)(1-yz)]]
    E = [[x, y], [0, (1-x)(1-yz)^2]]
    F = [[x, y], [0, (1-x)(1-yz)]]
    G = [[x, y], [0, 1-x-yz]]

Any ring homomorphism out of Z[x, y, z] is fixed by the images of x, y, z,
so evaluate_hom is the only map needed.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import InputError, RingMismatchError
from .extension_service import ExtWitness, simple_extension_snf
from .matrix_service import Mat2, is_unimodular_mat
from .ring_service import INTEGERS, POLY_RING, POLY_X, POLY_Y, POLY_Z, RElem, RingSpec, bezout_tuple, integer_bezout

UNIVERSAL_NAMES = ("D", "E", "F", "G")


def _poly_matrix(a, b, c, d) -> Mat2:
    spec = RingSpec.poly_z3()
    return Mat2(*(RElem(spec, POLY_RING(x)) for x in (a, b, c, d)))


def universal_matrix(name: str) -> Mat2:
    x, y, z = POLY_X, POLY_Y, POLY_Z
    one = POLY_RING(1)
    if name == "D":
        return _poly_matrix(x * (one - y * z), y, 0, (one - x) * (one - y * z))
    if name == "E":
        return _poly_matrix(x, y, 0, (one - x) * (one - y * z) ** 2)
    if name == "F":
        return _poly_matrix(x, y, 0, (one - x) * (one - y * z))
    if name == "G":
        return _poly_matrix(x, y, 0, one - x - y * z)
    raise InputError(f"unknown universal matrix {name!r}; expected one of {', '.join(UNIVERSAL_NAMES)}")


def e_transform_factors() -> Tuple[Mat2, Mat2]:
    """(L, R) with E == L * D * R in Z[x, y, z]."""
    x, y, z = POLY_X, POLY_Y, POLY_Z
    one = POLY_RING(1)
    L = _poly_matrix(1, 0, z * (x - one) * (one - y * z), 1)
    R = _poly_matrix(1, 0, x * z, 1)
    return L, R


def evaluate_polynomial(poly, images: Sequence[RElem]) -> RElem:
    target = images[0].ring
    X, Y, Z = images
    acc = target.zero()
    for (i, j, k), coeff in poly.terms():
        acc = acc + (X ** i) * (Y ** j) * (Z ** k) * int(coeff)
    return acc


def evaluate_hom(matrix: Mat2, images: Sequence[RElem]) -> Mat2:
    """Apply the homomorphism x, y, z -> images entrywise."""
    if matrix.ring.kind != "PolyZ3":
        raise InputError("evaluate_hom takes a matrix over ZXYZ")
    if len(images) != 3:
        raise InputError("need images for x, y and z")
    target = images[0].ring
    if any(img.ring != target for img in images):
        raise RingMismatchError("images must lie in one ring")
    return Mat2(*(evaluate_polynomial(entry.value, images) for entry in matrix.entries))


def substitute_z(matrix: Mat2, replacement) -> Mat2:
    """Endomorphism of Z[x, y, z] fixing x and y."""
    spec = matrix.ring
    images = [RElem(spec, POLY_X), RElem(spec, POLY_Y), RElem(spec, POLY_RING(replacement))]
    return evaluate_hom(matrix, images)


@dataclass(frozen=True)
class CompanionData:
    """Normal form D of an integer matrix, with the triple that evaluates the universal D to it."""

    M: Mat2
    triangular: Mat2
    g: int
    h: int
    cgcd: int
    aq: int
    bq: int
    u: int
    aq1: int
    bq1: int
    c1: int
    u1: int
    D: Mat2
    phi: Tuple[RElem, RElem, RElem]

    def to_payload(self) -> dict:
        return {
            "M": self.M.to_payload(),
            "triangular": self.triangular.to_payload(),
            "g": str(self.g),
            "h": str(self.h),
            "cgcd": str(self.cgcd),
            "aq": str(self.aq),
            "bq": str(self.bq),
            "u": str(self.u),
            "bezouts": {"aq'": str(self.aq1), "bq'": str(self.bq1), "c'": str(self.c1), "u'": str(self.u1)},
            "D": self.D.to_payload(),
            "phi": [str(x) for x in self.phi],
            "matches_universal": evaluate_hom(universal_matrix("D"), self.phi) == self.D,
        }


def companion_test_matrix(A: Mat2) -> CompanionData:
    """
    Triangularize A = [[a, b], [c, d]] over Z to [[g, u], [0, h]], split
    g = aq*cgcd and h = bq*cgcd with gcd(aq, bq) == 1, and assemble
    D = [[aq*aq'*cgcd*c', u], [0, bq*bq'*cgcd*c']].
    """
    ring = A.ring
    if ring.kind != INTEGERS:
        raise InputError("companion test matrices are built over Z")
    if not is_unimodular_mat(A):
        raise InputError(f"matrix {A} is not unimodular")
    a, b, c, d = (v.value for v in A.entries)
    x, y, g = integer_bezout(a, c)
    M = Mat2.of(ring, x, y, -c // g, a // g) if g else Mat2.of(ring, 1, 0, 0, 1)
    triangular = M * A
    if not triangular.c.is_zero:
        raise InputError("triangularization left a nonzero corner")
    g, u, h = triangular.a.value, triangular.b.value, triangular.d.value

    cgcd = math.gcd(g, h)
    aq, bq = (g // cgcd, h // cgcd) if cgcd else (1, 0)
    c1, u1, one = integer_bezout(cgcd, u)
    if one != 1:
        raise InputError("(cgcd, u) is not unimodular")
    aq1, bq1, _ = integer_bezout(aq, bq)

    D = Mat2.of(ring, aq * aq1 * cgcd * c1, u, 0, bq * bq1 * cgcd * c1)
    phi = (ring.elem(aq * aq1), ring.elem(u), ring.elem(u1))
    if evaluate_hom(universal_matrix("D"), phi) != D:
        raise InputError("companion matrix does not match the universal evaluation")
    return CompanionData(M, triangular, g, h, cgcd, aq, bq, u, aq1, bq1, c1, u1, D, phi)


@dataclass(frozen=True)
class GEvaluation:
    A: Mat2
    phi: Tuple[RElem, RElem, RElem]
    image: Mat2
    extension: ExtWitness

    def to_payload(self) -> dict:
        return {
            "matrix": self.A.to_payload(),
            "phi": [str(x) for x in self.phi],
            "image": self.image.to_payload(),
            "extension": self.extension.to_payload(),
        }


def g_evaluation_extension(A: Mat2) -> GEvaluation:
    """
    For upper triangular [[a, b], [0, c]] over Z with aa' + bb' + cc' == 1,
    G at (aa', b, b') is [[aa', b], [0, cc']]; report it with a simple
    extension of that image.
    """
    if A.ring.kind != INTEGERS:
        raise InputError("G evaluation is built over Z")
    if not A.is_upper_triangular:
        raise InputError("G evaluation needs an upper triangular matrix")
    a, b, _, c = (v.value for v in A.entries)
    g, (a1, b1, _) = bezout_tuple([a, b, c])
    if g != 1:
        raise InputError(f"matrix {A} is not unimodular")
    ring = A.ring
    phi = (ring.elem(a * a1), ring.elem(b), ring.elem(b1))
    image = evaluate_hom(universal_matrix("G"), phi)
    return GEvaluation(A, phi, image, simple_extension_snf(image))

"""Bivariate polynomial frontend: parsing, Newton polygon, nondegeneracy.

Input polynomials are sparse maps from exponent pairs to nonzero rational
coefficients.  The accepted grammar is deliberately tiny:

    poly     = term ((+|-) term)*
    term     = [rational] [*] [x[^int]] [*] [y[^int]]
    rational = int | int/int

with whitespace ignored everywhere and no parentheses.  The curve must
vanish at the origin (no constant term) and must not be divisible by x
or y: monomial factors have to be divided out by the caller.

The compact faces of the Newton polygon are extracted with an exact
integer lower-hull; each face carries its primitive inner normal (a, b),
the lattice points along the face in steps of (b, -a) from the high-y
end, and the face polynomial G read off those points.  Nondegeneracy is
squarefreeness of every G, decided by gcd(G, G') over the rationals,
which certifies simple roots over the complex numbers as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import poly
from .lattice import PrimitiveVector, slope_less


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at index {position}")
        self.position = position


class DegenerateCurveError(ValueError):
    def __init__(self, witness):
        face = witness.face
        super().__init__(
            f"degenerate along the face with normal {face.normal}: "
            f"gcd(G, G') has degree {witness.gcd_degree}")
        self.witness = witness


def parse_poly(text: str) -> dict:
    """Parse to a sparse map (exponent pair) -> nonzero Fraction."""
    terms = {}
    i = 0
    n = len(text)

    def skip_ws(j):
        while j < n and text[j].isspace():
            j += 1
        return j

    def read_int(j):
        start = j
        while j < n and text[j].isdigit():
            j += 1
        if j == start:
            raise ParseError("expected digits", start)
        return int(text[start:j]), j

    i = skip_ws(i)
    if i == n:
        raise ParseError("empty input", 0)
    first = True
    while i < n:
        sign = 1
        if first:
            if text[i] in "+-":
                sign = -1 if text[i] == "-" else 1
                i = skip_ws(i + 1)
        else:
            if text[i] not in "+-":
                raise ParseError(f"expected '+' or '-', found {text[i]!r}", i)
            sign = -1 if text[i] == "-" else 1
            i = skip_ws(i + 1)
        first = False

        coef = Fraction(1)
        has_content = False
        if i < n and text[i].isdigit():
            num, i = read_int(i)
            i = skip_ws(i)
            if i < n and text[i] == "/":
                i = skip_ws(i + 1)
                den_start = i
                den, i = read_int(i)
                if den == 0:
                    raise ParseError("zero denominator", den_start)
                coef = Fraction(num, den)
            else:
                coef = Fraction(num)
            has_content = True
            i = skip_ws(i)
            if i < n and text[i] == "*":
                i = skip_ws(i + 1)
        ex = ey = 0
        if i < n and text[i] == "x":
            i = skip_ws(i + 1)
            ex = 1
            if i < n and text[i] == "^":
                i = skip_ws(i + 1)
                ex, i = read_int(i)
            has_content = True
            i = skip_ws(i)
            if i < n and text[i] == "*":
                i = skip_ws(i + 1)
        if i < n and text[i] == "y":
            i = skip_ws(i + 1)
            ey = 1
            if i < n and text[i] == "^":
                i = skip_ws(i + 1)
                ey, i = read_int(i)
            has_content = True
            i = skip_ws(i)
        if not has_content:
            if i < n:
                raise ParseError(f"unexpected character {text[i]!r}", i)
            raise ParseError("expected a term", i - 1)
        if i < n and text[i] not in "+-":
            raise ParseError(f"unexpected character {text[i]!r}", i)
        key = (ex, ey)
        terms[key] = terms.get(key, Fraction(0)) + sign * coef
        if terms[key] == 0:
            del terms[key]
    if not terms:
        raise ValueError("zero polynomial")
    if (0, 0) in terms:
        raise ValueError("nonzero constant term: the curve must pass through the origin")
    return terms


def poly_to_str(p: dict) -> str:
    """Canonical printer: graded-lex descending, explicit '^', '*' joints."""
    def key(item):
        (a, b), _ = item
        return (a + b, a)

    parts = []
    for (a, b), c in sorted(p.items(), key=key, reverse=True):
        mag = abs(c)
        factors = []
        if mag != 1 or (a, b) == (0, 0):
            factors.append(str(mag.numerator) if mag.denominator == 1
                           else f"{mag.numerator}/{mag.denominator}")
        if a:
            factors.append("x" if a == 1 else f"x^{a}")
        if b:
            factors.append("y" if b == 1 else f"y^{b}")
        body = "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


@dataclass(frozen=True)
class NewtonFace:
    normal: PrimitiveVector
    lattice_points: tuple[tuple[int, int], ...]   # high-y end first
    face_poly: tuple[Fraction, ...]               # G, constant term first


@dataclass(frozen=True)
class DegenerateWitness:
    face: NewtonFace
    gcd: tuple

    @property
    def gcd_degree(self) -> int:
        return len(self.gcd) - 1


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_faces(p: dict) -> list[NewtonFace]:
    """Compact faces of the Newton polygon, slope-increasing normals."""
    if not p:
        raise ValueError("zero polynomial")
    support = sorted(p)
    if not any(b == 0 for _, b in support) or not any(a == 0 for a, _ in support):
        raise ValueError("polynomial is divisible by x or y; divide the monomial out first")
    hull = []
    for pt in support:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    chain = []
    for pt in hull:
        chain.append(pt)
        if pt[1] == 0:
            break
    faces = []
    for v1, v2 in zip(chain, chain[1:]):
        dx = v2[0] - v1[0]
        dy = v1[1] - v2[1]
        g = gcd(dx, dy)
        normal = PrimitiveVector(dy // g, dx // g)
        points = tuple((v1[0] + j * normal.b, v1[1] - j * normal.a)
                       for j in range(g + 1))
        coeffs = tuple(p.get(pt, Fraction(0)) for pt in points)
        assert coeffs[0] != 0 and coeffs[-1] != 0
        faces.append(NewtonFace(normal, points, coeffs))
    for f1, f2 in zip(faces, faces[1:]):
        assert slope_less(f1.normal, f2.normal)
    return faces


def nondegeneracy_check(faces) -> DegenerateWitness | None:
    """None when every face polynomial is squarefree; otherwise the first
    offending face together with gcd(G, G')."""
    for face in faces:
        g = poly.monic_gcd(list(face.face_poly),
                           poly.derivative(list(face.face_poly)))
        if len(g) - 1 >= 1:
            return DegenerateWitness(face, tuple(g))
    return None


def to_face_specs(faces) -> list[tuple[int, int, int]]:
    """(a, b, r) per face with r = deg G, for the nondegenerate pipeline."""
    witness = nondegeneracy_check(faces)
    if witness is not None:
        raise DegenerateCurveError(witness)
    return [(f.normal.a, f.normal.b, len(f.face_poly) - 1) for f in faces]

"""Primitive lattice vectors in the positive quadrant and regular subdivisions.

A vector ``(a, b)`` of nonnegative integers with ``gcd(a, b) = 1`` generates
a ray of the quadrant.  Rays are ordered by slope: ``P < Q`` exactly when
``det(P, Q) > 0``, a strict total order on distinct primitive vectors of the
closed quadrant.  A subdivision is a slope-increasing tuple of rays strictly
between the frame rays ``(1, 0)`` and ``(0, 1)`` such that every pair of
neighbours, frames included, spans a cone of determinant one (the cone is
then generated by a lattice basis, so the corresponding toric chart is
smooth).

The refinement routine inserts, between two rays ``U < V``, exactly the
primitive generators lying on the compact boundary of the convex hull of the
nonzero lattice points of the cone they span.  This is the unique minimal
way to reach determinant one everywhere, and it is the construction the
rest of the package treats as canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class PrimitiveVector:
    """An integer vector (a, b) with a, b >= 0 and gcd(a, b) = 1."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("coordinates must be integers")
        if self.a < 0 or self.b < 0:
            raise ValueError(f"({self.a}, {self.b}) leaves the positive quadrant")
        if (self.a, self.b) == (0, 0):
            raise ValueError("the zero vector generates no ray")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"({self.a}, {self.b}) is not primitive")

    def __lt__(self, other: "PrimitiveVector") -> bool:
        return det(self, other) > 0

    def __repr__(self):
        return f"({self.a},{self.b})"


X_FRAME = PrimitiveVector(1, 0)
Y_FRAME = PrimitiveVector(0, 1)


def det(p: PrimitiveVector, q: PrimitiveVector) -> int:
    """Determinant of the 2x2 matrix with columns p and q."""
    return p.a * q.b - p.b * q.a


def slope_less(p: PrimitiveVector, q: PrimitiveVector) -> bool:
    """Strict slope order: true iff det(p, q) > 0."""
    return det(p, q) > 0


@dataclass(frozen=True)
class Subdivision:
    """Regular subdivision of the quadrant, frames (1,0) and (0,1) implicit.

    Invariant: consecutive determinants along (1,0), vectors..., (0,1) are
    all one, which also forces the vectors to be strictly slope-increasing.
    """

    vectors: tuple[PrimitiveVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.vectors))
        chain = (X_FRAME, *self.vectors, Y_FRAME)
        for u, v in zip(chain, chain[1:]):
            if det(u, v) != 1:
                raise ValueError(f"subdivision is not regular at {u}, {v}")

    def cones(self):
        """Consecutive ray pairs, frames included."""
        chain = (X_FRAME, *self.vectors, Y_FRAME)
        return list(zip(chain, chain[1:]))


def minimal_regular_refinement(u: PrimitiveVector, v: PrimitiveVector):
    """Hull generators strictly between u and v.

    Returns the slope-increasing list W_1 < ... < W_r with all consecutive
    determinants along u, W_1, ..., W_r, v equal to one; empty exactly when
    det(u, v) = 1.  Each step inserts the hull neighbour of u: among the
    lattice points W of the open cone with det(u, W) = 1, the one with the
    least det(W, v).  Writing W = (p*u + v)/d for d = det(u, v), that W is
    picked by the unique p in 1..d-1 making the division integral.
    """
    d = det(u, v)
    if d <= 0:
        raise ValueError(f"rays {u}, {v} do not span a cone: det = {d}")
    out = []
    while d > 1:
        for p in range(1, d):
            if (p * u.a + v.a) % d == 0 and (p * u.b + v.b) % d == 0:
                break
        else:
            raise AssertionError("no integral hull neighbour; u not primitive?")
        u = PrimitiveVector((p * u.a + v.a) // d, (p * u.b + v.b) // d)
        out.append(u)
        d = det(u, v)
    return out


def admissible_subdivision(principal) -> Subdivision:
    """Minimal regular subdivision containing every given ray.

    The rays must be strictly slope-increasing with both coordinates
    positive.  Neighbouring gaps, frame gaps included, are filled with
    minimal_regular_refinement.
    """
    principal = list(principal)
    for p in principal:
        if p.a < 1 or p.b < 1:
            raise ValueError(f"ray {p} lies on the boundary of the quadrant")
    for p, q in zip(principal, principal[1:]):
        if not slope_less(p, q):
            raise ValueError(f"rays out of slope order: {p} before {q}")
    chain = [X_FRAME, *principal, Y_FRAME]
    vectors = []
    for u, v in zip(chain, chain[1:]):
        vectors.extend(minimal_regular_refinement(u, v))
        if v is not Y_FRAME:
            vectors.append(v)
    sub = Subdivision(tuple(vectors))
    if vectors:
        assert vectors[0].b == 1 and vectors[-1].a == 1
    return sub


def insert_rays(sub: Subdivision, extra) -> Subdivision:
    """Refine a subdivision so it also contains the given rays.

    Every extra ray must lie strictly inside one of the cones of ``sub``;
    a ray equal to an existing one is rejected.  Gaps opened by the new
    rays are re-regularized with minimal_regular_refinement.
    """
    rays = [X_FRAME, *sub.vectors, Y_FRAME]
    for w in extra:
        for idx, r in enumerate(rays):
            d = det(r, w)
            if d == 0:
                raise ValueError(f"ray {w} already present")
            if d < 0:
                rays.insert(idx, w)
                break
        else:
            rays.append(w)
    vectors = []
    for u, v in zip(rays, rays[1:]):
        vectors.extend(minimal_regular_refinement(u, v))
        if v is not Y_FRAME:
            vectors.append(v)
    return Subdivision(tuple(vectors))

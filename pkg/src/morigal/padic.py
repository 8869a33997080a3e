"""Newton polygons and the Eisenstein-Dumas irreducibility criterion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Sequence

from .intpoly import IntPolynomial


def v2(x: Fraction | int) -> int:
    """2-adic valuation on Z[1/2] (and Q)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    num, den = x.numerator, x.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


def padic_valuation(p: int) -> Callable[[Fraction | int], int]:
    def v(x: Fraction | int) -> int:
        x = Fraction(x)
        if x == 0:
            raise ValueError("valuation of zero")
        out = 0
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
            out += 1
        while den % p == 0:
            den //= p
            out -= 1
        return out

    return v


@dataclass(frozen=True)
class Segment:
    start: tuple[int, int]
    end: tuple[int, int]

    @property
    def slope(self) -> Fraction:
        return Fraction(self.end[1] - self.start[1], self.end[0] - self.start[0])

    @property
    def lattice_points(self) -> int:
        """Lattice points on the closed segment, endpoints included."""
        return gcd(self.end[0] - self.start[0], abs(self.end[1] - self.start[1])) + 1


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, int], ...]
    vertices: tuple[tuple[int, int], ...]

    @property
    def segments(self) -> tuple[Segment, ...]:
        return tuple(Segment(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "slopes": [str(s.slope) for s in self.segments],
        }


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    hull: list[tuple[int, int]] = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return tuple(hull)


def newton_polygon(
    u: IntPolynomial | Sequence[Any], valuation: Callable[[Any], int] = v2
) -> NewtonPolygon:
    """Lower convex hull of (i, v(a_i)) over the nonzero coefficients.

    `u` may be an IntPolynomial or any coefficient sequence (constant first)
    whose zero entries are falsy; `valuation` maps a coefficient to an int.
    """
    coeffs = u.fractions() if isinstance(u, IntPolynomial) else list(u)
    if not coeffs or not coeffs[0]:
        raise ValueError("Newton polygon needs a nonzero constant term")
    points = tuple((i, valuation(a)) for i, a in enumerate(coeffs) if a)
    return NewtonPolygon(points, lower_hull(points))


def hull_is_valid(pg: NewtonPolygon) -> bool:
    """Every point on or above the hull and slopes strictly increasing."""
    slopes = [s.slope for s in pg.segments]
    if any(a >= b for a, b in zip(slopes, slopes[1:])):
        return False
    for i, vi in pg.points:
        for seg in pg.segments:
            (x0, y0), (x1, y1) = seg.start, seg.end
            if x0 <= i <= x1 and (vi - y0) * (x1 - x0) < (y1 - y0) * (i - x0):
                return False
    return pg.vertices[0][0] == pg.points[0][0] and pg.vertices[-1][0] == pg.points[-1][0]


@dataclass(frozen=True)
class EisensteinDumasWitness:
    irreducible: bool
    gcd: int
    segment: tuple[tuple[int, int], tuple[int, int]] | None

    def to_json(self) -> dict:
        return {
            "irreducible": self.irreducible,
            "gcd": self.gcd,
            "segment": [list(v) for v in self.segment] if self.segment else None,
        }


def eisenstein_dumas(pg: NewtonPolygon) -> EisensteinDumasWitness:
    """Single segment whose endpoints are its only lattice points."""
    if len(pg.vertices) != 2:
        return EisensteinDumasWitness(False, 0, None)
    (x0, y0), (x1, y1) = pg.vertices
    g = gcd(x1 - x0, abs(y1 - y0))
    return EisensteinDumasWitness(g == 1, g, (pg.vertices[0], pg.vertices[1]))


def eisenstein_dumas_irreducible(pg: NewtonPolygon) -> bool:
    return eisenstein_dumas(pg).irreducible

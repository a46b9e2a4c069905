"""
Exact ruler-and-compass steps in the plane over the rationals.

Lines reuse the analytic representation (a, b, c) with a*x + b*y + c = 0,
normalized so that a = 1, or b = 1 when a = 0.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Tuple

from geometry.exceptions import ConstructionError
from geometry.schemes.analytic import LineTriple, normalize_line


@dataclass(frozen=True)
class PointQ:
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "PointQ":
        return cls(Fraction(x), Fraction(y))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = PointQ.of(0, 0)


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """The nonnegative rational square root, None when there is none."""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


def print_line(line: LineTriple) -> str:
    a, b, c = line.as_tuple()
    return f"[{a}, {b}, {c}]"


def line_through(p: PointQ, q: PointQ) -> LineTriple:
    if p == q:
        raise ConstructionError(f"No unique line through {p} and {q}")
    a, b = q.y - p.y, p.x - q.x
    return normalize_line(LineTriple(a, b, -(a * p.x + b * p.y)))


def contains(line: LineTriple, p: PointQ) -> bool:
    return line.a * p.x + line.b * p.y + line.c == 0


def is_parallel(l: LineTriple, m: LineTriple) -> bool:
    return l.a * m.b == l.b * m.a


def is_orthogonal(l: LineTriple, m: LineTriple) -> bool:
    return l.a * m.a + l.b * m.b == 0


def parallel_through(line: LineTriple, p: PointQ) -> LineTriple:
    return normalize_line(LineTriple(line.a, line.b, -(line.a * p.x + line.b * p.y)))


def perpendicular_through(line: LineTriple, p: PointQ) -> LineTriple:
    a, b = -line.b, line.a
    return normalize_line(LineTriple(a, b, -(a * p.x + b * p.y)))


def meet(l: LineTriple, m: LineTriple) -> PointQ:
    """Intersection of two non-parallel lines by Cramer's rule."""
    det = l.a * m.b - l.b * m.a
    if det == 0:
        raise ConstructionError(f"Lines {print_line(l)} and {print_line(m)} do not meet in one point")
    return PointQ((l.b * m.c - m.b * l.c) / det, (m.a * l.c - l.a * m.c) / det)


def squared_distance(p: PointQ, q: PointQ) -> Fraction:
    return (p.x - q.x) ** 2 + (p.y - q.y) ** 2


def collinear(p: PointQ, q: PointQ, r: PointQ) -> bool:
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x) == 0


def _chain(s: Fraction, t: Fraction, u: Fraction) -> bool:
    return s <= t <= u or u <= t <= s


def between(p: PointQ, q: PointQ, r: PointQ) -> bool:
    """Strict betweenness, as the Hilbert scheme defines it."""
    return (
        collinear(p, q, r)
        and len({p, q, r}) == 3
        and _chain(p.x, q.x, r.x)
        and _chain(p.y, q.y, r.y)
    )


def circle_meets_line(center: PointQ, squared_radius: Fraction, line: LineTriple) -> Tuple[PointQ, ...]:
    """
    Points of ``line`` at squared distance ``squared_radius`` from ``center``.

    Raises:
        ConstructionError: the intersection points are not rational
    """
    norm = line.a**2 + line.b**2
    offset = line.a * center.x + line.b * center.y + line.c
    foot = PointQ(center.x - line.a * offset / norm, center.y - line.b * offset / norm)
    rest = (squared_radius - offset**2 / norm) / norm
    if rest < 0:
        return ()
    t = rational_sqrt(rest)
    if t is None:
        raise ConstructionError(f"Circle around {center} meets {print_line(line)} in irrational points")
    if t == 0:
        return (foot,)
    direction = (-line.b, line.a)
    return (
        PointQ(foot.x - t * direction[0], foot.y - t * direction[1]),
        PointQ(foot.x + t * direction[0], foot.y + t * direction[1]),
    )

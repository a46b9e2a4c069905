"""
The analytic plane over a field.

Points are pairs (x, y); lines are triples (a, b, c) with (a, b) != (0, 0),
read as a*x + b*y + c = 0 and identified up to a nonzero scalar. Every
defining formula is quantifier-free and division-free.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from geometry.constants import SCHEME_PP_HILBERT, SCHEME_PP_IN, SCHEME_PP_WU, SORT_ELEM, SORT_LINE, SORT_POINT
from geometry.exceptions import DegenerateLineError
from geometry.formulas.syntax import (
    EQUALITY,
    App,
    Atom,
    Formula,
    Not,
    Num,
    Term,
    Var,
    conj,
    disj,
    equals,
)
from geometry.formulas.vocabularies import (
    ADD,
    BETWEEN,
    EQUIANGULAR,
    EQUIDISTANT,
    INCIDENCE,
    INV,
    LE,
    MUL,
    NEG,
    ORTHOGONAL,
    TAU_F_FIELD,
    TAU_F_OFIELD,
    TAU_HILBERT,
    TAU_IN,
    TAU_WU,
    ZERO,
)
from geometry.schemes.scheme import RelationDefinition, SortDefinition, TranslationScheme
from geometry.structures.finite import FiniteStructure

E = SORT_ELEM


@dataclass(frozen=True)
class LineTriple:
    a: object
    b: object
    c: object

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c)


def normalize_line(line: LineTriple, field: Optional[FiniteStructure] = None) -> LineTriple:
    """
    Canonical representative of a line: scaled so that a = 1, or b = 1 when a = 0.

    Args:
        line: Coefficients as Fractions, or as element ids of ``field``
        field: Finite field the ids belong to; rational arithmetic when None

    Raises:
        DegenerateLineError: a = b = 0
    """
    if field is None:
        a, b, c = (Fraction(x) for x in line.as_tuple())
        if a != 0:
            return LineTriple(Fraction(1), b / a, c / a)
        if b != 0:
            return LineTriple(Fraction(0), Fraction(1), c / b)
        raise DegenerateLineError(f"({a}, {b}, {c}) is not a line")
    zero = field.constants[ZERO]
    inv, mul = field.functions[INV], field.functions[MUL]
    a, b, c = line.as_tuple()
    pivot = a if a != zero else b
    if pivot == zero:
        raise DegenerateLineError(f"({a}, {b}, {c}) is not a line")
    scale = inv[(pivot,)]
    return LineTriple(mul[(a, scale)], mul[(b, scale)], mul[(c, scale)])


def _canonical_line(structure: FiniteStructure, t: tuple) -> tuple:
    return normalize_line(LineTriple(*t), structure).as_tuple()


# Term builders


def v(name: str) -> Var:
    return Var(sort=E, name=name)


def n(value) -> Num:
    return Num(sort=E, value=Fraction(value))


def add(*terms: Term) -> Term:
    result = terms[0]
    for t in terms[1:]:
        result = App(sort=E, symbol=ADD, args=(result, t))
    return result


def mul(*terms: Term) -> Term:
    result = terms[0]
    for t in terms[1:]:
        result = App(sort=E, symbol=MUL, args=(result, t))
    return result


def neg(t: Term) -> Term:
    return App(sort=E, symbol=NEG, args=(t,))


def sub(s: Term, t: Term) -> Term:
    return add(s, neg(t))


def square(t: Term) -> Term:
    return mul(t, t)


def le(s: Term, t: Term) -> Formula:
    return Atom(LE, (s, t))


def is_zero(t: Term) -> Formula:
    return equals(t, n(0))


# Formula builders over point and line component variables

Point = Tuple[str, str]
Line = Tuple[str, str, str]


def incident(p: Point, l: Line) -> Formula:
    (x, y), (a, b, c) = p, l
    return is_zero(add(mul(v(a), v(x)), mul(v(b), v(y)), v(c)))


def same_point(p: Point, q: Point) -> Formula:
    return conj(equals(v(p[0]), v(q[0])), equals(v(p[1]), v(q[1])))


def squared_distance(p: Point, q: Point) -> Term:
    return add(square(sub(v(p[0]), v(q[0]))), square(sub(v(p[1]), v(q[1]))))


def cross(p: Point, q: Point, r: Point) -> Term:
    """z-component of (q - p) x (r - p)."""
    return sub(
        mul(sub(v(q[0]), v(p[0])), sub(v(r[1]), v(p[1]))),
        mul(sub(v(q[1]), v(p[1])), sub(v(r[0]), v(p[0]))),
    )


def dot(p: Point, q: Point, r: Point) -> Term:
    """(q - p) . (r - p)."""
    return add(
        mul(sub(v(q[0]), v(p[0])), sub(v(r[0]), v(p[0]))),
        mul(sub(v(q[1]), v(p[1])), sub(v(r[1]), v(p[1]))),
    )


def collinear(p: Point, q: Point, r: Point) -> Formula:
    """Determinant form of collinearity."""
    return is_zero(cross(p, q, r))


def proportional(l: Line, m: Line) -> Formula:
    (a1, b1, c1), (a2, b2, c2) = l, m
    return conj(
        equals(mul(v(a1), v(b2)), mul(v(a2), v(b1))),
        equals(mul(v(a1), v(c2)), mul(v(a2), v(c1))),
        equals(mul(v(b1), v(c2)), mul(v(b2), v(c1))),
    )


def orthogonal(l: Line, m: Line) -> Formula:
    (a1, b1, _), (a2, b2, _) = l, m
    return is_zero(add(mul(v(a1), v(a2)), mul(v(b1), v(b2))))


def _chain(s: str, t: str, u: str) -> Formula:
    return disj(conj(le(v(s), v(t)), le(v(t), v(u))), conj(le(v(u), v(t)), le(v(t), v(s))))


def between(p: Point, q: Point, r: Point) -> Formula:
    """Strict betweenness: q lies on segment pr and the three points are distinct."""
    return conj(
        collinear(p, q, r),
        Not(same_point(p, q)),
        Not(same_point(q, r)),
        Not(same_point(p, r)),
        _chain(p[0], q[0], r[0]),
        _chain(p[1], q[1], r[1]),
    )


def equiangular(p1: Point, p2: Point, p3: Point, q1: Point, q2: Point, q3: Point) -> Formula:
    """
    Angle p1 p2 p3 equals angle q1 q2 q3 (unsigned, vertex in the middle).

    tan compared as |cross|/dot: squared cross-multiplication plus agreement of
    the dot-product signs. Vertical arms need no case split in vector form.
    """
    c1, d1 = cross(p2, p1, p3), dot(p2, p1, p3)
    c2, d2 = cross(q2, q1, q3), dot(q2, q1, q3)
    nondegenerate = conj(
        Not(same_point(p1, p2)), Not(same_point(p3, p2)), Not(same_point(q1, q2)), Not(same_point(q3, q2))
    )
    return conj(
        nondegenerate,
        equals(square(mul(c1, d2)), square(mul(c2, d1))),
        le(n(0), mul(d1, d2)),
    )


# Sort definitions

_POINT = SortDefinition(sort=SORT_POINT, variables=(("x", E), ("y", E)))
_LINE = SortDefinition(
    sort=SORT_LINE,
    variables=(("a", E), ("b", E), ("c", E)),
    universe=Not(conj(is_zero(v("a")), is_zero(v("b")))),
    equality=RelationDefinition(
        EQUALITY,
        (("a1", "b1", "c1"), ("a2", "b2", "c2")),
        proportional(("a1", "b1", "c1"), ("a2", "b2", "c2")),
    ),
    canonical=_canonical_line,
    charts=((("a", 1),), (("a", 0), ("b", 1))),
)
_SORTS = {SORT_POINT: _POINT, SORT_LINE: _LINE}

_P = [(f"x{i}", f"y{i}") for i in range(1, 7)]

_INCIDENCE = RelationDefinition(INCIDENCE, (("x", "y"), ("a", "b", "c")), incident(("x", "y"), ("a", "b", "c")))
_EQUIDISTANT = RelationDefinition(
    EQUIDISTANT,
    tuple(_P[:4]),
    equals(squared_distance(_P[0], _P[1]), squared_distance(_P[2], _P[3])),
)
_ORTHOGONAL = RelationDefinition(
    ORTHOGONAL,
    (("a1", "b1", "c1"), ("a2", "b2", "c2")),
    orthogonal(("a1", "b1", "c1"), ("a2", "b2", "c2")),
)
_BETWEEN = RelationDefinition(BETWEEN, tuple(_P[:3]), between(*_P[:3]))
_EQUIANGULAR = RelationDefinition(EQUIANGULAR, tuple(_P[:6]), equiangular(*_P[:6]))


def scheme_pp_in() -> TranslationScheme:
    """Incidence plane over a field."""
    return TranslationScheme(
        name=SCHEME_PP_IN,
        source=TAU_F_FIELD,
        target=TAU_IN,
        sorts=_SORTS,
        relations={INCIDENCE: _INCIDENCE},
    )


def scheme_pp_wu() -> TranslationScheme:
    """Incidence, equidistance and orthogonality over a field."""
    return TranslationScheme(
        name=SCHEME_PP_WU,
        source=TAU_F_FIELD,
        target=TAU_WU,
        sorts=_SORTS,
        relations={INCIDENCE: _INCIDENCE, EQUIDISTANT: _EQUIDISTANT, ORTHOGONAL: _ORTHOGONAL},
    )


def scheme_pp_hilbert() -> TranslationScheme:
    """Incidence, betweenness, equidistance and equiangularity over an ordered field."""
    return TranslationScheme(
        name=SCHEME_PP_HILBERT,
        source=TAU_F_OFIELD,
        target=TAU_HILBERT,
        sorts=_SORTS,
        relations={
            INCIDENCE: _INCIDENCE,
            BETWEEN: _BETWEEN,
            EQUIDISTANT: _EQUIDISTANT,
            EQUIANGULAR: _EQUIANGULAR,
        },
    )


SCHEMES = {
    SCHEME_PP_IN: scheme_pp_in,
    SCHEME_PP_WU: scheme_pp_wu,
    SCHEME_PP_HILBERT: scheme_pp_hilbert,
}


def get_scheme(name: str) -> TranslationScheme:
    try:
        return SCHEMES[name]()
    except KeyError:
        raise KeyError(f"Unknown scheme {name}; choose from {', '.join(SCHEMES)}") from None

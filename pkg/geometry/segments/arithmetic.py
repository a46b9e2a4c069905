"""
Segment addition and multiplication by construction.

A segment class is stored as its canonical representative [A0, (length, 0)]
on the x-axis, with A0 the origin and the unit segment [A0, A1], A1 = (1, 0).
Every operation builds its configuration with exact rational intersections
and reads the result off the constructed points; the field arithmetic on the
lengths is only used by the tests as an oracle.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from geometry.exceptions import ConstructionError
from geometry.segments.plane import (
    ORIGIN,
    PointQ,
    between,
    circle_meets_line,
    line_through,
    meet,
    parallel_through,
    print_line,
    rational_sqrt,
    squared_distance,
)

logger = logging.getLogger(__name__)

UNIT_POINT = PointQ.of(1, 0)
UP_POINT = PointQ.of(0, 1)

TRICHOTOMY_EQUAL = "equal"
TRICHOTOMY_LESS = "less"  # a + c = b
TRICHOTOMY_GREATER = "greater"  # a = b + d


@dataclass(frozen=True, order=True)
class SegmentClass:
    """Class of segments with squared length ``length ** 2``."""

    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "length", Fraction(self.length))
        if self.length < 0:
            raise ValueError(f"Segment length must be nonnegative, got {self.length}")

    @classmethod
    def of(cls, p: PointQ, q: PointQ) -> "SegmentClass":
        """
        The class [p, q].

        Raises:
            ConstructionError: |pq| is irrational, so the class has no point on the
                x-axis of the rational plane
        """
        length = rational_sqrt(squared_distance(p, q))
        if length is None:
            raise ConstructionError(f"Segment [{p}, {q}] has irrational length")
        return cls(length)

    @property
    def endpoint(self) -> PointQ:
        return PointQ(self.length, Fraction(0))

    def __str__(self) -> str:
        return str(self.length)


ZERO_SEGMENT = SegmentClass(Fraction(0))
UNIT_SEGMENT = SegmentClass(Fraction(1))


@dataclass(frozen=True)
class ConstructionStep:
    label: str
    value: str

    def to_dict(self) -> Dict[str, str]:
        return {"label": self.label, "value": self.value}


@dataclass(frozen=True)
class Construction:
    operation: str
    operands: Tuple[SegmentClass, ...]
    result: Optional[SegmentClass]
    steps: Tuple[ConstructionStep, ...] = ()
    outcome: str = ""

    def to_dict(self) -> Dict[str, object]:
        data = {
            "operation": self.operation,
            "operands": [str(s) for s in self.operands],
            "result": None if self.result is None else str(self.result),
            "steps": [s.to_dict() for s in self.steps],
        }
        if self.outcome:
            data["outcome"] = self.outcome
        return data


class _Trace:
    def __init__(self):
        self.steps: List[ConstructionStep] = []

    def point(self, label: str, p: PointQ) -> PointQ:
        self.steps.append(ConstructionStep(label, str(p)))
        return p

    def line(self, label: str, line):
        self.steps.append(ConstructionStep(label, print_line(line)))
        return line

    def note(self, label: str, value) -> None:
        self.steps.append(ConstructionStep(label, str(value)))


def _lay_off(trace: _Trace, start: PointQ, segment: SegmentClass, axis) -> PointQ:
    """The point of ``axis`` at distance |segment| from ``start`` in the direction of A1."""
    candidates = circle_meets_line(start, squared_distance(ORIGIN, segment.endpoint), axis)
    trace.note("circle meets axis", ", ".join(str(p) for p in candidates))
    # the ray from A0 through A1 points along +x
    return max(candidates, key=lambda p: p.x - start.x)


def add_construction(a: SegmentClass, b: SegmentClass) -> Construction:
    """
    [P1, P2] + [P2, P3] = [P1, P3] with Be(P1, P2, P3).

    P1 is the origin and P2 the endpoint of a; the circle around P2 with
    radius b cuts the axis, and P3 is the cut beyond P2.
    """
    trace = _Trace()
    axis = trace.line("axis", line_through(ORIGIN, UNIT_POINT))
    p1 = trace.point("P1", ORIGIN)
    p2 = trace.point("P2", a.endpoint)
    p3 = trace.point("P3", _lay_off(trace, p2, b, axis))
    trace.note("Be(P1, P2, P3)", between(p1, p2, p3))
    result = SegmentClass.of(p1, p3)
    return Construction("add", (a, b), result, tuple(trace.steps))


def mul_construction(a: SegmentClass, b: SegmentClass) -> Construction:
    """
    ab = [P0, P2] from the parallel configuration.

    P0 is the origin; P1 = a and P2 lie on the x-axis, P3 = 1 and P4 = b on
    the orthogonal y-axis, and P2 is where the parallel to P1P3 through P4
    meets the x-axis. A zero factor gives the zero segment.
    """
    trace = _Trace()
    if a.length == 0 or b.length == 0:
        trace.note("zero factor", True)
        return Construction("mul", (a, b), ZERO_SEGMENT, tuple(trace.steps))
    x_axis = trace.line("x-axis", line_through(ORIGIN, UNIT_POINT))
    y_axis = trace.line("y-axis", line_through(ORIGIN, UP_POINT))
    p0 = trace.point("P0", ORIGIN)
    p1 = trace.point("P1", a.endpoint)
    p3 = trace.point("P3", _lay_off_up(trace, UNIT_SEGMENT, y_axis))
    p4 = trace.point("P4", _lay_off_up(trace, b, y_axis))
    transversal = trace.line("P1P3", line_through(p1, p3))
    parallel = trace.line("parallel through P4", parallel_through(transversal, p4))
    p2 = trace.point("P2", meet(parallel, x_axis))
    trace.note("Be(P0, P1, P2)", between(p0, p1, p2))
    trace.note("Be(P0, P3, P4)", between(p0, p3, p4))
    result = SegmentClass.of(p0, p2)
    return Construction("mul", (a, b), result, tuple(trace.steps))


def _lay_off_up(trace: _Trace, segment: SegmentClass, y_axis) -> PointQ:
    candidates = circle_meets_line(ORIGIN, squared_distance(ORIGIN, segment.endpoint), y_axis)
    trace.note("circle meets y-axis", ", ".join(str(p) for p in candidates))
    return max(candidates, key=lambda p: p.y)


def inverse_construction(a: SegmentClass) -> Construction:
    """
    The d with ad = 1: the multiplication configuration run backwards.

    P1 = a and P2 = 1 on the x-axis, P3 = 1 on the y-axis; the parallel to
    P1P3 through P2 cuts the y-axis in P4 and d = [P0, P4].

    Raises:
        ConstructionError: a is the zero segment
    """
    if a.length == 0:
        raise ConstructionError("The zero segment has no inverse")
    trace = _Trace()
    y_axis = trace.line("y-axis", line_through(ORIGIN, UP_POINT))
    p0 = trace.point("P0", ORIGIN)
    p1 = trace.point("P1", a.endpoint)
    p2 = trace.point("P2", UNIT_POINT)
    p3 = trace.point("P3", _lay_off_up(trace, UNIT_SEGMENT, y_axis))
    transversal = trace.line("P1P3", line_through(p1, p3))
    parallel = trace.line("parallel through P2", parallel_through(transversal, p2))
    p4 = trace.point("P4", meet(parallel, y_axis))
    result = SegmentClass.of(p0, p4)
    return Construction("inverse", (a,), result, tuple(trace.steps))


def trichotomy_construction(a: SegmentClass, b: SegmentClass) -> Construction:
    """
    Exactly one of a = b, a + c = b, a = b + d, with the witness segment.

    Both segments are laid off from the origin along the same ray; the
    witness is the piece between the two endpoints.
    """
    trace = _Trace()
    p0 = trace.point("P0", ORIGIN)
    pa = trace.point("A", a.endpoint)
    pb = trace.point("B", b.endpoint)
    if pa == pb:
        return Construction("trichotomy", (a, b), None, tuple(trace.steps), TRICHOTOMY_EQUAL)
    if pa == p0 or between(p0, pa, pb):
        trace.note("Be(P0, A, B)", pa != p0)
        return Construction("trichotomy", (a, b), SegmentClass.of(pa, pb), tuple(trace.steps), TRICHOTOMY_LESS)
    trace.note("Be(P0, B, A)", pb != p0)
    return Construction("trichotomy", (a, b), SegmentClass.of(pb, pa), tuple(trace.steps), TRICHOTOMY_GREATER)


def seg_add(a: SegmentClass, b: SegmentClass) -> SegmentClass:
    return add_construction(a, b).result


def seg_mul(a: SegmentClass, b: SegmentClass) -> SegmentClass:
    return mul_construction(a, b).result


def seg_inverse(a: SegmentClass) -> SegmentClass:
    return inverse_construction(a).result


def seg_trichotomy(a: SegmentClass, b: SegmentClass) -> Tuple[str, Optional[SegmentClass]]:
    """
    Returns:
        ("equal", None), ("less", c) with a + c = b, or ("greater", d) with a = b + d
    """
    construction = trichotomy_construction(a, b)
    return construction.outcome, construction.result


@dataclass(frozen=True)
class SignedSegment:
    """
    A formal difference pos - neg of segment classes.

    The ring operations use only the segment constructions; two signed
    segments are equal when pos + neg' = pos' + neg.
    """

    pos: SegmentClass = field(default=ZERO_SEGMENT)
    neg: SegmentClass = field(default=ZERO_SEGMENT)

    @classmethod
    def of(cls, value: Union[int, Fraction, str]) -> "SignedSegment":
        value = Fraction(value)
        if value >= 0:
            return cls(SegmentClass(value), ZERO_SEGMENT)
        return cls(ZERO_SEGMENT, SegmentClass(-value))

    def normalized(self) -> "SignedSegment":
        outcome, witness = seg_trichotomy(self.pos, self.neg)
        if outcome == TRICHOTOMY_EQUAL:
            return SignedSegment()
        if outcome == TRICHOTOMY_LESS:
            return SignedSegment(ZERO_SEGMENT, witness)
        return SignedSegment(witness, ZERO_SEGMENT)

    @property
    def value(self) -> Fraction:
        return self.pos.length - self.neg.length

    def __add__(self, other: "SignedSegment") -> "SignedSegment":
        return SignedSegment(seg_add(self.pos, other.pos), seg_add(self.neg, other.neg)).normalized()

    def __neg__(self) -> "SignedSegment":
        return SignedSegment(self.neg, self.pos)

    def __sub__(self, other: "SignedSegment") -> "SignedSegment":
        return self + (-other)

    def __mul__(self, other: "SignedSegment") -> "SignedSegment":
        pos = seg_add(seg_mul(self.pos, other.pos), seg_mul(self.neg, other.neg))
        neg = seg_add(seg_mul(self.pos, other.neg), seg_mul(self.neg, other.pos))
        return SignedSegment(pos, neg).normalized()

    def inverse(self) -> "SignedSegment":
        """
        Raises:
            ConstructionError: the difference is zero
        """
        reduced = self.normalized()
        if reduced.neg.length == 0:
            return SignedSegment(seg_inverse(reduced.pos), ZERO_SEGMENT)
        return SignedSegment(ZERO_SEGMENT, seg_inverse(reduced.neg))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedSegment):
            return NotImplemented
        return seg_add(self.pos, other.neg) == seg_add(other.pos, self.neg)

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return str(self.value)


OPERATIONS = {
    "add": add_construction,
    "mul": mul_construction,
    "inverse": inverse_construction,
    "trichotomy": trichotomy_construction,
}

OPERAND_COUNTS = {"add": 2, "mul": 2, "inverse": 1, "trichotomy": 2}


def run_construction(operation: str, *operands: SegmentClass) -> Construction:
    """
    Raises:
        KeyError: unknown operation
        ValueError: wrong number of operands
    """
    expected = OPERAND_COUNTS[operation]
    if len(operands) != expected:
        raise ValueError(f"Segment operation '{operation}' takes {expected} operand(s), got {len(operands)}")
    construction = OPERATIONS[operation](*operands)
    logger.debug(
        "Segment construction finished",
        extra={"operation": operation, "steps": len(construction.steps), "result": str(construction.result)},
    )
    return construction

from fractions import Fraction

from geometry.exceptions import ConstructionError
from geometry.segments.arithmetic import (
    OPERATIONS,
    TRICHOTOMY_EQUAL,
    TRICHOTOMY_GREATER,
    TRICHOTOMY_LESS,
    UNIT_SEGMENT,
    ZERO_SEGMENT,
    SegmentClass,
    SignedSegment,
    run_construction,
    seg_add,
    seg_inverse,
    seg_mul,
    seg_trichotomy,
)
from geometry.segments.plane import ORIGIN, PointQ, between, circle_meets_line, line_through, meet, rational_sqrt
from geometry.tests.base import NoLoggingTestCase
from geometry.tests.factories import random_rational, random_rational_pair, seeded_faker


class RationalPlaneTestCase(NoLoggingTestCase):
    """
    Test cases for exact constructions in the rational plane.
    """

    def test_rational_sqrt(self):
        """Square roots exist exactly for rational squares."""
        self.assertEqual(rational_sqrt(Fraction(9, 4)), Fraction(3, 2))
        self.assertIsNone(rational_sqrt(Fraction(2)))
        self.assertIsNone(rational_sqrt(Fraction(-1)))

    def test_meet(self):
        """The diagonals of the unit square meet in its center."""
        d1 = line_through(ORIGIN, PointQ.of(1, 1))
        d2 = line_through(PointQ.of(1, 0), PointQ.of(0, 1))
        self.assertEqual(meet(d1, d2), PointQ.of(Fraction(1, 2), Fraction(1, 2)))

    def test_parallel_lines_do_not_meet(self):
        """Meeting parallel lines raises ConstructionError."""
        with self.assertRaises(ConstructionError):
            meet(line_through(ORIGIN, PointQ.of(1, 0)), line_through(PointQ.of(0, 1), PointQ.of(1, 1)))

    def test_betweenness_is_strict(self):
        """Endpoints are not between."""
        a, b, c = ORIGIN, PointQ.of(1, 1), PointQ.of(2, 2)
        self.assertTrue(between(a, b, c))
        self.assertFalse(between(a, a, c))
        self.assertFalse(between(b, a, c))

    def test_irrational_circle_cut(self):
        """Circles meeting a line in irrational points are rejected."""
        with self.assertRaises(ConstructionError):
            circle_meets_line(ORIGIN, Fraction(2), line_through(ORIGIN, PointQ.of(1, 0)))


class SegmentClassTestCase(NoLoggingTestCase):
    """
    Test cases for the segment constructions against rational arithmetic.
    """

    PAIRS = 1000

    def test_addition_and_multiplication(self):
        """Constructed sums and products have the rational sum and product as length."""
        fake = seeded_faker(11)
        for _ in range(self.PAIRS):
            x, y = random_rational_pair(fake)
            a, b = SegmentClass(x), SegmentClass(y)
            self.assertEqual(seg_add(a, b).length, x + y)
            self.assertEqual(seg_mul(a, b).length, x * y)

    def test_inverse(self):
        """a times its inverse is the unit segment."""
        fake = seeded_faker(12)
        for _ in range(200):
            x = random_rational(fake, nonnegative=True)
            if x == 0:
                continue
            a = SegmentClass(x)
            self.assertEqual(seg_inverse(a).length, 1 / x)
            self.assertEqual(seg_mul(a, seg_inverse(a)), UNIT_SEGMENT)

    def test_zero_has_no_inverse(self):
        """Inverting the zero segment raises ConstructionError."""
        with self.assertRaises(ConstructionError):
            seg_inverse(ZERO_SEGMENT)

    def test_zero_factor(self):
        """A zero factor gives the zero segment."""
        self.assertEqual(seg_mul(ZERO_SEGMENT, SegmentClass(3)), ZERO_SEGMENT)

    def test_trichotomy(self):
        """Exactly one of equal, less and greater holds, with its witness."""
        fake = seeded_faker(13)
        for _ in range(200):
            x, y = random_rational_pair(fake)
            a, b = SegmentClass(x), SegmentClass(y)
            outcome, witness = seg_trichotomy(a, b)
            if x == y:
                self.assertEqual((outcome, witness), (TRICHOTOMY_EQUAL, None))
            elif x < y:
                self.assertEqual(outcome, TRICHOTOMY_LESS)
                self.assertEqual(seg_add(a, witness), b)
            else:
                self.assertEqual(outcome, TRICHOTOMY_GREATER)
                self.assertEqual(seg_add(b, witness), a)

    def test_negative_length(self):
        """Segment lengths are nonnegative."""
        with self.assertRaises(ValueError):
            SegmentClass(Fraction(-1, 2))

    def test_irrational_class(self):
        """The diagonal of the unit square has no rational class."""
        with self.assertRaises(ConstructionError):
            SegmentClass.of(ORIGIN, PointQ.of(1, 1))

    def test_class_of_pythagorean_segment(self):
        """[(0,0), (3,4)] is the class of length 5."""
        self.assertEqual(SegmentClass.of(ORIGIN, PointQ.of(3, 4)), SegmentClass(5))


class SignedSegmentTestCase(NoLoggingTestCase):
    """
    Test cases for the ring of signed segments.
    """

    TRIPLES = 100

    def triples(self, seed: int):
        fake = seeded_faker(seed)
        for _ in range(self.TRIPLES):
            yield tuple(SignedSegment.of(random_rational(fake)) for _ in range(3))

    def test_ring_laws(self):
        """Commutativity, associativity and distributivity hold."""
        for a, b, c in self.triples(21):
            self.assertEqual(a + b, b + a)
            self.assertEqual(a * b, b * a)
            self.assertEqual((a + b) + c, a + (b + c))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)

    def test_identities_and_negation(self):
        """Zero and one are identities and a - a is zero."""
        zero, one = SignedSegment.of(0), SignedSegment.of(1)
        for a, _, _ in self.triples(22):
            self.assertEqual(a + zero, a)
            self.assertEqual(a * one, a)
            self.assertEqual(a - a, zero)

    def test_values_match_rationals(self):
        """Signed segment arithmetic agrees with rational arithmetic."""
        for a, b, _ in self.triples(23):
            self.assertEqual((a + b).value, a.value + b.value)
            self.assertEqual((a * b).value, a.value * b.value)
            self.assertEqual((a - b).value, a.value - b.value)

    def test_inverse(self):
        """Nonzero signed segments have multiplicative inverses."""
        for a, _, _ in self.triples(24):
            if a.value == 0:
                continue
            self.assertEqual(a * a.inverse(), SignedSegment.of(1))

    def test_zero_inverse(self):
        """The zero difference has no inverse."""
        with self.assertRaises(ConstructionError):
            SignedSegment(SegmentClass(2), SegmentClass(2)).inverse()

    def test_equality_of_differences(self):
        """3 - 1 and 5 - 3 are the same signed segment."""
        self.assertEqual(
            SignedSegment(SegmentClass(3), SegmentClass(1)),
            SignedSegment(SegmentClass(5), SegmentClass(3)),
        )


class ConstructionTestCase(NoLoggingTestCase):
    """
    Test cases for construction traces.
    """

    def test_every_operation_leaves_a_trace(self):
        """Each operation records its construction steps."""
        a, b = SegmentClass(Fraction(3, 2)), SegmentClass(Fraction(2, 3))
        for operation in OPERATIONS:
            operands = (a,) if operation == "inverse" else (a, b)
            with self.subTest(operation=operation):
                construction = run_construction(operation, *operands)
                self.assertTrue(construction.steps)
                self.assertEqual(construction.to_dict()["operation"], operation)

    def test_add_trace(self):
        """Addition lays b off beyond a and checks betweenness."""
        data = run_construction("add", SegmentClass(1), SegmentClass(2)).to_dict()
        self.assertEqual(data["result"], "3")
        steps = {s["label"]: s["value"] for s in data["steps"]}
        self.assertEqual(steps["P3"], "(3, 0)")
        self.assertEqual(steps["Be(P1, P2, P3)"], "True")

    def test_trichotomy_outcome(self):
        """The trichotomy outcome is part of the serialized construction."""
        data = run_construction("trichotomy", SegmentClass(1), SegmentClass(3)).to_dict()
        self.assertEqual(data["outcome"], TRICHOTOMY_LESS)
        self.assertEqual(data["result"], "2")

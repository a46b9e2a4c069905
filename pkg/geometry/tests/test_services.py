from geometry.constants import (
    KERNEL_ACF0,
    KERNEL_RCF,
    SCHEME_PP_HILBERT,
    SCHEME_PP_IN,
    SCHEME_PP_WU,
    SEMANTICS_ORDERED,
    SEMANTICS_UNORDERED,
    STATUS_BUDGET,
    STATUS_INVALID,
    STATUS_UNSUPPORTED,
    STATUS_VALID,
    THEORY_AFFINE,
    THEORY_M_WU,
    THEORY_PAPPUS,
    THEORY_P_HILBERT,
    UNDECIDABILITY_NOTE,
)
from geometry.exceptions import (
    GeometryError,
    NotPrimeError,
    TheoryNotLicensedError,
    UnknownTheoryError,
    VocabularyMismatchError,
)
from geometry.serializers import VerdictSerializer
from geometry.services.check_service import Job, TheoremCheckService, Verdict
from geometry.services.roundtrip_service import RoundTripService
from geometry.services.theory_service import TheoryService
from geometry.tests.base import NoLoggingTestCase, fixture_path, read_fixture
from geometry.theories.catalog import ALTITUDES

ISOSCELES = "(forall ((A Point) (B Point) (C Point)) (Eq A B A C))"
JOINING_LINE = read_fixture("joining_line.sexp")
JOINING_LINE_UNIQUE = read_fixture("joining_line_unique.sexp")
PERPENDICULARS = read_fixture("perpendiculars.sexp")


def parse(text: str):
    return TheoremCheckService.parse_conjecture(text)


def gtc(theory: str, text: str, semantics=None, budget=None, scheme=None) -> Verdict:
    return TheoremCheckService.run_gtc(Job(theory, parse(text), semantics, budget, scheme))


class TheoremCheckServiceTestCase(NoLoggingTestCase):
    """
    Test cases for the geometric theorem checker.
    """

    def test_perpendiculars_theorem(self):
        """Two lines orthogonal to a third are parallel or equal in m-wu."""
        verdict = gtc(THEORY_M_WU, PERPENDICULARS)
        self.assertEqual(verdict.status, STATUS_VALID)
        self.assertEqual(verdict.kernel, KERNEL_ACF0)
        self.assertEqual(verdict.semantics, SEMANTICS_UNORDERED)
        self.assertEqual(verdict.scheme, SCHEME_PP_WU)
        self.assertIsNone(verdict.counterexample)
        self.assertTrue(verdict.translation.startswith("(forall"))

    def test_perpendiculars_theorem_ordered(self):
        """The same theorem holds over the reals."""
        verdict = gtc(THEORY_M_WU, PERPENDICULARS, semantics=SEMANTICS_ORDERED)
        self.assertEqual(verdict.status, STATUS_VALID)
        self.assertEqual(verdict.kernel, KERNEL_RCF)

    def test_isosceles_counterexample(self):
        """Not every triangle is isosceles; the counterexample names each point."""
        verdict = gtc(THEORY_M_WU, ISOSCELES)
        self.assertEqual(verdict.status, STATUS_INVALID)
        self.assertEqual(set(verdict.counterexample), {"A", "B", "C"})
        for point in verdict.counterexample.values():
            self.assertEqual(set(point), {"x", "y"})

    def test_altitudes_theorem(self):
        """The three heights of a triangle meet: where two of them cross, the third passes."""
        verdict = gtc(THEORY_M_WU, ALTITUDES)
        self.assertEqual(verdict.status, STATUS_VALID)
        self.assertEqual(verdict.kernel, KERNEL_ACF0)
        self.assertEqual(verdict.scheme, SCHEME_PP_WU)
        self.assertLess(verdict.time_ms, 30000)

    def test_strict_betweenness(self):
        """No point lies strictly between a point and itself."""
        verdict = gtc(THEORY_P_HILBERT, "(forall ((A Point) (B Point)) (not (Be A B A)))")
        self.assertEqual(verdict.status, STATUS_VALID)
        self.assertEqual(verdict.kernel, KERNEL_RCF)
        self.assertEqual(verdict.semantics, SEMANTICS_ORDERED)
        self.assertEqual(verdict.scheme, SCHEME_PP_HILBERT)

    def test_betweenness_counterexample(self):
        """Three arbitrary points are not in order."""
        verdict = gtc(THEORY_P_HILBERT, "(forall ((A Point) (B Point) (C Point)) (Be A B C))")
        self.assertEqual(verdict.status, STATUS_INVALID)
        self.assertEqual(verdict.counterexample["A"], {"x": "0", "y": "0"})

    def test_budget(self):
        """A tiny kernel budget is reported, not raised."""
        verdict = gtc(THEORY_M_WU, PERPENDICULARS, budget=1)
        self.assertEqual(verdict.status, STATUS_BUDGET)
        self.assertEqual(verdict.kernel, KERNEL_ACF0)
        self.assertTrue(verdict.note)

    def test_unlicensed_theory(self):
        """Theories without the field reduction are refused."""
        with self.assertRaises(TheoryNotLicensedError):
            gtc(THEORY_AFFINE, "(forall ((P Point) (l Line)) (in P l))")

    def test_unknown_theory(self):
        """Names outside the catalog raise UnknownTheoryError."""
        with self.assertRaises(UnknownTheoryError):
            gtc("projective", "(forall ((P Point) (l Line)) (in P l))")

    def test_foreign_relation(self):
        """Equidistance is not part of the Pappian plane."""
        with self.assertRaises(VocabularyMismatchError):
            gtc(THEORY_PAPPUS, ISOSCELES)

    def test_unordered_betweenness(self):
        """Betweenness cannot be checked without an order."""
        with self.assertRaises(VocabularyMismatchError):
            gtc(THEORY_P_HILBERT, "(forall ((A Point) (B Point)) (not (Be A B A)))", semantics=SEMANTICS_UNORDERED)

    def test_non_universal_conjecture(self):
        """Conjectures with existential quantifiers are outside the decidable fragment."""
        verdict = gtc(THEORY_PAPPUS, "(forall ((P Point)) (exists ((l Line)) (in P l)))")
        self.assertEqual(verdict.status, STATUS_UNSUPPORTED)
        self.assertEqual(verdict.note, UNDECIDABILITY_NOTE)
        self.assertEqual(verdict.trace, {"fragment": "general"})
        self.assertTrue(verdict.translation)

    def test_deterministic(self):
        """Identical jobs serialize to identical dictionaries."""
        first = VerdictSerializer.to_dict(gtc(THEORY_M_WU, ISOSCELES), include_timing=False)
        second = VerdictSerializer.to_dict(gtc(THEORY_M_WU, ISOSCELES), include_timing=False)
        self.assertEqual(first, second)


class SyntheticTarskiMachineTestCase(NoLoggingTestCase):
    """
    Test cases for translating and deciding arbitrary sentences.
    """

    def test_line_through_point_ordered(self):
        """Two quantifier blocks are decided over the reals."""
        verdict = TheoremCheckService.run_stm(
            parse("(forall ((P Point)) (exists ((l Line)) (in P l)))"), SEMANTICS_ORDERED
        )
        self.assertEqual(verdict.status, STATUS_VALID)
        self.assertEqual(verdict.kernel, KERNEL_RCF)

    def test_joining_line_unordered(self):
        """Unordered semantics stops at one quantifier block."""
        verdict = TheoremCheckService.run_stm(parse(JOINING_LINE), SEMANTICS_UNORDERED)
        self.assertEqual(verdict.status, STATUS_UNSUPPORTED)
        self.assertEqual(verdict.note, "2 quantifier blocks; unordered semantics decides at most 1")
        self.assertEqual(verdict.trace, {"blocks": 2})

    def test_existential_witness(self):
        """Orthogonal lines exist, with a witness for each line."""
        verdict = TheoremCheckService.run_stm(parse("(exists ((l Line) (m Line)) (Or l m))"), SEMANTICS_UNORDERED)
        self.assertEqual(verdict.status, STATUS_VALID)
        self.assertEqual(set(verdict.witness), {"l", "m"})

    def test_three_blocks_ordered(self):
        """The full first incidence axiom (forall-exists-forall) is valid over the reals."""
        verdict = TheoremCheckService.run_stm(parse(JOINING_LINE_UNIQUE), SEMANTICS_ORDERED)
        self.assertEqual(verdict.status, STATUS_VALID)
        self.assertEqual(verdict.kernel, KERNEL_RCF)
        self.assertEqual(verdict.scheme, SCHEME_PP_IN)
        self.assertIsNone(verdict.note)

    def test_three_blocks_budget(self):
        """The node budget is the only limit on ordered prefixes."""
        verdict = TheoremCheckService.run_stm(parse(JOINING_LINE_UNIQUE), SEMANTICS_ORDERED, budget=1)
        self.assertEqual(verdict.status, STATUS_BUDGET)
        self.assertEqual(verdict.kernel, KERNEL_RCF)

    def test_three_blocks_unordered(self):
        """Unordered semantics reports the block count of the full incidence axiom."""
        verdict = TheoremCheckService.run_stm(parse(JOINING_LINE_UNIQUE), SEMANTICS_UNORDERED)
        self.assertEqual(verdict.status, STATUS_UNSUPPORTED)
        self.assertEqual(verdict.note, "3 quantifier blocks; unordered semantics decides at most 1")


class SchemeSelectionTestCase(NoLoggingTestCase):
    """
    Test cases for semantics inference and scheme selection.
    """

    def test_resolve_semantics(self):
        """Order relations and ordered theories imply ordered semantics."""
        cases = [
            (None, ISOSCELES, None, SEMANTICS_UNORDERED),
            (None, ISOSCELES, THEORY_P_HILBERT, SEMANTICS_ORDERED),
            (None, "(forall ((A Point) (B Point)) (not (Be A B A)))", None, SEMANTICS_ORDERED),
            (SEMANTICS_ORDERED, ISOSCELES, None, SEMANTICS_ORDERED),
        ]
        for requested, text, theory, expected in cases:
            with self.subTest(requested=requested, theory=theory, text=text):
                self.assertEqual(TheoremCheckService.resolve_semantics(requested, parse(text), theory), expected)

    def test_smallest_scheme(self):
        """The smallest scheme defining every relation is chosen."""
        cases = [
            ("(forall ((P Point) (l Line)) (in P l))", SCHEME_PP_IN),
            (ISOSCELES, SCHEME_PP_WU),
            ("(forall ((A Point) (B Point)) (not (Be A B A)))", SCHEME_PP_HILBERT),
        ]
        for text, expected in cases:
            with self.subTest(text=text):
                self.assertEqual(TheoremCheckService.select_scheme(parse(text)).name, expected)

    def test_override_without_relation(self):
        """An override that lacks a used relation is rejected."""
        with self.assertRaises(VocabularyMismatchError):
            TheoremCheckService.select_scheme(parse(ISOSCELES), SCHEME_PP_IN)

    def test_unknown_override(self):
        """Unknown scheme names are a vocabulary mismatch."""
        with self.assertRaises(VocabularyMismatchError):
            TheoremCheckService.select_scheme(parse(ISOSCELES), "pp-origami")

    def test_translate(self):
        """Translation expands derived relations first."""
        scheme, translation = TheoremCheckService.translate(parse("(forall ((l Line) (m Line)) (Par l m))"))
        self.assertEqual(scheme.name, SCHEME_PP_IN)
        self.assertIsNotNone(translation)


class RoundTripServiceTestCase(NoLoggingTestCase):
    """
    Test cases for the round trip service.
    """

    def test_prime_spec(self):
        """p=5 builds GF(5) and closes the round trip."""
        self.assertEqual(RoundTripService.load_field("p=5").sizes["Elem"], 5)
        self.assertTrue(RoundTripService.run("p=5").ok)

    def test_cayley_spec(self):
        """cayley=<file> loads the tables."""
        report = RoundTripService.run(f"cayley={fixture_path('gf4.txt')}")
        self.assertTrue(report.ok)
        self.assertEqual(report.size, 4)

    def test_bad_spec(self):
        """Other specs raise GeometryError."""
        for spec in ("5", "q=5", "p="):
            with self.subTest(spec=spec):
                with self.assertRaises(GeometryError):
                    RoundTripService.load_field(spec)

    def test_not_prime(self):
        """p=6 is refused."""
        with self.assertRaises(NotPrimeError):
            RoundTripService.load_field("p=6")


class TheoryServiceTestCase(NoLoggingTestCase):
    """
    Test cases for the theory export service.
    """

    def test_export(self):
        """Exports list every axiom label."""
        text = TheoryService.export_axioms(THEORY_PAPPUS, 1)
        self.assertTrue(text.startswith("(theory pappus"))
        for label in TheoryService.get_theory(THEORY_PAPPUS, 1).labels:
            self.assertIn(label, text)

    def test_unknown(self):
        """Unknown theories raise UnknownTheoryError."""
        with self.assertRaises(UnknownTheoryError):
            TheoryService.get_theory("projective")


class VerdictSerializerTestCase(NoLoggingTestCase):
    """
    Test cases for VerdictSerializer.
    """

    def test_minimal(self):
        """Unset optional fields are left out."""
        data = VerdictSerializer.to_dict(Verdict(status=STATUS_UNSUPPORTED, translation="(x)", time_ms=3))
        self.assertEqual(data, {"status": STATUS_UNSUPPORTED, "translation": "(x)", "time_ms": 3})

    def test_without_timing(self):
        """Timing can be left out."""
        data = VerdictSerializer.to_dict(Verdict(status=STATUS_VALID, time_ms=9), include_timing=False)
        self.assertNotIn("time_ms", data)

    def test_full(self):
        """Set fields are all serialized."""
        verdict = Verdict(
            status=STATUS_INVALID,
            translation="t",
            counterexample={"A": {"x": "0", "y": "1"}},
            trace={"method": "rational counterexample"},
            kernel=KERNEL_ACF0,
            scheme=SCHEME_PP_WU,
            semantics=SEMANTICS_UNORDERED,
            theory=THEORY_M_WU,
        )
        data = VerdictSerializer.to_dict(verdict)
        self.assertEqual(data["counterexample"], {"A": {"x": "0", "y": "1"}})
        self.assertEqual(data["trace"], {"method": "rational counterexample"})
        self.assertEqual(data["theory"], THEORY_M_WU)
        self.assertNotIn("witness", data)
        self.assertNotIn("note", data)

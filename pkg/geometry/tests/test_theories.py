from geometry.constants import (
    THEORY_AFFINE,
    THEORY_CHOICES,
    THEORY_FIELD,
    THEORY_M_WU,
    THEORY_O_WU,
    THEORY_PAPPUS,
)
from geometry.exceptions import UnknownTheoryError
from geometry.formulas.parser import parse_formula
from geometry.formulas.transforms import quantifier_rank, relations_used, variable_names
from geometry.formulas.vocabularies import (
    EQUIDISTANT,
    INCIDENCE,
    ORTHOGONAL,
    PARALLEL,
    SYMMETRIC_LINE,
    TAU_GEOMETRY,
    TAU_IN,
    TAU_WU,
)
from geometry.structures.checking import check_theory
from geometry.structures.fields import build_prime_field
from geometry.tests.base import NoLoggingTestCase
from geometry.theories.catalog import (
    FIELD_AXIOMS,
    axiom,
    axiom_labels,
    inf_lines,
    theory,
    theory_template,
)
from geometry.theories.definitions import expand_defined_relations


class CatalogTestCase(NoLoggingTestCase):
    """
    Test cases for the theory catalog.
    """

    def test_every_theory_builds(self):
        """Each catalog theory has closed axioms over its own vocabulary."""
        for name in THEORY_CHOICES:
            with self.subTest(theory=name):
                t = theory(name)
                self.assertTrue(t.axioms)
                for a in t.axioms:
                    self.assertLessEqual(relations_used(a.formula), set(t.vocabulary.relations))

    def test_pappus_labels(self):
        """The Pappian plane lists incidence, parallels, Pappus and the scheme instance."""
        self.assertEqual(
            theory(THEORY_PAPPUS, 2).labels,
            ("I-1", "I-2", "I-3", "ParAx", "Pappus", "InfLines(2)"),
        )

    def test_template_keeps_generators(self):
        """Templates carry the InfLines scheme unexpanded."""
        template = theory_template(THEORY_AFFINE)
        self.assertEqual([name for name, _ in template.generators], ["InfLines"])
        self.assertNotIn("InfLines(0)", template.labels)

    def test_field_theory(self):
        """The field theory lists the field axioms and holds in GF(5)."""
        t = theory(THEORY_FIELD)
        self.assertEqual(t.labels, tuple(FIELD_AXIOMS))
        self.assertTrue(check_theory(build_prime_field(5), t).ok)

    def test_unknown_theory(self):
        """Names outside the catalog raise UnknownTheoryError."""
        with self.assertRaises(UnknownTheoryError):
            theory("projective")

    def test_unknown_axiom(self):
        """Labels outside the catalog raise UnknownTheoryError."""
        with self.assertRaises(UnknownTheoryError):
            axiom("I-9")

    def test_axiom_labels(self):
        """Geometric and field labels are both listed."""
        labels = axiom_labels()
        self.assertIn("Pappus", labels)
        self.assertIn("MulInv", labels)

    def test_wu_theories_unfold_parallelism(self):
        """Wu theories state ParAx without the Par relation."""
        for name in (THEORY_O_WU, THEORY_M_WU):
            with self.subTest(theory=name):
                par_ax = theory(name).axiom("ParAx").formula
                self.assertNotIn(PARALLEL, relations_used(par_ax))

    def test_inf_lines_grows(self):
        """Each scheme instance binds more variables than the last."""
        ranks = [quantifier_rank(inf_lines(n)) for n in range(4)]
        self.assertEqual(ranks, sorted(ranks))
        self.assertLess(ranks[1], ranks[3])
        self.assertEqual(relations_used(inf_lines(2)), {INCIDENCE})


class DefinedRelationTestCase(NoLoggingTestCase):
    """
    Test cases for unfolding derived relations.
    """

    def test_parallel(self):
        """Par unfolds to the absence of a common point."""
        f = parse_formula("(forall ((l Line) (m Line)) (Par l m))", TAU_GEOMETRY)
        expanded = expand_defined_relations(f)
        self.assertEqual(relations_used(expanded), {INCIDENCE})
        self.assertEqual(quantifier_rank(expanded), 3)

    def test_kept_relation(self):
        """Relations named in keep stay in place."""
        f = parse_formula("(forall ((l Line) (m Line)) (Par l m))", TAU_GEOMETRY)
        self.assertEqual(expand_defined_relations(f, keep=[PARALLEL]), f)

    def test_symmetric_line(self):
        """SymLine unfolds to incidence, equidistance and orthogonality."""
        f = parse_formula("(forall ((P Point) (l Line) (Q Point)) (SymLine P l Q))", TAU_GEOMETRY)
        expanded = expand_defined_relations(f)
        self.assertEqual(relations_used(expanded), {INCIDENCE, EQUIDISTANT, ORTHOGONAL})
        self.assertNotIn(SYMMETRIC_LINE, relations_used(expanded))

    def test_fresh_names_avoid_capture(self):
        """Introduced variables do not reuse names already in the formula."""
        f = parse_formula("(forall ((P Point) (l Line) (m Line)) (=> (in P l) (Par l m)))", TAU_GEOMETRY)
        expanded = expand_defined_relations(f)
        self.assertIn("P'", variable_names(expanded))
        self.assertEqual(len(variable_names(expanded)), 4)

    def test_plain_formula_unchanged(self):
        """Formulas without derived atoms come back unchanged."""
        f = parse_formula("(forall ((P Point) (l Line)) (in P l))", TAU_IN)
        self.assertEqual(expand_defined_relations(f), f)

    def test_catalog_unfolds_for_vocabulary(self):
        """Catalog axioms keep only the derived relations the vocabulary has."""
        self.assertEqual(relations_used(axiom("ParAx", TAU_IN).formula), {INCIDENCE})
        self.assertLessEqual(relations_used(axiom("H-2", TAU_WU).formula), set(TAU_WU.relations))

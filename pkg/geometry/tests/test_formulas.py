from fractions import Fraction

from geometry.constants import SORT_ELEM, SORT_LINE, SORT_POINT
from geometry.exceptions import FormulaSyntaxError, NestingDepthError, SortError
from geometry.formulas.parser import parse_formula
from geometry.formulas.printer import print_formula
from geometry.formulas.syntax import FALSE, TRUE, Atom, Exists, Forall, Not, Num, Var
from geometry.formulas.theory import parse_theory, print_theory
from geometry.formulas.transforms import (
    FragmentClass,
    classify_fragment,
    clear_divisions,
    contains_inverse,
    free_variables,
    nnf,
    prenex,
    quantifier_prefix,
    quantifier_rank,
    relations_used,
    substitute,
    universal_closure,
)
from geometry.formulas.vocabularies import TAU_F_OFIELD, TAU_GEOMETRY, TAU_IN, TAU_WU
from geometry.tests.base import NoLoggingTestCase
from geometry.theories.catalog import theory

I1 = "(forall ((P Point) (Q Point)) (exists ((l Line)) (and (in P l) (in Q l))))"


class ParserTestCase(NoLoggingTestCase):
    """
    Test cases for the s-expression formula reader and printer.
    """

    def test_parses_quantifiers_with_several_binders(self):
        """A binder list becomes nested quantifiers in order."""
        f = parse_formula(I1, TAU_IN)
        self.assertIsInstance(f, Forall)
        self.assertEqual((f.var, f.sort), ("P", SORT_POINT))
        self.assertIsInstance(f.body, Forall)
        self.assertIsInstance(f.body.body, Exists)
        self.assertEqual(f.body.body.sort, SORT_LINE)

    def test_print_then_parse_gives_the_same_tree(self):
        """Printing is the inverse of parsing on well-formed input."""
        f = parse_formula(I1, TAU_IN)
        self.assertEqual(parse_formula(print_formula(f), TAU_IN), f)

    def test_truth_constants(self):
        """true/false and the empty connectives denote the truth constants."""
        self.assertEqual(parse_formula("true", TAU_IN), TRUE)
        self.assertEqual(parse_formula("false", TAU_IN), FALSE)
        self.assertEqual(parse_formula("(and)", TAU_IN), TRUE)
        self.assertEqual(parse_formula("(or)", TAU_IN), FALSE)

    def test_free_variable_sorts_are_inferred(self):
        """Free variables take the sort of the argument position they fill."""
        f = parse_formula("(in P l)", TAU_IN)
        self.assertEqual(free_variables(f), frozenset({("P", SORT_POINT), ("l", SORT_LINE)}))

    def test_numerals_are_rational_terms(self):
        """a/b literals are Elem numerals in the field vocabularies."""
        f = parse_formula("(= x 3/4)", TAU_F_OFIELD, free={"x": SORT_ELEM})
        self.assertEqual(f.args[1], Num(sort=SORT_ELEM, value=Fraction(3, 4)))

    def test_comments_are_ignored(self):
        """A ';' starts a line comment."""
        f = parse_formula("; incidence\n(in P l) ; trailing", TAU_IN)
        self.assertIsInstance(f, Atom)

    def test_unbalanced_parenthesis_is_a_syntax_error(self):
        """Malformed input reports a position."""
        with self.assertRaises(FormulaSyntaxError) as context:
            parse_formula("(and (in P l)", TAU_IN)
        self.assertGreaterEqual(context.exception.line, 1)

    def test_argument_of_wrong_sort_is_rejected(self):
        """(in l P) swaps the sorts of incidence."""
        with self.assertRaises(SortError) as context:
            parse_formula("(forall ((P Point) (l Line)) (in l P))", TAU_IN)
        self.assertEqual(context.exception.symbol, "in")

    def test_unknown_relation_is_rejected(self):
        """Be is not part of the incidence vocabulary."""
        with self.assertRaises(SortError):
            parse_formula("(forall ((A Point) (B Point) (C Point)) (Be A B C))", TAU_IN)

    def test_unknown_sort_is_rejected(self):
        with self.assertRaises(SortError):
            parse_formula("(forall ((P Circle)) true)", TAU_IN)

    def test_equality_between_sorts_is_rejected(self):
        """Points and lines are never equal."""
        with self.assertRaises(SortError):
            parse_formula("(forall ((P Point) (l Line)) (= P l))", TAU_IN)


class TransformTestCase(NoLoggingTestCase):
    """
    Test cases for normal forms, prefixes and fragment classification.
    """

    def test_nnf_pushes_negation_to_atoms(self):
        """not forall becomes exists not."""
        f = parse_formula("(not (forall ((P Point)) (in P l)))", TAU_IN)
        g = nnf(f)
        self.assertIsInstance(g, Exists)
        self.assertIsInstance(g.body, Not)
        self.assertIsInstance(g.body.body, Atom)

    def test_prenex_moves_hypothesis_existentials_out_as_universals(self):
        """(exists x. A) => B is forall x. (not A or B)."""
        f = parse_formula("(=> (exists ((P Point)) (in P l)) (exists ((Q Point)) (in Q m)))", TAU_IN)
        self.assertEqual([label for label, _ in quantifier_prefix(f)], ["forall", "exists"])

    def test_prenex_keeps_alternations_minimal(self):
        """Two universal conjuncts merge into one block."""
        f = parse_formula(
            "(and (forall ((P Point)) (in P l)) (forall ((Q Point)) (exists ((m Line)) (in Q m))))", TAU_IN
        )
        self.assertEqual(len(quantifier_prefix(f)), 2)
        self.assertIsInstance(prenex(f), Forall)

    def test_classify_fragments(self):
        """Each of the fragment classes is recognised."""
        cases = {
            "(in P l)": FragmentClass.QUANTIFIER_FREE,
            "(forall ((P Point) (l Line)) (=> (in P l) (in P l)))": FragmentClass.UNIVERSAL_HORN,
            "(forall ((P Point) (l Line) (m Line)) (or (in P l) (in P m)))": FragmentClass.UNIVERSAL,
            "(exists ((P Point) (l Line)) (in P l))": FragmentClass.EXISTENTIAL,
            I1: FragmentClass.GENERAL,
        }
        for text, expected in cases.items():
            with self.subTest(text=text):
                self.assertEqual(classify_fragment(parse_formula(text, TAU_IN)), expected)

    def test_universal_fragment_includes_quantifier_free(self):
        self.assertTrue(FragmentClass.QUANTIFIER_FREE.is_universal)
        self.assertFalse(FragmentClass.EXISTENTIAL.is_universal)

    def test_relations_used_skips_equality(self):
        f = parse_formula("(forall ((P Point) (l Line) (m Line)) (=> (Or l m) (or (in P l) (= l m))))", TAU_WU)
        self.assertEqual(relations_used(f), frozenset({"in", "Or"}))

    def test_quantifier_rank_and_closure(self):
        """The universal closure binds every free variable."""
        f = universal_closure(parse_formula("(in P l)", TAU_IN))
        self.assertEqual(free_variables(f), frozenset())
        self.assertEqual(quantifier_rank(f), 2)
        self.assertEqual(quantifier_rank(parse_formula(I1, TAU_IN)), 3)

    def test_substitute_avoids_capture(self):
        """Substituting Q for P renames the bound Q."""
        f = parse_formula("(exists ((Q Point)) (not (= P Q)))", TAU_IN, free={"P": SORT_POINT})
        result = substitute(f, {"P": Var(SORT_POINT, "Q")})
        self.assertEqual(free_variables(result), frozenset({("Q", SORT_POINT)}))
        self.assertIsInstance(result, Exists)
        self.assertNotEqual(result.var, "Q")

    def test_substitute_checks_sorts(self):
        """A line cannot replace a point variable."""
        f = parse_formula("(in P l)", TAU_IN)
        with self.assertRaises(SortError):
            substitute(f, {"P": Var(SORT_LINE, "m")})

    def test_clear_divisions_removes_every_inverse(self):
        """x * inv(x) = 1 becomes a guarded atom without inverses."""
        f = parse_formula("(forall ((x Elem)) (= (mul x (inv x)) 1))", TAU_F_OFIELD)
        self.assertTrue(contains_inverse(f.body))
        cleared = clear_divisions(f)
        self.assertFalse(contains_inverse(cleared.body))

    def test_clear_divisions_respects_the_nesting_bound(self):
        f = parse_formula("(= (inv (inv (inv x))) 1)", TAU_F_OFIELD, free={"x": SORT_ELEM})
        with self.assertRaises(NestingDepthError):
            clear_divisions(f, nesting_bound=2)


class TheoryFileTestCase(NoLoggingTestCase):
    """
    Test cases for theory file printing and parsing.
    """

    def test_theory_file_round_trip(self):
        """A printed catalog theory reads back with the same axioms."""
        hilbert = theory("p-hilbert")
        parsed = parse_theory(print_theory(hilbert), TAU_GEOMETRY)
        self.assertEqual(parsed.labels, hilbert.labels)
        self.assertEqual([a.formula for a in parsed.axioms], [a.formula for a in hilbert.axioms])

import sys
from fractions import Fraction

from geometry.constants import KERNEL_ACF0, KERNEL_RCF, STATUS_INVALID, STATUS_VALID
from geometry.decision.acf import acf0_decide, acf0_decide_universal, formula_satisfiable
from geometry.decision.compiler import EQ, FALSE_P, GT, TRUE_P, compile_sentence, evaluate, poly_and, uses_order
from geometry.decision.rcf import InconsistentSigns, rcf_decide, real_qelim, run_computation
from geometry.decision.sampling import rational_counterexample, rational_witness, sample_points
from geometry.exceptions import BudgetExceeded, FragmentError, SortError
from geometry.formulas.parser import parse_formula
from geometry.formulas.vocabularies import TAU_F_OFIELD, TAU_GEOMETRY
from geometry.tests.base import NoLoggingTestCase

# Raised by the ACF0 kernel: order atoms or alternating quantifiers.
OUT_OF_FRAGMENT = "fragment"

# (sentence, ACF0 verdict, RCF verdict)
CORPUS = [
    ("(forall ((x Elem)) (lt 0 (add (mul x x) 1)))", OUT_OF_FRAGMENT, True),
    ("(exists ((x Elem)) (= (mul x x) 2))", True, True),
    ("(exists ((x Elem)) (= (mul x x) (neg 1)))", True, False),
    (
        "(forall ((x Elem) (y Elem)) (=> (= (mul x y) 0) (or (= x 0) (= y 0))))",
        True,
        True,
    ),
    ("(forall ((x Elem)) (=> (= (mul x x) 1) (= x 1)))", False, False),
    (
        "(forall ((x Elem) (y Elem)) (le (mul 2 (mul x y)) (add (mul x x) (mul y y))))",
        OUT_OF_FRAGMENT,
        True,
    ),
    (
        "(exists ((x Elem) (y Elem)) (and (= (add (mul x x) (mul y y)) 0) (not (= x 0))))",
        True,
        False,
    ),
    ("(exists ((x Elem) (y Elem)) (and (= (mul x y) 1) (= (add x y) 0)))", True, False),
    ("(exists ((x Elem)) (= (mul x (mul x x)) 2))", True, True),
    ("(forall ((x Elem)) (=> (= (mul x (mul x x)) 0) (= x 0)))", True, True),
    (
        "(forall ((x Elem) (y Elem)) (=> (= (add (mul x x) (mul y y)) 0) (= x 0)))",
        False,
        True,
    ),
    ("(forall ((x Elem)) (lt 0 (add (mul (mul x x) (mul x x)) 1)))", OUT_OF_FRAGMENT, True),
    ("(forall ((x Elem)) (=> (not (= x 0)) (= (mul x (inv x)) 1)))", True, True),
    ("(exists ((x Elem)) (lt (mul x x) 0))", OUT_OF_FRAGMENT, False),
    ("(forall ((x Elem)) (exists ((y Elem)) (lt x y)))", OUT_OF_FRAGMENT, True),
    ("(forall ((x Elem)) (exists ((y Elem)) (= (mul y y) x)))", OUT_OF_FRAGMENT, False),
    ("(exists ((x Elem)) (and (= (mul x x) 2) (lt 0 x)))", OUT_OF_FRAGMENT, True),
    ("(forall ((x Elem) (y Elem)) (or (= x y) (not (= x y))))", True, True),
    (
        "(forall ((x Elem)) (=> (= (add (mul x x) (add (mul (neg 2) x) 1)) 0) (= x 1)))",
        True,
        True,
    ),
    ("(forall ((x Elem)) (=> (= (mul x x) x) (or (= x 0) (= x 1))))", True, True),
    ("(exists ((x Elem)) (= (add (mul x x) (add x 1)) 0))", True, False),
    ("(forall ((x Elem)) (le 0 (mul x x)))", OUT_OF_FRAGMENT, True),
    (
        "(forall ((x Elem) (y Elem)) (=> (lt x y) (lt (add x 1) (add y 1))))",
        OUT_OF_FRAGMENT,
        True,
    ),
    ("(exists ((x Elem)) (= (mul 2 x) 1))", True, True),
    ("(forall ((x Elem)) (not (= (add x 1) x)))", True, True),
    (
        "(forall ((x Elem) (y Elem)) (=> (= (mul x x) (mul y y)) (or (= x y) (= x (neg y)))))",
        True,
        True,
    ),
    ("(forall ((x Elem)) (=> (= (mul x x) 2) (= x 1)))", False, False),
    ("(exists ((x Elem) (y Elem)) (and (= (add (mul x x) (mul y y)) 1) (= x y)))", True, True),
    ("(exists ((x Elem) (y Elem)) (= (add (mul x x) (mul y y)) (neg 1)))", True, False),
    (
        "(forall ((x Elem)) (=> (lt 0 x) (exists ((y Elem)) (= (mul y y) x))))",
        OUT_OF_FRAGMENT,
        True,
    ),
    ("(forall ((x Elem)) (=> (= (mul (mul x x) (mul x x)) 1) (= (mul x x) 1)))", False, True),
    ("(exists ((x Elem)) (and (lt 0 x) (lt x 1) (= (mul 3 x) 1)))", OUT_OF_FRAGMENT, True),
]


def sentence(text: str):
    return parse_formula(text, TAU_F_OFIELD)


class KernelCorpusTestCase(NoLoggingTestCase):
    """
    Test cases for the decision kernels on a fixed corpus of field sentences.
    """

    def test_acf0_corpus(self):
        """ACF0 verdicts match the expected ones; order and alternation are out of its fragment."""
        for text, expected, _ in CORPUS:
            with self.subTest(sentence=text):
                if expected == OUT_OF_FRAGMENT:
                    with self.assertRaises(FragmentError):
                        acf0_decide(sentence(text))
                    continue
                decision = acf0_decide(sentence(text))
                self.assertEqual(decision.kernel, KERNEL_ACF0)
                self.assertEqual(decision.is_valid, expected)

    def test_rcf_corpus(self):
        """RCF verdicts match the expected ones."""
        for text, _, expected in CORPUS:
            with self.subTest(sentence=text):
                decision = rcf_decide(sentence(text))
                self.assertEqual(decision.kernel, KERNEL_RCF)
                self.assertEqual(decision.is_valid, expected)

    def test_rcf_without_shortcuts(self):
        """Sign matrices alone reach the same verdicts."""
        for text, _, expected in CORPUS:
            with self.subTest(sentence=text):
                decision = rcf_decide(sentence(text), sample=False, certificates=False)
                self.assertEqual(decision.is_valid, expected)
                self.assertEqual(decision.trace["method"], "sign matrices")

    def test_acf0_without_sampling(self):
        """The Gröbner route alone reaches the same verdicts."""
        for text, expected, _ in CORPUS:
            if expected == OUT_OF_FRAGMENT:
                continue
            with self.subTest(sentence=text):
                decision = acf0_decide(sentence(text), sample=False)
                self.assertEqual(decision.is_valid, expected)
                self.assertEqual(decision.trace["method"], "groebner")

    def test_universal_monotonicity(self):
        """Universal order-free sentences valid in ACF0 are valid in RCF."""
        for text, acf, rcf in CORPUS:
            if acf is True and text.startswith("(forall"):
                with self.subTest(sentence=text):
                    self.assertTrue(rcf)
                    self.assertTrue(rcf_decide(sentence(text)).is_valid)


class KernelBehaviourTestCase(NoLoggingTestCase):
    """
    Test cases for counterexamples, witnesses, budgets and fragment checks.
    """

    def test_counterexample(self):
        """x^2 = 1 -> x = 1 fails at x = -1."""
        decision = acf0_decide(sentence("(forall ((x Elem)) (=> (= (mul x x) 1) (= x 1)))"))
        self.assertEqual(decision.status, STATUS_INVALID)
        self.assertEqual(decision.counterexample, {"x": Fraction(-1)})
        self.assertEqual(decision.trace["method"], "rational counterexample")

    def test_witness(self):
        """2x = 1 has the witness x = 1/2."""
        decision = rcf_decide(sentence("(exists ((x Elem)) (= (mul 2 x) 1))"))
        self.assertEqual(decision.status, STATUS_VALID)
        self.assertEqual(decision.witness, {"x": Fraction(1, 2)})

    def test_certificate(self):
        """Order-free universal sentences get an ACF0 certificate in RCF."""
        decision = rcf_decide(
            sentence("(forall ((x Elem)) (=> (= (mul x (mul x x)) 0) (= x 0)))"), sample=False
        )
        self.assertEqual(decision.trace["method"], "acf0 certificate")

    def test_node_budget(self):
        """The sign matrix budget is enforced."""
        text = "(forall ((x Elem) (y Elem)) (le (mul 2 (mul x y)) (add (mul x x) (mul y y))))"
        with self.assertRaises(BudgetExceeded):
            rcf_decide(sentence(text), node_cap=1, sample=False)

    def test_pair_budget(self):
        """The Gröbner pair budget is enforced."""
        text = "(forall ((x Elem)) (=> (= (mul x (mul x x)) 0) (= x 0)))"
        with self.assertRaises(BudgetExceeded):
            acf0_decide(sentence(text), pair_cap=0, sample=False)

    def test_universal_only(self):
        """acf0_decide_universal rejects existential sentences."""
        with self.assertRaises(FragmentError):
            acf0_decide_universal(sentence("(exists ((x Elem)) (= x 1))"))

    def test_free_variables(self):
        """Compiling needs a closed sentence."""
        with self.assertRaises(FragmentError):
            compile_sentence(parse_formula("(= x 1)", TAU_F_OFIELD, free={"x": "Elem"}))

    def test_geometric_sentence(self):
        """Sentences over points are not field sentences."""
        with self.assertRaises(SortError):
            compile_sentence(parse_formula("(forall ((P Point)) (= P P))", TAU_GEOMETRY))

    def test_quantifier_free_elimination(self):
        """Eliminating exists x. x^2 = 2 leaves a true constant."""
        compiled = compile_sentence(sentence("(exists ((x Elem)) (= (mul x x) 2))"))
        self.assertTrue(evaluate(real_qelim(compiled.formula), {}))

    def test_parameter_counterexample(self):
        """Once the inner block is gone, a rational point refutes the outer universal block."""
        decision = rcf_decide(sentence("(forall ((a Elem)) (exists ((x Elem)) (= (mul x x) a)))"))
        self.assertEqual(decision.status, STATUS_INVALID)
        self.assertEqual(decision.trace["method"], "rational counterexample")
        self.assertLess(decision.counterexample["a"], 0)

    def test_nested_blocks(self):
        """Three quantifier blocks are decided without a prefix limit."""
        text = (
            "(forall ((a Elem)) (exists ((x Elem)) (and (lt a x) "
            "(forall ((y Elem)) (=> (lt x y) (lt a y))))))"
        )
        decision = rcf_decide(sentence(text))
        self.assertEqual(decision.status, STATUS_VALID)
        self.assertEqual(decision.trace["method"], "sign matrices")


class ComputationStackTestCase(NoLoggingTestCase):
    """
    Test cases for running sign matrix computations on an explicit stack.
    """

    def test_depth_beyond_recursion_limit(self):
        """A chain of subcomputations deeper than the interpreter stack finishes."""

        def chain(depth):
            if depth == 0:
                return TRUE_P
            return (yield chain(depth - 1))

        self.assertEqual(run_computation(chain(sys.getrecursionlimit() * 5)), TRUE_P)

    def test_plain_results(self):
        """A yielded formula is sent back as the subcomputation's result."""

        def conjunction():
            left = yield TRUE_P
            right = yield FALSE_P
            return poly_and(left, right)

        self.assertEqual(run_computation(conjunction()), FALSE_P)

    def test_errors_reach_the_waiting_parent(self):
        """An exception inside a subcomputation is raised where the parent waits for it."""

        def failing():
            raise InconsistentSigns("x")
            yield

        def guarded():
            try:
                return (yield failing())
            except InconsistentSigns:
                return FALSE_P

        self.assertEqual(run_computation(guarded()), FALSE_P)
        with self.assertRaises(InconsistentSigns):
            run_computation(failing())


class CompilerTestCase(NoLoggingTestCase):
    """
    Test cases for compiling field sentences to polynomial formulas.
    """

    def test_atoms(self):
        """Equations become p = 0 and strict inequalities p > 0."""
        compiled = compile_sentence(sentence("(forall ((x Elem)) (and (= x 1) (lt x 2)))"))
        relations = {atom.relation for atom in compiled.matrix.parts}
        self.assertEqual(relations, {EQ, GT})
        self.assertTrue(uses_order(compiled.formula))
        self.assertEqual(compiled.variables, ("x",))

    def test_inverses_are_cleared(self):
        """Compiled sentences have no inverse symbols left."""
        compiled = compile_sentence(sentence("(forall ((x Elem)) (=> (not (= x 0)) (= (mul x (inv x)) 1)))"))
        self.assertEqual(compiled.variables, ("x",))
        self.assertTrue(evaluate(compiled.matrix, {name: Fraction(3) for name in compiled.variables}))

    def test_satisfiability(self):
        """x^2 + 1 = 0 has a complex solution."""
        compiled = compile_sentence(sentence("(exists ((x Elem)) (= (add (mul x x) 1) 0))"))
        satisfiable, trace = formula_satisfiable(compiled.matrix, compiled.variables)
        self.assertTrue(satisfiable)
        self.assertEqual(trace["disjuncts"], 1)


class SamplingTestCase(NoLoggingTestCase):
    """
    Test cases for rational sampling.
    """

    def test_deterministic(self):
        """The same arguments give the same points."""
        first = list(sample_points(["x", "y"], points=20, seed=7))
        second = list(sample_points(["x", "y"], points=20, seed=7))
        self.assertEqual(first, second)
        self.assertEqual(len(first), 25 + 20)

    def test_grid_first(self):
        """Grid values come before random points."""
        points = list(sample_points(["x"], points=3, seed=1))
        self.assertEqual([p["x"] for p in points[:5]], [0, 1, -1, 2, -2])

    def test_closed_sentence(self):
        """A sentence without variables is sampled once."""
        self.assertEqual(list(sample_points([])), [{}])

    def test_counterexample_needs_universal(self):
        """Existential sentences have no counterexample search."""
        compiled = compile_sentence(sentence("(exists ((x Elem)) (= x 1))"))
        self.assertIsNone(rational_counterexample(compiled))
        self.assertEqual(rational_witness(compiled), {"x": Fraction(1)})

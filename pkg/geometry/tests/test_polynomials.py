from fractions import Fraction

from geometry.constants import ORDER_LEX
from geometry.decision.groebner import groebner_basis, ideal_membership, s_polynomial
from geometry.decision.polynomials import MultiPoly, parse_polynomial, print_polynomial
from geometry.exceptions import BudgetExceeded, FormulaSyntaxError, VariableContextError
from geometry.tests.base import NoLoggingTestCase

XY = ("x", "y")
TXY = ("t", "x", "y")


def poly(text: str, variables=XY, order=None) -> MultiPoly:
    if order is None:
        return parse_polynomial(text, variables)
    return parse_polynomial(text, variables, order)


class MultiPolyTestCase(NoLoggingTestCase):
    """
    Test cases for polynomial arithmetic.
    """

    def test_binomial_square(self):
        """(x + y)^2 expands to x^2 + 2xy + y^2."""
        self.assertEqual(poly("(x + y)^2"), poly("x^2 + 2*x*y + y^2"))

    def test_difference_of_squares(self):
        """(x - y)(x + y) = x^2 - y^2."""
        self.assertEqual(poly("x - y") * poly("x + y"), poly("x^2 - y^2"))

    def test_printing(self):
        """Polynomials print largest monomial first with rational coefficients."""
        self.assertEqual(print_polynomial(poly("1 + x^2 - 3/2*x*y")), "x^2 - 3/2*x*y + 1")
        self.assertEqual(print_polynomial(poly("x - x")), "0")
        self.assertEqual(str(poly("-y")), "-y")

    def test_scalars(self):
        """Integers and Fractions combine with polynomials."""
        p = poly("x")
        self.assertEqual(2 * p + 1, poly("2*x + 1"))
        self.assertEqual(1 - p, poly("1 - x"))
        self.assertEqual(p * Fraction(1, 2), poly("1/2*x"))

    def test_degrees(self):
        """Total and partial degrees."""
        p = poly("x^3*y + y^2 + 1")
        self.assertEqual(p.degree(), 4)
        self.assertEqual(p.degree_in("x"), 3)
        self.assertEqual(p.degree_in("y"), 2)
        self.assertEqual(poly("0").degree(), -1)

    def test_evaluate(self):
        """Evaluation at rational points is exact."""
        self.assertEqual(poly("x^2 - 2*y").evaluate({"x": Fraction(1, 2), "y": 3}), Fraction(-23, 4))

    def test_derivative(self):
        """Formal derivatives follow the power rule."""
        self.assertEqual(poly("x^3*y + x").derivative("x"), poly("3*x^2*y + 1"))

    def test_substitute(self):
        """Substituting y = x + 1 into y^2."""
        self.assertEqual(poly("y^2").substitute("y", poly("x + 1")), poly("x^2 + 2*x + 1"))

    def test_pseudo_remainder(self):
        """lc^k * p = q * d + r with a lower degree remainder."""
        p, d = poly("x^2*y + 1"), poly("y*x + 1")
        k, r = p.pseudo_remainder(d, "x")
        self.assertEqual(k, 2)
        self.assertEqual(r, poly("y^2 + y"))
        self.assertLess(r.degree_in("x"), d.degree_in("x"))

    def test_context_mismatch(self):
        """Polynomials in different contexts do not combine."""
        with self.assertRaises(VariableContextError):
            poly("x", ("x",)) + poly("y")

    def test_extend(self):
        """Extending a context keeps the polynomial."""
        p = poly("x^2 + 1", ("x",)).extend(XY)
        self.assertEqual(p, poly("x^2 + 1"))

    def test_negative_power(self):
        """Negative powers are rejected."""
        with self.assertRaises(ValueError):
            poly("x") ** -1

    def test_unknown_order(self):
        """Only grevlex and lex are supported."""
        with self.assertRaises(VariableContextError):
            MultiPoly(XY, {}, "deglex")


class PolynomialParserTestCase(NoLoggingTestCase):
    """
    Test cases for reading polynomial text.
    """

    def test_inferred_context(self):
        """Without a context the sorted names in the text are used."""
        self.assertEqual(parse_polynomial("y*x + z").variables, ("x", "y", "z"))

    def test_dotted_names(self):
        """Component names such as P.x are variables."""
        p = parse_polynomial("P.x^2 + P.y^2")
        self.assertEqual(p.variables, ("P.x", "P.y"))

    def test_syntax_error(self):
        """Dangling operators raise FormulaSyntaxError."""
        with self.assertRaises(FormulaSyntaxError):
            parse_polynomial("x +")

    def test_fractional_exponent(self):
        """Exponents must be natural numbers."""
        with self.assertRaises(FormulaSyntaxError):
            parse_polynomial("x^1/2")

    def test_name_outside_context(self):
        """Names outside the given context raise VariableContextError."""
        with self.assertRaises(VariableContextError):
            parse_polynomial("x + z", XY)


class GroebnerTestCase(NoLoggingTestCase):
    """
    Test cases for reduced Gröbner bases and ideal membership.
    """

    def test_membership(self):
        """y - x lies in the ideal of x^2 - 1 and xy - 1."""
        basis = groebner_basis([poly("x^2 - 1"), poly("x*y - 1")])
        self.assertTrue(ideal_membership(poly("y - x"), basis))
        self.assertTrue(basis.contains(poly("x*y - 1")))
        self.assertFalse(basis.contains(poly("x - 1")))
        self.assertCountEqual(basis.to_list(), ["x - y", "y^2 - 1"])

    def test_basis_verifies(self):
        """Every S-polynomial of the basis reduces to zero."""
        basis = groebner_basis([poly("x^2 + y^2 - 1"), poly("x*y - 2"), poly("x^3 - y")])
        self.assertTrue(basis.verify())

    def test_unit_ideal(self):
        """x and x - 1 generate the whole ring."""
        basis = groebner_basis([poly("x"), poly("x - 1")])
        self.assertTrue(basis.is_unit)
        self.assertEqual(len(basis), 1)

    def test_rabinowitsch_certificate(self):
        """x^2 = 0 forces x = 0: the ideal of x^2 and 1 - t*x is the unit ideal."""
        basis = groebner_basis([poly("x^2", TXY), poly("1 - t*x", TXY)])
        self.assertTrue(basis.is_unit)

    def test_stop_at_unit(self):
        """Stopping early reports the unit basis."""
        basis = groebner_basis([poly("x*y - 1"), poly("x"), poly("y^2 + 1")], stop_at_unit=True)
        self.assertEqual(basis.to_list(), ["1"])

    def test_lex_elimination(self):
        """Lex order eliminates x from the circle and the diagonal."""
        gens = [poly("x^2 + y^2 - 1", order=ORDER_LEX), poly("x - y", order=ORDER_LEX)]
        basis = groebner_basis(gens)
        self.assertCountEqual(basis.to_list(), ["x - y", "y^2 - 1/2"])

    def test_normal_form_in_other_order(self):
        """Normal forms accept polynomials in the basis order's context."""
        basis = groebner_basis([poly("x - y", order=ORDER_LEX)])
        self.assertTrue(basis.normal_form(poly("x^2 - y^2")).is_zero)

    def test_s_polynomial(self):
        """The S-polynomial of x^2 - 1 and xy - 1 cancels the leading terms."""
        self.assertEqual(s_polynomial(poly("x^2 - 1"), poly("x*y - 1")), poly("x - y"))

    def test_pair_cap(self):
        """Exceeding the pair cap raises BudgetExceeded."""
        with self.assertRaises(BudgetExceeded):
            groebner_basis([poly("x^2 - 1"), poly("x*y - 1")], pair_cap=0)

    def test_zero_generators(self):
        """Zero generators give the zero ideal."""
        basis = groebner_basis([poly("0")])
        self.assertEqual(len(basis), 0)
        self.assertFalse(basis.contains(poly("x")))

    def test_no_generators(self):
        """An empty generator list has no variable context."""
        with self.assertRaises(VariableContextError):
            groebner_basis([])

"""
Multivariate polynomials with exact rational coefficients.

A polynomial lives in a variable context (an ordered tuple of names) and a
monomial order; arithmetic between different contexts is an error rather
than an implicit coercion. Use ``extend`` to move a polynomial into a larger
context.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import pyparsing as pp

from geometry.constants import ORDER_CHOICES, ORDER_GREVLEX, ORDER_LEX
from geometry.exceptions import FormulaSyntaxError, VariableContextError

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def grevlex_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial) -> tuple:
    return m


ORDER_KEYS = {ORDER_GREVLEX: grevlex_key, ORDER_LEX: lex_key}


def monomial_divides(m: Monomial, n: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, n))


def monomial_lcm(m: Monomial, n: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m, n))


def monomial_quotient(n: Monomial, m: Monomial) -> Monomial:
    return tuple(b - a for a, b in zip(m, n))


def monomial_product(m: Monomial, n: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m, n))


class MultiPoly:
    """
    Immutable polynomial: exponent vectors mapped to nonzero Fractions.

    Attributes:
        variables: The variable context
        terms: Monomial to coefficient, zero coefficients never stored
        order: "grevlex" (default) or "lex"
    """

    __slots__ = ("variables", "terms", "order", "_key", "_hash", "_leading")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Optional[Mapping[Monomial, Scalar]] = None,
        order: str = ORDER_GREVLEX,
    ):
        if order not in ORDER_KEYS:
            raise VariableContextError(f"Unknown monomial order {order}; choose from {', '.join(ORDER_CHOICES)}")
        self.variables: Tuple[str, ...] = tuple(variables)
        self.order = order
        self._key = ORDER_KEYS[order]
        cleaned: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if len(m) != len(self.variables):
                raise VariableContextError(f"Monomial {m} does not fit the variables {self.variables}")
            if c:
                cleaned[tuple(m)] = Fraction(c)
        self.terms: Dict[Monomial, Fraction] = cleaned
        self._hash: Optional[int] = None
        self._leading: Optional[Monomial] = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar, variables: Sequence[str], order: str = ORDER_GREVLEX) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): value}, order)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str], order: str = ORDER_GREVLEX) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableContextError(f"{name} is not one of {variables}")
        exponent = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exponent: 1}, order)

    def _new(self, terms: Mapping[Monomial, Fraction]) -> "MultiPoly":
        poly = MultiPoly.__new__(MultiPoly)
        poly.variables, poly.order, poly._key = self.variables, self.order, self._key
        poly.terms = {m: c for m, c in terms.items() if c}
        poly._hash = None
        poly._leading = None
        return poly

    def zero(self) -> "MultiPoly":
        return self._new({})

    def one(self) -> "MultiPoly":
        return self._new({(0,) * len(self.variables): Fraction(1)})

    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        """The same polynomial in a context containing every current variable."""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            raise VariableContextError(f"Context {variables} lacks {', '.join(missing)}")
        positions = [variables.index(v) for v in self.variables]
        terms = {}
        for m, c in self.terms.items():
            exponent = [0] * len(variables)
            for position, e in zip(positions, m):
                exponent[position] = e
            terms[tuple(exponent)] = c
        return MultiPoly(variables, terms, self.order)

    def with_order(self, order: str) -> "MultiPoly":
        return MultiPoly(self.variables, self.terms, order)

    # -- inspection -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or all(not any(m) for m in self.terms)

    @property
    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise VariableContextError(f"{name} is not one of {self.variables}") from None

    def degree_in(self, name: str) -> int:
        i = self.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def occurring(self) -> Tuple[str, ...]:
        """Variables with a nonzero exponent somewhere."""
        return tuple(v for i, v in enumerate(self.variables) if any(m[i] for m in self.terms))

    def monomials(self) -> List[Monomial]:
        """Monomials, largest first."""
        return sorted(self.terms, key=self._key, reverse=True)

    @property
    def monomial_key(self):
        """Sort key of the monomial order; larger keys are larger monomials."""
        return self._key

    @property
    def leading_monomial(self) -> Monomial:
        if self._leading is None:
            if not self.terms:
                raise VariableContextError("The zero polynomial has no leading monomial")
            self._leading = max(self.terms, key=self._key)
        return self._leading

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial]

    def monic(self) -> "MultiPoly":
        return self * (1 / self.leading_coefficient) if self.terms else self

    # -- arithmetic -----------------------------------------------------------

    def check_context(self, other: "MultiPoly") -> None:
        if self.variables != other.variables or self.order != other.order:
            raise VariableContextError(
                f"Polynomials live in different contexts: {self.variables}/{self.order} "
                f"and {other.variables}/{other.order}"
            )

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self.check_context(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self._new({(0,) * len(self.variables): Fraction(other)})
        raise TypeError(f"Cannot combine a polynomial with {type(other).__name__}")

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self._new({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_product(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return self._new(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result, base = self.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def mul_term(self, monomial: Monomial, coefficient: Fraction) -> "MultiPoly":
        return self._new({monomial_product(m, monomial): c * coefficient for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------------

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        values = [Fraction(assignment[v]) if any(m[i] for m in self.terms) else 0 for i, v in enumerate(self.variables)]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for value, e in zip(values, m):
                if e:
                    term *= value**e
            total += term
        return total

    def derivative(self, name: str) -> "MultiPoly":
        i = self.index(name)
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                terms[m[:i] + (m[i] - 1,) + m[i + 1 :]] = c * m[i]
        return self._new(terms)

    def coefficients_in(self, name: str) -> List["MultiPoly"]:
        """Coefficients of name^0, name^1, ... as polynomials without ``name``."""
        i = self.index(name)
        degree = self.degree_in(name)
        parts: List[Dict[Monomial, Fraction]] = [{} for _ in range(degree + 1)]
        for m, c in self.terms.items():
            parts[m[i]][m[:i] + (0,) + m[i + 1 :]] = c
        return [self._new(p) for p in parts]

    def leading_coefficient_in(self, name: str) -> "MultiPoly":
        coefficients = self.coefficients_in(name)
        return coefficients[-1] if coefficients else self.zero()

    def without_leading_in(self, name: str) -> "MultiPoly":
        i, degree = self.index(name), self.degree_in(name)
        return self._new({m: c for m, c in self.terms.items() if m[i] != degree})

    def substitute(self, name: str, value: "MultiPoly") -> "MultiPoly":
        """Replace a variable by a polynomial of the same context."""
        self.check_context(value)
        i = self.index(name)
        result = self.zero()
        powers = {0: self.one()}
        for m, c in self.terms.items():
            e = m[i]
            if e not in powers:
                powers[e] = value**e
            rest = self._new({m[:i] + (0,) + m[i + 1 :]: c})
            result = result + rest * powers[e]
        return result

    def pseudo_remainder(self, divisor: "MultiPoly", name: str) -> Tuple[int, "MultiPoly"]:
        """
        (k, r) with lc^k * self = q * divisor + r and deg_name(r) < deg_name(divisor).

        lc is the leading coefficient of ``divisor`` in ``name``.
        """
        self.check_context(divisor)
        n = divisor.degree_in(name)
        if n < 0:
            raise ZeroDivisionError("Pseudo-division by the zero polynomial")
        lead = divisor.leading_coefficient_in(name)
        i = self.index(name)
        remainder, k = self, 0
        while not remainder.is_zero and remainder.degree_in(name) >= n:
            d = remainder.degree_in(name)
            b = remainder.leading_coefficient_in(name)
            shift = tuple(d - n if j == i else 0 for j in range(len(self.variables)))
            remainder = lead * remainder - (b * divisor).mul_term(shift, Fraction(1))
            k += 1
        return k, remainder

    # -- printing -------------------------------------------------------------

    def __str__(self) -> str:
        return print_polynomial(self)

    def __repr__(self) -> str:
        return f"MultiPoly({print_polynomial(self)!r}, {self.variables})"


def print_polynomial(p: MultiPoly) -> str:
    """Infix text, largest monomial first: ``x^2 - 3/2*x*y + 1``."""
    if p.is_zero:
        return "0"
    pieces: List[str] = []
    for m in p.monomials():
        c = p.terms[m]
        factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(p.variables, m) if e]
        magnitude = abs(c)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude), *factors])
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(pieces)


# Parsing


@dataclass(frozen=True)
class _Leaf:
    kind: str
    value: object


@lru_cache(maxsize=1)
def _polynomial_grammar() -> pp.ParserElement:
    number = pp.Regex(r"\d+(/\d+)?").set_parse_action(lambda s, loc, toks: _Leaf("num", Fraction(toks[0])))
    name = pp.Regex(r"[A-Za-z_][A-Za-z0-9_.']*").set_parse_action(lambda s, loc, toks: _Leaf("var", toks[0]))
    return pp.infix_notation(
        number | name,
        [
            ("^", 2, pp.OpAssoc.RIGHT),
            ("-", 1, pp.OpAssoc.RIGHT),
            ("*", 2, pp.OpAssoc.LEFT),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT),
        ],
    )


def _names(node) -> Iterable[str]:
    if isinstance(node, _Leaf):
        if node.kind == "var":
            yield node.value
        return
    for item in node:
        if not isinstance(item, str):
            yield from _names(item)


def _exponent(node) -> int:
    if isinstance(node, _Leaf) and node.kind == "num" and node.value.denominator == 1:
        return int(node.value)
    raise FormulaSyntaxError("Exponents must be natural numbers", 0, 0)


def _build(node, variables: Tuple[str, ...], order: str) -> MultiPoly:
    if isinstance(node, _Leaf):
        if node.kind == "num":
            return MultiPoly.constant(node.value, variables, order)
        return MultiPoly.variable(node.value, variables, order)
    items = list(node)
    if len(items) == 2 and items[0] == "-":
        return -_build(items[1], variables, order)
    if items[1] == "^":
        exponent = _exponent(items[-1])
        for item in reversed(items[2:-1:2]):
            exponent = _exponent(item) ** exponent
        return _build(items[0], variables, order) ** exponent
    result = _build(items[0], variables, order)
    for op, operand in zip(items[1::2], items[2::2]):
        value = _build(operand, variables, order)
        if op == "*":
            result = result * value
        elif op == "+":
            result = result + value
        else:
            result = result - value
    return result


def parse_polynomial(
    text: str,
    variables: Optional[Sequence[str]] = None,
    order: str = ORDER_GREVLEX,
) -> MultiPoly:
    """
    Read infix polynomial text such as ``3/2*x^2*y - y + 1``.

    Args:
        text: Polynomial with +, -, *, ^ (natural exponents) and a/b literals
        variables: Context; the sorted names in the text when None
        order: Monomial order of the result

    Raises:
        FormulaSyntaxError: malformed text
        VariableContextError: a name outside the given context
    """
    try:
        parsed = _polynomial_grammar().parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise FormulaSyntaxError(exc.msg, exc.lineno, exc.col) from exc
    if variables is None:
        variables = sorted(set(_names(parsed)))
    return _build(parsed, tuple(variables), order)


def common_context(polys: Iterable[MultiPoly], extra: Sequence[str] = ()) -> Tuple[str, ...]:
    names: List[str] = []
    for p in polys:
        names.extend(p.variables)
    names.extend(extra)
    return tuple(dict.fromkeys(names))

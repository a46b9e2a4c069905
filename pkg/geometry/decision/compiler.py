"""
Field sentences as boolean combinations of polynomial sign conditions.

Every atom becomes ``p = 0``, ``p != 0``, ``p > 0`` or ``p >= 0`` for a
polynomial p over all the sentence's variables. Negations are pushed onto
the atoms while compiling, so compiled formulas contain no negation, and
atoms whose polynomial is constant are folded into truth values.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from geometry.constants import ORDER_GREVLEX, SORT_ELEM
from geometry.decision.polynomials import MultiPoly, print_polynomial
from geometry.exceptions import FragmentError, SortError
from geometry.formulas.syntax import (
    And,
    App,
    Atom,
    Const,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Num,
    Or,
    Quantifier,
    Term,
    Var,
)
from geometry.formulas.transforms import clear_divisions, contains_inverse, free_variables
from geometry.formulas.vocabularies import ADD, ADD_REL, LE, LT, MUL, MULT_REL, NEG, ONE, ZERO

EQ = "="
NE = "!="
GT = ">"
GE = ">="

_NEGATED = {EQ: NE, NE: EQ}


@dataclass(frozen=True)
class PolyTruth:
    value: bool


@dataclass(frozen=True)
class PolyAtom:
    """``poly relation 0``."""

    poly: MultiPoly
    relation: str

    def holds(self, value: Fraction) -> bool:
        if self.relation == EQ:
            return value == 0
        if self.relation == NE:
            return value != 0
        if self.relation == GT:
            return value > 0
        return value >= 0

    def holds_for_sign(self, sign: int) -> bool:
        return self.holds(Fraction(sign))


@dataclass(frozen=True)
class PolyAnd:
    parts: Tuple["PolyFormula", ...]


@dataclass(frozen=True)
class PolyOr:
    parts: Tuple["PolyFormula", ...]


@dataclass(frozen=True)
class PolyQuantifier:
    kind: type  # Forall or Exists
    var: str
    body: "PolyFormula"


PolyFormula = Union[PolyTruth, PolyAtom, PolyAnd, PolyOr, PolyQuantifier]

TRUE_P = PolyTruth(True)
FALSE_P = PolyTruth(False)


def make_atom(poly: MultiPoly, relation: str) -> PolyFormula:
    if poly.is_constant:
        return PolyTruth(PolyAtom(poly, relation).holds(poly.constant_value))
    return PolyAtom(poly, relation)


def poly_and(*parts: PolyFormula) -> PolyFormula:
    flat: List[PolyFormula] = []
    for part in parts:
        if isinstance(part, PolyTruth):
            if not part.value:
                return FALSE_P
            continue
        flat.extend(part.parts if isinstance(part, PolyAnd) else (part,))
    flat = list(dict.fromkeys(flat))
    if not flat:
        return TRUE_P
    return flat[0] if len(flat) == 1 else PolyAnd(tuple(flat))


def poly_or(*parts: PolyFormula) -> PolyFormula:
    flat: List[PolyFormula] = []
    for part in parts:
        if isinstance(part, PolyTruth):
            if part.value:
                return TRUE_P
            continue
        flat.extend(part.parts if isinstance(part, PolyOr) else (part,))
    flat = list(dict.fromkeys(flat))
    if not flat:
        return FALSE_P
    return flat[0] if len(flat) == 1 else PolyOr(tuple(flat))


def negate_atom(atom: PolyAtom) -> PolyFormula:
    if atom.relation in _NEGATED:
        return make_atom(atom.poly, _NEGATED[atom.relation])
    # not (p > 0) is -p >= 0 in an ordered field, and the other way round
    return make_atom(-atom.poly, GE if atom.relation == GT else GT)


def negate(f: PolyFormula) -> PolyFormula:
    if isinstance(f, PolyTruth):
        return PolyTruth(not f.value)
    if isinstance(f, PolyAtom):
        return negate_atom(f)
    if isinstance(f, PolyAnd):
        return poly_or(*(negate(p) for p in f.parts))
    if isinstance(f, PolyOr):
        return poly_and(*(negate(p) for p in f.parts))
    return PolyQuantifier(Exists if f.kind is Forall else Forall, f.var, negate(f.body))


def map_atoms(f: PolyFormula, fn: Callable[[PolyAtom], PolyFormula]) -> PolyFormula:
    if isinstance(f, PolyTruth):
        return f
    if isinstance(f, PolyAtom):
        return fn(f)
    if isinstance(f, PolyAnd):
        return poly_and(*(map_atoms(p, fn) for p in f.parts))
    if isinstance(f, PolyOr):
        return poly_or(*(map_atoms(p, fn) for p in f.parts))
    return PolyQuantifier(f.kind, f.var, map_atoms(f.body, fn))


def atoms(f: PolyFormula) -> List[PolyAtom]:
    if isinstance(f, PolyAtom):
        return [f]
    if isinstance(f, (PolyAnd, PolyOr)):
        return [a for p in f.parts for a in atoms(p)]
    if isinstance(f, PolyQuantifier):
        return atoms(f.body)
    return []


def uses_order(f: PolyFormula) -> bool:
    return any(a.relation in (GT, GE) for a in atoms(f))


def evaluate(f: PolyFormula, assignment: Mapping[str, Fraction]) -> bool:
    """Truth of a quantifier-free compiled formula at a rational point."""
    if isinstance(f, PolyTruth):
        return f.value
    if isinstance(f, PolyAtom):
        return f.holds(f.poly.evaluate(assignment))
    if isinstance(f, PolyAnd):
        return all(evaluate(p, assignment) for p in f.parts)
    if isinstance(f, PolyOr):
        return any(evaluate(p, assignment) for p in f.parts)
    raise FragmentError("Only quantifier-free formulas can be evaluated at a point")


def split_poly_prefix(f: PolyFormula) -> Tuple[List[Tuple[type, str]], PolyFormula]:
    prefix = []
    while isinstance(f, PolyQuantifier):
        prefix.append((f.kind, f.var))
        f = f.body
    return prefix, f


def print_poly_formula(f: PolyFormula) -> str:
    if isinstance(f, PolyTruth):
        return "true" if f.value else "false"
    if isinstance(f, PolyAtom):
        return f"{print_polynomial(f.poly)} {f.relation} 0"
    if isinstance(f, PolyAnd):
        return "(" + " & ".join(print_poly_formula(p) for p in f.parts) + ")"
    if isinstance(f, PolyOr):
        return "(" + " | ".join(print_poly_formula(p) for p in f.parts) + ")"
    label = "forall" if f.kind is Forall else "exists"
    return f"{label} {f.var}. {print_poly_formula(f.body)}"


# Compilation from formulas


@dataclass(frozen=True)
class CompiledSentence:
    variables: Tuple[str, ...]
    formula: PolyFormula

    @property
    def prefix(self) -> List[Tuple[type, str]]:
        return split_poly_prefix(self.formula)[0]

    @property
    def matrix(self) -> PolyFormula:
        return split_poly_prefix(self.formula)[1]

    def __str__(self) -> str:
        return print_poly_formula(self.formula)


def _bound_names(f: Formula, into: Dict[str, None]) -> None:
    if isinstance(f, Quantifier):
        if f.sort != SORT_ELEM:
            raise SortError("Field sentences quantify over field elements only", f.var)
        into.setdefault(f.var)
        _bound_names(f.body, into)
    elif isinstance(f, Not):
        _bound_names(f.body, into)
    elif isinstance(f, (And, Or)):
        for p in f.parts:
            _bound_names(p, into)
    elif isinstance(f, Implies):
        _bound_names(f.left, into)
        _bound_names(f.right, into)


class _Compiler:
    def __init__(self, variables: Tuple[str, ...], order: str):
        self.variables = variables
        self.order = order

    def constant(self, value) -> MultiPoly:
        return MultiPoly.constant(value, self.variables, self.order)

    def term(self, t: Term) -> MultiPoly:
        if isinstance(t, Var):
            return MultiPoly.variable(t.name, self.variables, self.order)
        if isinstance(t, Num):
            return self.constant(t.value)
        if isinstance(t, Const):
            if t.name == ZERO:
                return self.constant(0)
            if t.name == ONE:
                return self.constant(1)
            raise SortError("Unknown field constant", t.name)
        if isinstance(t, App):
            args = [self.term(a) for a in t.args]
            if t.symbol == ADD:
                return args[0] + args[1]
            if t.symbol == MUL:
                return args[0] * args[1]
            if t.symbol == NEG:
                return -args[0]
            raise FragmentError(f"Function symbol '{t.symbol}' has no polynomial reading")
        raise TypeError(f"Not a term: {t!r}")

    def atom(self, a: Atom, negated: bool) -> PolyFormula:
        if a.is_equality:
            left, right = a.args
            poly, relation = self.term(left) - self.term(right), EQ
        elif a.relation == LE:
            left, right = a.args
            poly, relation = self.term(right) - self.term(left), GE
        elif a.relation == LT:
            left, right = a.args
            poly, relation = self.term(right) - self.term(left), GT
        elif a.relation == ADD_REL:
            x, y, z = (self.term(t) for t in a.args)
            poly, relation = x + y - z, EQ
        elif a.relation == MULT_REL:
            x, y, z = (self.term(t) for t in a.args)
            poly, relation = x * y - z, EQ
        else:
            raise FragmentError(f"Relation '{a.relation}' is not a field relation")
        compiled = make_atom(poly, relation)
        if negated:
            return negate(compiled)
        return compiled

    def formula(self, f: Formula, negated: bool = False) -> PolyFormula:
        if isinstance(f, Atom):
            return self.atom(f, negated)
        if isinstance(f, Not):
            return self.formula(f.body, not negated)
        if isinstance(f, And):
            parts = [self.formula(p, negated) for p in f.parts]
            return poly_or(*parts) if negated else poly_and(*parts)
        if isinstance(f, Or):
            parts = [self.formula(p, negated) for p in f.parts]
            return poly_and(*parts) if negated else poly_or(*parts)
        if isinstance(f, Implies):
            left = self.formula(f.left, not negated)
            right = self.formula(f.right, negated)
            return poly_and(left, right) if negated else poly_or(left, right)
        if isinstance(f, Quantifier):
            kind = type(f)
            if negated:
                kind = Exists if kind is Forall else Forall
            body = self.formula(f.body, negated)
            if isinstance(body, PolyTruth):
                return body
            return PolyQuantifier(kind, f.var, body)
        raise TypeError(f"Not a formula: {f!r}")


def compile_sentence(
    f: Formula,
    order: str = ORDER_GREVLEX,
    variables: Optional[Iterable[str]] = None,
) -> CompiledSentence:
    """
    Compile a closed field sentence.

    Inverses are cleared first. The variable context is the bound variables
    in order of first binding unless ``variables`` fixes it.

    Raises:
        FragmentError: free variables, or symbols without a polynomial reading
        SortError: a quantifier over something other than field elements
    """
    free = free_variables(f)
    if free:
        raise FragmentError(f"Sentence has free variables: {', '.join(sorted(n for n, _ in free))}")
    if contains_inverse(f):
        f = clear_divisions(f)
    names: Dict[str, None] = {}
    _bound_names(f, names)
    context = tuple(variables) if variables is not None else tuple(names)
    compiled = _Compiler(context, order).formula(f)
    return CompiledSentence(context, compiled)

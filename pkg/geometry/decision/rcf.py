"""
Quantifier elimination for real closed fields in the Cohen-Hörmander style.

For ``exists x. phi`` the procedure computes a sign matrix of the polynomials
of phi: the signs they take on the points and open intervals into which their
real roots cut the line. Sign matrices are built recursively. The polynomial
of highest degree p is replaced by its derivative p', and the matrix of p', the
other polynomials and the remainders of p modulo all of them determines the
sign of p at every root of the others, from which the signs on the intervals
and the roots of p themselves follow.

Coefficients are polynomials in the outer variables; whenever the sign of one
is needed and not yet known, the computation splits on it and the result is a
quantifier-free formula in the outer variables. Innermost quantifiers are
eliminated first, so a closed sentence ends as a truth value.
"""
import logging
from types import GeneratorType
from typing import Dict, Generator, List, Optional, Tuple, Union

from geometry.conf import geometry_setting
from geometry.constants import KERNEL_RCF
from geometry.decision.acf import acf0_decide
from geometry.decision.compiler import (
    EQ,
    FALSE_P,
    GT,
    NE,
    TRUE_P,
    CompiledSentence,
    PolyAnd,
    PolyAtom,
    PolyFormula,
    PolyOr,
    PolyQuantifier,
    PolyTruth,
    atoms,
    compile_sentence,
    make_atom,
    map_atoms,
    negate,
    poly_and,
    poly_or,
    uses_order,
)
from geometry.decision.polynomials import MultiPoly
from geometry.decision.result import Decision
from geometry.decision.sampling import rational_counterexample, rational_witness
from geometry.exceptions import BudgetExceeded, FragmentError
from geometry.formulas.syntax import Exists, Forall, Formula
from geometry.formulas.transforms import prenex

logger = logging.getLogger(__name__)

ZERO = 0
POSITIVE = 1
NEGATIVE = -1
NONZERO = 2

Signs = Dict[MultiPoly, int]
Row = List[int]
Matrix = List[Row]
Computation = Generator[object, Optional[PolyFormula], PolyFormula]


class InconsistentSigns(Exception):
    """The sign assumptions of the current branch cannot hold together."""


def swap_sign(sign: int) -> int:
    return -sign if sign in (POSITIVE, NEGATIVE) else sign


def _key(p: MultiPoly):
    """Monic form of p and whether p had a negative leading coefficient."""
    return p.monic(), p.leading_coefficient < 0


def find_sign(signs: Signs, p: MultiPoly) -> Optional[int]:
    if p.is_constant:
        value = p.constant_value
        return ZERO if value == 0 else (POSITIVE if value > 0 else NEGATIVE)
    key, flipped = _key(p)
    sign = signs.get(key)
    if sign is None:
        return None
    return swap_sign(sign) if flipped else sign


def _compatible(known: Optional[int], sign: int) -> bool:
    return known is None or known == sign or (known == NONZERO and sign in (POSITIVE, NEGATIVE))


def assert_sign(signs: Signs, p: MultiPoly, sign: int) -> Signs:
    """
    A copy of ``signs`` that also records the sign of p.

    Raises:
        InconsistentSigns: p is known to have another sign
    """
    if p.is_constant:
        if not _compatible(find_sign(signs, p), sign):
            raise InconsistentSigns(str(p))
        return signs
    key, flipped = _key(p)
    stored = swap_sign(sign) if flipped else sign
    if not _compatible(signs.get(key), stored):
        raise InconsistentSigns(str(p))
    updated = dict(signs)
    updated[key] = stored
    return updated


def infer_point_sign(qs: Row, gs: Row) -> Row:
    """Sign of p at a row from the signs of the q's and of the remainders p mod q."""
    if ZERO in qs:
        return [gs[qs.index(ZERO)]] + qs
    return [NONZERO] + qs


def condense(rows: Matrix) -> Matrix:
    """Drop each point where nothing vanishes, merging the intervals around it."""
    condensed: Matrix = []
    i = 0
    while i + 1 < len(rows):
        if ZERO in rows[i + 1]:
            condensed.extend((rows[i], rows[i + 1]))
        i += 2
    condensed.extend(rows[i:])
    return condensed


def infer_interval_signs(rows: Matrix) -> Matrix:
    """
    Fill in the sign of p on every interval from its signs at the two ends.

    An interval whose ends have opposite signs contains exactly one root of p,
    because p' has no root inside it, so it is split into three rows.

    Raises:
        InconsistentSigns: p vanishes at both ends of an interval, which Rolle's
            theorem forbids
    """
    inferred = [rows[0]]
    for i in range(0, len(rows) - 2, 2):
        left, interval, right = rows[i][0], rows[i + 1][1:], rows[i + 2]
        if left == ZERO and right[0] == ZERO:
            raise InconsistentSigns("two roots without a root of the derivative between them")
        if NONZERO in (left, right[0]):
            raise InconsistentSigns("undetermined sign at a point")
        if left == ZERO:
            inferred.append([right[0]] + interval)
        elif right[0] == ZERO or left == right[0]:
            inferred.append([left] + interval)
        else:
            inferred.extend(([left] + interval, [ZERO] + interval, [right[0]] + interval))
        inferred.append(right)
    return inferred


def run_computation(root: Computation) -> PolyFormula:
    """
    Run a sign matrix computation on an explicit stack.

    A computation is a generator that yields the subcomputations it needs and
    receives their results; a yielded formula stands for itself. Exceptions
    travel to the waiting parent as they would up a call stack, so the depth
    of the case splits is bounded by memory instead of the recursion limit.
    """
    stack: List[Computation] = [root]
    value: Optional[PolyFormula] = None
    error: Optional[Exception] = None
    while True:
        top = stack[-1]
        try:
            step = top.throw(error) if error is not None else top.send(value)
        except StopIteration as finished:
            stack.pop()
            value, error = finished.value, None
            if not stack:
                return value
            continue
        except Exception as raised:
            stack.pop()
            if not stack:
                raise
            value, error = None, raised
            continue
        error = None
        if isinstance(step, GeneratorType):
            stack.append(step)
            value = None
        else:
            value = step


class CohenHormander:
    """
    One elimination run with its node budget.

    Continuations take a sign assumption dict (or a sign matrix) and return a
    formula or a computation for ``run_computation``.

    Attributes:
        node_cap: Most case splits and matrix steps before giving up
        nodes: Steps taken so far
    """

    def __init__(self, node_cap: Optional[int] = None):
        self.node_cap = geometry_setting("CH_NODE_CAP", node_cap)
        self.nodes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_cap:
            logger.warning("Sign matrix budget exhausted", extra={"cap": self.node_cap})
            raise BudgetExceeded("CH_NODE_CAP", self.node_cap)

    # -- case splits on coefficient signs ---------------------------------------

    def split_zero(self, signs: Signs, p: MultiPoly, if_zero, if_nonzero) -> Computation:
        known = find_sign(signs, p)
        if known is not None:
            return (yield if_zero(signs) if known == ZERO else if_nonzero(signs))
        zero = yield if_zero(assert_sign(signs, p, ZERO))
        nonzero = yield if_nonzero(assert_sign(signs, p, NONZERO))
        if zero == nonzero:
            return zero
        return poly_or(poly_and(make_atom(p, EQ), zero), poly_and(make_atom(p, NE), nonzero))

    def split_sign(self, signs: Signs, p: MultiPoly, cont) -> Computation:
        if find_sign(signs, p) != NONZERO:
            return (yield cont(signs))
        positive = yield cont(assert_sign(signs, p, POSITIVE))
        negative = yield cont(assert_sign(signs, p, NEGATIVE))
        # both branches sit under p != 0
        if positive == negative:
            return positive
        return poly_or(poly_and(make_atom(p, GT), positive), poly_and(make_atom(-p, GT), negative))

    def split_trichotomy(self, signs: Signs, p: MultiPoly, if_zero, if_signed) -> Computation:
        return self.split_zero(signs, p, if_zero, lambda s: self.split_sign(s, p, if_signed))

    # -- sign matrices ------------------------------------------------------------

    def casesplit(self, x: str, done: List[MultiPoly], pending: List[MultiPoly], cont, signs: Signs) -> Computation:
        """
        Fix the degree of every pending polynomial by splitting on its leading
        coefficient, then build the matrix of those with positive degree.
        """
        self._tick()
        if not pending:
            return (yield self.matrix(x, done, cont, signs))
        p, rest = pending[0], pending[1:]
        head = p.leading_coefficient_in(x)
        if p.degree_in(x) <= 0:

            def drop(s: Signs) -> Computation:
                return self.delconst(x, done, p, rest, cont, s)

            return (yield self.split_trichotomy(signs, head, drop, drop))
        return (
            yield self.split_trichotomy(
                signs,
                head,
                lambda s: self.casesplit(x, done, [p.without_leading_in(x)] + rest, cont, s),
                lambda s: self.casesplit(x, done + [p], rest, cont, s),
            )
        )

    def delconst(self, x: str, done, p: MultiPoly, rest, cont, signs: Signs) -> Computation:
        sign = find_sign(signs, p)
        position = len(done)

        def insert(matrix: Matrix):
            return cont([row[:position] + [sign] + row[position:] for row in matrix])

        return (yield self.casesplit(x, done, rest, insert, signs))

    def matrix(self, x: str, polys: List[MultiPoly], cont, signs: Signs) -> Computation:
        self._tick()
        if not polys:
            try:
                return (yield cont([[]]))
            except InconsistentSigns:
                return FALSE_P
        degrees = [q.degree_in(x) for q in polys]
        i = degrees.index(max(degrees))
        p = polys[i]
        qs = [p.derivative(x)] + polys[:i] + polys[i + 1 :]
        gs = [self.remainder(x, signs, p, q) for q in qs]

        def restore(matrix: Matrix):
            return cont([row[1 : i + 1] + [row[0]] + row[i + 1 :] for row in matrix])

        return (yield self.casesplit(x, [], qs + gs, lambda m: self.deduce(restore, m), signs))

    def remainder(self, x: str, signs: Signs, p: MultiPoly, q: MultiPoly) -> MultiPoly:
        """p mod q, scaled so that at every root of q it has the sign of p."""
        head = q.leading_coefficient_in(x)
        k, r = p.pseudo_remainder(q, x)
        sign = find_sign(signs, head)
        if sign is None or sign == ZERO:
            raise InconsistentSigns("leading coefficient of a divisor without a known sign")
        if sign == POSITIVE or k % 2 == 0:
            return r
        if sign == NEGATIVE:
            return -r
        return head * r

    def deduce(self, cont, matrix: Matrix) -> Computation:
        """From the matrix of [p', others, remainders] to the matrix of [p, others]."""
        half = len(matrix[0]) // 2
        with_p = condense([infer_point_sign(row[:half], row[half:]) for row in matrix])
        # p has the sign of p' at +infinity and the opposite sign at -infinity
        bounded = [[swap_sign(with_p[0][1])]] + with_p + [[with_p[-1][1]]]
        inferred = infer_interval_signs(bounded)[1:-1]
        return (yield cont(condense([[row[0]] + row[2:] for row in inferred])))

    # -- elimination ----------------------------------------------------------------

    def exists(self, x: str, body: PolyFormula) -> PolyFormula:
        """A quantifier-free equivalent of ``exists x. body``."""
        if isinstance(body, PolyOr):
            return poly_or(*(self.exists(x, part) for part in body.parts))
        if isinstance(body, PolyAnd):
            free = [part for part in body.parts if not _mentions(part, x)]
            if free:
                bound = [part for part in body.parts if _mentions(part, x)]
                return poly_and(*free, self.exists(x, poly_and(*bound)))
        if not _mentions(body, x):
            return body
        value = _linear_solution(body, x)
        if value is not None:
            return map_atoms(body, lambda a: make_atom(a.poly.substitute(x, value), a.relation))
        polys = list(dict.fromkeys(a.poly for a in atoms(body)))

        def test(matrix: Matrix) -> PolyFormula:
            for row in matrix:
                if _holds(body, dict(zip(polys, row))):
                    return TRUE_P
            return FALSE_P

        return run_computation(self.casesplit(x, [], polys, test, {}))

    def eliminate(self, f: PolyFormula) -> PolyFormula:
        if isinstance(f, PolyQuantifier):
            body = self.eliminate(f.body)
            if f.kind is Forall:
                return negate(self.exists(f.var, negate(body)))
            return self.exists(f.var, body)
        if isinstance(f, PolyAnd):
            return poly_and(*(self.eliminate(p) for p in f.parts))
        if isinstance(f, PolyOr):
            return poly_or(*(self.eliminate(p) for p in f.parts))
        return f


def _mentions(f: PolyFormula, x: str) -> bool:
    return any(x in a.poly.occurring() for a in atoms(f))



def _linear_solution(body: PolyFormula, x: str) -> Optional[MultiPoly]:
    """-r/c for a conjunct c*x + r = 0 with c a nonzero constant; x is then determined."""
    parts = body.parts if isinstance(body, PolyAnd) else (body,)
    for part in parts:
        if isinstance(part, PolyAtom) and part.relation == EQ and part.poly.degree_in(x) == 1:
            rest, coefficient = part.poly.coefficients_in(x)
            if coefficient.is_constant:
                return rest * (-1 / coefficient.constant_value)
    return None

def _holds(f: PolyFormula, signs: Dict[MultiPoly, int]) -> bool:
    if isinstance(f, PolyTruth):
        return f.value
    if isinstance(f, PolyAtom):
        return f.holds_for_sign(signs[f.poly])
    if isinstance(f, PolyAnd):
        return all(_holds(p, signs) for p in f.parts)
    if isinstance(f, PolyOr):
        return any(_holds(p, signs) for p in f.parts)
    raise FragmentError("Quantifier below an eliminated quantifier")


def universal_block(f: PolyFormula) -> Tuple[List[str], PolyFormula]:
    """The variables of the leading universal block and the formula under it."""
    names: List[str] = []
    while isinstance(f, PolyQuantifier) and f.kind is Forall:
        names.append(f.var)
        f = f.body
    return names, f


def universal_closure(names: List[str], f: PolyFormula) -> PolyFormula:
    for name in reversed(names):
        f = PolyQuantifier(Forall, name, f)
    return f


def real_qelim(f: PolyFormula, node_cap: Optional[int] = None) -> PolyFormula:
    """Quantifier-free equivalent of a compiled formula over the reals."""
    return CohenHormander(node_cap).eliminate(f)


def rcf_decide(
    s: Union[Formula, CompiledSentence],
    node_cap: Optional[int] = None,
    sample: bool = True,
    certificates: bool = True,
) -> Decision:
    """
    Decide a closed sentence of ordered field arithmetic in RCF.

    Inner quantifiers are eliminated in place with the leading universal block
    as parameters; the quantifier-free remainder is sampled for a rational
    counterexample before the parameters are eliminated too. The node budget
    is the only limit on the prefix.

    Args:
        s: Closed sentence over the ordered field vocabularies, or its compiled form
        node_cap: Sign matrix budget (settings default)
        sample: Look for a rational counterexample (universal) or witness
            (existential) first
        certificates: For universal sentences without order relations, accept an
            ACF0 proof of validity before eliminating

    Returns:
        Decision with kernel "rcf"

    Raises:
        BudgetExceeded: the node budget ran out
    """
    sentence = s if isinstance(s, CompiledSentence) else compile_sentence(prenex(s))
    kinds = {kind for kind, _ in sentence.prefix}

    if sample and kinds <= {Forall}:
        point = rational_counterexample(sentence)
        if point is not None:
            return Decision.of(False, KERNEL_RCF, counterexample=point, trace={"method": "rational counterexample"})
    if sample and kinds == {Exists}:
        point = rational_witness(sentence)
        if point is not None:
            return Decision.of(True, KERNEL_RCF, witness=point, trace={"method": "rational witness"})

    if certificates and kinds <= {Forall} and not uses_order(sentence.formula):
        try:
            certificate = acf0_decide(sentence, sample=False)
        except BudgetExceeded:
            certificate = None
        if certificate is not None and certificate.is_valid:
            return Decision.of(True, KERNEL_RCF, trace={**certificate.trace, "method": "acf0 certificate"})

    # nested quantifiers are eliminated where they stand, each with only its own scope as parameters
    nested = s if isinstance(s, CompiledSentence) else compile_sentence(s)
    parameters, body = universal_block(nested.formula)
    kernel = CohenHormander(node_cap)
    result = kernel.eliminate(body)
    if parameters and not isinstance(result, PolyTruth):
        # forall x. psi(x) is valid exactly when the quantifier-free psi holds everywhere
        closed = CompiledSentence(nested.variables, universal_closure(parameters, result))
        point = rational_counterexample(closed) if sample and not kinds <= {Forall} else None
        if point is not None:
            return Decision.of(
                False,
                KERNEL_RCF,
                counterexample=point,
                trace={"method": "rational counterexample", "nodes": kernel.nodes},
            )
        result = kernel.eliminate(closed.formula)
    if not isinstance(result, PolyTruth):
        raise FragmentError("Elimination left free variables behind")
    logger.debug(
        "RCF decision finished",
        extra={
            "valid": result.value,
            "variables": len(nested.variables),
            "parameters": len(parameters),
            "nodes": kernel.nodes,
        },
    )
    return Decision.of(result.value, KERNEL_RCF, trace={"method": "sign matrices", "nodes": kernel.nodes})

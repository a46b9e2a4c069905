"""
Decisions in algebraically closed fields of characteristic zero.

A universal sentence holds in every such field exactly when the negation of
its matrix has no complex solution. That negation is put in disjunctive
normal form; each disjunct {p = 0, ..., q != 0, ...} is unsatisfiable exactly
when 1 lies in the ideal of the p's together with t * prod(q) - 1. Existential
sentences are decided by the same satisfiability test on the matrix itself.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from geometry.conf import geometry_setting
from geometry.constants import KERNEL_ACF0
from geometry.decision.compiler import (
    EQ,
    NE,
    CompiledSentence,
    PolyAnd,
    PolyAtom,
    PolyFormula,
    PolyOr,
    PolyTruth,
    compile_sentence,
    negate,
    uses_order,
)
from geometry.decision.groebner import groebner_basis
from geometry.decision.polynomials import MultiPoly, common_context
from geometry.decision.result import Decision
from geometry.decision.sampling import rational_counterexample, rational_witness
from geometry.exceptions import BudgetExceeded, FragmentError
from geometry.formulas.syntax import Exists, Forall, Formula
from geometry.formulas.transforms import fresh_name, prenex

logger = logging.getLogger(__name__)


def _sentence(s: Union[Formula, CompiledSentence]) -> CompiledSentence:
    if isinstance(s, CompiledSentence):
        return s
    return compile_sentence(prenex(s))


class _Names:
    def __init__(self, taken: Sequence[str]):
        self.taken = set(taken)

    def fresh(self, base: str) -> str:
        name = base if base not in self.taken else fresh_name(base, self.taken)
        self.taken.add(name)
        return name


def collapse_disequalities(f: PolyFormula, names: _Names) -> PolyFormula:
    """
    Replace each disjunction of disequalities q1 != 0 | ... | qk != 0 by the
    equation u1*q1 + ... + uk*qk - 1 = 0 over fresh variables.

    Only valid for satisfiability of formulas without negation, which is all
    compiled formulas are.
    """
    if isinstance(f, PolyOr):
        parts = [collapse_disequalities(p, names) for p in f.parts]
        if all(isinstance(p, PolyAtom) and p.relation == NE for p in parts) and len(parts) > 1:
            fresh = [names.fresh("u") for _ in parts]
            context = common_context([p.poly for p in parts], fresh)
            total = MultiPoly.constant(-1, context, parts[0].poly.order)
            for u, atom in zip(fresh, parts):
                total = total + MultiPoly.variable(u, context, total.order) * atom.poly.extend(context)
            return PolyAtom(total, EQ)
        return PolyOr(tuple(parts))
    if isinstance(f, PolyAnd):
        return PolyAnd(tuple(collapse_disequalities(p, names) for p in f.parts))
    return f


def disjunctive_normal_form(f: PolyFormula, cap: int) -> List[List[PolyAtom]]:
    """
    Raises:
        BudgetExceeded: more than ``cap`` disjuncts
    """
    if isinstance(f, PolyTruth):
        return [[]] if f.value else []
    if isinstance(f, PolyAtom):
        return [[f]]
    if isinstance(f, PolyOr):
        disjuncts: List[List[PolyAtom]] = []
        for part in f.parts:
            disjuncts.extend(disjunctive_normal_form(part, cap))
            if len(disjuncts) > cap:
                raise BudgetExceeded("DNF_DISJUNCT_CAP", cap)
        return disjuncts
    if isinstance(f, PolyAnd):
        disjuncts = [[]]
        for part in f.parts:
            sub = disjunctive_normal_form(part, cap)
            if len(disjuncts) * len(sub) > cap:
                raise BudgetExceeded("DNF_DISJUNCT_CAP", cap)
            disjuncts = [d + s for d in disjuncts for s in sub]
        return disjuncts
    raise FragmentError("Quantifiers inside a matrix")


def _linear_variable(p: MultiPoly) -> Optional[Tuple[str, MultiPoly]]:
    """A variable v with p = c*v + r, c a nonzero constant and r free of v, with -r/c."""
    for name in p.occurring():
        if p.degree_in(name) != 1:
            continue
        rest, coefficient = p.coefficients_in(name)
        if coefficient.is_constant:
            return name, rest * (-1 / coefficient.constant_value)
    return None


def eliminate_linear(equations: List[MultiPoly], disequations: List[MultiPoly]) -> Optional[Tuple[list, list, int]]:
    """
    Solve equations that are linear in some variable and substitute the solution.

    Returns:
        (equations, disequations, eliminated), or None when a constraint became
        a false constant
    """
    eliminated = 0
    while True:
        for i, e in enumerate(equations):
            solved = _linear_variable(e)
            if solved is not None:
                break
        else:
            return equations, disequations, eliminated
        name, value = solved
        eliminated += 1
        equations = [p.substitute(name, value) for j, p in enumerate(equations) if j != i]
        disequations = [q.substitute(name, value) for q in disequations]
        if any(p.is_constant and not p.is_zero for p in equations):
            return None
        if any(q.is_zero for q in disequations):
            return None
        equations = [p for p in equations if not p.is_zero]
        disequations = [q for q in disequations if not q.is_constant]


def disjunct_satisfiable(
    literals: Sequence[PolyAtom],
    names: _Names,
    pair_cap: Optional[int] = None,
) -> Tuple[bool, Dict[str, int]]:
    """
    Whether a conjunction of equations and disequations has a complex solution.

    Returns:
        (satisfiable, trace entry)
    """
    if any(atom.relation not in (EQ, NE) for atom in literals):
        raise FragmentError("Order relations have no meaning in an algebraically closed field")
    t = names.fresh("t")
    context = common_context([atom.poly for atom in literals], (t,))
    equations = [a.poly.extend(context) for a in literals if a.relation == EQ]
    disequations = [a.poly.extend(context) for a in literals if a.relation == NE]
    reduced = eliminate_linear(equations, disequations)
    if reduced is None:
        return False, {"eliminated": 0, "basis": 0, "pairs": 0}
    equations, disequations, eliminated = reduced
    entry = {"eliminated": eliminated, "basis": 0, "pairs": 0}
    if not equations:
        # a nonzero polynomial has a nonzero value somewhere in an infinite field
        return True, entry
    if disequations:
        product = MultiPoly.constant(1, context, equations[0].order)
        for q in disequations:
            product = product * q
        equations = equations + [MultiPoly.variable(t, context, product.order) * product - 1]
    basis = groebner_basis(equations, pair_cap=pair_cap, stop_at_unit=True)
    entry.update(basis=len(basis), pairs=basis.pairs_processed)
    return not basis.is_unit, entry


def formula_satisfiable(
    f: PolyFormula,
    variables: Sequence[str],
    pair_cap: Optional[int] = None,
    disjunct_cap: Optional[int] = None,
) -> Tuple[bool, Dict[str, object]]:
    """Whether a quantifier-free compiled formula has a complex solution."""
    cap = geometry_setting("DNF_DISJUNCT_CAP", disjunct_cap)
    names = _Names(variables)
    disjuncts = disjunctive_normal_form(collapse_disequalities(f, names), cap)
    trace: Dict[str, object] = {"disjuncts": len(disjuncts), "groebner": []}
    for literals in disjuncts:
        satisfiable, entry = disjunct_satisfiable(literals, names, pair_cap)
        trace["groebner"].append(entry)
        if satisfiable:
            return True, trace
    return False, trace


def acf0_decide(
    s: Union[Formula, CompiledSentence],
    pair_cap: Optional[int] = None,
    disjunct_cap: Optional[int] = None,
    sample: bool = True,
) -> Decision:
    """
    Decide a universal or existential field sentence in ACF0.

    Args:
        s: Closed sentence over the field vocabularies, or its compiled form
        pair_cap: Gröbner pair budget per disjunct (settings default)
        disjunct_cap: DNF size budget (settings default)
        sample: Look for a rational counterexample or witness first

    Returns:
        Decision with kernel "acf0"

    Raises:
        FragmentError: alternating quantifiers or order relations
        BudgetExceeded: a budget ran out
    """
    sentence = _sentence(s)
    if uses_order(sentence.formula):
        raise FragmentError("Order relations have no meaning in an algebraically closed field")
    kinds = {kind for kind, _ in sentence.prefix}
    if len(kinds) > 1:
        raise FragmentError("Only universal and existential sentences are decided in ACF0")
    existential = kinds == {Exists}

    if sample:
        point = rational_witness(sentence) if existential else rational_counterexample(sentence)
        if point is not None:
            method = "rational witness" if existential else "rational counterexample"
            logger.debug("ACF0 decided by sampling", extra={"method": method})
            if existential:
                return Decision.of(True, KERNEL_ACF0, witness=point, trace={"method": method})
            return Decision.of(False, KERNEL_ACF0, counterexample=point, trace={"method": method})

    target = sentence.matrix if existential else negate(sentence.matrix)
    satisfiable, trace = formula_satisfiable(target, sentence.variables, pair_cap, disjunct_cap)
    trace["method"] = "groebner"
    valid = satisfiable if existential else not satisfiable
    logger.debug(
        "ACF0 decision finished",
        extra={"valid": valid, "variables": len(sentence.variables), "disjuncts": trace["disjuncts"]},
    )
    return Decision.of(valid, KERNEL_ACF0, trace=trace)


def acf0_decide_universal(s: Union[Formula, CompiledSentence], **options) -> Decision:
    """
    Decide a universal sentence in ACF0.

    Raises:
        FragmentError: the sentence has an existential quantifier after prenexing
    """
    sentence = _sentence(s)
    if any(kind is not Forall for kind, _ in sentence.prefix):
        raise FragmentError("Expected a universal sentence")
    return acf0_decide(sentence, **options)

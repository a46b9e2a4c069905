"""
Buchberger's algorithm with the product and chain criteria.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from geometry.conf import geometry_setting
from geometry.decision.polynomials import MultiPoly, monomial_divides, monomial_lcm, monomial_quotient
from geometry.exceptions import BudgetExceeded, VariableContextError

logger = logging.getLogger(__name__)


def reduce_by(p: MultiPoly, divisors: Sequence[MultiPoly]) -> MultiPoly:
    """Remainder of ``p`` after full multivariate division by ``divisors``."""
    divisors = [d for d in divisors if not d.is_zero]
    leads = [(d.leading_monomial, d.leading_coefficient, d) for d in divisors]
    remainder = {}
    work = dict(p.terms)
    key = p.monomial_key
    while work:
        m = max(work, key=key)
        c = work[m]
        for lead, lead_coefficient, d in leads:
            if monomial_divides(lead, m):
                shift = monomial_quotient(m, lead)
                factor = c / lead_coefficient
                for dm, dc in d.terms.items():
                    target = tuple(a + b for a, b in zip(dm, shift))
                    value = work.get(target, 0) - factor * dc
                    if value:
                        work[target] = value
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[m] = c
            del work[m]
    return p._new(remainder)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    lcm = monomial_lcm(f.leading_monomial, g.leading_monomial)
    left = f.mul_term(monomial_quotient(lcm, f.leading_monomial), 1 / f.leading_coefficient)
    right = g.mul_term(monomial_quotient(lcm, g.leading_monomial), 1 / g.leading_coefficient)
    return left - right


def _pair_lcm(basis: List[MultiPoly], pair: Tuple[int, int]):
    return monomial_lcm(basis[pair[0]].leading_monomial, basis[pair[1]].leading_monomial)


def _coprime(m, n) -> bool:
    return all(not (a and b) for a, b in zip(m, n))


def _interreduce(basis: List[MultiPoly]) -> List[MultiPoly]:
    basis = [g.monic() for g in basis if not g.is_zero]
    minimal = []
    for i, g in enumerate(basis):
        lead = g.leading_monomial
        dominated = any(
            monomial_divides(h.leading_monomial, lead) and (h.leading_monomial != lead or j < i)
            for j, h in enumerate(basis)
            if j != i
        )
        if not dominated:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        reduced.append(reduce_by(g, others).monic())
    return sorted(reduced, key=lambda g: g.monomial_key(g.leading_monomial))


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis; ``polynomials`` sorted by leading monomial."""

    polynomials: Tuple[MultiPoly, ...]
    variables: Tuple[str, ...]
    order: str
    pairs_processed: int = 0

    @property
    def is_unit(self) -> bool:
        """Whether the ideal is the whole ring."""
        return any(g.is_constant and not g.is_zero for g in self.polynomials)

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        if p.variables != self.variables:
            p = p.extend(self.variables)
        return reduce_by(p.with_order(self.order) if p.order != self.order else p, self.polynomials)

    def contains(self, p: MultiPoly) -> bool:
        return self.normal_form(p).is_zero

    def verify(self) -> bool:
        """Every S-polynomial of two basis elements reduces to zero."""
        polys = self.polynomials
        return all(
            reduce_by(s_polynomial(polys[i], polys[j]), polys).is_zero
            for i in range(len(polys))
            for j in range(i + 1, len(polys))
        )

    def __iter__(self):
        return iter(self.polynomials)

    def __len__(self) -> int:
        return len(self.polynomials)

    def to_list(self) -> List[str]:
        return [str(g) for g in self.polynomials]


def groebner_basis(
    generators: Sequence[MultiPoly],
    pair_cap: Optional[int] = None,
    stop_at_unit: bool = False,
) -> GroebnerBasis:
    """
    Reduced Gröbner basis of the ideal generated by ``generators``.

    Pairs are taken smallest lcm first. A pair is skipped when its leading
    monomials are coprime (product criterion) or when some third element's
    leading monomial divides the lcm and both of its pairs with the current
    ones are already done (chain criterion).

    Args:
        generators: Polynomials sharing one variable context and order
        pair_cap: Most S-polynomials formed (settings default)
        stop_at_unit: Return [1] as soon as a nonzero constant appears

    Raises:
        BudgetExceeded: more pairs than the cap
        VariableContextError: generators from different contexts
    """
    cap = geometry_setting("GROEBNER_PAIR_CAP", pair_cap)
    gens = [g for g in generators if not g.is_zero]
    if not generators:
        raise VariableContextError("Need at least one generator to fix the variable context")
    variables, order = generators[0].variables, generators[0].order
    for g in generators:
        generators[0].check_context(g)
    if not gens:
        return GroebnerBasis((), variables, order)

    basis: List[MultiPoly] = []
    pairs: Set[Tuple[int, int]] = set()
    for g in gens:
        g = reduce_by(g, basis).monic() if basis else g.monic()
        if g.is_zero:
            continue
        basis.append(g)
        pairs |= {(i, len(basis) - 1) for i in range(len(basis) - 1)}
    key = gens[0].monomial_key
    processed = 0
    while pairs:
        if stop_at_unit and any(g.is_constant for g in basis):
            break
        i, j = min(pairs, key=lambda ij: (key(_pair_lcm(basis, ij)), ij))
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        lcm = monomial_lcm(fi.leading_monomial, fj.leading_monomial)
        if _coprime(fi.leading_monomial, fj.leading_monomial):
            continue
        if any(
            k not in (i, j)
            and monomial_divides(basis[k].leading_monomial, lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        processed += 1
        if processed > cap:
            logger.warning("Gröbner pair budget exhausted", extra={"cap": cap, "basis": len(basis)})
            raise BudgetExceeded("GROEBNER_PAIR_CAP", cap)
        h = reduce_by(s_polynomial(fi, fj), basis)
        if h.is_zero:
            continue
        basis.append(h.monic())
        n = len(basis) - 1
        pairs |= {(k, n) for k in range(n)}

    if stop_at_unit and any(g.is_constant for g in basis):
        reduced = [basis[0].one()]
    else:
        reduced = _interreduce(basis)
    logger.debug(
        "Gröbner basis computed",
        extra={"generators": len(gens), "basis": len(reduced), "pairs": processed},
    )
    return GroebnerBasis(tuple(reduced), variables, order, processed)


def ideal_membership(p: MultiPoly, basis: GroebnerBasis) -> bool:
    """Whether ``p`` lies in the ideal: its normal form is zero."""
    return basis.contains(p)

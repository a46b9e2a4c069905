"""
Unfolding of derived relations into incidence, equidistance and orthogonality.

    Par(l1, l2)      no point lies on both lines
    SymLine(P1,l,P2) some Q on l has P1Q and P2Q orthogonal to l and |P1Q| = |P2Q|
    Peq(l1, P, l2)   feet Q1 on l1 and Q2 on l2 with PQi orthogonal to li and |PQ1| = |PQ2|
    Leq(P1, l, P2)   feet Q1, Q2 on l with PiQi orthogonal to l and |P1Q1| = |P2Q2|

"PQ orthogonal to l" is itself unfolded as: some line through P and Q is
orthogonal to l.
"""
from typing import Collection, Set

from geometry.constants import SORT_LINE, SORT_POINT
from geometry.formulas.syntax import (
    And,
    Atom,
    Exists,
    Formula,
    Implies,
    Not,
    Or,
    Quantifier,
    Term,
    Var,
    conj,
    rel,
)
from geometry.formulas.transforms import fresh_name, variable_names
from geometry.formulas.vocabularies import (
    EQUIDISTANT,
    INCIDENCE,
    L_EQUIDISTANT,
    ORTHOGONAL,
    P_EQUIDISTANT,
    PARALLEL,
    SYMMETRIC_LINE,
)


class _Expander:
    def __init__(self, keep: Collection[str], taken: Set[str]):
        self.keep = frozenset(keep)
        self.taken = taken

    def fresh(self, base: str, sort: str) -> Var:
        name = fresh_name(base, self.taken)
        self.taken.add(name)
        return Var(sort=sort, name=name)

    def perpendicular(self, p: Term, q: Term, line: Term) -> Formula:
        m = self.fresh("m", SORT_LINE)
        return Exists(m.name, SORT_LINE, conj(rel(INCIDENCE, p, m), rel(INCIDENCE, q, m), rel(ORTHOGONAL, m, line)))

    def atom(self, f: Atom) -> Formula:
        if f.relation in self.keep:
            return f
        if f.relation == PARALLEL:
            l1, l2 = f.args
            p = self.fresh("P", SORT_POINT)
            return Not(Exists(p.name, SORT_POINT, conj(rel(INCIDENCE, p, l1), rel(INCIDENCE, p, l2))))
        if f.relation == SYMMETRIC_LINE:
            p1, line, p2 = f.args
            q = self.fresh("Q", SORT_POINT)
            return Exists(
                q.name,
                SORT_POINT,
                conj(
                    rel(INCIDENCE, q, line),
                    self.perpendicular(p1, q, line),
                    self.perpendicular(p2, q, line),
                    rel(EQUIDISTANT, p1, q, p2, q),
                ),
            )
        if f.relation == P_EQUIDISTANT:
            l1, p, l2 = f.args
            q1, q2 = self.fresh("Q", SORT_POINT), self.fresh("Q", SORT_POINT)
            body = conj(
                rel(INCIDENCE, q1, l1),
                rel(INCIDENCE, q2, l2),
                self.perpendicular(p, q1, l1),
                self.perpendicular(p, q2, l2),
                rel(EQUIDISTANT, p, q1, p, q2),
            )
            return Exists(q1.name, SORT_POINT, Exists(q2.name, SORT_POINT, body))
        if f.relation == L_EQUIDISTANT:
            p1, line, p2 = f.args
            q1, q2 = self.fresh("Q", SORT_POINT), self.fresh("Q", SORT_POINT)
            body = conj(
                rel(INCIDENCE, q1, line),
                rel(INCIDENCE, q2, line),
                self.perpendicular(p1, q1, line),
                self.perpendicular(p2, q2, line),
                rel(EQUIDISTANT, p1, q1, p2, q2),
            )
            return Exists(q1.name, SORT_POINT, Exists(q2.name, SORT_POINT, body))
        return f

    def walk(self, f: Formula) -> Formula:
        if isinstance(f, Atom):
            return self.atom(f)
        if isinstance(f, Not):
            return Not(self.walk(f.body))
        if isinstance(f, And):
            return And(tuple(self.walk(p) for p in f.parts))
        if isinstance(f, Or):
            return Or(tuple(self.walk(p) for p in f.parts))
        if isinstance(f, Implies):
            return Implies(self.walk(f.left), self.walk(f.right))
        if isinstance(f, Quantifier):
            return type(f)(f.var, f.sort, self.walk(f.body))
        raise TypeError(f"Not a formula: {f!r}")


def expand_defined_relations(f: Formula, keep: Collection[str] = ()) -> Formula:
    """
    Replace Par, SymLine, Peq and Leq atoms by their first-order definitions.

    Args:
        f: Formula over the geometry vocabulary
        keep: Derived relations to leave in place (those the target vocabulary has)

    Returns:
        Formula: the expanded formula; formulas without derived atoms come back unchanged
    """
    return _Expander(keep, set(variable_names(f))).walk(f)

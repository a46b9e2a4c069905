"""
Structural operations on formulas: free variables, capture-avoiding
substitution, negation normal form, prenexing, fragment classification and
denominator clearing.
"""
import enum
import logging
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from geometry.conf import geometry_setting
from geometry.exceptions import FragmentError, NestingDepthError, SortError
from geometry.formulas.syntax import (
    EQUALITY,
    And,
    App,
    Atom,
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
    conj,
    disj,
)
from geometry.formulas.vocabularies import ADD, INV, LE, LT, MUL, NEG

logger = logging.getLogger(__name__)

HORN_CLAUSE_CAP = 512


class FragmentClass(enum.Enum):
    QUANTIFIER_FREE = "quantifier-free"
    UNIVERSAL_HORN = "universal-Horn"
    UNIVERSAL = "universal"
    EXISTENTIAL = "existential"
    GENERAL = "general"

    @property
    def is_universal(self) -> bool:
        return self in (
            FragmentClass.QUANTIFIER_FREE,
            FragmentClass.UNIVERSAL_HORN,
            FragmentClass.UNIVERSAL,
        )


# Variables


def term_variables(t: Term) -> FrozenSet[Tuple[str, str]]:
    if isinstance(t, Var):
        return frozenset({(t.name, t.sort)})
    if isinstance(t, App):
        return frozenset().union(*(term_variables(a) for a in t.args))
    return frozenset()


def free_variables(f: Formula) -> FrozenSet[Tuple[str, str]]:
    """Variables occurring free in ``f`` as (name, sort) pairs."""
    if isinstance(f, Atom):
        return frozenset().union(*(term_variables(a) for a in f.args))
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_variables(p) for p in f.parts))
    if isinstance(f, Implies):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, Quantifier):
        return free_variables(f.body) - {(f.var, f.sort)}
    raise TypeError(f"Not a formula: {f!r}")


def variable_names(f: Formula) -> Set[str]:
    """Every variable name in ``f``, free or bound."""
    names: Set[str] = set()

    def visit_term(t: Term) -> None:
        if isinstance(t, Var):
            names.add(t.name)
        elif isinstance(t, App):
            for a in t.args:
                visit_term(a)

    def visit(g: Formula) -> None:
        if isinstance(g, Atom):
            for a in g.args:
                visit_term(a)
        elif isinstance(g, Not):
            visit(g.body)
        elif isinstance(g, (And, Or)):
            for p in g.parts:
                visit(p)
        elif isinstance(g, Implies):
            visit(g.left)
            visit(g.right)
        elif isinstance(g, Quantifier):
            names.add(g.var)
            visit(g.body)

    visit(f)
    return names


def relations_used(f: Formula) -> FrozenSet[str]:
    """Relation symbols of the atoms of ``f`` (equality excluded)."""
    if isinstance(f, Atom):
        return frozenset() if f.is_equality else frozenset({f.relation})
    if isinstance(f, Not):
        return relations_used(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(relations_used(p) for p in f.parts))
    if isinstance(f, Implies):
        return relations_used(f.left) | relations_used(f.right)
    if isinstance(f, Quantifier):
        return relations_used(f.body)
    raise TypeError(f"Not a formula: {f!r}")


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or)):
        return all(is_quantifier_free(p) for p in f.parts)
    if isinstance(f, Implies):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return False


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    if isinstance(f, (And, Or)):
        return max((quantifier_rank(p) for p in f.parts), default=0)
    if isinstance(f, Implies):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    return 1 + quantifier_rank(f.body)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """``base`` primed until it clashes with nothing in ``avoid``."""
    taken = set(avoid)
    name = base + "'"
    while name in taken:
        name += "'"
    return name


def universal_closure(f: Formula) -> Formula:
    for name, sort in sorted(free_variables(f), reverse=True):
        f = Forall(name, sort, f)
    return f


# Substitution


def substitute_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        replacement = mapping.get(t.name)
        if replacement is None:
            return t
        if replacement.sort != t.sort:
            raise SortError(f"Cannot substitute a {replacement.sort} term for a {t.sort} variable", t.name)
        return replacement
    if isinstance(t, App):
        return App(sort=t.sort, symbol=t.symbol, args=tuple(substitute_term(a, mapping) for a in t.args))
    return t


def substitute(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """
    Replace free variables by terms, renaming bound variables to avoid capture.

    Args:
        f: Formula to rewrite
        mapping: Variable name to replacement term (sorts must agree)

    Returns:
        Formula: the substituted formula
    """
    mapping = {k: v for k, v in mapping.items() if not (isinstance(v, Var) and v.name == k)}
    if not mapping:
        return f
    if isinstance(f, Atom):
        return Atom(f.relation, tuple(substitute_term(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, And):
        return And(tuple(substitute(p, mapping) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(substitute(p, mapping) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, Quantifier):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        free_in_body = {name for name, _ in free_variables(f.body)}
        inner = {k: v for k, v in inner.items() if k in free_in_body}
        if not inner:
            return f
        incoming = {name for t in inner.values() for name, _ in term_variables(t)}
        var, body = f.var, f.body
        if var in incoming:
            var = fresh_name(f.var, incoming | variable_names(f.body) | set(inner))
            body = substitute(body, {f.var: Var(sort=f.sort, name=var)})
        return type(f)(var, f.sort, substitute(body, inner))
    raise TypeError(f"Not a formula: {f!r}")


# Normal forms


def eliminate_implications(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(eliminate_implications(f.body))
    if isinstance(f, And):
        return And(tuple(eliminate_implications(p) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(eliminate_implications(p) for p in f.parts))
    if isinstance(f, Implies):
        return disj(Not(eliminate_implications(f.left)), eliminate_implications(f.right))
    if isinstance(f, Quantifier):
        return type(f)(f.var, f.sort, eliminate_implications(f.body))
    raise TypeError(f"Not a formula: {f!r}")


def nnf(f: Formula, negate: bool = False) -> Formula:
    """Negation normal form: no implications, negation only on atoms."""
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return nnf(f.body, not negate)
    if isinstance(f, And):
        parts = [nnf(p, negate) for p in f.parts]
        return disj(*parts) if negate else conj(*parts)
    if isinstance(f, Or):
        parts = [nnf(p, negate) for p in f.parts]
        return conj(*parts) if negate else disj(*parts)
    if isinstance(f, Implies):
        if negate:
            return conj(nnf(f.left), nnf(f.right, True))
        return disj(nnf(f.left, True), nnf(f.right))
    if isinstance(f, Forall):
        return (Exists if negate else Forall)(f.var, f.sort, nnf(f.body, negate))
    if isinstance(f, Exists):
        return (Forall if negate else Exists)(f.var, f.sort, nnf(f.body, negate))
    raise TypeError(f"Not a formula: {f!r}")


def rename_apart(f: Formula, avoid: Optional[Iterable[str]] = None) -> Formula:
    """Give every quantifier a distinct variable, distinct from the free ones."""
    taken = set(avoid or ()) | {name for name, _ in free_variables(f)}

    def walk(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, And):
            return And(tuple(walk(p) for p in g.parts))
        if isinstance(g, Or):
            return Or(tuple(walk(p) for p in g.parts))
        if isinstance(g, Implies):
            return Implies(walk(g.left), walk(g.right))
        if isinstance(g, Quantifier):
            var, body = g.var, g.body
            if var in taken:
                var = fresh_name(g.var, taken | variable_names(g.body))
                body = substitute(body, {g.var: Var(sort=g.sort, name=var)})
            taken.add(var)
            return type(g)(var, g.sort, walk(body))
        raise TypeError(f"Not a formula: {g!r}")

    return walk(f)


Prefix = List[Tuple[type, str, str]]


def _merge_prefixes(prefixes: List[Prefix], first: type) -> Prefix:
    queues = [list(p) for p in prefixes]
    merged: Prefix = []
    kind = first
    while any(queues):
        for queue in queues:
            while queue and queue[0][0] is kind:
                merged.append(queue.pop(0))
        kind = Exists if kind is Forall else Forall
    return merged


def _blocks(prefix: Prefix) -> int:
    count, last = 0, None
    for kind, _, _ in prefix:
        if kind is not last:
            count += 1
            last = kind
    return count


def _pull(f: Formula) -> Tuple[Prefix, Formula]:
    if isinstance(f, Quantifier):
        prefix, matrix = _pull(f.body)
        return [(type(f), f.var, f.sort), *prefix], matrix
    if isinstance(f, (And, Or)):
        pulled = [_pull(p) for p in f.parts]
        prefixes = [p for p, _ in pulled]
        candidates = [_merge_prefixes(prefixes, Forall), _merge_prefixes(prefixes, Exists)]
        prefix = min(candidates, key=_blocks)
        matrix = (conj if isinstance(f, And) else disj)(*(m for _, m in pulled)) if pulled else f
        return prefix, matrix
    return [], f


def prenex(f: Formula) -> Formula:
    """
    Prenex normal form with the fewest quantifier alternations the greedy merge finds.

    Universal blocks are preferred when both orders give the same count.
    """
    prefix, matrix = _pull(rename_apart(nnf(f)))
    for kind, name, sort in reversed(prefix):
        matrix = kind(name, sort, matrix)
    return matrix


def split_prefix(f: Formula) -> Tuple[Prefix, Formula]:
    prefix: Prefix = []
    while isinstance(f, Quantifier):
        prefix.append((type(f), f.var, f.sort))
        f = f.body
    return prefix, f


def quantifier_prefix(f: Formula) -> List[Tuple[str, Tuple[Tuple[str, str], ...]]]:
    """
    Block structure of the prenex form.

    Returns:
        List of ("forall" | "exists", ((var, sort), ...)) blocks, outermost first
    """
    prefix, _ = split_prefix(prenex(f))
    blocks: List[Tuple[str, List[Tuple[str, str]]]] = []
    for kind, name, sort in prefix:
        label = "forall" if kind is Forall else "exists"
        if blocks and blocks[-1][0] == label:
            blocks[-1][1].append((name, sort))
        else:
            blocks.append((label, [(name, sort)]))
    return [(label, tuple(variables)) for label, variables in blocks]


def cnf_clauses(f: Formula, cap: int = HORN_CLAUSE_CAP) -> Optional[List[List[Formula]]]:
    """CNF clauses of a quantifier-free NNF formula; None past ``cap`` clauses."""
    if isinstance(f, (Atom, Not)):
        return [[f]]
    if isinstance(f, And):
        clauses: List[List[Formula]] = []
        for part in f.parts:
            sub = cnf_clauses(part, cap)
            if sub is None:
                return None
            clauses.extend(sub)
            if len(clauses) > cap:
                return None
        return clauses
    if isinstance(f, Or):
        clauses = [[]]
        for part in f.parts:
            sub = cnf_clauses(part, cap)
            if sub is None or len(clauses) * len(sub) > cap:
                return None
            clauses = [c + s for c in clauses for s in sub]
        return clauses
    raise FragmentError(f"Expected a quantifier-free NNF formula, got {type(f).__name__}")


def is_horn(matrix: Formula) -> bool:
    clauses = cnf_clauses(nnf(matrix))
    if clauses is None:
        return False
    return all(sum(1 for lit in clause if isinstance(lit, Atom)) <= 1 for clause in clauses)


def classify_fragment(f: Formula) -> FragmentClass:
    """
    Tightest syntactic fragment of ``f`` after prenexing.

    Args:
        f: A closed formula

    Returns:
        FragmentClass: quantifier-free, universal-Horn, universal, existential or general
    """
    prefix, matrix = split_prefix(prenex(f))
    kinds = {kind for kind, _, _ in prefix}
    if not kinds:
        return FragmentClass.QUANTIFIER_FREE
    if kinds == {Forall}:
        return FragmentClass.UNIVERSAL_HORN if is_horn(matrix) else FragmentClass.UNIVERSAL
    if kinds == {Exists}:
        return FragmentClass.EXISTENTIAL
    return FragmentClass.GENERAL


# Denominator clearing

_ONE = Fraction(1)


def _is_one(t: Optional[Term]) -> bool:
    return t is None or (isinstance(t, Num) and t.value == _ONE)


def _times(a: Optional[Term], b: Optional[Term], sort: str) -> Optional[Term]:
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    return App(sort=sort, symbol=MUL, args=(a, b))


def _plus(a: Term, b: Term, sort: str) -> Term:
    return App(sort=sort, symbol=ADD, args=(a, b))


def _one(sort: str) -> Num:
    return Num(sort=sort, value=_ONE)


def _contains_inverse(t: Term) -> bool:
    if isinstance(t, App):
        return t.symbol == INV or any(_contains_inverse(a) for a in t.args)
    return False


class _Fraction:
    __slots__ = ("num", "den", "guards", "depth")

    def __init__(self, num: Term, den: Optional[Term], guards: Tuple[Term, ...], depth: int):
        self.num = num
        self.den = den
        self.guards = guards
        self.depth = depth


def _rationalize(t: Term, bound: int) -> _Fraction:
    if not isinstance(t, App):
        return _Fraction(t, None, (), 0)
    parts = [_rationalize(a, bound) for a in t.args]
    guards = tuple(g for p in parts for g in p.guards)
    depth = max((p.depth for p in parts), default=0)
    if t.symbol == INV:
        (inner,) = parts
        if depth + 1 > bound:
            raise NestingDepthError(f"Inverse nesting deeper than {bound}")
        return _Fraction(inner.den or _one(t.sort), inner.num, (*guards, inner.num), depth + 1)
    if depth == 0:
        return _Fraction(t, None, (), 0)
    if t.symbol == ADD:
        left, right = parts
        num = _plus(_times(left.num, right.den, t.sort), _times(right.num, left.den, t.sort), t.sort)
        return _Fraction(num, _times(left.den, right.den, t.sort), guards, depth)
    if t.symbol == MUL:
        left, right = parts
        return _Fraction(
            _times(left.num, right.num, t.sort), _times(left.den, right.den, t.sort), guards, depth
        )
    if t.symbol == NEG:
        (inner,) = parts
        return _Fraction(App(sort=t.sort, symbol=NEG, args=(inner.num,)), inner.den, guards, depth)
    raise FragmentError(f"Cannot clear an inverse under function symbol '{t.symbol}'")


def _nonzero(t: Term) -> Formula:
    return Not(Atom(EQUALITY, (t, Num(sort=t.sort, value=Fraction(0)))))


def _clear_atom(atom: Atom, bound: int) -> Formula:
    if not any(_contains_inverse(a) for a in atom.args):
        return atom
    if atom.relation not in (EQUALITY, LE, LT) or len(atom.args) != 2:
        raise FragmentError(f"Inverse inside '{atom.relation}' atom cannot be cleared")
    left, right = (_rationalize(a, bound) for a in atom.args)
    sort = atom.args[0].sort
    guards = tuple(dict.fromkeys((*left.guards, *right.guards)))
    if atom.relation == EQUALITY:
        cleared = Atom(EQUALITY, (_times(left.num, right.den, sort), _times(right.num, left.den, sort)))
    else:
        # multiply both sides by (ds*dt)^2, which is positive under the guards
        scale_left = _times(left.den, _times(right.den, right.den, sort), sort)
        scale_right = _times(right.den, _times(left.den, left.den, sort), sort)
        cleared = Atom(atom.relation, (_times(left.num, scale_left, sort), _times(right.num, scale_right, sort)))
    return conj(*(_nonzero(g) for g in guards), cleared)


def clear_divisions(f: Formula, nesting_bound: Optional[int] = None) -> Formula:
    """
    Remove the inverse symbol by guarded denominator clearing.

    Each atom p/q ~ r becomes (q != 0 and p ~ r*q), one guard per inverse
    occurrence, so atoms read as false at a pole.

    Args:
        f: Formula over the functional field vocabulary
        nesting_bound: Deepest allowed nesting of inverses (settings default)

    Returns:
        Formula: an equivalent formula without inverses

    Raises:
        NestingDepthError: inverse nesting exceeds the bound
        FragmentError: inverse under a relation other than =, le, lt
    """
    bound = geometry_setting("INVERSE_NESTING_BOUND", nesting_bound)

    def walk(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return _clear_atom(g, bound)
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, And):
            return And(tuple(walk(p) for p in g.parts))
        if isinstance(g, Or):
            return Or(tuple(walk(p) for p in g.parts))
        if isinstance(g, Implies):
            return Implies(walk(g.left), walk(g.right))
        if isinstance(g, Quantifier):
            return type(g)(g.var, g.sort, walk(g.body))
        raise TypeError(f"Not a formula: {g!r}")

    cleared = walk(f)
    logger.debug("Divisions cleared", extra={"nesting_bound": bound})
    return cleared


def contains_inverse(f: Formula) -> bool:
    if isinstance(f, Atom):
        return any(_contains_inverse(a) for a in f.args)
    if isinstance(f, Not):
        return contains_inverse(f.body)
    if isinstance(f, (And, Or)):
        return any(contains_inverse(p) for p in f.parts)
    if isinstance(f, Implies):
        return contains_inverse(f.left) or contains_inverse(f.right)
    return contains_inverse(f.body)

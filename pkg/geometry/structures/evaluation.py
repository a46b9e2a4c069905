"""
First-order model checking over finite structures.

Formulas are compiled once into closures over a slot environment. With
guarding on, quantifiers of the shape forall x (G -> phi) and exists x (G and
phi) enumerate only the x allowed by the guard G, read off a relation index
or an equality.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from geometry.exceptions import SortError, UnassignedVariableError
from geometry.formulas.syntax import (
    TRUE,
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
    conj,
)
from geometry.formulas.transforms import free_variables, term_variables
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)

Env = List[int]
Compiled = Callable[[Env], bool]


def _conjuncts(f: Formula) -> List[Formula]:
    return list(f.parts) if isinstance(f, And) else [f]


def _names(t: Term) -> set:
    return {name for name, _ in term_variables(t)}


def _guards_variable(atom: Formula, name: str, unbound: set) -> Optional[str]:
    """'eq' or 'rel' when ``atom`` pins down ``name`` once the rest is bound."""
    if not isinstance(atom, Atom):
        return None
    positions = [i for i, a in enumerate(atom.args) if isinstance(a, Var) and a.name == name]
    if len(positions) != 1:
        return None
    others = [a for i, a in enumerate(atom.args) if i != positions[0]]
    if any(_names(a) & (unbound | {name}) for a in others):
        return None
    return "eq" if atom.is_equality else "rel"


def localize_guards(f: Formula) -> Formula:
    """
    Move the hypotheses of each quantifier block next to the innermost variable they mention.

    forall x y ((A(x) and B(x, y)) -> C) becomes forall x (A(x) -> forall y (B(x, y) -> C)),
    with the block reordered so that guarded variables come first.
    """
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(localize_guards(f.body))
    if isinstance(f, And):
        return And(tuple(localize_guards(p) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(localize_guards(p) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(localize_guards(f.left), localize_guards(f.right))
    if not isinstance(f, Quantifier):
        raise TypeError(f"Not a formula: {f!r}")

    kind = type(f)
    block: List[Tuple[str, str]] = []
    body = f
    while isinstance(body, kind) and body.var not in {n for n, _ in block}:
        block.append((body.var, body.sort))
        body = body.body
    if kind is Forall and isinstance(body, Implies):
        hyps, concl = _conjuncts(body.left), body.right
    elif kind is Exists and isinstance(body, And):
        hyps, concl = list(body.parts), TRUE
    else:
        hyps, concl = [], body
    hyps = [localize_guards(h) for h in hyps]
    concl = localize_guards(concl)

    remaining = [name for name, _ in block]
    sorts = dict(block)
    order: List[str] = []
    while remaining:
        unbound = set(remaining)

        def rank(name: str) -> int:
            kinds = {_guards_variable(h, name, unbound - {name}) for h in hyps}
            return 0 if "eq" in kinds else 1 if "rel" in kinds else 2

        best = min(remaining, key=lambda n: (rank(n), remaining.index(n)))
        order.append(best)
        remaining.remove(best)

    level = {name: i for i, name in enumerate(order)}
    placed: Dict[int, List[Formula]] = {}
    for h in hyps:
        mentioned = [level[n] for n, _ in free_variables(h) if n in level]
        placed.setdefault(max(mentioned, default=0), []).append(h)

    result = concl
    for i in reversed(range(len(order))):
        here = placed.get(i, [])
        if kind is Forall:
            result = Implies(conj(*here), result) if here else result
        else:
            result = conj(*here, result)
        result = kind(order[i], sorts[order[i]], result)
    return result


@dataclass
class Witness:
    """Values chosen while explaining a verdict, by variable name."""

    values: Dict[str, int] = field(default_factory=dict)
    sorts: Dict[str, str] = field(default_factory=dict)

    def bind(self, name: str, sort: str, value: int) -> None:
        self.values[name] = value
        self.sorts[name] = sort

    def named(self, structure: FiniteStructure) -> Dict[str, str]:
        return {
            name: structure.element_name(self.sorts[name], value) for name, value in self.values.items()
        }


class Evaluator:
    """
    Compiles and evaluates formulas over one structure.

    Args:
        structure: The structure to evaluate in
        guarded: Use relation indices for guarded quantifiers
    """

    def __init__(self, structure: FiniteStructure, guarded: bool = True):
        self.structure = structure
        self.guarded = guarded
        self._cache: Dict[Tuple[Formula, tuple], Tuple[Compiled, int]] = {}
        self._width = 0

    # -- compilation ----------------------------------------------------------

    def compile(self, f: Formula, free: Sequence[Tuple[str, str]]) -> Tuple[Compiled, int]:
        """
        Returns:
            The compiled closure and the environment width it needs; slot i holds free[i]
        """
        key = (f, tuple(free))
        cached = self._cache.get(key)
        if cached is None:
            self._width = len(free)
            scope = {name: (slot, sort) for slot, (name, sort) in enumerate(free)}
            g = localize_guards(f) if self.guarded else f
            fn = self._formula(g, scope)
            cached = (fn, self._width)
            self._cache[key] = cached
        return cached

    def _slot(self) -> int:
        self._width += 1
        return self._width - 1

    def _term(self, t: Term, scope) -> Callable[[Env], int]:
        if isinstance(t, Var):
            slot = scope[t.name][0]
            return lambda env: env[slot]
        if isinstance(t, Const):
            value = self.structure.constants[t.name]
            return lambda env: value
        if isinstance(t, Num):
            value = self.structure.numeral_value(t.value)
            if value is None:
                raise SortError("Numeral is undefined in this structure", str(t.value))
            return lambda env: value
        if isinstance(t, App):
            table = self.structure.functions[t.symbol]
            args = [self._term(a, scope) for a in t.args]
            if len(args) == 1:
                (a,) = args
                return lambda env: table[(a(env),)]
            if len(args) == 2:
                a, b = args
                return lambda env: table[(a(env), b(env))]
            return lambda env: table[tuple(x(env) for x in args)]
        raise TypeError(f"Not a term: {t!r}")

    def _atom(self, f: Atom, scope) -> Compiled:
        args = [self._term(a, scope) for a in f.args]
        if f.is_equality:
            left, right = args
            return lambda env: left(env) == right(env)
        tuples = self.structure.relations[f.relation]
        if len(args) == 2:
            a, b = args
            return lambda env: (a(env), b(env)) in tuples
        if len(args) == 3:
            a, b, c = args
            return lambda env: (a(env), b(env), c(env)) in tuples
        return lambda env: tuple(x(env) for x in args) in tuples

    def _formula(self, f: Formula, scope) -> Compiled:
        if isinstance(f, Atom):
            return self._atom(f, scope)
        if isinstance(f, Not):
            body = self._formula(f.body, scope)
            return lambda env: not body(env)
        if isinstance(f, And):
            parts = [self._formula(p, scope) for p in f.parts]
            if len(parts) == 2:
                a, b = parts
                return lambda env: a(env) and b(env)

            def all_of(env):
                for part in parts:
                    if not part(env):
                        return False
                return True

            return all_of
        if isinstance(f, Or):
            parts = [self._formula(p, scope) for p in f.parts]
            if len(parts) == 2:
                a, b = parts
                return lambda env: a(env) or b(env)

            def any_of(env):
                for part in parts:
                    if part(env):
                        return True
                return False

            return any_of
        if isinstance(f, Implies):
            left, right = self._formula(f.left, scope), self._formula(f.right, scope)
            return lambda env: (not left(env)) or right(env)
        if isinstance(f, Quantifier):
            return self._quantifier(f, scope)
        raise TypeError(f"Not a formula: {f!r}")

    def _split_guard(self, f: Quantifier, scope) -> Tuple[Optional[Callable[[Env], Iterable[int]]], Formula]:
        universal = isinstance(f, Forall)
        body = f.body
        if universal and isinstance(body, Implies):
            hyps = _conjuncts(body.left)

            def rebuild(rest):
                return Implies(conj(*rest), body.right) if rest else body.right

        elif not universal and isinstance(body, And):
            hyps = list(body.parts)

            def rebuild(rest):
                return conj(*rest)

        else:
            return None, body

        choice = None
        for i, h in enumerate(hyps):
            kind = _guards_variable(h, f.var, set())
            if kind == "eq":
                choice = i
                break
            if kind == "rel" and choice is None:
                choice = i
        if choice is None:
            return None, body
        guard = hyps[choice]
        rest = rebuild(hyps[:choice] + hyps[choice + 1:])
        position = next(i for i, a in enumerate(guard.args) if isinstance(a, Var) and a.name == f.var)
        others = [self._term(a, scope) for i, a in enumerate(guard.args) if i != position]
        if guard.is_equality:
            (other,) = others
            return (lambda env: (other(env),)), rest
        keep = tuple(i for i in range(len(guard.args)) if i != position)
        index = self.structure.index(guard.relation, keep)
        if len(others) == 1:
            (other,) = others
            values = {key: [t[position] for t in ts] for key, ts in index.items()}
            return (lambda env: values.get((other(env),), ())), rest
        values = {key: [t[position] for t in ts] for key, ts in index.items()}
        return (lambda env: values.get(tuple(x(env) for x in others), ())), rest

    def _quantifier(self, f: Quantifier, scope) -> Compiled:
        universal = isinstance(f, Forall)
        slot = self._slot()
        inner = {**scope, f.var: (slot, f.sort)}
        candidates, rest = self._split_guard(f, inner) if self.guarded else (None, f.body)
        body = self._formula(rest, inner)
        if candidates is None:
            domain = self.structure.carrier(f.sort)

            def candidates(env):
                return domain

        if universal:

            def every(env):
                for value in candidates(env):
                    env[slot] = value
                    if not body(env):
                        return False
                return True

            return every

        def some(env):
            for value in candidates(env):
                env[slot] = value
                if body(env):
                    return True
            return False

        return some

    # -- evaluation -----------------------------------------------------------

    def holds(self, f: Formula, assignment: Optional[Mapping[str, int]] = None) -> bool:
        """
        Truth of ``f`` under ``assignment``.

        Raises:
            UnassignedVariableError: a free variable has no value
            SortError: a value lies outside its sort's carrier
        """
        assignment = assignment or {}
        free = sorted(free_variables(f))
        missing = {name for name, _ in free if name not in assignment}
        if missing:
            raise UnassignedVariableError(missing)
        fn, width = self.compile(f, free)
        env = [0] * width
        for slot, (name, sort) in enumerate(free):
            value = assignment[name]
            if not 0 <= value < self.structure.sizes[sort]:
                raise SortError(f"Value {value} outside the {sort} carrier", name)
            env[slot] = value
        return fn(env)

    # -- explanations ---------------------------------------------------------

    def counterexample(self, f: Formula, assignment: Optional[Mapping[str, int]] = None) -> Optional[Witness]:
        """
        Follow the failing branch of a false formula.

        Returns:
            Witness: values of the variables that make ``f`` false, or None when ``f`` holds
        """
        witness = Witness(values=dict(assignment or {}))
        for name, sort in free_variables(f):
            witness.sorts[name] = sort
        if self.holds(f, witness.values):
            return None
        self._falsify(f, witness)
        return witness

    def example(self, f: Formula, assignment: Optional[Mapping[str, int]] = None) -> Optional[Witness]:
        """Witnesses for a true formula, or None when it is false."""
        witness = Witness(values=dict(assignment or {}))
        for name, sort in free_variables(f):
            witness.sorts[name] = sort
        if not self.holds(f, witness.values):
            return None
        self._verify(f, witness)
        return witness

    def _true(self, f: Formula, witness: Witness) -> bool:
        return self.holds(f, witness.values)

    def _falsify(self, f: Formula, witness: Witness) -> None:
        if isinstance(f, Forall):
            for value in self.structure.carrier(f.sort):
                witness.bind(f.var, f.sort, value)
                if not self._true(f.body, witness):
                    self._falsify(f.body, witness)
                    return
        elif isinstance(f, Not):
            self._verify(f.body, witness)
        elif isinstance(f, And):
            for part in f.parts:
                if not self._true(part, witness):
                    self._falsify(part, witness)
                    return
        elif isinstance(f, Implies):
            self._verify(f.left, witness)
            self._falsify(f.right, witness)

    def _verify(self, f: Formula, witness: Witness) -> None:
        if isinstance(f, Exists):
            for value in self.structure.carrier(f.sort):
                witness.bind(f.var, f.sort, value)
                if self._true(f.body, witness):
                    self._verify(f.body, witness)
                    return
        elif isinstance(f, Not):
            self._falsify(f.body, witness)
        elif isinstance(f, And):
            for part in f.parts:
                self._verify(part, witness)
        elif isinstance(f, Or):
            for part in f.parts:
                if self._true(part, witness):
                    self._verify(part, witness)
                    return
        elif isinstance(f, Implies):
            if self._true(f.left, witness):
                self._verify(f.right, witness)
            else:
                self._falsify(f.left, witness)


def eval_formula(
    structure: FiniteStructure,
    f: Formula,
    assignment: Optional[Mapping[str, int]] = None,
    guarded: bool = True,
) -> bool:
    """
    Tarskian truth of ``f`` in ``structure``.

    Args:
        structure: Finite structure over a vocabulary covering ``f``
        f: Formula to evaluate
        assignment: Values for the free variables of ``f``
        guarded: Enumerate guarded quantifiers through relation indices

    Returns:
        bool: whether the formula holds
    """
    return Evaluator(structure, guarded=guarded).holds(f, assignment)

"""
Syntax trees for multi-sorted first-order logic.

Terms and formulas are frozen dataclasses, so they hash, compare
structurally and can be shared freely between threads.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Tuple

from geometry.exceptions import SortError

EQUALITY = "="


@dataclass(frozen=True, eq=False)
class Vocabulary:
    """
    Sorts plus relation, function and constant symbols.

    Relations map to their argument sorts, functions to
    ``(argument sorts, result sort)`` and constants to their sort. When
    ``numerals`` names a sort, integer and a/b literals are terms of it.
    """

    name: str
    sorts: Tuple[str, ...]
    relations: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)
    functions: Mapping[str, Tuple[Tuple[str, ...], str]] = field(default_factory=dict)
    constants: Mapping[str, str] = field(default_factory=dict)
    numerals: Optional[str] = None

    def __post_init__(self):
        if len(set(self.sorts)) != len(self.sorts):
            raise SortError("Duplicate sort in vocabulary", self.name)
        seen = set()
        for symbol in (*self.relations, *self.functions, *self.constants):
            if symbol in seen or symbol == EQUALITY:
                raise SortError("Duplicate or reserved symbol in vocabulary", symbol)
            seen.add(symbol)
        mentioned = [s for args in self.relations.values() for s in args]
        for args, result in self.functions.values():
            mentioned.extend(args)
            mentioned.append(result)
        mentioned.extend(self.constants.values())
        if self.numerals is not None:
            mentioned.append(self.numerals)
        for sort in mentioned:
            if sort not in self.sorts:
                raise SortError("Undeclared sort", sort)
        object.__setattr__(self, "relations", MappingProxyType(dict(self.relations)))
        object.__setattr__(self, "functions", MappingProxyType(dict(self.functions)))
        object.__setattr__(self, "constants", MappingProxyType(dict(self.constants)))

    def symbols(self) -> frozenset:
        return frozenset((*self.relations, *self.functions, *self.constants))

    def covers(self, other: "Vocabulary") -> bool:
        """True when every sort and symbol of ``other`` is declared here with the same signature."""
        if not set(other.sorts) <= set(self.sorts):
            return False
        for name, args in other.relations.items():
            if self.relations.get(name) != args:
                return False
        for name, signature in other.functions.items():
            if self.functions.get(name) != signature:
                return False
        for name, sort in other.constants.items():
            if self.constants.get(name) != sort:
                return False
        return other.numerals is None or other.numerals == self.numerals

    def union(self, other: "Vocabulary", name: Optional[str] = None) -> "Vocabulary":
        sorts = tuple(dict.fromkeys((*self.sorts, *other.sorts)))
        return Vocabulary(
            name=name or f"{self.name}+{other.name}",
            sorts=sorts,
            relations={**self.relations, **other.relations},
            functions={**self.functions, **other.functions},
            constants={**self.constants, **other.constants},
            numerals=self.numerals or other.numerals,
        )

    def restrict(self, relations: Iterable[str], name: str) -> "Vocabulary":
        """Same sorts, functions and constants; only the listed relations."""
        keep = set(relations)
        return Vocabulary(
            name=name,
            sorts=self.sorts,
            relations={r: a for r, a in self.relations.items() if r in keep},
            functions=dict(self.functions),
            constants=dict(self.constants),
            numerals=self.numerals,
        )


# Terms


@dataclass(frozen=True)
class Term:
    sort: str

    def __str__(self) -> str:
        from geometry.formulas.printer import print_term

        return print_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str = ""


@dataclass(frozen=True)
class Const(Term):
    name: str = ""


@dataclass(frozen=True)
class Num(Term):
    value: Fraction = Fraction(0)


@dataclass(frozen=True)
class App(Term):
    symbol: str = ""
    args: Tuple[Term, ...] = ()


def var(name: str, sort: str) -> Var:
    return Var(sort=sort, name=name)


def const(name: str, sort: str) -> Const:
    return Const(sort=sort, name=name)


def num(value, sort: str) -> Num:
    return Num(sort=sort, value=Fraction(value))


def app(symbol: str, sort: str, *args: Term) -> App:
    return App(sort=sort, symbol=symbol, args=tuple(args))


# Formulas


@dataclass(frozen=True)
class Formula:
    def __str__(self) -> str:
        from geometry.formulas.printer import print_formula

        return print_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    """Relation atom; ``relation`` is ``"="`` for equality."""

    relation: str
    args: Tuple[Term, ...]

    @property
    def is_equality(self) -> bool:
        return self.relation == EQUALITY


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: Tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    parts: Tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Quantifier(Formula):
    var: str
    sort: str
    body: Formula


@dataclass(frozen=True)
class Forall(Quantifier):
    pass


@dataclass(frozen=True)
class Exists(Quantifier):
    pass


TRUE = And(())
FALSE = Or(())


def equals(left: Term, right: Term) -> Atom:
    if left.sort != right.sort:
        raise SortError("Equality between different sorts", f"{left} = {right}")
    return Atom(EQUALITY, (left, right))


def rel(relation: str, *args: Term) -> Atom:
    return Atom(relation, tuple(args))


def conj(*parts: Formula) -> Formula:
    """Flattening conjunction; a single part is returned as is."""
    flat = []
    for part in parts:
        if isinstance(part, And):
            flat.extend(part.parts)
        else:
            flat.append(part)
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*parts: Formula) -> Formula:
    flat = []
    for part in parts:
        if isinstance(part, Or):
            flat.extend(part.parts)
        else:
            flat.append(part)
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def forall(variables: Iterable[Tuple[str, str]], body: Formula) -> Formula:
    for name, sort in reversed(list(variables)):
        body = Forall(name, sort, body)
    return body


def exists(variables: Iterable[Tuple[str, str]], body: Formula) -> Formula:
    for name, sort in reversed(list(variables)):
        body = Exists(name, sort, body)
    return body


def is_truth_constant(f: Formula) -> bool:
    return f == TRUE or f == FALSE

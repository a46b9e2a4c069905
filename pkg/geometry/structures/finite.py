"""
Explicit finite structures.

Elements of every sort are dense integer ids ``0..n-1``; printable names live
in a side table. Structures are immutable once built.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from geometry.exceptions import SortError, VocabularyMismatchError
from geometry.formulas.syntax import Vocabulary
from geometry.formulas.vocabularies import ADD, INCIDENCE, INV, MUL, NEG, ONE, TAU_IN, ZERO
from geometry.constants import SORT_LINE, SORT_POINT


@dataclass(frozen=True, eq=False)
class FiniteStructure:
    """
    A finite interpretation of a vocabulary.

    Attributes:
        vocabulary: Symbols interpreted here
        sizes: Carrier size per sort
        relations: Relation symbol to its set of tuples
        functions: Function symbol to a total table from argument tuples
        constants: Constant symbol to element id
        names: Printable element names per sort
        name: Label used in reports
        origin: For transduction images, the source tuple behind each element
    """

    vocabulary: Vocabulary
    sizes: Mapping[str, int]
    relations: Mapping[str, FrozenSet[tuple]] = field(default_factory=dict)
    functions: Mapping[str, Mapping[tuple, int]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)
    names: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)
    name: str = ""
    origin: Mapping[str, Tuple[tuple, ...]] = field(default_factory=dict)

    def __post_init__(self):
        vocab = self.vocabulary
        for sort in vocab.sorts:
            if sort not in self.sizes:
                raise VocabularyMismatchError(f"No carrier for sort {sort}")
        relations = {}
        for symbol, arg_sorts in vocab.relations.items():
            tuples = frozenset(self.relations.get(symbol, ()))
            for t in tuples:
                self._check_tuple(symbol, t, arg_sorts)
            relations[symbol] = tuples
        functions = {}
        for symbol, (arg_sorts, result) in vocab.functions.items():
            if symbol not in self.functions:
                raise VocabularyMismatchError(f"No table for function {symbol}")
            table = dict(self.functions[symbol])
            expected = 1
            for s in arg_sorts:
                expected *= self.sizes[s]
            if len(table) != expected:
                raise SortError("Function table is not total", symbol)
            for args, value in table.items():
                self._check_tuple(symbol, args, arg_sorts)
                self._check_tuple(symbol, (value,), (result,))
            functions[symbol] = MappingProxyType(table)
        for symbol, sort in vocab.constants.items():
            if symbol not in self.constants:
                raise VocabularyMismatchError(f"No value for constant {symbol}")
            self._check_tuple(symbol, (self.constants[symbol],), (sort,))
        names = {
            sort: tuple(self.names.get(sort, ())) or tuple(str(i) for i in range(self.sizes[sort]))
            for sort in vocab.sorts
        }
        object.__setattr__(self, "sizes", MappingProxyType(dict(self.sizes)))
        object.__setattr__(self, "relations", MappingProxyType(relations))
        object.__setattr__(self, "functions", MappingProxyType(functions))
        object.__setattr__(self, "constants", MappingProxyType(dict(self.constants)))
        object.__setattr__(self, "names", MappingProxyType(names))
        object.__setattr__(self, "origin", MappingProxyType(dict(self.origin)))

    def _check_tuple(self, symbol: str, values: tuple, sorts: Sequence[str]) -> None:
        if len(values) != len(sorts):
            raise SortError(f"Tuple {values} has the wrong arity", symbol)
        for value, sort in zip(values, sorts):
            if not 0 <= value < self.sizes[sort]:
                raise SortError(f"Element {value} outside the {sort} carrier", symbol)

    def carrier(self, sort: str) -> range:
        return range(self.sizes[sort])

    def element_name(self, sort: str, element: int) -> str:
        return self.names[sort][element]

    def holds(self, relation: str, *args: int) -> bool:
        return tuple(args) in self.relations[relation]

    def apply(self, function: str, *args: int) -> int:
        return self.functions[function][tuple(args)]

    @cached_property
    def _indexes(self) -> Dict[Tuple[str, Tuple[int, ...]], Dict[tuple, List[tuple]]]:
        return {}

    def index(self, relation: str, positions: Tuple[int, ...]) -> Dict[tuple, List[tuple]]:
        """Tuples of ``relation`` grouped by their values at ``positions``."""
        key = (relation, positions)
        cached = self._indexes.get(key)
        if cached is None:
            cached = {}
            for t in sorted(self.relations[relation]):
                cached.setdefault(tuple(t[i] for i in positions), []).append(t)
            self._indexes[key] = cached
        return cached

    def numeral_value(self, value: Fraction) -> Optional[int]:
        """
        Element denoted by a rational numeral, or None when its denominator is zero here.

        Integers are sums of ``one``; a/b is ``a * inv(b)``.
        """
        if not {ADD, NEG, MUL, INV} <= set(self.functions) or ONE not in self.constants:
            raise VocabularyMismatchError("Numerals need a field structure")
        value = Fraction(value)
        if value not in self._numeral_cache:
            self._numeral_cache[value] = self._compute_numeral(value)
        return self._numeral_cache[value]

    @cached_property
    def _numeral_cache(self) -> Dict[Fraction, Optional[int]]:
        return {}

    def _integer(self, n: int) -> int:
        add, one = self.functions[ADD], self.constants[ONE]
        total = self.constants[ZERO]
        count = abs(n) % self.characteristic if self.characteristic else abs(n)
        for _ in range(count):
            total = add[(total, one)]
        return self.functions[NEG][(total,)] if n < 0 else total

    def _compute_numeral(self, value: Fraction) -> Optional[int]:
        numerator = self._integer(value.numerator)
        if value.denominator == 1:
            return numerator
        denominator = self._integer(value.denominator)
        if denominator == self.constants[ZERO]:
            return None
        return self.functions[MUL][(numerator, self.functions[INV][(denominator,)])]

    @cached_property
    def characteristic(self) -> int:
        """Additive order of ``one`` (0 if it never returns to ``zero``)."""
        if ADD not in self.functions:
            return 0
        add, one, zero = self.functions[ADD], self.constants[ONE], self.constants[ZERO]
        total, steps = one, 1
        while total != zero:
            total = add[(total, one)]
            steps += 1
            if steps > len(self.functions[NEG]):
                return 0
        return steps

    def describe(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "sizes": dict(self.sizes),
            "relations": {r: len(t) for r, t in self.relations.items()},
        }


def incidence_structure(
    points: Sequence[str],
    lines: Sequence[str],
    incidences: Iterable[Tuple[str, str]],
    name: str = "",
) -> FiniteStructure:
    """
    Build a point-line incidence structure from named points and lines.

    Args:
        points: Point names, in id order
        lines: Line names, in id order
        incidences: (point name, line name) pairs

    Returns:
        FiniteStructure: a structure over the incidence vocabulary
    """
    point_ids = {p: i for i, p in enumerate(points)}
    line_ids = {l: i for i, l in enumerate(lines)}
    try:
        tuples = frozenset((point_ids[p], line_ids[l]) for p, l in incidences)
    except KeyError as exc:
        raise SortError("Incidence mentions an undeclared element", str(exc.args[0])) from exc
    return FiniteStructure(
        vocabulary=TAU_IN,
        sizes={SORT_POINT: len(points), SORT_LINE: len(lines)},
        relations={INCIDENCE: tuples},
        names={SORT_POINT: tuple(points), SORT_LINE: tuple(lines)},
        name=name,
    )

"""
Finite fields as structures: prime fields and fields read from Cayley tables.

Every field structure carries both presentations, the relational one (Add,
Mult) and the functional one (add, mul, neg, inv). ``inv(0)`` is recorded as 0
only to keep the table total.
"""
import logging
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, TextIO, Tuple, Union

import pyparsing as pp

from geometry import constants
from geometry.conf import geometry_setting
from geometry.constants import SORT_ELEM
from geometry.exceptions import BudgetExceeded, FieldAxiomViolation, FormulaSyntaxError, NotPrimeError
from geometry.formulas.vocabularies import (
    ADD,
    ADD_REL,
    FIELD_STRUCTURE_VOCABULARY,
    INV,
    MUL,
    MULT_REL,
    NEG,
    ONE,
    ZERO,
)
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)

Table = Mapping[Tuple[int, int], int]


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    holds: bool
    witness: Optional[tuple] = None

    def to_dict(self) -> Dict[str, object]:
        data = {"axiom": self.axiom, "holds": self.holds}
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


@dataclass(frozen=True)
class FieldAxiomReport:
    """Outcome of the exhaustive field-axiom check, one entry per axiom in check order."""

    size: int
    checks: Tuple[AxiomCheck, ...]
    zero: Optional[int] = None
    one: Optional[int] = None

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def first_failure(self) -> Optional[AxiomCheck]:
        return next((c for c in self.checks if not c.holds), None)

    def to_dict(self) -> Dict[str, object]:
        return {"size": self.size, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def _identity(elements: range, table: Table) -> Optional[int]:
    for e in elements:
        if all(table[(e, a)] == a and table[(a, e)] == a for a in elements):
            return e
    return None


def field_axiom_report(size: int, add: Table, mul: Table) -> FieldAxiomReport:
    """
    Check the field axioms on full operation tables.

    Args:
        size: Number of elements; elements are 0..size-1
        add: Addition table
        mul: Multiplication table

    Returns:
        FieldAxiomReport: per-axiom results, each failure with its first witness
    """
    elements = range(size)
    pairs = list(product(elements, repeat=2))
    triples = list(product(elements, repeat=3))
    checks: List[AxiomCheck] = []

    def record(axiom: str, witness: Optional[tuple]) -> None:
        checks.append(AxiomCheck(axiom, witness is None, witness))

    record(
        constants.FIELD_AXIOM_ADD_COMMUTATIVITY,
        next(((a, b) for a, b in pairs if add[(a, b)] != add[(b, a)]), None),
    )
    record(
        constants.FIELD_AXIOM_ADD_ASSOCIATIVITY,
        next(((a, b, c) for a, b, c in triples if add[(add[(a, b)], c)] != add[(a, add[(b, c)])]), None),
    )
    zero = _identity(elements, add)
    record(constants.FIELD_AXIOM_ADD_IDENTITY, None if zero is not None else ())
    if zero is None:
        record(constants.FIELD_AXIOM_ADD_INVERSES, ())
    else:
        record(
            constants.FIELD_AXIOM_ADD_INVERSES,
            next(((a,) for a in elements if all(add[(a, b)] != zero for b in elements)), None),
        )
    one = _identity(elements, mul)
    record(constants.FIELD_AXIOM_MUL_IDENTITY, None if one is not None else ())
    record(
        constants.FIELD_AXIOM_DISTRIBUTIVITY,
        next(
            (
                (a, b, c)
                for a, b, c in triples
                if mul[(a, add[(b, c)])] != add[(mul[(a, b)], mul[(a, c)])]
                or mul[(add[(b, c)], a)] != add[(mul[(b, a)], mul[(c, a)])]
            ),
            None,
        ),
    )
    record(
        constants.FIELD_AXIOM_MUL_COMMUTATIVITY,
        next(((a, b) for a, b in pairs if mul[(a, b)] != mul[(b, a)]), None),
    )
    record(
        constants.FIELD_AXIOM_MUL_ASSOCIATIVITY,
        next(((a, b, c) for a, b, c in triples if mul[(mul[(a, b)], c)] != mul[(a, mul[(b, c)])]), None),
    )
    if zero is None or one is None:
        record(constants.FIELD_AXIOM_MUL_INVERSES, ())
        record(constants.FIELD_AXIOM_NONTRIVIAL, ())
    else:
        record(
            constants.FIELD_AXIOM_MUL_INVERSES,
            next(
                ((a,) for a in elements if a != zero and all(mul[(a, b)] != one for b in elements)),
                None,
            ),
        )
        record(constants.FIELD_AXIOM_NONTRIVIAL, None if zero != one else (zero, one))
    return FieldAxiomReport(size=size, checks=tuple(checks), zero=zero, one=one)


def build_field_structure(
    size: int,
    add: Table,
    mul: Table,
    name: str = "",
    names: Optional[Sequence[str]] = None,
) -> FiniteStructure:
    """
    Verify the tables and build the two-presentation field structure.

    Raises:
        FieldAxiomViolation: the first axiom that fails, with the full report attached
    """
    report = field_axiom_report(size, add, mul)
    failure = report.first_failure
    if failure is not None:
        logger.warning(
            "Field tables rejected",
            extra={"field": name, "axiom": failure.axiom, "witness": failure.witness},
        )
        raise FieldAxiomViolation(failure.axiom, failure.witness, report)
    zero, one = report.zero, report.one
    elements = range(size)
    neg = {(a,): next(b for b in elements if add[(a, b)] == zero) for a in elements}
    inv = {(a,): next((b for b in elements if mul[(a, b)] == one), zero) for a in elements}
    return FiniteStructure(
        vocabulary=FIELD_STRUCTURE_VOCABULARY,
        sizes={SORT_ELEM: size},
        relations={
            ADD_REL: frozenset((a, b, c) for (a, b), c in add.items()),
            MULT_REL: frozenset((a, b, c) for (a, b), c in mul.items()),
        },
        functions={ADD: dict(add), MUL: dict(mul), NEG: neg, INV: inv},
        constants={ZERO: zero, ONE: one},
        names={SORT_ELEM: tuple(names) if names else tuple(str(i) for i in elements)},
        name=name,
    )


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def build_prime_field(p: int, prime_bound: Optional[int] = None) -> FiniteStructure:
    """
    The field GF(p) with elements 0..p-1.

    Args:
        p: A prime
        prime_bound: Largest accepted p (settings default)

    Raises:
        NotPrimeError: p is not prime
        BudgetExceeded: p exceeds the bound
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    bound = geometry_setting("PRIME_BOUND", prime_bound)
    if p > bound:
        raise BudgetExceeded("PRIME_BOUND", bound)
    elements = range(p)
    add = {(a, b): (a + b) % p for a in elements for b in elements}
    mul = {(a, b): (a * b) % p for a in elements for b in elements}
    return build_field_structure(p, add, mul, name=f"GF({p})")


def field_tables(field: FiniteStructure) -> Tuple[int, Dict[Tuple[int, int], int], Dict[Tuple[int, int], int]]:
    """Size and the addition and multiplication tables of a field structure."""
    return field.sizes[SORT_ELEM], dict(field.functions[ADD]), dict(field.functions[MUL])


# Cayley-table files


def _cayley_grammar() -> pp.ParserElement:
    integer = pp.Word(pp.nums).set_parse_action(lambda s, loc, toks: int(toks[0]))
    entry = pp.Group(integer + integer + integer)
    name = pp.Word(pp.printables)
    header = pp.Keyword("field").suppress() + name("name") + integer("size")
    add_block = pp.Keyword("add").suppress() + pp.Group(pp.ZeroOrMore(entry))("add")
    mul_block = pp.Keyword("mul").suppress() + pp.Group(pp.ZeroOrMore(entry))("mul")
    grammar = header + add_block + mul_block
    grammar.ignore(pp.Regex(r"#[^\n]*"))
    return grammar


def parse_cayley_tables(text: str) -> Tuple[str, int, Dict[Tuple[int, int], int], Dict[Tuple[int, int], int]]:
    """
    Read the "field <name> <size>" / "add" / "mul" table format.

    Raises:
        FormulaSyntaxError: malformed text
        FieldAxiomViolation: a table is not a total operation on 0..size-1
    """
    try:
        parsed = _cayley_grammar().parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise FormulaSyntaxError(exc.msg, exc.lineno, exc.col) from exc
    size = parsed["size"]
    tables = []
    for block in ("add", "mul"):
        table: Dict[Tuple[int, int], int] = {}
        for a, b, c in parsed[block]:
            if not (a < size and b < size and c < size) or (a, b) in table:
                raise FieldAxiomViolation(constants.FIELD_AXIOM_CLOSURE, (a, b, c))
            table[(a, b)] = c
        if len(table) != size * size:
            missing = next((a, b) for a in range(size) for b in range(size) if (a, b) not in table)
            raise FieldAxiomViolation(constants.FIELD_AXIOM_CLOSURE, missing)
        tables.append(table)
    return parsed["name"], size, tables[0], tables[1]


def load_cayley_field(source: Union[str, Path, TextIO]) -> FiniteStructure:
    """
    Load a finite field from a Cayley-table file, accepting it only if every field axiom holds.

    Args:
        source: Path to the file, or an open text file

    Returns:
        FiniteStructure: the verified field

    Raises:
        FieldAxiomViolation: naming the failed axiom and a witness tuple
    """
    text = source.read() if hasattr(source, "read") else Path(source).read_text(encoding="utf-8")
    name, size, add, mul = parse_cayley_tables(text)
    field = build_field_structure(size, add, mul, name=name)
    logger.info("Loaded Cayley field", extra={"field": name, "size": size})
    return field


def print_cayley_tables(field: FiniteStructure) -> str:
    size, add, mul = field_tables(field)
    lines = [f"field {field.name or 'F'} {size}", "add"]
    lines += [f"{a} {b} {add[(a, b)]}" for a in range(size) for b in range(size)]
    lines.append("mul")
    lines += [f"{a} {b} {mul[(a, b)]}" for a in range(size) for b in range(size)]
    return "\n".join(lines) + "\n"

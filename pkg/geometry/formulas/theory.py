"""
Theories as named axiom lists, and the axiom file format

    (theory <name> (axiom <label> <formula>) ...)
"""
from dataclasses import dataclass, field
from typing import Callable, Tuple

from geometry.exceptions import FormulaSyntaxError, SortError, VocabularyMismatchError
from geometry.formulas.parser import FormulaReader, SList, SToken, read_sexpressions
from geometry.formulas.printer import print_formula
from geometry.formulas.syntax import Formula, Vocabulary
from geometry.formulas.transforms import free_variables, relations_used


@dataclass(frozen=True)
class Axiom:
    label: str
    formula: Formula


@dataclass(frozen=True)
class Theory:
    """
    A named list of closed axioms over a vocabulary.

    ``generators`` are axiom schemes: (name, n -> Formula) pairs turned into
    ordinary axioms by ``instantiate``.
    """

    name: str
    vocabulary: Vocabulary
    axioms: Tuple[Axiom, ...]
    generators: Tuple[Tuple[str, Callable[[int], Formula]], ...] = field(default=(), compare=False)

    def __post_init__(self):
        for axiom in self.axioms:
            if free_variables(axiom.formula):
                raise SortError("Axiom is not closed", axiom.label)
            unknown = relations_used(axiom.formula) - set(self.vocabulary.relations)
            if unknown:
                raise VocabularyMismatchError(
                    f"Axiom {axiom.label} uses symbols outside {self.vocabulary.name}: "
                    f"{', '.join(sorted(unknown))}"
                )

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(a.label for a in self.axioms)

    def axiom(self, label: str) -> Axiom:
        for a in self.axioms:
            if a.label == label:
                return a
        raise KeyError(label)

    def instantiate(self, n: int) -> "Theory":
        """Expand every scheme at parameter ``n``; the result has no generators."""
        extra = tuple(Axiom(f"{name}({n})", generate(n)) for name, generate in self.generators)
        return Theory(self.name, self.vocabulary, self.axioms + extra)


def print_theory(theory: Theory) -> str:
    lines = [f"(theory {theory.name}"]
    for axiom in theory.axioms:
        lines.append(f"  (axiom {axiom.label} {print_formula(axiom.formula)})")
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def parse_theory(text: str, vocab: Vocabulary) -> Theory:
    """
    Read an axiom file.

    Raises:
        FormulaSyntaxError: malformed file
        SortError: ill-sorted or open axiom
    """
    nodes = read_sexpressions(text)
    reader = FormulaReader(text, vocab)
    if len(nodes) != 1 or not isinstance(nodes[0], SList):
        raise FormulaSyntaxError("Expected a single (theory ...) form", 1, 1)
    items = nodes[0].items
    if len(items) < 2 or not all(isinstance(x, SToken) for x in items[:2]) or items[0].text != "theory":
        raise reader.syntax_error("Expected (theory <name> ...)", nodes[0])
    axioms = []
    for item in items[2:]:
        if (
            not isinstance(item, SList)
            or len(item.items) != 3
            or not isinstance(item.items[0], SToken)
            or item.items[0].text != "axiom"
            or not isinstance(item.items[1], SToken)
        ):
            raise reader.syntax_error("Expected (axiom <label> <formula>)", item)
        axioms.append(Axiom(item.items[1].text, reader.read(item.items[2])))
    return Theory(items[1].text, vocab, tuple(axioms))

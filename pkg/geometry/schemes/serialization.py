"""
Text form of translation schemes.

    (scheme <name>
      (source <vocabulary>) (target <vocabulary>)
      (dim <Sort> (<var> <SourceSort>)+)
      (universe <Sort> <formula>)
      (equal <Sort> ((<var>+) (<var>+)) <formula>)
      (rel <Name> ((<var>+)+) <formula>))

Formulas use the ordinary formula grammar. Canonicalization hooks are code
and do not survive a round trip unless supplied again to ``parse_scheme``.
"""
from typing import Dict, List, Mapping, Optional, Tuple

from geometry.exceptions import FormulaSyntaxError, VocabularyMismatchError
from geometry.formulas.parser import FormulaReader, SList, SToken, read_sexpressions
from geometry.formulas.printer import print_formula
from geometry.formulas.syntax import EQUALITY, TRUE, Vocabulary
from geometry.formulas.vocabularies import VOCABULARIES
from geometry.schemes.scheme import Canonicalizer, RelationDefinition, SortDefinition, TranslationScheme

# Used only to report positions before the vocabularies are known.
_EMPTY = Vocabulary(name="empty", sorts=())


def _names(groups) -> str:
    return "(" + " ".join("(" + " ".join(g) + ")" for g in groups) + ")"


def print_scheme(scheme: TranslationScheme) -> str:
    lines = [f"(scheme {scheme.name}", f"  (source {scheme.source.name})", f"  (target {scheme.target.name})"]
    for sort in scheme.target.sorts:
        definition = scheme.sorts[sort]
        components = " ".join(f"({name} {s})" for name, s in definition.variables)
        lines.append(f"  (dim {sort} {components})")
        lines.append(f"  (universe {sort} {print_formula(definition.universe)})")
        if definition.equality is not None:
            eq = definition.equality
            lines.append(f"  (equal {sort} {_names(eq.arguments)} {print_formula(eq.formula)})")
    for symbol in scheme.target.relations:
        definition = scheme.relations[symbol]
        lines.append(f"  (rel {symbol} {_names(definition.arguments)} {print_formula(definition.formula)})")
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def parse_scheme(
    text: str,
    vocabularies: Mapping[str, Vocabulary] = VOCABULARIES,
    canonical: Optional[Mapping[str, Canonicalizer]] = None,
) -> TranslationScheme:
    """
    Read a scheme written by ``print_scheme``.

    Args:
        text: Scheme source
        vocabularies: Vocabularies the source/target names refer to
        canonical: Optional canonicalization hooks per target sort
    """
    nodes = read_sexpressions(text)
    if len(nodes) != 1 or not isinstance(nodes[0], SList):
        raise FormulaSyntaxError("Expected a single (scheme ...) form", 1, 1)
    root = nodes[0]
    outline = FormulaReader(text, _EMPTY)
    items = root.items
    if len(items) < 2 or not all(isinstance(x, SToken) for x in items[:2]) or items[0].text != "scheme":
        raise outline.syntax_error("Expected (scheme <name> ...)", root)
    name = items[1].text
    clauses: Dict[str, List[SList]] = {}
    for item in items[2:]:
        if not isinstance(item, SList) or not item.items or not isinstance(item.items[0], SToken):
            raise outline.syntax_error("Expected a scheme clause", item)
        clauses.setdefault(item.items[0].text, []).append(item)

    def vocabulary(keyword: str) -> Vocabulary:
        found = clauses.get(keyword, [])
        if len(found) != 1 or len(found[0].items) != 2:
            raise outline.syntax_error(f"Expected exactly one ({keyword} <vocabulary>)", root)
        label = found[0].items[1].text
        if label not in vocabularies:
            raise VocabularyMismatchError(f"Unknown vocabulary {label}")
        return vocabularies[label]

    source, target = vocabulary("source"), vocabulary("target")
    reader = FormulaReader(text, source)

    def read(node, variables: List[Tuple[str, str]]):
        reader.declared = dict(variables)
        return reader.read(node)

    def var_groups(node) -> Tuple[Tuple[str, ...], ...]:
        if not isinstance(node, SList):
            raise outline.syntax_error("Expected a list of variable lists", node)
        groups = []
        for group in node.items:
            if not isinstance(group, SList) or not all(isinstance(x, SToken) for x in group.items):
                raise outline.syntax_error("Expected a variable list", group)
            groups.append(tuple(x.text for x in group.items))
        return tuple(groups)

    components: Dict[str, Tuple[Tuple[str, str], ...]] = {}
    for clause in clauses.get("dim", []):
        sort = clause.items[1].text
        pairs = []
        for pair in clause.items[2:]:
            if not isinstance(pair, SList) or len(pair.items) != 2:
                raise outline.syntax_error("Expected (<var> <Sort>)", pair)
            pairs.append((pair.items[0].text, pair.items[1].text))
        components[sort] = tuple(pairs)

    universes = {c.items[1].text: c.items[2] for c in clauses.get("universe", [])}
    equalities = {c.items[1].text: c for c in clauses.get("equal", [])}
    sorts = {}
    for sort, variables in components.items():
        universe = read(universes[sort], list(variables)) if sort in universes else TRUE
        equality = None
        if sort in equalities:
            clause = equalities[sort]
            groups = var_groups(clause.items[2])
            declared = [(n, s) for g in groups for n, (_, s) in zip(g, variables)]
            equality = RelationDefinition(EQUALITY, groups, read(clause.items[3], declared))
        sorts[sort] = SortDefinition(
            sort=sort,
            variables=variables,
            universe=universe,
            equality=equality,
            canonical=(canonical or {}).get(sort),
        )

    relations = {}
    for clause in clauses.get("rel", []):
        symbol = clause.items[1].text
        groups = var_groups(clause.items[2])
        arg_sorts = target.relations.get(symbol)
        if arg_sorts is None:
            raise VocabularyMismatchError(f"{symbol} is not a relation of {target.name}")
        declared = [
            (n, s) for g, sort in zip(groups, arg_sorts) for n, (_, s) in zip(g, components.get(sort, ()))
        ]
        relations[symbol] = RelationDefinition(symbol, groups, read(clause.items[3], declared))
    return TranslationScheme(name=name, source=source, target=target, sorts=sorts, relations=relations)

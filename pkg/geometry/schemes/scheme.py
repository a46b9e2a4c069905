"""
Translation schemes as data.

A scheme interprets each target sort as tuples of source elements cut out by
a universe formula, and each target relation by a defining formula. It acts
on structures (``apply_transduction``) and on formulas (``translate_formula``),
and the two actions agree: the source satisfies the translation of a sentence
exactly when the image structure satisfies the sentence.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from geometry.conf import geometry_setting
from geometry.exceptions import BudgetExceeded, SortError, VocabularyMismatchError
from geometry.formulas.printer import print_formula
from geometry.formulas.syntax import (
    EQUALITY,
    TRUE,
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Num,
    Or,
    Quantifier,
    Var,
    Vocabulary,
    conj,
    disj,
    equals,
)
from geometry.formulas.transforms import free_variables, is_quantifier_free, prenex, split_prefix, substitute
from geometry.structures.evaluation import Evaluator
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)

Canonicalizer = Callable[[FiniteStructure, tuple], tuple]


@dataclass(frozen=True)
class SortDefinition:
    """
    How one target sort is represented.

    Attributes:
        sort: Target sort name
        variables: Template variables, one per component, with their source sorts
        universe: Formula over ``variables`` selecting the admissible tuples
        equality: Formula over two copies of the variables deciding when two tuples
            denote the same element; componentwise equality when None
        canonical: Maps an admissible tuple to its class representative
        charts: Partial component assignments (suffix, value); every element has a
            representative matching one chart, and all defining formulas respect
            the sort equality, so a quantifier may be split over the charts
    """

    sort: str
    variables: Tuple[Tuple[str, str], ...]
    universe: Formula = TRUE
    equality: Optional["RelationDefinition"] = None
    canonical: Optional[Canonicalizer] = field(default=None, compare=False)
    charts: Tuple[Tuple[Tuple[str, int], ...], ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.variables)

    @property
    def suffixes(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.variables)


@dataclass(frozen=True)
class RelationDefinition:
    """
    Defining formula of a target relation.

    ``arguments[i]`` lists the formula variables standing for the components
    of the i-th argument.
    """

    relation: str
    arguments: Tuple[Tuple[str, ...], ...]
    formula: Formula


@dataclass(frozen=True)
class TranslationScheme:
    name: str
    source: Vocabulary
    target: Vocabulary
    sorts: Mapping[str, SortDefinition]
    relations: Mapping[str, RelationDefinition]

    def __post_init__(self):
        for sort in self.target.sorts:
            if sort not in self.sorts:
                raise VocabularyMismatchError(f"Scheme {self.name} does not define sort {sort}")
        for symbol, arg_sorts in self.target.relations.items():
            definition = self.relations.get(symbol)
            if definition is None:
                raise VocabularyMismatchError(f"Scheme {self.name} does not define {symbol}")
            self._check_definition(definition, arg_sorts)
        for definition in self.sorts.values():
            allowed = set(definition.variables)
            if not free_variables(definition.universe) <= allowed:
                raise SortError("Universe formula has stray free variables", definition.sort)
            if definition.equality is not None:
                self._check_definition(definition.equality, (definition.sort, definition.sort))

    def _check_definition(self, definition: RelationDefinition, arg_sorts: Sequence[str]) -> None:
        if len(definition.arguments) != len(arg_sorts):
            raise SortError("Defining formula has the wrong arity", definition.relation)
        expected = set()
        for names, sort in zip(definition.arguments, arg_sorts):
            components = self.sorts[sort].variables
            if len(names) != len(components):
                raise SortError(f"Argument of sort {sort} needs {len(components)} components", definition.relation)
            expected |= {(n, s) for n, (_, s) in zip(names, components)}
        if not free_variables(definition.formula) <= expected:
            raise SortError("Defining formula has stray free variables", definition.relation)

    @property
    def quantifier_free(self) -> bool:
        formulas = [d.formula for d in self.relations.values()]
        formulas += [d.universe for d in self.sorts.values()]
        formulas += [d.equality.formula for d in self.sorts.values() if d.equality is not None]
        return all(is_quantifier_free(f) for f in formulas)

    def restricted_to(self, relations: Iterable[str]) -> "TranslationScheme":
        """The same scheme with a smaller target vocabulary."""
        keep = set(relations)
        target = self.target.restrict(keep, f"{self.target.name}|{','.join(sorted(keep))}")
        return TranslationScheme(
            name=self.name,
            source=self.source,
            target=target,
            sorts=self.sorts,
            relations={r: d for r, d in self.relations.items() if r in keep},
        )


# Translation of formulas


def component_names(variable: str, definition: SortDefinition) -> List[Tuple[str, str]]:
    """Source variables standing for the components of a target variable, e.g. P.x, P.y."""
    return [(f"{variable}.{suffix}", sort) for suffix, sort in definition.variables]


def _instantiate(definition: RelationDefinition, scheme: TranslationScheme, args, arg_sorts) -> Formula:
    mapping = {}
    for names, term, sort in zip(definition.arguments, args, arg_sorts):
        if not isinstance(term, Var):
            raise SortError("Only variables can be translated as arguments", definition.relation)
        for name, (component, source_sort) in zip(names, component_names(term.name, scheme.sorts[sort])):
            mapping[name] = Var(sort=source_sort, name=component)
    return substitute(definition.formula, mapping)


def _universe(scheme: TranslationScheme, variable: str, definition: SortDefinition) -> Formula:
    mapping = {
        suffix: Var(sort=sort, name=component)
        for (suffix, _), (component, sort) in zip(definition.variables, component_names(variable, definition))
    }
    return substitute(definition.universe, mapping)


def translate_formula(scheme: TranslationScheme, theta: Formula, charts: bool = False) -> Formula:
    """
    The translation of a target-vocabulary formula into the source vocabulary.

    Each target variable v becomes the tuple v.<component>; quantifiers are
    relativized to the universe formula, atoms replaced by their defining
    formulas and equality by the sort's equality formula.

    Args:
        scheme: The translation scheme
        theta: Formula over the scheme's target vocabulary
        charts: Split quantifiers over sorts with charts into one case per chart

    Returns:
        Formula: the translated formula over the source vocabulary
    """
    if isinstance(theta, Atom):
        if theta.is_equality:
            sort = theta.args[0].sort
            definition = scheme.sorts[sort]
            if definition.equality is not None:
                return _instantiate(definition.equality, scheme, theta.args, (sort, sort))
            left, right = theta.args
            if not (isinstance(left, Var) and isinstance(right, Var)):
                raise SortError("Only variables can be translated as arguments", EQUALITY)
            return conj(
                *(
                    equals(Var(sort=s, name=a), Var(sort=s, name=b))
                    for (a, s), (b, _) in zip(
                        component_names(left.name, definition), component_names(right.name, definition)
                    )
                )
            )
        definition = scheme.relations.get(theta.relation)
        if definition is None:
            raise VocabularyMismatchError(f"Scheme {scheme.name} does not define {theta.relation}")
        return _instantiate(definition, scheme, theta.args, scheme.target.relations[theta.relation])
    if isinstance(theta, Not):
        return Not(translate_formula(scheme, theta.body, charts))
    if isinstance(theta, And):
        return And(tuple(translate_formula(scheme, p, charts) for p in theta.parts))
    if isinstance(theta, Or):
        return Or(tuple(translate_formula(scheme, p, charts) for p in theta.parts))
    if isinstance(theta, Implies):
        return Implies(translate_formula(scheme, theta.left, charts), translate_formula(scheme, theta.right, charts))
    if isinstance(theta, Quantifier):
        definition = scheme.sorts[theta.sort]
        body = translate_formula(scheme, theta.body, charts)
        if charts and definition.charts:
            return _split_over_charts(scheme, theta, definition, body)
        universe = _universe(scheme, theta.var, definition)
        if universe != TRUE:
            body = Implies(universe, body) if isinstance(theta, Forall) else conj(universe, body)
        for component, sort in reversed(component_names(theta.var, definition)):
            body = type(theta)(component, sort, body)
        return body
    raise TypeError(f"Not a formula: {theta!r}")


def _split_over_charts(
    scheme: TranslationScheme, theta: Quantifier, definition: SortDefinition, body: Formula
) -> Formula:
    kind = type(theta)
    cases = []
    for chart in definition.charts:
        fixed = dict(chart)
        mapping = {}
        remaining = []
        for (suffix, _), (component, sort) in zip(definition.variables, component_names(theta.var, definition)):
            if suffix in fixed:
                mapping[component] = Num(sort=sort, value=Fraction(fixed[suffix]))
            else:
                remaining.append((component, sort))
        case = substitute(body, mapping)
        guard = substitute(_universe(scheme, theta.var, definition), mapping)
        if guard != TRUE:
            case = Implies(guard, case) if kind is Forall else conj(guard, case)
        for component, sort in reversed(remaining):
            case = kind(component, sort, case)
        cases.append(case)
    return conj(*cases) if kind is Forall else disj(*cases)


@dataclass(frozen=True)
class ChartCase:
    """One translated case and the components its charts fixed."""

    formula: Formula
    fixed: Mapping[str, Fraction] = field(default_factory=dict)


def chart_cases(
    scheme: TranslationScheme,
    theta: Formula,
    limit: Optional[int] = None,
) -> Tuple[Optional[type], List["ChartCase"]]:
    """
    Translate a sentence once per chart combination of its outermost block.

    For a sort with charts, ``forall v. phi(v)`` is the conjunction and
    ``exists v. phi(v)`` the disjunction of the translations with some
    components of v fixed to numerals. Fewer free components make the
    decision problems much smaller.

    Args:
        scheme: Translation scheme
        theta: Closed sentence over the scheme's target vocabulary
        limit: Most variables split (settings default)

    Returns:
        (Forall or Exists, cases) when a split happened, otherwise
        (None, [case]) with the plain translation
    """
    limit = geometry_setting("CHART_SPLIT_LIMIT", limit)
    theta = prenex(theta)
    prefix, matrix = split_prefix(theta)
    if not prefix:
        return None, [ChartCase(translate_formula(scheme, theta, charts=True))]
    kind = prefix[0][0]
    block = []
    for entry in prefix:
        if entry[0] is not kind:
            break
        block.append(entry)
    split = [(name, sort) for _, name, sort in block if scheme.sorts[sort].charts][:limit]
    if not split:
        return None, [ChartCase(translate_formula(scheme, theta, charts=True))]
    body = matrix
    for entry_kind, name, sort in reversed([e for e in prefix if (e[1], e[2]) not in split]):
        body = entry_kind(name, sort, body)
    translated = translate_formula(scheme, body, charts=True)

    cases = []
    for charts in product(*(scheme.sorts[sort].charts for _, sort in split)):
        mapping: Dict[str, Num] = {}
        remaining: List[Tuple[str, str]] = []
        guards = []
        for (name, sort), chart in zip(split, charts):
            definition, fixed = scheme.sorts[sort], dict(chart)
            for (suffix, _), (component, source_sort) in zip(
                definition.variables, component_names(name, definition)
            ):
                if suffix in fixed:
                    mapping[component] = Num(sort=source_sort, value=Fraction(fixed[suffix]))
                else:
                    remaining.append((component, source_sort))
            guards.append(_universe(scheme, name, definition))
        case = substitute(translated, mapping)
        guard = substitute(conj(*guards), mapping)
        if guard != TRUE:
            case = Implies(guard, case) if kind is Forall else conj(guard, case)
        for component, source_sort in reversed(remaining):
            case = kind(component, source_sort, case)
        cases.append(ChartCase(case, {name: value.value for name, value in mapping.items()}))
    logger.debug("Sentence split over charts", extra={"variables": len(split), "cases": len(cases)})
    return kind, cases


# Transduction of structures


def _tuple_name(structure: FiniteStructure, sorts: Sequence[str], values: tuple, brackets: str) -> str:
    inner = ",".join(structure.element_name(s, v) for s, v in zip(sorts, values))
    return f"{brackets[0]}{inner}{brackets[1]}"


def apply_transduction(
    scheme: TranslationScheme,
    structure: FiniteStructure,
    budget: Optional[int] = None,
    relations: Optional[Iterable[str]] = None,
) -> FiniteStructure:
    """
    The image of a source structure under the scheme.

    Elements of each target sort are the classes of admissible tuples, each
    represented by the canonical hook's choice or by its lexicographically
    least member. Relations are evaluated on the representatives.

    Args:
        scheme: Translation scheme whose source vocabulary the structure interprets
        structure: Source structure
        budget: Largest number of tuples enumerated for one sort or relation
        relations: Compute only these target relations

    Returns:
        FiniteStructure: a structure over the (possibly restricted) target vocabulary

    Raises:
        BudgetExceeded: a carrier or relation needs more tuples than the budget
        VocabularyMismatchError: the structure does not interpret the source vocabulary
    """
    limit = geometry_setting("TRANSDUCTION_BUDGET", budget)
    if relations is not None:
        scheme = scheme.restricted_to(relations)
    missing = set(scheme.source.functions) - set(structure.functions)
    missing |= set(scheme.source.relations) - set(structure.relations)
    if missing:
        raise VocabularyMismatchError(
            f"Structure {structure.name or '?'} does not interpret {', '.join(sorted(missing))}"
        )
    evaluator = Evaluator(structure)
    sizes: Dict[str, int] = {}
    origin: Dict[str, Tuple[tuple, ...]] = {}
    names: Dict[str, Tuple[str, ...]] = {}
    for sort in scheme.target.sorts:
        definition = scheme.sorts[sort]
        component_sorts = [s for _, s in definition.variables]
        total = prod(structure.sizes[s] for s in component_sorts)
        if total > limit:
            raise BudgetExceeded("TRANSDUCTION_BUDGET", limit)
        universe, _ = evaluator.compile(definition.universe, definition.variables)
        admissible = [
            t for t in product(*(structure.carrier(s) for s in component_sorts)) if universe(list(t))
        ]
        representatives = _class_representatives(evaluator, structure, definition, admissible)
        sizes[sort] = len(representatives)
        origin[sort] = tuple(representatives)
        brackets = "()" if definition.equality is None else "[]"
        names[sort] = tuple(_tuple_name(structure, component_sorts, t, brackets) for t in representatives)

    tables: Dict[str, frozenset] = {}
    for symbol, arg_sorts in scheme.target.relations.items():
        definition = scheme.relations[symbol]
        total = prod(sizes[s] for s in arg_sorts)
        if total > limit:
            raise BudgetExceeded("TRANSDUCTION_BUDGET", limit)
        free = []
        for names_, sort in zip(definition.arguments, arg_sorts):
            free.extend(zip(names_, (s for _, s in scheme.sorts[sort].variables)))
        fn, width = evaluator.compile(definition.formula, _dedupe(free))
        slots = {name: i for i, (name, _) in enumerate(_dedupe(free))}
        layout = [[slots[n] for n in names_] for names_ in definition.arguments]
        rows = []
        env = [0] * width
        for ids in product(*(range(sizes[s]) for s in arg_sorts)):
            for element, sort, positions in zip(ids, arg_sorts, layout):
                for slot, value in zip(positions, origin[sort][element]):
                    env[slot] = value
            if fn(env):
                rows.append(ids)
        tables[symbol] = frozenset(rows)
        logger.debug("Relation transduced", extra={"relation": symbol, "tuples": len(rows)})

    image = FiniteStructure(
        vocabulary=scheme.target,
        sizes=sizes,
        relations=tables,
        names=names,
        name=f"{scheme.name}({structure.name})",
        origin=origin,
    )
    logger.info("Transduction applied", extra={"scheme": scheme.name, "structure": structure.name, "sizes": sizes})
    return image


def _dedupe(pairs: List[Tuple[str, str]]) -> List[Tuple[str, str]]:
    return list(dict.fromkeys(pairs))


def _class_representatives(
    evaluator: Evaluator,
    structure: FiniteStructure,
    definition: SortDefinition,
    admissible: List[tuple],
) -> List[tuple]:
    if definition.canonical is not None:
        return sorted({definition.canonical(structure, t) for t in admissible})
    if definition.equality is None:
        return admissible
    eq = definition.equality
    free = _dedupe(
        [(n, s) for n, (_, s) in zip(eq.arguments[0], definition.variables)]
        + [(n, s) for n, (_, s) in zip(eq.arguments[1], definition.variables)]
    )
    fn, width = evaluator.compile(eq.formula, free)
    slots = {name: i for i, (name, _) in enumerate(free)}
    left = [slots[n] for n in eq.arguments[0]]
    right = [slots[n] for n in eq.arguments[1]]
    representatives: List[tuple] = []
    env = [0] * width
    for t in admissible:
        for slot, value in zip(left, t):
            env[slot] = value
        duplicate = False
        for r in representatives:
            for slot, value in zip(right, r):
                env[slot] = value
            if fn(env):
                duplicate = True
                break
        if not duplicate:
            representatives.append(t)
    return representatives


def fundamental_property_check(
    scheme: TranslationScheme,
    structure: FiniteStructure,
    theta: Formula,
    image: Optional[FiniteStructure] = None,
) -> bool:
    """
    Whether the source satisfies the translation of ``theta`` exactly when the image satisfies ``theta``.

    Args:
        scheme: Translation scheme
        structure: Source structure
        theta: Closed formula over the target vocabulary
        image: Precomputed transduction of ``structure``

    Returns:
        bool: True when both evaluations agree
    """
    image = image or apply_transduction(scheme, structure)
    translated = translate_formula(scheme, theta)
    left = Evaluator(structure).holds(translated)
    right = Evaluator(image).holds(theta)
    if left != right:
        logger.warning(
            "Translation and transduction disagree",
            extra={"scheme": scheme.name, "structure": structure.name, "sentence": print_formula(theta)},
        )
    return left == right

"""
Reader for the s-expression formula grammar.

    formula ::= atom | (not f) | (and f+) | (or f+) | (=> f f)
              | (forall ((var Sort)+) f) | (exists ((var Sort)+) f)
              | true | false
    atom    ::= (= t t) | (RelName t+)
    term    ::= var | const | numeral | (FnName t+)

Whitespace is insignificant and ``;`` starts a line comment. Names that are
neither bound nor constants are free variables; their sorts come from the
caller or are inferred from the argument positions they occupy.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

import pyparsing as pp

from geometry.exceptions import FormulaSyntaxError, SortError
from geometry.formulas.syntax import (
    EQUALITY,
    FALSE,
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
    Term,
    Var,
    Vocabulary,
)

KEYWORDS = frozenset({"not", "and", "or", "=>", "forall", "exists", EQUALITY, "true", "false"})
_NUMERAL = re.compile(r"[+-]?\d+(/\d+)?")


@dataclass(frozen=True)
class SToken:
    loc: int
    text: str


@dataclass(frozen=True)
class SList:
    loc: int
    items: Tuple[object, ...]


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    lpar, rpar = map(pp.Suppress, "()")
    token = pp.Regex(r"[^\s();]+").set_parse_action(lambda s, loc, toks: SToken(loc, toks[0]))
    sexp = pp.Forward()
    group = pp.Group(lpar + pp.ZeroOrMore(sexp) + rpar).set_parse_action(
        lambda s, loc, toks: SList(loc, tuple(toks[0]))
    )
    sexp <<= group | token
    document = pp.ZeroOrMore(sexp)
    document.ignore(pp.Suppress(pp.Regex(r";[^\n]*")))
    return document


def read_sexpressions(text: str) -> List[object]:
    """Parse text into a list of top-level s-expression nodes."""
    try:
        return list(_grammar().parse_string(text, parse_all=True))
    except pp.ParseBaseException as exc:
        raise FormulaSyntaxError(exc.msg, exc.lineno, exc.col) from exc


def is_numeral(text: str) -> bool:
    return _NUMERAL.fullmatch(text) is not None


class FormulaReader:
    """
    Turns s-expression nodes into well-sorted formulas over a vocabulary.

    Args:
        text: Source text, used to report line and column positions
        vocab: Vocabulary the formula must be written in
        free: Declared sorts of free variables
    """

    def __init__(self, text: str, vocab: Vocabulary, free: Optional[Mapping[str, str]] = None):
        self.text = text
        self.vocab = vocab
        self.declared = dict(free or {})

    # -- positions and errors -------------------------------------------------

    def _where(self, node) -> str:
        return f"line {pp.lineno(node.loc, self.text)}, column {pp.col(node.loc, self.text)}"

    def syntax_error(self, message: str, node) -> FormulaSyntaxError:
        return FormulaSyntaxError(
            message, pp.lineno(node.loc, self.text), pp.col(node.loc, self.text)
        )

    def _sort_error(self, message: str, symbol: str, node) -> SortError:
        return SortError(f"{message} at {self._where(node)}", symbol)

    # -- entry points ---------------------------------------------------------

    def read(self, node) -> Formula:
        self.free: Dict[str, str] = dict(self.declared)
        self._mentioned: Dict[str, object] = {}
        self._equalities: List[Tuple[tuple, dict]] = []
        self._infer(node, {})
        self._resolve_free_sorts()
        return self._formula(node, {})

    def read_term(self, node, bound: Mapping[str, str]) -> Term:
        self.free = dict(self.declared)
        return self._term(node, dict(bound))

    # -- free-variable sort inference -----------------------------------------

    def _head(self, node) -> Tuple[str, tuple]:
        if not isinstance(node, SList) or not node.items:
            raise self.syntax_error("Expected a non-empty list", node)
        head = node.items[0]
        if not isinstance(head, SToken):
            raise self.syntax_error("Expected a symbol at the head of a list", head)
        return head.text, node.items[1:]

    def _binders(self, node) -> List[Tuple[str, str, object]]:
        if not isinstance(node, SList) or not node.items:
            raise self.syntax_error("Expected a binder list ((var Sort)+)", node)
        binders = []
        for item in node.items:
            if (
                not isinstance(item, SList)
                or len(item.items) != 2
                or not all(isinstance(x, SToken) for x in item.items)
            ):
                raise self.syntax_error("Expected a binder (var Sort)", item)
            name, sort = item.items[0].text, item.items[1].text
            if name in KEYWORDS or is_numeral(name):
                raise self.syntax_error(f"Reserved word used as variable: {name}", item)
            if sort not in self.vocab.sorts:
                raise self._sort_error("Unknown sort", sort, item.items[1])
            binders.append((name, sort, item))
        return binders

    def _note_free(self, name: str, sort: str, node) -> None:
        known = self.free.get(name)
        if known is not None and known != sort:
            raise self._sort_error(f"Free variable used with sorts {known} and {sort}", name, node)
        self.free[name] = sort

    def _is_free_name(self, name: str, bound: Mapping[str, str]) -> bool:
        return not (
            name in bound
            or name in self.vocab.constants
            or (self.vocab.numerals is not None and is_numeral(name))
        )

    def _infer(self, node, bound: Dict[str, str]) -> None:
        if isinstance(node, SToken):
            return
        head, args = self._head(node)
        if head in ("not", "and", "or", "=>"):
            for arg in args:
                self._infer(arg, bound)
        elif head in ("forall", "exists"):
            if len(args) != 2:
                raise self.syntax_error(f"'{head}' takes a binder list and a body", node)
            inner = dict(bound)
            for name, sort, _ in self._binders(args[0]):
                inner[name] = sort
            self._infer(args[1], inner)
        elif head == EQUALITY:
            for arg in args:
                self._infer_term(arg, None, bound)
            self._equalities.append((args, dict(bound)))
        else:
            sorts = self.vocab.relations.get(head, ())
            for i, arg in enumerate(args):
                self._infer_term(arg, sorts[i] if i < len(sorts) else None, bound)

    def _infer_term(self, node, expected: Optional[str], bound: Mapping[str, str]) -> None:
        if isinstance(node, SToken):
            name = node.text
            if self._is_free_name(name, bound):
                self._mentioned.setdefault(name, node)
                if expected is not None:
                    self._note_free(name, expected, node)
            return
        head, args = self._head(node)
        signature = self.vocab.functions.get(head)
        arg_sorts = signature[0] if signature else ()
        for i, arg in enumerate(args):
            self._infer_term(arg, arg_sorts[i] if i < len(arg_sorts) else None, bound)

    def _static_sort(self, node, bound: Mapping[str, str]) -> Optional[str]:
        if isinstance(node, SToken):
            name = node.text
            if name in bound:
                return bound[name]
            if name in self.vocab.constants:
                return self.vocab.constants[name]
            if self.vocab.numerals is not None and is_numeral(name):
                return self.vocab.numerals
            return self.free.get(name)
        if isinstance(node, SList) and node.items and isinstance(node.items[0], SToken):
            signature = self.vocab.functions.get(node.items[0].text)
            return signature[1] if signature else None
        return None

    def _resolve_free_sorts(self) -> None:
        changed = True
        while changed:
            changed = False
            for args, bound in self._equalities:
                sorts = [self._static_sort(arg, bound) for arg in args]
                known = next((s for s in sorts if s is not None), None)
                if known is None:
                    continue
                for arg, sort in zip(args, sorts):
                    if sort is None and isinstance(arg, SToken) and self._is_free_name(arg.text, bound):
                        self._note_free(arg.text, known, arg)
                        changed = True
        for name, node in self._mentioned.items():
            if name in self.free:
                continue
            if len(self.vocab.sorts) == 1:
                self.free[name] = self.vocab.sorts[0]
            else:
                raise self._sort_error("Cannot infer the sort of free variable", name, node)

    # -- construction ---------------------------------------------------------

    def _formula(self, node, bound: Dict[str, str]) -> Formula:
        if isinstance(node, SToken):
            if node.text == "true":
                return TRUE
            if node.text == "false":
                return FALSE
            raise self.syntax_error(f"Expected a formula, found '{node.text}'", node)
        head, args = self._head(node)
        if head == "not":
            if len(args) != 1:
                raise self.syntax_error("'not' takes exactly one formula", node)
            return Not(self._formula(args[0], bound))
        if head == "and":
            return And(tuple(self._formula(a, bound) for a in args))
        if head == "or":
            return Or(tuple(self._formula(a, bound) for a in args))
        if head == "=>":
            if len(args) != 2:
                raise self.syntax_error("'=>' takes exactly two formulas", node)
            return Implies(self._formula(args[0], bound), self._formula(args[1], bound))
        if head in ("forall", "exists"):
            if len(args) != 2:
                raise self.syntax_error(f"'{head}' takes a binder list and a body", node)
            binders = self._binders(args[0])
            inner = dict(bound)
            for name, sort, _ in binders:
                inner[name] = sort
            body = self._formula(args[1], inner)
            kind = Forall if head == "forall" else Exists
            for name, sort, _ in reversed(binders):
                body = kind(name, sort, body)
            return body
        if head == EQUALITY:
            if len(args) != 2:
                raise self.syntax_error("'=' takes exactly two terms", node)
            left, right = (self._term(a, bound) for a in args)
            if left.sort != right.sort:
                raise self._sort_error(
                    f"Equality between sorts {left.sort} and {right.sort}", EQUALITY, node
                )
            return Atom(EQUALITY, (left, right))
        sorts = self.vocab.relations.get(head)
        if sorts is None:
            raise self._sort_error("Unknown relation symbol", head, node)
        if len(args) != len(sorts):
            raise self._sort_error(
                f"Relation expects {len(sorts)} arguments, got {len(args)}", head, node
            )
        terms = tuple(self._term(a, bound) for a in args)
        for term, sort in zip(terms, sorts):
            if term.sort != sort:
                raise self._sort_error(f"Argument of sort {term.sort} where {sort} expected", head, node)
        return Atom(head, terms)

    def _term(self, node, bound: Mapping[str, str]) -> Term:
        if isinstance(node, SToken):
            name = node.text
            if name in KEYWORDS:
                raise self.syntax_error(f"Reserved word used as a term: {name}", node)
            if name in bound:
                return Var(sort=bound[name], name=name)
            if name in self.vocab.constants:
                return Const(sort=self.vocab.constants[name], name=name)
            if self.vocab.numerals is not None and is_numeral(name):
                return Num(sort=self.vocab.numerals, value=Fraction(name))
            sort = self.free.get(name)
            if sort is None:
                raise self._sort_error("Cannot infer the sort of free variable", name, node)
            return Var(sort=sort, name=name)
        head, args = self._head(node)
        signature = self.vocab.functions.get(head)
        if signature is None:
            raise self._sort_error("Unknown function symbol", head, node)
        arg_sorts, result = signature
        if len(args) != len(arg_sorts):
            raise self._sort_error(
                f"Function expects {len(arg_sorts)} arguments, got {len(args)}", head, node
            )
        terms = tuple(self._term(a, bound) for a in args)
        for term, sort in zip(terms, arg_sorts):
            if term.sort != sort:
                raise self._sort_error(f"Argument of sort {term.sort} where {sort} expected", head, node)
        return App(sort=result, symbol=head, args=terms)


def parse_formula(text: str, vocab: Vocabulary, free: Optional[Mapping[str, str]] = None) -> Formula:
    """
    Parse one formula written in the s-expression grammar.

    Args:
        text: Formula source
        vocab: Vocabulary the formula is written in
        free: Optional declared sorts for free variables

    Returns:
        Formula: the well-sorted syntax tree

    Raises:
        FormulaSyntaxError: malformed text, with line and column
        SortError: unknown symbols, arity or sort mismatches
    """
    nodes = read_sexpressions(text)
    if len(nodes) != 1:
        raise FormulaSyntaxError(f"Expected exactly one formula, found {len(nodes)}", 1, 1)
    return FormulaReader(text, vocab, free).read(nodes[0])

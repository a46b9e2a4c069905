"""
Canonical s-expression printer.

Consecutive quantifiers of the same kind share one binder list, so printing
and re-parsing yields the same tree.
"""
from fractions import Fraction

from geometry.formulas.syntax import (
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
    Quantifier,
    Term,
    Var,
)


def print_numeral(value: Fraction) -> str:
    return str(value)


def print_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, Num):
        return print_numeral(t.value)
    if isinstance(t, App):
        return "(" + " ".join([t.symbol, *(print_term(a) for a in t.args)]) + ")"
    raise TypeError(f"Not a term: {t!r}")


def print_formula(f: Formula) -> str:
    if f == TRUE:
        return "true"
    if f == FALSE:
        return "false"
    if isinstance(f, Atom):
        return "(" + " ".join([f.relation, *(print_term(a) for a in f.args)]) + ")"
    if isinstance(f, Not):
        return f"(not {print_formula(f.body)})"
    if isinstance(f, And):
        return "(and " + " ".join(print_formula(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(print_formula(p) for p in f.parts) + ")"
    if isinstance(f, Implies):
        return f"(=> {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, Quantifier):
        keyword = "forall" if isinstance(f, Forall) else "exists"
        kind = type(f)
        binders = []
        body: Formula = f
        while isinstance(body, kind):
            binders.append(f"({body.var} {body.sort})")
            body = body.body
        return f"({keyword} ({' '.join(binders)}) {print_formula(body)})"
    raise TypeError(f"Not a formula: {f!r}")


def print_formulas(formulas) -> str:
    return "\n".join(print_formula(f) for f in formulas)

"""
The vocabularies of plane geometry and of fields.

Geometry is two-sorted (Point, Line); every geometric vocabulary contains the
incidence symbol ``in``. Field vocabularies are one-sorted over ``Elem``.
"""
from geometry.constants import SORT_ELEM, SORT_LINE, SORT_POINT
from geometry.formulas.syntax import Vocabulary

P, L, E = SORT_POINT, SORT_LINE, SORT_ELEM

INCIDENCE = "in"
EQUIDISTANT = "Eq"
ORTHOGONAL = "Or"
EQUIANGULAR = "An"
BETWEEN = "Be"
P_EQUIDISTANT = "Peq"
L_EQUIDISTANT = "Leq"
SYMMETRIC_LINE = "SymLine"
PARALLEL = "Par"

GEOMETRY_RELATIONS = {
    INCIDENCE: (P, L),
    EQUIDISTANT: (P, P, P, P),
    ORTHOGONAL: (L, L),
    EQUIANGULAR: (P, P, P, P, P, P),
    BETWEEN: (P, P, P),
    P_EQUIDISTANT: (L, P, L),
    L_EQUIDISTANT: (P, L, P),
    SYMMETRIC_LINE: (P, L, P),
    PARALLEL: (L, L),
}

# Relations that are definable from in, Eq and Or.
DERIVED_RELATIONS = (PARALLEL, SYMMETRIC_LINE, P_EQUIDISTANT, L_EQUIDISTANT)
ORDERED_RELATIONS = (BETWEEN, EQUIANGULAR)


def _geometry(name: str, *relations: str) -> Vocabulary:
    return Vocabulary(
        name=name,
        sorts=(P, L),
        relations={r: GEOMETRY_RELATIONS[r] for r in relations},
    )


TAU_IN = _geometry("tau_in", INCIDENCE)
TAU_WU = _geometry("tau_wu", INCIDENCE, EQUIDISTANT, ORTHOGONAL)
TAU_HILBERT = _geometry("tau_hilbert", INCIDENCE, BETWEEN, EQUIDISTANT, EQUIANGULAR)
TAU_ORIGAMI = _geometry(
    "tau_origami", INCIDENCE, SYMMETRIC_LINE, L_EQUIDISTANT, ORTHOGONAL, P_EQUIDISTANT
)
# Everything a conjecture may mention, derived symbols included.
TAU_GEOMETRY = _geometry("tau_geometry", *GEOMETRY_RELATIONS)

# Field symbols
ADD_REL = "Add"
MULT_REL = "Mult"
ADD = "add"
MUL = "mul"
NEG = "neg"
INV = "inv"
ZERO = "zero"
ONE = "one"
LE = "le"
LT = "lt"

TAU_FIELD = Vocabulary(
    name="tau_field",
    sorts=(E,),
    relations={ADD_REL: (E, E, E), MULT_REL: (E, E, E)},
    constants={ZERO: E, ONE: E},
)
TAU_OFIELD = Vocabulary(
    name="tau_ofield",
    sorts=(E,),
    relations={ADD_REL: (E, E, E), MULT_REL: (E, E, E), LE: (E, E)},
    constants={ZERO: E, ONE: E},
)
TAU_F_FIELD = Vocabulary(
    name="tau_f_field",
    sorts=(E,),
    functions={ADD: ((E, E), E), MUL: ((E, E), E), NEG: ((E,), E), INV: ((E,), E)},
    constants={ZERO: E, ONE: E},
    numerals=E,
)
TAU_F_OFIELD = Vocabulary(
    name="tau_f_ofield",
    sorts=(E,),
    relations={LE: (E, E), LT: (E, E)},
    functions={ADD: ((E, E), E), MUL: ((E, E), E), NEG: ((E,), E), INV: ((E,), E)},
    constants={ZERO: E, ONE: E},
    numerals=E,
)
# Finite fields carry both presentations.
FIELD_STRUCTURE_VOCABULARY = TAU_FIELD.union(TAU_F_FIELD, name="tau_field_structure")
# Everything the decision kernels accept.
TAU_ARITHMETIC = TAU_OFIELD.union(TAU_F_OFIELD, name="tau_arithmetic")

VOCABULARIES = {
    v.name: v
    for v in (
        TAU_IN,
        TAU_WU,
        TAU_HILBERT,
        TAU_ORIGAMI,
        TAU_GEOMETRY,
        TAU_FIELD,
        TAU_OFIELD,
        TAU_F_FIELD,
        TAU_F_OFIELD,
        FIELD_STRUCTURE_VOCABULARY,
        TAU_ARITHMETIC,
    )
}

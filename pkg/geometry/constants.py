"""
Constants for the geometry application.
"""

# Field and structure sizes
DEFAULT_PRIME_BOUND = 97
DEFAULT_TRANSDUCTION_BUDGET = 1_000_000  # tuples enumerated per target sort or relation
DEFAULT_ISOMORPHISM_BOUND = 11  # largest |K| for brute-force isomorphism search

# Formula transforms
DEFAULT_INVERSE_NESTING_BOUND = 8

# Decision kernels
DEFAULT_GROEBNER_PAIR_CAP = 100_000
DEFAULT_CH_NODE_CAP = 1_000_000
DEFAULT_DNF_DISJUNCT_CAP = 10_000
DEFAULT_CHART_SPLIT_LIMIT = 8  # line variables split over coordinate charts before deciding

# Rational counterexample sampling
DEFAULT_SAMPLE_POINTS = 1000
DEFAULT_SAMPLE_HEIGHT = 10
DEFAULT_SAMPLE_SEED = 20240611
GRID_VALUES = (0, 1, -1, 2, -2)
GRID_VARIABLE_LIMIT = 6

# Sort names
SORT_POINT = "Point"
SORT_LINE = "Line"
SORT_ELEM = "Elem"

# Semantics
SEMANTICS_ORDERED = "ordered"
SEMANTICS_UNORDERED = "unordered"

SEMANTICS_CHOICES = [
    SEMANTICS_ORDERED,
    SEMANTICS_UNORDERED,
]

# Verdict statuses
STATUS_VALID = "valid"
STATUS_INVALID = "invalid"
STATUS_UNSUPPORTED = "unsupported-fragment"
STATUS_BUDGET = "budget-exceeded"

# Kernels
KERNEL_ACF0 = "acf0"
KERNEL_RCF = "rcf"

# Exit codes of the gtc command
EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_UNSUPPORTED = 2
EXIT_BUDGET = 3
EXIT_INPUT_ERROR = 4

STATUS_EXIT_CODES = {
    STATUS_VALID: EXIT_VALID,
    STATUS_INVALID: EXIT_INVALID,
    STATUS_UNSUPPORTED: EXIT_UNSUPPORTED,
    STATUS_BUDGET: EXIT_BUDGET,
}

# Theories
THEORY_AFFINE = "affine"
THEORY_PAPPUS = "pappus"
THEORY_HILBERT = "hilbert"
THEORY_P_HILBERT = "p-hilbert"
THEORY_EUCLID = "euclid"
THEORY_O_WU = "o-wu"
THEORY_M_WU = "m-wu"
THEORY_A_ORIGAMI = "a-origami"
THEORY_FIELD = "field"

THEORY_CHOICES = [
    THEORY_AFFINE,
    THEORY_PAPPUS,
    THEORY_HILBERT,
    THEORY_P_HILBERT,
    THEORY_EUCLID,
    THEORY_O_WU,
    THEORY_M_WU,
    THEORY_A_ORIGAMI,
    THEORY_FIELD,
]

# Catalog theories whose universal consequences reduce to RCF / ACF0.
LICENSED_THEORIES = [
    THEORY_PAPPUS,
    THEORY_P_HILBERT,
    THEORY_EUCLID,
    THEORY_M_WU,
    THEORY_A_ORIGAMI,
]
ORDERED_THEORIES = [
    THEORY_P_HILBERT,
    THEORY_EUCLID,
]

# Translation schemes
SCHEME_PP_IN = "pp-in"
SCHEME_PP_WU = "pp-wu"
SCHEME_PP_HILBERT = "pp-hilbert"

SCHEME_CHOICES = [
    SCHEME_PP_IN,
    SCHEME_PP_WU,
    SCHEME_PP_HILBERT,
]

# Output formats
OUTPUT_JSON = "json"
OUTPUT_PRETTY = "pretty"

UNDECIDABILITY_NOTE = (
    "Full first-order consequence is undecidable for the Pappian, Hilbert, Euclidean, "
    "Wu and Origami geometries (field theories of these planes interpret arithmetic), "
    "so only the universal fragment is decided."
)

# Field axioms, in the order they are checked
FIELD_AXIOM_ADD_COMMUTATIVITY = "additive commutativity"
FIELD_AXIOM_ADD_ASSOCIATIVITY = "additive associativity"
FIELD_AXIOM_ADD_IDENTITY = "additive identity"
FIELD_AXIOM_ADD_INVERSES = "additive inverses"
FIELD_AXIOM_MUL_IDENTITY = "multiplicative identity"
FIELD_AXIOM_DISTRIBUTIVITY = "distributivity"
FIELD_AXIOM_MUL_COMMUTATIVITY = "multiplicative commutativity"
FIELD_AXIOM_MUL_ASSOCIATIVITY = "multiplicative associativity"
FIELD_AXIOM_MUL_INVERSES = "multiplicative inverses"
FIELD_AXIOM_NONTRIVIAL = "0 != 1"

FIELD_AXIOM_ORDER = [
    FIELD_AXIOM_ADD_COMMUTATIVITY,
    FIELD_AXIOM_ADD_ASSOCIATIVITY,
    FIELD_AXIOM_ADD_IDENTITY,
    FIELD_AXIOM_ADD_INVERSES,
    FIELD_AXIOM_MUL_IDENTITY,
    FIELD_AXIOM_DISTRIBUTIVITY,
    FIELD_AXIOM_MUL_COMMUTATIVITY,
    FIELD_AXIOM_MUL_ASSOCIATIVITY,
    FIELD_AXIOM_MUL_INVERSES,
    FIELD_AXIOM_NONTRIVIAL,
]
FIELD_AXIOM_CLOSURE = "closure"

# Monomial orders
ORDER_GREVLEX = "grevlex"
ORDER_LEX = "lex"

ORDER_CHOICES = [
    ORDER_GREVLEX,
    ORDER_LEX,
]

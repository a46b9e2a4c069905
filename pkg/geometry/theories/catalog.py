"""
The axiom catalog.

Axioms are written in the formula grammar over the combined geometry
vocabulary, then Par (and any derived relation the theory's vocabulary lacks)
is unfolded. Quantified variables are listed in the order a model checker
should bind them; every one but the first has an incidence guard once its
predecessors are bound.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Tuple

from geometry.constants import (
    THEORY_A_ORIGAMI,
    THEORY_AFFINE,
    THEORY_EUCLID,
    THEORY_FIELD,
    THEORY_HILBERT,
    THEORY_M_WU,
    THEORY_O_WU,
    THEORY_P_HILBERT,
    THEORY_PAPPUS,
)
from geometry.exceptions import UnknownTheoryError
from geometry.formulas.parser import parse_formula
from geometry.formulas.syntax import Formula, Vocabulary
from geometry.formulas.theory import Axiom, Theory
from geometry.formulas.vocabularies import (
    DERIVED_RELATIONS,
    TAU_F_FIELD,
    TAU_GEOMETRY,
    TAU_HILBERT,
    TAU_IN,
    TAU_ORIGAMI,
    TAU_WU,
)
from geometry.theories.definitions import expand_defined_relations

logger = logging.getLogger(__name__)

INF_LINES = "InfLines"

# -- incidence -----------------------------------------------------------------

I_1 = """
(forall ((A Point) (B Point))
  (=> (not (= A B))
      (exists ((l Line))
        (and (in A l) (in B l)
             (forall ((m Line)) (=> (and (in A m) (in B m)) (= m l)))))))
"""

I_2 = """
(forall ((l Line))
  (exists ((A Point) (B Point)) (and (in A l) (in B l) (not (= A B)))))
"""

I_3 = """
(exists ((A Point) (B Point) (C Point))
  (and (not (= A B)) (not (= A C)) (not (= B C))
       (not (exists ((l Line)) (and (in A l) (in B l) (in C l))))))
"""

PAR_AX = """
(forall ((A Point) (l Line) (m1 Line) (m2 Line))
  (=> (and (in A m1) (Par l m1) (in A m2) (Par l m2))
      (= m1 m2)))
"""

PAPPUS = """
(forall ((l Line) (l2 Line) (A Point) (C2 Point) (n1 Line) (A2 Point) (C Point) (n2 Line)
         (B Point) (n3 Line) (B2 Point) (n4 Line) (n5 Line) (n6 Line))
  (=> (and (not (= l l2))
           (in A l) (not (in A l2)) (in C2 l2) (not (in C2 l)) (in A n1) (in C2 n1)
           (in A2 l2) (not (in A2 l)) (not (= A2 C2))
           (in C l) (not (in C l2)) (not (= A C)) (in A2 n2) (in C n2) (Par n1 n2)
           (in B l) (not (in B l2)) (not (= A B)) (not (= B C)) (in B n3) (in C2 n3)
           (in B2 l2) (not (in B2 l)) (not (= A2 B2)) (not (= B2 C2)) (in B2 n4) (in C n4)
           (Par n3 n4)
           (in A n5) (in B2 n5) (in A2 n6) (in B n6))
      (Par n5 n6)))
"""

# Lines AA', BB', CC' through a common point O, or all parallel.
DESARGUES = """
(and
  (forall ((O Point) (a Line) (A Point) (A2 Point) (b Line) (B Point) (ab Line) (a2b2 Line)
           (B2 Point) (c Line) (C Point) (ac Line) (a2c2 Line) (C2 Point) (bc Line) (b2c2 Line))
    (=> (and (in O a) (in A a) (not (= A O)) (in A2 a) (not (= A2 O)) (not (= A A2))
             (in O b) (not (= a b)) (in B b) (not (= B O)) (in A ab) (in B ab)
             (in A2 a2b2) (Par ab a2b2) (in B2 b) (in B2 a2b2) (not (= B2 O)) (not (= B B2))
             (in O c) (not (= a c)) (not (= b c)) (in C c) (not (= C O)) (in A ac) (in C ac)
             (in A2 a2c2) (Par ac a2c2) (in C2 c) (in C2 a2c2) (not (= C2 O)) (not (= C C2))
             (in B bc) (in C bc) (in B2 b2c2) (in C2 b2c2))
        (Par bc b2c2)))
  (forall ((a Line) (A Point) (A2 Point) (b Line) (B Point) (ab Line) (a2b2 Line) (B2 Point)
           (c Line) (C Point) (ac Line) (a2c2 Line) (C2 Point) (bc Line) (b2c2 Line))
    (=> (and (in A a) (in A2 a) (not (= A A2))
             (Par a b) (in B b) (in A ab) (in B ab) (in A2 a2b2) (Par ab a2b2)
             (in B2 b) (in B2 a2b2) (not (= B B2))
             (Par a c) (Par b c) (in C c) (in A ac) (in C ac) (in A2 a2c2) (Par ac a2c2)
             (in C2 c) (in C2 a2c2) (not (= C C2))
             (in B bc) (in C bc) (in B2 b2c2) (in C2 b2c2))
        (Par bc b2c2))))
"""

# Triangles with pairwise parallel sides are perspective from a point or
# from a direction.
DESARGUES_CONVERSE = """
(forall ((A Point) (B Point) (ab Line) (C Point) (ac Line) (bc Line) (A2 Point) (a2b2 Line)
         (B2 Point) (b2c2 Line) (a2c2 Line) (C2 Point) (a Line) (b Line) (c Line))
  (=> (and (not (= A B)) (in A ab) (in B ab) (not (in C ab)) (in A ac) (in C ac) (in B bc) (in C bc)
           (in A2 a2b2) (Par ab a2b2) (in B2 a2b2) (in B2 b2c2) (Par bc b2c2)
           (in A2 a2c2) (Par ac a2c2) (in C2 a2c2) (in C2 b2c2)
           (in A a) (in A2 a) (in B b) (in B2 b) (in C c) (in C2 c))
      (or (exists ((O Point)) (and (in O a) (in O b) (in O c)))
          (and (Par a b) (Par a c) (Par b c)))))
"""

# -- order and congruence --------------------------------------------------------

B_1 = """
(forall ((A Point) (B Point) (C Point))
  (=> (Be A B C) (exists ((l Line)) (and (in A l) (in B l) (in C l)))))
"""

B_2 = """
(forall ((A Point) (B Point))
  (=> (not (= A B)) (exists ((C Point)) (Be A B C))))
"""

B_3 = """
(forall ((l Line) (A Point) (B Point) (C Point))
  (=> (and (in A l) (in B l) (in C l) (not (= A B)) (not (= A C)) (not (= B C)))
      (or (and (Be B A C) (not (Be A B C)) (not (Be A C B)))
          (and (Be A B C) (not (Be B A C)) (not (Be A C B)))
          (and (Be A C B) (not (Be B A C)) (not (Be A B C))))))
"""

PASCH = """
(forall ((A Point) (B Point) (C Point) (l Line) (D Point))
  (=> (and (not (exists ((m Line)) (and (in A m) (in B m) (in C m))))
           (not (in A l)) (not (in B l)) (not (in C l))
           (in D l) (Be A D B))
      (exists ((E Point)) (and (in E l) (or (Be A E C) (Be B E C))))))
"""

C_0 = """
(forall ((A Point) (B Point))
  (and (Eq A B A B) (Eq A B B A)))
"""

C_1 = """
(forall ((A Point) (B Point) (l Line) (C Point) (C2 Point))
  (=> (and (not (= A B)) (in C l) (in C2 l) (not (= C C2)))
      (exists ((D Point))
        (and (in D l) (Eq A B C D)
             (or (= D C2) (Be C C2 D) (Be C D C2))
             (forall ((E Point))
               (=> (and (in E l) (Eq A B C E) (or (= E C2) (Be C C2 E) (Be C E C2)))
                   (= E D)))))))
"""

C_2 = """
(forall ((A Point) (B Point) (C Point) (D Point) (E Point) (F Point))
  (=> (and (Eq A B C D) (Eq A B E F)) (Eq C D E F)))
"""

C_3 = """
(forall ((A Point) (B Point) (C Point) (D Point) (E Point) (F Point))
  (=> (and (Be A B C) (Be D E F) (Eq A B D E) (Eq B C E F))
      (Eq A C D F)))
"""

# One ray DF on the side of G with angle EDF congruent to BAC.
C_4 = """
(forall ((A Point) (B Point) (C Point) (D Point) (E Point) (m Line) (G Point))
  (=> (and (not (exists ((k Line)) (and (in A k) (in B k) (in C k))))
           (not (= D E)) (in D m) (in E m) (not (in G m)))
      (exists ((F Point))
        (and (An B A C E D F) (not (in F m)) (not (exists ((X Point)) (and (in X m) (Be F X G))))
             (forall ((F2 Point))
               (=> (and (An B A C E D F2) (not (in F2 m))
                        (not (exists ((Y Point)) (and (in Y m) (Be F2 Y G)))))
                   (or (= F2 F) (Be D F2 F) (Be D F F2))))))))
"""

C_5 = """
(and
  (forall ((A Point) (B Point) (C Point))
    (=> (and (not (= A B)) (not (= B C))) (An A B C A B C)))
  (forall ((A Point) (B Point) (C Point) (D Point) (E Point) (F Point))
    (=> (An A B C D E F) (An D E F A B C)))
  (forall ((A Point) (B Point) (C Point) (D Point) (E Point) (F Point) (G Point) (H Point) (K Point))
    (=> (and (An A B C D E F) (An D E F G H K)) (An A B C G H K))))
"""

SAS = """
(forall ((A Point) (B Point) (C Point) (A2 Point) (B2 Point) (C2 Point))
  (=> (and (not (exists ((l Line)) (and (in A l) (in B l) (in C l))))
           (not (exists ((m Line)) (and (in A2 m) (in B2 m) (in C2 m))))
           (Eq A B A2 B2) (Eq A C A2 C2) (An B A C B2 A2 C2))
      (and (Eq B C B2 C2) (An A B C A2 B2 C2) (An A C B A2 C2 B2))))
"""

# Circle (A; BC) with a point inside and a point outside circle (D; EF)
# meets it. Inside: strictly between the centre and the circumference.
AX_E = """
(forall ((A Point) (B Point) (C Point) (D Point) (E Point) (F Point))
  (=> (and (exists ((P Point) (U Point)) (and (Eq A P B C) (Eq D U E F) (Be D P U)))
           (exists ((Q Point) (V Point)) (and (Eq A Q B C) (Eq D V E F) (Be D V Q))))
      (exists ((R Point)) (and (Eq A R B C) (Eq D R E F)))))
"""

# -- orthogonality -------------------------------------------------------------

O_1 = """
(forall ((l1 Line) (l2 Line)) (=> (Or l1 l2) (Or l2 l1)))
"""

O_2 = """
(forall ((O Point) (l1 Line))
  (exists ((l2 Line))
    (and (in O l2) (Or l1 l2)
         (forall ((l3 Line)) (=> (and (in O l3) (Or l1 l3)) (= l3 l2))))))
"""

O_3 = """
(forall ((l1 Line) (l2 Line) (l3 Line))
  (=> (and (Or l1 l2) (Or l1 l3)) (or (Par l2 l3) (= l2 l3))))
"""

O_4 = """
(forall ((O Point)) (exists ((l Line)) (and (in O l) (not (Or l l)))))
"""

# The altitudes of a triangle meet in one point.
O_5 = """
(forall ((A Point) (B Point) (C Point) (a Line) (b Line) (c Line) (ha Line) (hb Line) (hc Line))
  (=> (and (in B a) (in C a) (in A b) (in C b) (in A c) (in B c)
           (not (= a b)) (not (= a c)) (not (= b c))
           (in A ha) (Or ha a) (in B hb) (Or hb b) (in C hc) (Or hc c))
      (exists ((Q Point)) (and (in Q ha) (in Q hb) (in Q hc)))))
"""

# O-5 as a universal conjecture: the meeting point of two heights lies on the third.
ALTITUDES = """
(forall ((A Point) (B Point) (C Point) (a Line) (b Line) (c Line) (ha Line) (hb Line) (hc Line) (Q Point))
  (=> (and (in B a) (in C a) (in A b) (in C b) (in A c) (in B c)
           (not (= a b)) (not (= a c)) (not (= b c))
           (in A ha) (Or ha a) (in B hb) (Or hb b) (in C hc) (Or hc c)
           (in Q ha) (in Q hb))
      (in Q hc)))
"""

AX_SYM_AX = """
(forall ((l1 Line) (l2 Line))
  (=> (and (not (= l1 l2)) (exists ((P Point)) (and (in P l1) (in P l2)))
           (not (Or l1 l1)) (not (Or l2 l2)))
      (exists ((k Line))
        (forall ((X Point))
          (=> (in X l1) (exists ((Y Point)) (and (in Y l2) (SymLine X k Y))))))))
"""

AX_TRANS = """
(forall ((l Line) (A Point) (O Point) (B Point) (l2 Line) (O2 Point))
  (=> (and (not (Or l l)) (not (Or l2 l2)) (in A l) (in O l) (in B l) (not (= A B))
           (Eq A O O B) (in O2 l2))
      (exists ((A2 Point) (B2 Point))
        (and (in A2 l2) (in B2 l2) (not (= A2 B2))
             (Eq A B A2 B2) (Eq A2 O2 O2 B2)
             (forall ((X Point))
               (=> (and (in X l2) (Eq O2 X O2 A2)) (or (= X A2) (= X B2))))))))
"""

# -- origami -------------------------------------------------------------------

H_1 = """
(forall ((P1 Point) (P2 Point))
  (=> (not (= P1 P2))
      (exists ((l Line))
        (and (in P1 l) (in P2 l)
             (forall ((k Line)) (=> (and (in P1 k) (in P2 k)) (= k l)))))))
"""

H_2 = """
(forall ((P1 Point) (P2 Point))
  (=> (not (= P1 P2))
      (exists ((l Line))
        (and (SymLine P1 l P2)
             (forall ((k Line)) (=> (SymLine P1 k P2) (= k l)))))))
"""

H_3 = """
(forall ((l1 Line) (l2 Line))
  (exists ((k Line)) (forall ((P Point)) (=> (in P k) (Peq l1 P l2)))))
"""

H_4 = """
(forall ((P Point) (l Line))
  (exists ((k Line))
    (and (in P k) (Or l k)
         (forall ((k2 Line)) (=> (and (in P k2) (Or l k2)) (= k2 k))))))
"""

H_5 = """
(forall ((P1 Point) (P2 Point) (l1 Line))
  (exists ((l2 Line))
    (and (in P2 l2) (exists ((Q Point)) (and (in Q l1) (SymLine P1 l2 Q))))))
"""

H_6 = """
(forall ((P1 Point) (P2 Point) (l1 Line) (l2 Line))
  (exists ((l3 Line))
    (and (exists ((Q1 Point)) (and (in Q1 l1) (SymLine P1 l3 Q1)))
         (exists ((Q2 Point)) (and (in Q2 l2) (SymLine P2 l3 Q2))))))
"""

H_7 = """
(forall ((P Point) (l1 Line) (l2 Line))
  (exists ((l3 Line))
    (and (Or l2 l3) (exists ((Q Point)) (and (in Q l1) (SymLine P l3 Q))))))
"""

# -- fields ----------------------------------------------------------------------

FIELD_AXIOMS = {
    "AddComm": "(forall ((x Elem) (y Elem)) (= (add x y) (add y x)))",
    "AddAssoc": "(forall ((x Elem) (y Elem) (z Elem)) (= (add (add x y) z) (add x (add y z))))",
    "AddId": "(forall ((x Elem)) (= (add x zero) x))",
    "AddInv": "(forall ((x Elem)) (= (add x (neg x)) zero))",
    "MulId": "(forall ((x Elem)) (= (mul x one) x))",
    "Distrib": "(forall ((x Elem) (y Elem) (z Elem)) (= (mul x (add y z)) (add (mul x y) (mul x z))))",
    "MulComm": "(forall ((x Elem) (y Elem)) (= (mul x y) (mul y x)))",
    "MulAssoc": "(forall ((x Elem) (y Elem) (z Elem)) (= (mul (mul x y) z) (mul x (mul y z))))",
    "MulInv": "(forall ((x Elem)) (=> (not (= x zero)) (= (mul x (inv x)) one)))",
    "ZeroOne": "(not (= zero one))",
}

GEOMETRY_AXIOMS: Dict[str, str] = {
    "I-1": I_1,
    "I-2": I_2,
    "I-3": I_3,
    "ParAx": PAR_AX,
    "Pappus": PAPPUS,
    "De-1": DESARGUES,
    "De-2": DESARGUES_CONVERSE,
    "B-1": B_1,
    "B-2": B_2,
    "B-3": B_3,
    "B-4": PASCH,
    "C-0": C_0,
    "C-1": C_1,
    "C-2": C_2,
    "C-3": C_3,
    "C-4": C_4,
    "C-5": C_5,
    "C-6": SAS,
    "AxE": AX_E,
    "O-1": O_1,
    "O-2": O_2,
    "O-3": O_3,
    "O-4": O_4,
    "O-5": O_5,
    "AxSymAx": AX_SYM_AX,
    "AxTrans": AX_TRANS,
    "H-1": H_1,
    "H-2": H_2,
    "H-3": H_3,
    "H-4": H_4,
    "H-5": H_5,
    "H-6": H_6,
    "H-7": H_7,
}

INCIDENCE_LABELS = ("I-1", "I-2", "I-3")
HILBERT_LABELS = INCIDENCE_LABELS + ("B-1", "B-2", "B-3", "B-4", "C-1", "C-2", "C-3", "C-4", "C-5", "C-6")
WU_LABELS = INCIDENCE_LABELS + ("O-1", "O-2", "O-3", "O-4", "O-5", "ParAx", "De-1", "De-2")
ORIGAMI_LABELS = INCIDENCE_LABELS + ("ParAx", "H-1", "H-2", "H-3", "H-4", "H-5", "H-6", "H-7")

# name -> (vocabulary, axiom labels, uses the InfLines scheme)
THEORIES: Dict[str, Tuple[Vocabulary, Tuple[str, ...], bool]] = {
    THEORY_AFFINE: (TAU_IN, INCIDENCE_LABELS + ("ParAx",), True),
    THEORY_PAPPUS: (TAU_IN, INCIDENCE_LABELS + ("ParAx", "Pappus"), True),
    THEORY_HILBERT: (TAU_HILBERT, HILBERT_LABELS, False),
    THEORY_P_HILBERT: (TAU_HILBERT, HILBERT_LABELS + ("ParAx",), False),
    THEORY_EUCLID: (TAU_HILBERT, HILBERT_LABELS + ("ParAx", "AxE"), False),
    THEORY_O_WU: (TAU_WU, WU_LABELS, True),
    THEORY_M_WU: (TAU_WU, WU_LABELS + ("AxSymAx",), True),
    THEORY_A_ORIGAMI: (TAU_ORIGAMI, ORIGAMI_LABELS, True),
    THEORY_FIELD: (TAU_F_FIELD, tuple(FIELD_AXIOMS), False),
}


def inf_lines_text(n: int) -> str:
    """
    The n-th instance of the infinitely-many-points scheme.

    With B, C on a line k parallel to l and A_0 = A on l, the points
    A_{i+1} = (parallel to A_i B through C) meet l are pairwise distinct for
    i <= n. The map A_i -> A_{i+1} is a translation of l, so the instance
    fails exactly when n reaches the characteristic of the coordinate field.
    """
    outer = "(A Point) (l Line) (B Point) (k Line) (C Point)"
    head = "(and (in A l) (in B k) (Par k l) (in C k) (not (= B C)))"
    if n <= 0:
        return f"(forall ({outer}) (=> {head} true))"
    points = ["A"] + [f"A{i}" for i in range(1, n + 1)]
    binders, steps = [], []
    for i in range(1, n + 1):
        m, p, prev, cur = f"m{i}", f"p{i}", points[i - 1], points[i]
        binders.append(f"({m} Line) ({p} Line) ({cur} Point)")
        steps.append(
            f"(in {prev} {m}) (in B {m}) (in C {p}) (Par {m} {p}) (in {cur} {p}) (in {cur} l)"
        )
    distinct = " ".join(f"(not (= {x} {y}))" for x, y in combinations(points, 2))
    return (
        f"(forall ({outer})\n"
        f"  (=> {head}\n"
        f"      (forall ({' '.join(binders)})\n"
        f"        (=> (and {' '.join(steps)})\n"
        f"            (and {distinct})))))"
    )


def _finish(formula: Formula, vocabulary: Vocabulary) -> Formula:
    keep = [r for r in DERIVED_RELATIONS if r in vocabulary.relations]
    return expand_defined_relations(formula, keep=keep)


def inf_lines(n: int, vocabulary: Vocabulary = TAU_IN) -> Formula:
    return _finish(parse_formula(inf_lines_text(n), TAU_GEOMETRY), vocabulary)


@lru_cache(maxsize=None)
def axiom(label: str, vocabulary: Vocabulary = TAU_GEOMETRY) -> Axiom:
    """
    A catalog axiom as a closed formula, with the derived relations the
    given vocabulary lacks unfolded.

    Raises:
        UnknownTheoryError: no axiom carries this label
    """
    if label in FIELD_AXIOMS:
        return Axiom(label, parse_formula(FIELD_AXIOMS[label], TAU_F_FIELD))
    text = GEOMETRY_AXIOMS.get(label)
    if text is None:
        raise UnknownTheoryError(f"Unknown axiom: {label}")
    return Axiom(label, _finish(parse_formula(text, TAU_GEOMETRY), vocabulary))


def axiom_labels() -> List[str]:
    return [*GEOMETRY_AXIOMS, *FIELD_AXIOMS]


def theory_template(name: str) -> Theory:
    """The theory with its axiom schemes left as generators."""
    try:
        vocabulary, labels, uses_inf_lines = THEORIES[name]
    except KeyError:
        raise UnknownTheoryError(
            f"Unknown theory '{name}'; expected one of {', '.join(THEORIES)}"
        ) from None
    generators: Tuple[Tuple[str, Callable[[int], Formula]], ...] = ()
    if uses_inf_lines:
        generators = ((INF_LINES, lambda n: inf_lines(n, vocabulary)),)
    return Theory(
        name=name,
        vocabulary=vocabulary,
        axioms=tuple(axiom(label, vocabulary) for label in labels),
        generators=generators,
    )


@lru_cache(maxsize=64)
def theory(name: str, n: int = 0) -> Theory:
    """
    A catalog theory with the InfLines scheme instantiated at ``n``.

    Args:
        name: One of the THEORY_* names
        n: Scheme parameter

    Returns:
        Theory: closed axioms, in catalog order, scheme instances last

    Raises:
        UnknownTheoryError: name is not in the catalog
    """
    result = theory_template(name).instantiate(n)
    logger.debug("Theory built", extra={"theory": name, "n": n, "axioms": len(result.axioms)})
    return result

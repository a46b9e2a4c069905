"""
Seeded random inputs for property tests.
"""
from fractions import Fraction
from typing import List, Sequence, Tuple

from faker import Faker

from geometry.constants import SORT_LINE, SORT_POINT
from geometry.formulas.syntax import (
    Atom,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Var,
    conj,
    disj,
    equals,
)
from geometry.formulas.vocabularies import INCIDENCE


def seeded_faker(seed: int) -> Faker:
    fake = Faker()
    fake.seed_instance(seed)
    return fake


def random_rational(fake: Faker, height: int = 10, nonnegative: bool = False) -> Fraction:
    low = 0 if nonnegative else -height
    return Fraction(fake.random_int(low, height), fake.random_int(1, height))


def random_rational_pair(fake: Faker, height: int = 10) -> Tuple[Fraction, Fraction]:
    return random_rational(fake, height, True), random_rational(fake, height, True)


class IncidenceSentenceFactory:
    """
    Random closed sentences over the incidence vocabulary.

    Variables are drawn from a small pool per sort and every sentence is
    closed by quantifying whatever is still free, so ranks stay small.
    """

    POINTS = ("P", "Q")
    LINES = ("l", "m")

    def __init__(self, fake: Faker, rank: int = 2):
        self.fake = fake
        self.rank = rank

    def _atom(self, points: Sequence[str], lines: Sequence[str]) -> Formula:
        if lines and (not points or self.fake.boolean(chance_of_getting_true=70)):
            if not points:
                a, b = self.fake.random_element(lines), self.fake.random_element(lines)
                return equals(Var(sort=SORT_LINE, name=a), Var(sort=SORT_LINE, name=b))
            p, l = self.fake.random_element(points), self.fake.random_element(lines)
            return Atom(INCIDENCE, (Var(sort=SORT_POINT, name=p), Var(sort=SORT_LINE, name=l)))
        a, b = self.fake.random_element(points), self.fake.random_element(points)
        return equals(Var(sort=SORT_POINT, name=a), Var(sort=SORT_POINT, name=b))

    def _formula(self, depth: int, points: List[str], lines: List[str]) -> Formula:
        if (depth == 0 or not (points or lines)) and (points or lines):
            return self._atom(points, lines)
        choice = self.fake.random_element(("atom", "not", "and", "or", "=>", "forall", "exists"))
        if depth == 0:
            choice = self.fake.random_element(("forall", "exists"))
        if choice == "atom" and (points or lines):
            return self._atom(points, lines)
        if choice == "not":
            return Not(self._formula(depth, points, lines))
        if choice in ("and", "or", "=>") and (points or lines):
            left = self._formula(max(depth - 1, 0), points, lines)
            right = self._formula(max(depth - 1, 0), points, lines)
            if choice == "=>":
                return Implies(left, right)
            return conj(left, right) if choice == "and" else disj(left, right)
        sort = self.fake.random_element((SORT_POINT, SORT_LINE))
        pool = self.POINTS if sort == SORT_POINT else self.LINES
        name = self.fake.random_element(pool)
        inner_points = points + [name] if sort == SORT_POINT else points
        inner_lines = lines + [name] if sort == SORT_LINE else lines
        kind = Forall if choice == "forall" else self.fake.random_element((Forall, Exists))
        return kind(name, sort, self._formula(max(depth - 1, 0), inner_points, inner_lines))

    def sentence(self) -> Formula:
        return self._formula(self.rank, [], [])

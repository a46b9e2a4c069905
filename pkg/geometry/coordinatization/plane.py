"""
Affine-plane constructions on a finite incidence structure.

Every construction asserts the uniqueness the affine axioms promise; a
violation means the input is not an affine plane and raises
ConstructionError.
"""
from functools import cached_property
from typing import Dict, FrozenSet, Optional, Tuple

from geometry.constants import SORT_LINE, SORT_POINT
from geometry.exceptions import ConstructionError, VocabularyMismatchError
from geometry.formulas.vocabularies import INCIDENCE
from geometry.structures.finite import FiniteStructure


class IncidencePlane:
    def __init__(self, structure: FiniteStructure):
        if INCIDENCE not in structure.relations:
            raise VocabularyMismatchError(f"Structure {structure.name or '?'} has no incidence relation")
        self.structure = structure
        points: Dict[int, set] = {l: set() for l in structure.carrier(SORT_LINE)}
        lines: Dict[int, set] = {p: set() for p in structure.carrier(SORT_POINT)}
        for p, l in structure.relations[INCIDENCE]:
            points[l].add(p)
            lines[p].add(l)
        self.points_on: Dict[int, FrozenSet[int]] = {l: frozenset(s) for l, s in points.items()}
        self.lines_through: Dict[int, FrozenSet[int]] = {p: frozenset(s) for p, s in lines.items()}

    @property
    def name(self) -> str:
        return self.structure.name

    @cached_property
    def points(self) -> Tuple[int, ...]:
        return tuple(self.structure.carrier(SORT_POINT))

    @cached_property
    def lines(self) -> Tuple[int, ...]:
        return tuple(self.structure.carrier(SORT_LINE))

    def incident(self, point: int, line: int) -> bool:
        return point in self.points_on[line]

    def point_name(self, point: int) -> str:
        return self.structure.element_name(SORT_POINT, point)

    def line_name(self, line: int) -> str:
        return self.structure.element_name(SORT_LINE, line)

    def line_through(self, p: int, q: int) -> int:
        """The unique line joining two distinct points."""
        common = self.lines_through[p] & self.lines_through[q]
        if p == q or len(common) != 1:
            raise ConstructionError(
                f"Points {self.point_name(p)} and {self.point_name(q)} lie on {len(common)} common lines"
            )
        return next(iter(common))

    def meet(self, l: int, m: int) -> Optional[int]:
        """Intersection point of two distinct lines, None when they are parallel."""
        common = self.points_on[l] & self.points_on[m]
        if l == m or len(common) > 1:
            raise ConstructionError(
                f"Lines {self.line_name(l)} and {self.line_name(m)} share {len(common)} points"
            )
        return next(iter(common), None)

    def meet_point(self, l: int, m: int) -> int:
        point = self.meet(l, m)
        if point is None:
            raise ConstructionError(f"Lines {self.line_name(l)} and {self.line_name(m)} do not meet")
        return point

    def is_parallel(self, l: int, m: int) -> bool:
        return l == m or not (self.points_on[l] & self.points_on[m])

    def parallel_through(self, l: int, p: int) -> int:
        """The unique line through ``p`` parallel to (or equal to) ``l``."""
        if self.incident(p, l):
            return l
        candidates = [m for m in sorted(self.lines_through[p]) if not (self.points_on[m] & self.points_on[l])]
        if len(candidates) != 1:
            raise ConstructionError(
                f"{len(candidates)} parallels to {self.line_name(l)} through {self.point_name(p)}"
            )
        return candidates[0]

    def collinear(self, *points: int) -> bool:
        distinct = set(points)
        if len(distinct) <= 2:
            return True
        first = set(self.lines_through[points[0]])
        for p in points[1:]:
            first &= self.lines_through[p]
        return bool(first)

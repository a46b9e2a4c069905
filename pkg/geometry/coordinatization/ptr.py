"""
Planar ternary rings of finite affine planes.

The carrier K is the set of points of ``l0``; the origin is 0 and the unit
point is 1. All coordinates, slopes and values of T(a, x, b) are obtained by
drawing parallels and intersecting lines in the plane, never by arithmetic.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Tuple, Union

from geometry.conf import geometry_setting
from geometry.coordinatization.frames import CoordinateFrame, as_plane, choose_frame
from geometry.coordinatization.plane import IncidencePlane
from geometry.exceptions import BudgetExceeded, ConstructionError
from geometry.formulas.vocabularies import ONE, ZERO
from geometry.structures.fields import (
    AxiomCheck,
    FieldAxiomReport,
    build_field_structure,
    field_axiom_report,
    field_tables,
)
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)

PTR_AXIOMS = ("T-1", "T-2", "T-3", "T-4", "T-5")


@dataclass(frozen=True)
class PTR:
    """
    A ternary ring on elements ``0..size-1`` (0 is the origin, 1 the unit point).

    Attributes:
        table: T(a, x, b) for every triple
        points: Plane point behind each element
        coordinates: Plane point to its (x, y) coordinates
        slopes: Plane line to its slope, None for lines parallel to m0
    """

    size: int
    table: Mapping[Tuple[int, int, int], int]
    names: Tuple[str, ...] = ()
    points: Tuple[int, ...] = ()
    frame: Optional[CoordinateFrame] = None
    coordinates: Mapping[int, Tuple[int, int]] = field(default_factory=dict)
    slopes: Mapping[int, Optional[int]] = field(default_factory=dict)
    source: str = ""
    zero: int = 0
    one: int = 1

    def T(self, a: int, x: int, b: int) -> int:
        return self.table[(a, x, b)]

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def add_table(self) -> Dict[Tuple[int, int], int]:
        """a + b = T(a, 1, b)"""
        return {(a, b): self.T(a, self.one, b) for a, b in product(self.elements, repeat=2)}

    @property
    def mul_table(self) -> Dict[Tuple[int, int], int]:
        """a * x = T(a, x, 0)"""
        return {(a, x): self.T(a, x, self.zero) for a, x in product(self.elements, repeat=2)}

    def to_dict(self) -> Dict[str, object]:
        return {
            "source": self.source,
            "size": self.size,
            "elements": list(self.names),
            "ternary": [[a, x, b, y] for (a, x, b), y in sorted(self.table.items())],
        }


class _Coordinatizer:
    def __init__(self, plane: IncidencePlane, frame: CoordinateFrame):
        self.plane = plane
        self.frame = frame
        on_l0 = plane.points_on[frame.l0]
        self.elements: List[int] = [frame.origin, frame.unit] + sorted(on_l0 - {frame.origin, frame.unit})
        self.index = {p: i for i, p in enumerate(self.elements)}
        self._vertical: Dict[int, int] = {}
        self._horizontal: Dict[int, int] = {}
        # f_delta: l0 -> m0 through the diagonal
        self.on_m0: List[int] = []
        for x in self.elements:
            z = plane.meet_point(self.vertical(x), frame.delta)
            self.on_m0.append(plane.meet_point(self.horizontal(z), frame.m0))
        if len(set(self.on_m0)) != len(self.elements) or set(self.on_m0) != set(plane.points_on[frame.m0]):
            raise ConstructionError("The diagonal does not induce a bijection between l0 and m0")
        self.from_m0 = {p: i for i, p in enumerate(self.on_m0)}

    def vertical(self, p: int) -> int:
        if p not in self._vertical:
            self._vertical[p] = self.plane.parallel_through(self.frame.m0, p)
        return self._vertical[p]

    def horizontal(self, p: int) -> int:
        if p not in self._horizontal:
            self._horizontal[p] = self.plane.parallel_through(self.frame.l0, p)
        return self._horizontal[p]

    def x(self, p: int) -> int:
        return self.index[self.plane.meet_point(self.vertical(p), self.frame.l0)]

    def y(self, p: int) -> int:
        return self.from_m0[self.plane.meet_point(self.horizontal(p), self.frame.m0)]

    def point(self, x: int, y: int) -> int:
        return self.plane.meet_point(self.vertical(self.elements[x]), self.horizontal(self.on_m0[y]))

    def slope(self, line: int) -> Optional[int]:
        if self.plane.is_parallel(line, self.frame.m0):
            return None
        through_origin = self.plane.parallel_through(line, self.frame.origin)
        return self.y(self.plane.meet_point(through_origin, self.vertical(self.frame.unit)))

    def ternary(self) -> Dict[Tuple[int, int, int], int]:
        plane, k = self.plane, range(len(self.elements))
        table = {}
        for a in k:
            with_slope = plane.line_through(self.frame.origin, self.point(1, a))
            for b in k:
                line = plane.parallel_through(with_slope, self.point(0, b))
                for x in k:
                    table[(a, x, b)] = self.y(plane.meet_point(line, self.vertical(self.elements[x])))
        return table


def extract_ptr(
    plane: Union[FiniteStructure, IncidencePlane],
    frame: Optional[CoordinateFrame] = None,
) -> PTR:
    """
    Coordinatize a finite affine plane.

    Args:
        plane: Incidence structure satisfying I-1 to I-3 and the parallel axiom
        frame: Coordinate frame; the lexicographically first one by default

    Returns:
        PTR: the ternary ring with the coordinates and slopes it induces

    Raises:
        ConstructionError: a parallel or intersection is missing or not unique
        FrameError: the plane admits no frame
    """
    plane = as_plane(plane)
    frame = frame or choose_frame(plane)
    c = _Coordinatizer(plane, frame)
    coordinates = {p: (c.x(p), c.y(p)) for p in plane.points}
    if len(set(coordinates.values())) != len(coordinates):
        raise ConstructionError("Two points received the same coordinates")
    ptr = PTR(
        size=len(c.elements),
        table=c.ternary(),
        names=tuple(plane.point_name(p) for p in c.elements),
        points=tuple(c.elements),
        frame=frame,
        coordinates=coordinates,
        slopes={l: c.slope(l) for l in plane.lines},
        source=plane.name,
    )
    logger.debug("Ternary ring extracted", extra={"plane": plane.name, "size": ptr.size})
    return ptr


@dataclass(frozen=True)
class PtrAxiomReport:
    size: int
    checks: Tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def check(self, axiom: str) -> AxiomCheck:
        return next(c for c in self.checks if c.axiom == axiom)

    def to_dict(self) -> Dict[str, object]:
        return {"size": self.size, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def _is_bijection(values: List[int], size: int) -> bool:
    return len(values) == size and len(set(values)) == size


def verify_ptr_axioms(ptr: PTR) -> PtrAxiomReport:
    """
    Check T-1 to T-5 exhaustively.

    T-1  T(1,x,0) = T(x,1,0) = x
    T-2  T(a,0,b) = T(0,a,b) = b
    T-3  for all a, x, y exactly one b has T(a,x,b) = y
    T-4  for a != a' exactly one x has T(a,x,b) = T(a',x,b')
    T-5  for x != x' exactly one pair (a, b) has T(a,x,b) = y and T(a,x',b) = y'
    """
    k, T, zero, one = ptr.elements, ptr.T, ptr.zero, ptr.one
    checks = []
    checks.append(
        AxiomCheck("T-1", *_first(((x,) for x in k if T(one, x, zero) != x or T(x, one, zero) != x)))
    )
    checks.append(
        AxiomCheck(
            "T-2",
            *_first(((a, b) for a, b in product(k, repeat=2) if T(a, zero, b) != b or T(zero, a, b) != b)),
        )
    )
    checks.append(
        AxiomCheck(
            "T-3",
            *_first(
                (a, x)
                for a, x in product(k, repeat=2)
                if not _is_bijection([T(a, x, b) for b in k], ptr.size)
            ),
        )
    )
    checks.append(
        AxiomCheck(
            "T-4",
            *_first(
                (a, a2, b, b2)
                for a, a2, b, b2 in product(k, repeat=4)
                if a != a2 and sum(1 for x in k if T(a, x, b) == T(a2, x, b2)) != 1
            ),
        )
    )
    checks.append(
        AxiomCheck(
            "T-5",
            *_first(
                (x, x2)
                for x, x2 in product(k, repeat=2)
                if x != x2
                and len({(T(a, x, b), T(a, x2, b)) for a, b in product(k, repeat=2)}) != ptr.size**2
            ),
        )
    )
    report = PtrAxiomReport(size=ptr.size, checks=tuple(checks))
    logger.debug("Ternary ring verified", extra={"source": ptr.source, "ok": report.ok})
    return report


def _first(witnesses) -> Tuple[bool, Optional[tuple]]:
    witness = next(iter(witnesses), None)
    return witness is None, witness


def derived_field_report(ptr: PTR) -> FieldAxiomReport:
    return field_axiom_report(ptr.size, ptr.add_table, ptr.mul_table)


def ptr_to_field(ptr: PTR, name: Optional[str] = None) -> FiniteStructure:
    """
    The field of a ternary ring: a + b = T(a,1,b), a * x = T(a,x,0).

    Raises:
        FieldAxiomViolation: the derived tables are not a field, with the full report
    """
    return build_field_structure(
        ptr.size,
        ptr.add_table,
        ptr.mul_table,
        name=name or f"F({ptr.source or 'ptr'})",
        names=ptr.names or None,
    )


def find_field_isomorphism(
    source: FiniteStructure,
    target: FiniteStructure,
    bound: Optional[int] = None,
) -> Optional[Dict[int, int]]:
    """
    An explicit isomorphism between two finite fields, by backtracking.

    Zero and one are fixed; every partial map is checked against both tables
    on the elements mapped so far.

    Raises:
        BudgetExceeded: the fields are larger than the isomorphism bound
    """
    limit = geometry_setting("ISOMORPHISM_BOUND", bound)
    size, add, mul = field_tables(source)
    other_size, other_add, other_mul = field_tables(target)
    if size != other_size:
        return None
    if size > limit:
        raise BudgetExceeded("ISOMORPHISM_BOUND", limit)
    zero, one = source.constants[ZERO], source.constants[ONE]
    order = [zero, one] + [e for e in range(size) if e not in (zero, one)]
    mapping = {zero: target.constants[ZERO], one: target.constants[ONE]}
    used = set(mapping.values())

    def consistent(e: int) -> bool:
        for u in list(mapping):
            for table, other in ((add, other_add), (mul, other_mul)):
                for left, right in ((e, u), (u, e)):
                    result = table[(left, right)]
                    expected = other[(mapping[left], mapping[right])]
                    if result in mapping and mapping[result] != expected:
                        return False
                    if result not in mapping and expected in used:
                        return False
        return True

    def extend(position: int) -> bool:
        if position == len(order):
            return True
        e = order[position]
        for image in range(size):
            if image in used:
                continue
            mapping[e] = image
            used.add(image)
            if consistent(e) and extend(position + 1):
                return True
            del mapping[e]
            used.discard(image)
        return False

    if not (consistent(zero) and consistent(one)) or not extend(2):
        return None
    return dict(sorted(mapping.items()))

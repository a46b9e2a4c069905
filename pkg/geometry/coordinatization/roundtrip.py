"""
Field -> plane -> ternary ring -> field round trips.
"""
import logging
import time
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from geometry.constants import SORT_POINT
from geometry.coordinatization.frames import CoordinateFrame, choose_frame
from geometry.coordinatization.plane import IncidencePlane
from geometry.coordinatization.ptr import (
    PTR,
    PtrAxiomReport,
    derived_field_report,
    extract_ptr,
    find_field_isomorphism,
    ptr_to_field,
    verify_ptr_axioms,
)
from geometry.schemes.analytic import scheme_pp_in
from geometry.schemes.scheme import apply_transduction
from geometry.structures.fields import FieldAxiomReport
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RoundTripReport:
    field: str
    size: int
    frame: Dict[str, str]
    ptr_axioms: PtrAxiomReport
    field_axioms: FieldAxiomReport
    field_isomorphism: Optional[Dict[int, int]]
    plane_isomorphism: bool
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.ptr_axioms.ok
            and self.field_axioms.ok
            and self.field_isomorphism is not None
            and self.plane_isomorphism
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "field": self.field,
            "size": self.size,
            "ok": self.ok,
            "frame": self.frame,
            "ptr_axioms": self.ptr_axioms.to_dict(),
            "field_axioms": self.field_axioms.to_dict(),
            "field_isomorphism": (
                None
                if self.field_isomorphism is None
                else {str(k): v for k, v in self.field_isomorphism.items()}
            ),
            "plane_isomorphism": self.plane_isomorphism,
            "time_ms": self.elapsed_ms,
        }


def plane_isomorphism(plane: IncidencePlane, ptr: PTR, image: FiniteStructure) -> bool:
    """
    Whether sending each point to the analytic point with its ternary-ring
    coordinates, and each line to the line through the images of its points,
    is an incidence-preserving bijection onto ``image``.
    """
    target = IncidencePlane(image)
    by_coordinates = {tuple(t): i for i, t in enumerate(image.origin[SORT_POINT])}
    if len(by_coordinates) != len(plane.points) or len(target.lines) != len(plane.lines):
        return False
    points = {p: by_coordinates.get(ptr.coordinates[p]) for p in plane.points}
    if None in points.values() or len(set(points.values())) != len(points):
        return False
    lines: Dict[int, int] = {}
    for line in plane.lines:
        first, second = sorted(plane.points_on[line])[:2]
        lines[line] = target.line_through(points[first], points[second])
    if len(set(lines.values())) != len(lines):
        return False
    return all(
        plane.incident(p, l) == target.incident(points[p], lines[l])
        for p in plane.points
        for l in plane.lines
    )


def round_trip_check(
    field: FiniteStructure,
    frame_overrides: Optional[Mapping[str, int]] = None,
) -> RoundTripReport:
    """
    Coordinatize the analytic plane of a field and compare the result with the field.

    F -> PP_in(F) -> ternary ring -> F', then F ~ F' by an explicit
    isomorphism and PP_in(F) ~ PP_in(F') by an incidence-preserving bijection.

    Raises:
        FieldAxiomViolation: the derived tables are not a field
        FrameError: the overrides do not describe a frame
        BudgetExceeded: the field is too large for the isomorphism search
    """
    started = time.monotonic()
    scheme = scheme_pp_in()
    plane = IncidencePlane(apply_transduction(scheme, field))
    frame: CoordinateFrame = choose_frame(plane, frame_overrides)
    ptr = extract_ptr(plane, frame)
    ptr_report = verify_ptr_axioms(ptr)
    field_report = derived_field_report(ptr)
    derived = ptr_to_field(ptr, name=f"F({field.name})")
    isomorphism = find_field_isomorphism(field, derived)
    plane_ok = plane_isomorphism(plane, ptr, apply_transduction(scheme, derived))
    report = RoundTripReport(
        field=field.name,
        size=ptr.size,
        frame=frame.to_dict(plane),
        ptr_axioms=ptr_report,
        field_axioms=field_report,
        field_isomorphism=isomorphism,
        plane_isomorphism=plane_ok,
        elapsed_ms=int((time.monotonic() - started) * 1000),
    )
    logger.info(
        "Round trip finished",
        extra={"field": field.name, "ok": report.ok, "elapsed_ms": report.elapsed_ms},
    )
    return report

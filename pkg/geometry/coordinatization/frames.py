"""
Coordinate frames: two axes, a unit diagonal through their meet and a unit point.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Union

from geometry.coordinatization.plane import IncidencePlane
from geometry.exceptions import ConstructionError, FrameError
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)

FRAME_KEYS = ("l0", "m0", "delta", "unit")


@dataclass(frozen=True)
class CoordinateFrame:
    """
    ``l0`` carries the coordinates, ``m0`` is the second axis, ``origin`` is
    their meet, ``delta`` is the unit diagonal and ``unit`` the point 1 on ``l0``.
    """

    l0: int
    m0: int
    delta: int
    origin: int
    unit: int

    def to_dict(self, plane: Optional[IncidencePlane] = None) -> Dict[str, object]:
        if plane is None:
            return {"l0": self.l0, "m0": self.m0, "delta": self.delta, "origin": self.origin, "unit": self.unit}
        return {
            "l0": plane.line_name(self.l0),
            "m0": plane.line_name(self.m0),
            "delta": plane.line_name(self.delta),
            "origin": plane.point_name(self.origin),
            "unit": plane.point_name(self.unit),
        }


def as_plane(plane: Union[FiniteStructure, IncidencePlane]) -> IncidencePlane:
    return plane if isinstance(plane, IncidencePlane) else IncidencePlane(plane)


def frame_problem(plane: IncidencePlane, l0: int, m0: int, delta: int, unit: int) -> Optional[str]:
    """Why the data is not a frame, or None when it is one."""
    if l0 == m0:
        return "l0 and m0 must differ"
    try:
        origin = plane.meet(l0, m0)
    except ConstructionError as exc:
        return str(exc)
    if origin is None:
        return "l0 and m0 must meet"
    if delta in (l0, m0):
        return "delta must differ from l0 and m0"
    if not plane.incident(origin, delta):
        return "delta must pass through the origin"
    if not plane.incident(unit, l0) or unit == origin:
        return "the unit point must lie on l0 and differ from the origin"
    return None


def valid_frames(plane: Union[FiniteStructure, IncidencePlane]) -> Iterator[CoordinateFrame]:
    """All frames in lexicographic (l0, m0, delta, unit) order."""
    plane = as_plane(plane)
    for l0 in plane.lines:
        for m0 in plane.lines:
            if m0 == l0:
                continue
            common = plane.points_on[l0] & plane.points_on[m0]
            if len(common) != 1:
                continue
            origin = next(iter(common))
            for delta in sorted(plane.lines_through[origin] - {l0, m0}):
                for unit in sorted(plane.points_on[l0] - {origin}):
                    yield CoordinateFrame(l0, m0, delta, origin, unit)


def choose_frame(
    plane: Union[FiniteStructure, IncidencePlane],
    overrides: Optional[Mapping[str, int]] = None,
) -> CoordinateFrame:
    """
    The lexicographically first frame agreeing with the overrides.

    Args:
        plane: A finite affine plane
        overrides: Fixed ids for any of "l0", "m0", "delta", "unit"

    Returns:
        CoordinateFrame: the chosen frame

    Raises:
        FrameError: an override is unknown or inconsistent, or the plane has no frame
    """
    plane = as_plane(plane)
    fixed = dict(overrides or {})
    unknown = set(fixed) - set(FRAME_KEYS)
    if unknown:
        raise FrameError(f"Unknown frame keys: {', '.join(sorted(unknown))}")
    if {"l0", "m0", "delta"} <= set(fixed):
        if fixed["delta"] in (fixed["l0"], fixed["m0"]):
            raise FrameError("delta must differ from l0 and m0")
        if fixed["l0"] == fixed["m0"]:
            raise FrameError("l0 and m0 must differ")
    if len(fixed) == len(FRAME_KEYS):
        problem = frame_problem(plane, fixed["l0"], fixed["m0"], fixed["delta"], fixed["unit"])
        if problem:
            raise FrameError(problem)
    for frame in valid_frames(plane):
        if all(getattr(frame, key) == value for key, value in fixed.items()):
            logger.debug("Frame chosen", extra={"plane": plane.name, "frame": frame.to_dict()})
            return frame
    if "delta" in fixed and fixed["delta"] in (fixed.get("l0"), fixed.get("m0")):
        raise FrameError("delta must differ from l0 and m0")
    raise FrameError(f"No coordinate frame in {plane.name or 'the plane'} matches {fixed or 'any choice'}")

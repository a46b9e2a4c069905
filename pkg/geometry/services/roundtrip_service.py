"""
Service layer for coordinatization round trips.
"""
import logging
import re
from typing import Mapping, Optional

from geometry.coordinatization.roundtrip import RoundTripReport, round_trip_check
from geometry.exceptions import GeometryError
from geometry.structures.fields import build_prime_field, load_cayley_field
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)

FIELD_SPEC_PATTERN = re.compile(r"^(?:p=(?P<prime>\d+)|cayley=(?P<path>.+))$")


class RoundTripService:
    """
    Service class for field -> plane -> ternary ring -> field checks.
    """

    @staticmethod
    def load_field(spec: str) -> FiniteStructure:
        """
        Build the field named by "p=<prime>" or "cayley=<file>".

        Raises:
            GeometryError: the spec matches neither form
            NotPrimeError: p is not prime
            FieldAxiomViolation: the Cayley tables are not a field
        """
        match = FIELD_SPEC_PATTERN.match(spec.strip())
        if match is None:
            raise GeometryError(f"Field must be given as p=<prime> or cayley=<file>, got '{spec}'")
        if match.group("prime") is not None:
            return build_prime_field(int(match.group("prime")))
        return load_cayley_field(match.group("path"))

    @staticmethod
    def run(spec: str, frame_overrides: Optional[Mapping[str, int]] = None) -> RoundTripReport:
        """
        Coordinatize the analytic plane of the field and compare.

        Args:
            spec: "p=<prime>" or "cayley=<file>"
            frame_overrides: Fixed element ids for l0, m0, delta or unit

        Returns:
            RoundTripReport: PTR and field axiom reports with both isomorphisms
        """
        field = RoundTripService.load_field(spec)
        logger.debug("Round trip requested", extra={"field": field.name, "overrides": dict(frame_overrides or {})})
        return round_trip_check(field, frame_overrides)

"""
Serializers for the geometry application.
"""
from typing import Any, Dict

from geometry.services.check_service import Verdict


class VerdictSerializer:
    """
    Serializer for checker verdicts.
    """

    @staticmethod
    def to_dict(verdict: Verdict, include_timing: bool = True) -> Dict[str, Any]:
        """
        Serialize a Verdict to a dictionary.

        Args:
            verdict: Verdict from TheoremCheckService
            include_timing: Whether to include time_ms (left out when comparing runs)

        Returns:
            dict: status, translation and the kernel details that are present
        """
        data: Dict[str, Any] = {
            "status": verdict.status,
            "translation": verdict.translation,
        }
        if include_timing:
            data["time_ms"] = verdict.time_ms

        # Optional keys only when set, so identical jobs give identical bytes
        for key in ("counterexample", "witness", "kernel", "scheme", "semantics", "theory", "note"):
            value = getattr(verdict, key)
            if value is not None:
                data[key] = value
        if verdict.trace:
            data["trace"] = verdict.trace

        return data

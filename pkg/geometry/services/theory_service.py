import logging

from geometry.formulas.theory import Theory, print_theory
from geometry.theories.catalog import theory

logger = logging.getLogger(__name__)


class TheoryService:
    """
    Service class for exporting catalog theories.
    """

    @staticmethod
    def get_theory(name: str, n: int = 0) -> Theory:
        """
        Raises:
            UnknownTheoryError: name is not in the catalog
        """
        return theory(name, n)

    @staticmethod
    def export_axioms(name: str, n: int = 0) -> str:
        """The theory as a "(theory NAME (axiom LABEL f) ...)" file, schemes instantiated at ``n``."""
        result = theory(name, n)
        logger.debug("Axioms exported", extra={"theory": name, "n": n, "axioms": len(result.axioms)})
        return print_theory(result)

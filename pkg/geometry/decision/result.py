from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

from geometry.constants import STATUS_INVALID, STATUS_VALID


@dataclass(frozen=True)
class Decision:
    """
    Outcome of a decision kernel on a closed sentence.

    Attributes:
        status: "valid" or "invalid"
        kernel: "acf0" or "rcf"
        counterexample: Rational point falsifying a universal sentence, when one is known
        witness: Rational point satisfying an existential sentence, when one is known
        trace: Kernel summary (disjuncts, basis sizes, nodes, method)
    """

    status: str
    kernel: str
    counterexample: Optional[Dict[str, Fraction]] = None
    witness: Optional[Dict[str, Fraction]] = None
    trace: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def of(cls, valid: bool, kernel: str, **kwargs) -> "Decision":
        return cls(STATUS_VALID if valid else STATUS_INVALID, kernel, **kwargs)

    @property
    def is_valid(self) -> bool:
        return self.status == STATUS_VALID

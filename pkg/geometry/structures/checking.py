"""
Checking a structure against every axiom of a theory.
"""
import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from geometry.exceptions import VocabularyMismatchError
from geometry.formulas.theory import Theory
from geometry.structures.evaluation import Evaluator
from geometry.structures.finite import FiniteStructure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AxiomVerdict:
    label: str
    holds: bool
    counterexample: Optional[Dict[str, str]] = None

    def to_dict(self) -> Dict[str, object]:
        data = {"axiom": self.label, "holds": self.holds}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


@dataclass(frozen=True)
class TheoryReport:
    structure: str
    theory: str
    verdicts: Tuple[AxiomVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def verdict(self, label: str) -> AxiomVerdict:
        return next(v for v in self.verdicts if v.label == label)

    @property
    def failed(self) -> List[str]:
        return [v.label for v in self.verdicts if not v.holds]

    def to_dict(self) -> Dict[str, object]:
        return {
            "structure": self.structure,
            "theory": self.theory,
            "ok": self.ok,
            "axioms": [v.to_dict() for v in self.verdicts],
        }


def check_theory(
    structure: FiniteStructure,
    theory: Theory,
    scheme_parameter: int = 0,
    guarded: bool = True,
) -> TheoryReport:
    """
    Evaluate every axiom of ``theory`` in ``structure``.

    Args:
        structure: A structure interpreting the theory's vocabulary
        theory: Axioms and axiom schemes
        scheme_parameter: Parameter at which schemes such as InfLines are instantiated
        guarded: Use guarded quantifier enumeration

    Returns:
        TheoryReport: one verdict per axiom, with a counterexample for each failure

    Raises:
        VocabularyMismatchError: the structure lacks a symbol the theory uses
    """
    missing = set(theory.vocabulary.relations) - set(structure.vocabulary.relations)
    missing |= set(theory.vocabulary.sorts) - set(structure.vocabulary.sorts)
    if missing:
        raise VocabularyMismatchError(
            f"Structure {structure.name or '?'} does not interpret {', '.join(sorted(missing))}"
        )
    instance = theory.instantiate(scheme_parameter) if theory.generators else theory
    evaluator = Evaluator(structure, guarded=guarded)
    verdicts = []
    started = time.monotonic()
    for axiom in instance.axioms:
        witness = evaluator.counterexample(axiom.formula)
        verdicts.append(
            AxiomVerdict(
                label=axiom.label,
                holds=witness is None,
                counterexample=None if witness is None else witness.named(structure),
            )
        )
        logger.debug(
            "Axiom checked",
            extra={"axiom": axiom.label, "holds": witness is None, "structure": structure.name},
        )
    report = TheoryReport(structure=structure.name, theory=theory.name, verdicts=tuple(verdicts))
    logger.info(
        "Theory checked",
        extra={
            "theory": theory.name,
            "structure": structure.name,
            "failed": report.failed,
            "elapsed_ms": int((time.monotonic() - started) * 1000),
        },
    )
    return report

"""
Service layer for theorem checking.

A conjecture over the geometry vocabulary is expanded, translated into field
arithmetic through a quantifier-free scheme and handed to a decision kernel.
Kernel errors become verdict statuses; input errors propagate to the caller.
"""
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from geometry.constants import (
    KERNEL_ACF0,
    KERNEL_RCF,
    LICENSED_THEORIES,
    ORDERED_THEORIES,
    SCHEME_PP_HILBERT,
    SCHEME_PP_IN,
    SCHEME_PP_WU,
    SEMANTICS_ORDERED,
    SEMANTICS_UNORDERED,
    STATUS_BUDGET,
    STATUS_INVALID,
    STATUS_UNSUPPORTED,
    STATUS_VALID,
    UNDECIDABILITY_NOTE,
)
from geometry.decision.acf import acf0_decide
from geometry.decision.rcf import rcf_decide
from geometry.decision.result import Decision
from geometry.exceptions import (
    BudgetExceeded,
    FragmentError,
    TheoryNotLicensedError,
    VocabularyMismatchError,
)
from geometry.formulas.parser import parse_formula
from geometry.formulas.printer import print_formula, print_numeral
from geometry.formulas.syntax import Forall, Formula
from geometry.formulas.transforms import classify_fragment, quantifier_prefix, relations_used
from geometry.formulas.vocabularies import (
    DERIVED_RELATIONS,
    EQUIDISTANT,
    ORDERED_RELATIONS,
    ORTHOGONAL,
    TAU_GEOMETRY,
)
from geometry.schemes.analytic import get_scheme
from geometry.schemes.scheme import ChartCase, TranslationScheme, chart_cases, translate_formula
from geometry.theories.catalog import theory_template
from geometry.theories.definitions import expand_defined_relations

logger = logging.getLogger(__name__)

# Most quantifier blocks unordered semantics decides after translation; ordered semantics is
# bounded by the sign matrix budget alone.
UNORDERED_BLOCK_LIMIT = 1


@dataclass(frozen=True)
class Job:
    """
    One theorem-checking request.

    Attributes:
        theory: Catalog theory name
        conjecture: Closed formula over the geometry vocabulary
        semantics: "ordered", "unordered" or None to infer it from theory and conjecture
        budget: Kernel budget override (CH nodes for RCF, Gröbner pairs for ACF0)
        scheme: Translation scheme override
    """

    theory: str
    conjecture: Formula
    semantics: Optional[str] = None
    budget: Optional[int] = None
    scheme: Optional[str] = None


@dataclass
class Verdict:
    """
    Outcome of a checker run.

    ``status`` is valid or invalid only when a kernel finished; the
    translation is filled in whenever translation succeeded.
    """

    status: str
    translation: str = ""
    time_ms: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    witness: Optional[Dict[str, Any]] = None
    trace: Dict[str, Any] = field(default_factory=dict)
    kernel: Optional[str] = None
    scheme: Optional[str] = None
    semantics: Optional[str] = None
    theory: Optional[str] = None
    note: Optional[str] = None

    @property
    def decided(self) -> bool:
        return self.status in (STATUS_VALID, STATUS_INVALID)


def _uses_order(f: Formula) -> bool:
    return any(r in ORDERED_RELATIONS for r in relations_used(f))


def _point_values(point: Mapping[str, Fraction], fixed: Mapping[str, Fraction]) -> Dict[str, Any]:
    """Group component values "A.x" under their geometric variable "A"."""
    grouped: Dict[str, Any] = {}
    for name, value in sorted({**fixed, **point}.items()):
        variable, dot, component = name.rpartition(".")
        if dot:
            grouped.setdefault(variable, {})[component] = print_numeral(value)
        else:
            grouped[name] = print_numeral(value)
    return grouped


class TheoremCheckService:
    """
    Service class for the geometric theorem checker and the synthetic Tarski machine.
    """

    @staticmethod
    def parse_conjecture(text: str) -> Formula:
        """
        Parse a conjecture over the geometry vocabulary.

        Raises:
            FormulaSyntaxError: malformed s-expression
            SortError: ill-sorted formula
        """
        return parse_formula(text, TAU_GEOMETRY)

    @staticmethod
    def resolve_semantics(requested: Optional[str], conjecture: Formula, theory: Optional[str] = None) -> str:
        """
        Ordered semantics whenever the theory or the conjecture needs an order.

        Raises:
            VocabularyMismatchError: unordered semantics requested for an ordered problem
        """
        ordered = _uses_order(conjecture) or theory in ORDERED_THEORIES
        if requested == SEMANTICS_UNORDERED and ordered:
            raise VocabularyMismatchError(
                "Betweenness and equiangularity need an ordered field; use ordered semantics"
            )
        if requested:
            return requested
        return SEMANTICS_ORDERED if ordered else SEMANTICS_UNORDERED

    @staticmethod
    def select_scheme(conjecture: Formula, override: Optional[str] = None) -> TranslationScheme:
        """
        The smallest analytic scheme covering the conjecture's relations.

        Raises:
            VocabularyMismatchError: the override does not define a relation the conjecture uses
        """
        used = relations_used(conjecture)
        if override:
            try:
                scheme = get_scheme(override)
            except KeyError as error:
                raise VocabularyMismatchError(str(error.args[0])) from None
        elif any(r in ORDERED_RELATIONS for r in used):
            scheme = get_scheme(SCHEME_PP_HILBERT)
        elif EQUIDISTANT in used or ORTHOGONAL in used:
            scheme = get_scheme(SCHEME_PP_WU)
        else:
            scheme = get_scheme(SCHEME_PP_IN)
        missing = sorted(used - set(scheme.relations))
        if missing:
            raise VocabularyMismatchError(f"Scheme {scheme.name} does not define {', '.join(missing)}")
        return scheme

    @staticmethod
    def translate(conjecture: Formula, scheme_name: Optional[str] = None) -> Tuple[TranslationScheme, Formula]:
        """Expand derived relations and translate into the scheme's field vocabulary."""
        expanded = expand_defined_relations(conjecture)
        scheme = TheoremCheckService.select_scheme(expanded, scheme_name)
        return scheme, translate_formula(scheme, expanded)

    @staticmethod
    def decide_cases(
        kind: Optional[type],
        cases: List[ChartCase],
        semantics: str,
        budget: Optional[int] = None,
    ) -> Tuple[Decision, Optional[ChartCase]]:
        """
        Decide chart cases and combine them: all for a universal split, any for an existential one.

        Returns:
            (decision, the case the decision's point belongs to)
        """
        decisions: List[Tuple[Decision, ChartCase]] = []
        for case in cases:
            if semantics == SEMANTICS_ORDERED:
                decision = rcf_decide(case.formula, node_cap=budget)
            else:
                decision = acf0_decide(case.formula, pair_cap=budget)
            decisions.append((decision, case))
            # a universal split fails with its first invalid case, an existential one succeeds with its first valid case
            if kind is Forall and not decision.is_valid:
                break
            if kind is not None and kind is not Forall and decision.is_valid:
                break
        decision, case = decisions[-1]
        if len(decisions) == 1 and kind is None:
            return decision, case
        trace = {"charts": len(cases), "cases": [d.trace for d, _ in decisions]}
        combined = Decision(
            status=decision.status,
            kernel=decision.kernel,
            counterexample=decision.counterexample,
            witness=decision.witness,
            trace=trace,
        )
        return combined, case

    @staticmethod
    def _finish(verdict: Verdict, decision: Decision, case: Optional[ChartCase]) -> Verdict:
        fixed = case.fixed if case is not None else {}
        verdict.status = decision.status
        verdict.kernel = decision.kernel
        verdict.trace = decision.trace
        if decision.counterexample is not None:
            verdict.counterexample = _point_values(decision.counterexample, fixed)
        if decision.witness is not None:
            verdict.witness = _point_values(decision.witness, fixed)
        return verdict

    @staticmethod
    def _decide(verdict: Verdict, expanded: Formula, scheme: TranslationScheme, budget: Optional[int]) -> Verdict:
        try:
            kind, cases = chart_cases(scheme, expanded)
            decision, case = TheoremCheckService.decide_cases(kind, cases, verdict.semantics, budget)
        except BudgetExceeded as error:
            logger.warning(
                "Kernel budget exhausted",
                extra={"budget": error.budget, "limit": error.limit, "semantics": verdict.semantics},
            )
            verdict.status = STATUS_BUDGET
            verdict.kernel = KERNEL_RCF if verdict.semantics == SEMANTICS_ORDERED else KERNEL_ACF0
            verdict.note = str(error)
            return verdict
        except FragmentError as error:
            verdict.status = STATUS_UNSUPPORTED
            verdict.note = str(error)
            return verdict
        return TheoremCheckService._finish(verdict, decision, case)

    @staticmethod
    def run_gtc(job: Job) -> Verdict:
        """
        Decide whether a universal conjecture is a consequence of a catalog theory.

        Args:
            job: Theory, conjecture, semantics and budget

        Returns:
            Verdict: valid/invalid from the kernel, unsupported-fragment for
            conjectures outside the universal fragment, budget-exceeded when a
            kernel budget ran out

        Raises:
            UnknownTheoryError: theory not in the catalog
            TheoryNotLicensedError: the theory's universal consequences are not reduced to RCF/ACF0
            VocabularyMismatchError: conjecture symbols outside the theory's vocabulary
        """
        started = time.monotonic()
        template = theory_template(job.theory)
        if job.theory not in LICENSED_THEORIES:
            raise TheoryNotLicensedError(
                f"Theory '{job.theory}' is not licensed for the field reduction; "
                f"choose one of {', '.join(LICENSED_THEORIES)}"
            )
        allowed = set(template.vocabulary.relations) | set(DERIVED_RELATIONS)
        foreign = sorted(relations_used(job.conjecture) - allowed)
        if foreign:
            raise VocabularyMismatchError(
                f"Theory '{job.theory}' has no relation {', '.join(foreign)}"
            )
        semantics = TheoremCheckService.resolve_semantics(job.semantics, job.conjecture, job.theory)

        expanded = expand_defined_relations(job.conjecture)
        scheme = TheoremCheckService.select_scheme(expanded, job.scheme)
        verdict = Verdict(
            status=STATUS_UNSUPPORTED,
            translation=print_formula(translate_formula(scheme, expanded)),
            scheme=scheme.name,
            semantics=semantics,
            theory=job.theory,
        )

        fragment = classify_fragment(expanded)
        # existential witnesses from the expansion are tolerated because the ordered kernel decides any prefix
        expansion_only = classify_fragment(job.conjecture).is_universal and semantics == SEMANTICS_ORDERED
        if fragment.is_universal or expansion_only:
            verdict = TheoremCheckService._decide(verdict, expanded, scheme, job.budget)
        else:
            verdict.note = UNDECIDABILITY_NOTE
            verdict.trace = {"fragment": fragment.value}

        verdict.time_ms = int((time.monotonic() - started) * 1000)
        logger.info(
            "Theorem check finished",
            extra={
                "theory": job.theory,
                "semantics": semantics,
                "scheme": scheme.name,
                "status": verdict.status,
                "time_ms": verdict.time_ms,
            },
        )
        return verdict

    @staticmethod
    def run_stm(phi: Formula, semantics: Optional[str] = None, budget: Optional[int] = None) -> Verdict:
        """
        Translate a geometric sentence into field arithmetic and decide it when the kernels can.

        Unordered semantics decides quantifier-free, universal and existential
        translations; ordered semantics decides every sentence within the node budget.

        Raises:
            VocabularyMismatchError: unordered semantics with order relations
        """
        started = time.monotonic()
        semantics = TheoremCheckService.resolve_semantics(semantics, phi)
        expanded = expand_defined_relations(phi)
        scheme = TheoremCheckService.select_scheme(expanded)
        verdict = Verdict(
            status=STATUS_UNSUPPORTED,
            translation=print_formula(translate_formula(scheme, expanded)),
            scheme=scheme.name,
            semantics=semantics,
        )
        blocks = len(quantifier_prefix(expanded))
        if semantics == SEMANTICS_ORDERED or blocks <= UNORDERED_BLOCK_LIMIT:
            verdict = TheoremCheckService._decide(verdict, expanded, scheme, budget)
        else:
            verdict.note = f"{blocks} quantifier blocks; {semantics} semantics decides at most {UNORDERED_BLOCK_LIMIT}"
            verdict.trace = {"blocks": blocks}

        verdict.time_ms = int((time.monotonic() - started) * 1000)
        logger.info(
            "Synthetic Tarski machine finished",
            extra={"semantics": semantics, "scheme": scheme.name, "status": verdict.status, "time_ms": verdict.time_ms},
        )
        return verdict

"""
Search for rational counterexamples and witnesses.

A point of Q^n falsifying the matrix of a universal sentence falsifies it in
every field of characteristic zero, so a hit is a proof of invalidity for
both kernels. Small grid values are tried first, then seeded random points.
"""
import logging
import random
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, Optional, Sequence

from geometry.conf import geometry_setting
from geometry.constants import GRID_VALUES, GRID_VARIABLE_LIMIT
from geometry.decision.compiler import CompiledSentence, PolyFormula, evaluate
from geometry.formulas.syntax import Exists, Forall

logger = logging.getLogger(__name__)

Assignment = Dict[str, Fraction]


def random_rational(rng: random.Random, height: int) -> Fraction:
    """A rational p/q with |p| <= height and 1 <= q <= height."""
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def sample_points(
    variables: Sequence[str],
    points: Optional[int] = None,
    height: Optional[int] = None,
    seed: Optional[int] = None,
) -> Iterator[Assignment]:
    """
    Grid points first (when there are few variables), then random ones.

    The sequence only depends on the arguments and the settings.
    """
    points = geometry_setting("SAMPLE_POINTS", points)
    height = geometry_setting("SAMPLE_HEIGHT", height)
    seed = geometry_setting("SAMPLE_SEED", seed)
    if not variables:
        yield {}
        return
    if len(variables) <= GRID_VARIABLE_LIMIT:
        for values in product(GRID_VALUES, repeat=len(variables)):
            yield {name: Fraction(value) for name, value in zip(variables, values)}
    rng = random.Random(seed)
    for _ in range(points):
        yield {name: random_rational(rng, height) for name in variables}


def _search(matrix: PolyFormula, variables: Sequence[str], wanted: bool, **options) -> Optional[Assignment]:
    for point in sample_points(variables, **options):
        if evaluate(matrix, point) is wanted:
            return point
    return None


def rational_counterexample(sentence: CompiledSentence, **options) -> Optional[Assignment]:
    """
    A rational point where the matrix of a universal sentence fails.

    Args:
        sentence: Compiled sentence; only purely universal (or quantifier-free)
            sentences are searched
        **options: points, height and seed overrides

    Returns:
        The assignment, or None when nothing was found or the sentence is not universal
    """
    prefix = sentence.prefix
    if any(kind is not Forall for kind, _ in prefix):
        return None
    variables = [name for _, name in prefix]
    found = _search(sentence.matrix, variables, False, **options)
    if found is not None:
        logger.debug("Rational counterexample found", extra={"variables": len(variables)})
    return found


def rational_witness(sentence: CompiledSentence, **options) -> Optional[Assignment]:
    """A rational point satisfying the matrix of a purely existential sentence."""
    prefix = sentence.prefix
    if not prefix or any(kind is not Exists for kind, _ in prefix):
        return None
    variables = [name for _, name in prefix]
    return _search(sentence.matrix, variables, True, **options)

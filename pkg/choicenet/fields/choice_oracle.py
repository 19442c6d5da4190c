"""
Explicit choice oracles.

An oracle maps every label field to a canonical member of its equivalence
class. Because a class is exactly {same base, any finite exception map}, the
exception-free field is a well-defined representative. The adversarial oracle
adds a fixed corruption on top of it and is used to show how prediction fails
when X hits the points where the representative disagrees with the truth.
"""

import logging
from typing import Dict

from ..models.oracle import OracleKind, OracleTag
from ..utils import Point, as_point
from .label_field import FiniteSet, LabelField, value_at

logger = logging.getLogger(__name__)


def corruption_map(kind: OracleKind, d: int) -> Dict[Point, float]:
    """Corruption of an adversarial oracle as a point -> value map."""
    return {as_point(entry.point, d): entry.value for entry in kind.corruption}


def representative(kind: OracleKind, field: LabelField) -> LabelField:
    """
    Canonical member of the class of field.

    The result depends only on field.base (and the oracle), so equivalent
    inputs always produce identical outputs.
    """
    if kind.tag is OracleTag.STRIP_EXCEPTIONS:
        return LabelField(field.base, {}, field.integrable)
    return LabelField(field.base, corruption_map(kind, field.dim), field.integrable)


def disagreement_points(kind: OracleKind, truth: LabelField) -> FiniteSet:
    """
    Points where the representative differs from the true field.

    Only exception keys of either field can disagree, so the set is finite.
    """
    chosen = representative(kind, truth)
    candidates = dict.fromkeys(list(truth.exceptions) + list(chosen.exceptions))
    points = [p for p in candidates if value_at(chosen, p) != value_at(truth, p)]
    logger.debug(f"Oracle {kind.tag.value} disagrees with the truth on {len(points)} points")
    return FiniteSet(tuple(points), truth.dim)

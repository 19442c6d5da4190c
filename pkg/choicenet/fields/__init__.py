"""Label fields, finite sets and choice oracles."""

from .choice_oracle import corruption_map, disagreement_points, representative
from .label_field import (
    INFINITE_SET,
    BaseFunction,
    FiniteSet,
    LabelField,
    available_bases,
    equivalent,
    field_from_description,
    make_base,
    mask,
    register_base,
    value_at,
    values,
)

__all__ = [
    "INFINITE_SET",
    "BaseFunction",
    "FiniteSet",
    "LabelField",
    "available_bases",
    "corruption_map",
    "disagreement_points",
    "equivalent",
    "field_from_description",
    "make_base",
    "mask",
    "register_base",
    "representative",
    "value_at",
    "values",
]

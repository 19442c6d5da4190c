"""
Label fields on [0,1]^d.

A label field assigns a value in [0,1] to every point of the unit cube. It is
held intensionally: a named base function from the registry plus a finite map
of pointwise exceptions. Two fields are equivalent when they share the base
function, i.e. when they differ on at most finitely many points.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import numpy as np

from ..exceptions import ContractViolation
from ..models.field_description import FieldDescription
from ..utils import Point, as_point, format_point

logger = logging.getLogger(__name__)

BaseFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FiniteSet:
    """Finite set of pairwise-distinct points of [0,1]^dim, in insertion order."""

    points: Tuple[Point, ...]
    dim: int
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ContractViolation(f"dimension must be positive, got {self.dim}")
        points = tuple(as_point(p, self.dim) for p in self.points)
        members = frozenset(points)
        if len(members) != len(points):
            seen = set()
            for p in points:
                if p in seen:
                    raise ContractViolation(f"duplicate point {format_point(p)} in finite set")
                seen.add(p)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_members", members)

    @classmethod
    def from_draws(cls, draws: Iterable[Iterable[float]], dim: int) -> "FiniteSet":
        """Build a set from raw draws, collapsing repeated points in order."""
        unique: Dict[Point, None] = {}
        for draw in draws:
            unique.setdefault(as_point(draw, dim), None)
        return cls(tuple(unique), dim)

    @classmethod
    def empty(cls, dim: int) -> "FiniteSet":
        return cls((), dim)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point: object) -> bool:
        if not isinstance(point, tuple):
            try:
                point = tuple(float(c) for c in point)  # type: ignore[union-attr]
            except (TypeError, ValueError):
                return False
        return point in self._members

    def as_array(self) -> np.ndarray:
        """Points as an array with shape (len, dim)."""
        return np.array(self.points, dtype=np.float64).reshape(len(self.points), self.dim)

    def to_list(self) -> List[List[float]]:
        return [list(p) for p in self.points]


class _InfiniteSet:
    """Marker for an infinite index set X."""

    _instance: Optional["_InfiniteSet"] = None

    def __new__(cls) -> "_InfiniteSet":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE_SET"


INFINITE_SET = _InfiniteSet()

IndexSet = Union[FiniteSet, _InfiniteSet]


def _freeze(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, Mapping):
        return tuple(sorted((str(k), _freeze(v)) for k, v in value.items()))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    return value


@dataclass(frozen=True)
class BaseFunction:
    """
    A registered analytic function [0,1]^dim -> [0,1].

    fn is vectorized: it maps an array of shape (N, dim) to shape (N,).
    Equality and hashing use the name, the canonical parameters and dim only.
    """

    name: str
    params: Tuple[Tuple[str, Any], ...]
    dim: int
    fn: BaseFn = field(compare=False, repr=False)

    @property
    def identifier(self) -> str:
        canonical = json.dumps(dict(self.params), sort_keys=True, separators=(",", ":"))
        return f"{self.name}{canonical}@d={self.dim}"

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(points, dtype=np.float64)), dtype=np.float64)


@dataclass(frozen=True)
class _RegistryEntry:
    factory: Callable[..., BaseFn]
    integrable: bool
    description: str


_REGISTRY: Dict[str, _RegistryEntry] = {}


def register_base(name: str, integrable: bool = True) -> Callable:
    """Register a base-function factory ``factory(d, **params) -> fn``."""

    def decorator(factory: Callable[..., BaseFn]) -> Callable[..., BaseFn]:
        doc = (factory.__doc__ or "").strip().splitlines()
        _REGISTRY[name] = _RegistryEntry(factory, integrable, doc[0] if doc else "")
        return factory

    return decorator


def available_bases() -> Dict[str, str]:
    """Registered base names with their one-line descriptions."""
    return {name: entry.description for name, entry in sorted(_REGISTRY.items())}


def make_base(name: str, d: int, params: Optional[Mapping[str, Any]] = None) -> BaseFunction:
    """
    Instantiate a registered base function.

    Raises:
        ContractViolation: For unknown names or invalid parameters
    """
    entry = _REGISTRY.get(name)
    if entry is None:
        raise ContractViolation(
            f"unknown base function '{name}'; available: {', '.join(available_bases())}"
        )
    if d < 1:
        raise ContractViolation(f"dimension must be positive, got {d}")
    params = dict(params or {})
    try:
        fn = entry.factory(d, **params)
    except TypeError as e:
        raise ContractViolation(f"invalid parameters for base '{name}': {e}") from e
    return BaseFunction(name=name, params=_freeze(params), dim=d, fn=fn)


def base_is_integrable(name: str) -> bool:
    entry = _REGISTRY.get(name)
    return entry.integrable if entry is not None else True


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ContractViolation(f"{name} must lie in [0,1], got {value}")
    return value


@register_base("constant")
def _constant(d: int, value: float = 0.5) -> BaseFn:
    """Constant value c."""
    value = _check_unit("value", value)
    return lambda x: np.full(x.shape[0], value)


@register_base("identity")
def _identity(d: int) -> BaseFn:
    """Mean of the coordinates (x -> x for d = 1)."""
    return lambda x: np.mean(x, axis=1)


@register_base("affine")
def _affine(d: int, weights: Optional[List[float]] = None, offset: float = 0.0) -> BaseFn:
    """Affine map w.x + b, range-checked on the cube."""
    w = np.full(d, 1.0 / d) if weights is None else np.asarray(weights, dtype=np.float64)
    if w.shape != (d,):
        raise ContractViolation(f"affine weights must have length {d}, got {w.shape}")
    offset = float(offset)
    lowest = offset + float(np.sum(np.minimum(w, 0.0)))
    highest = offset + float(np.sum(np.maximum(w, 0.0)))
    if lowest < -1e-12 or highest > 1.0 + 1e-12:
        raise ContractViolation(
            f"affine base ranges over [{lowest}, {highest}] on the cube, outside [0,1]"
        )
    return lambda x: np.clip(x @ w + offset, 0.0, 1.0)


@register_base("sin2pi")
def _sin2pi(d: int, frequency: int = 1) -> BaseFn:
    """Separable product of sin^2(k pi x_l)."""
    k = float(frequency)
    return lambda x: np.prod(np.sin(k * np.pi * x) ** 2, axis=1)


@register_base("radial_bump")
def _radial_bump(
    d: int,
    center: Optional[List[float]] = None,
    width: float = 0.25,
    height: float = 1.0,
) -> BaseFn:
    """Gaussian bump h*exp(-|x-c|^2 / (2 w^2))."""
    c = np.full(d, 0.5) if center is None else np.asarray(as_point(center, d))
    width = float(width)
    if width <= 0.0:
        raise ContractViolation(f"radial_bump width must be positive, got {width}")
    height = _check_unit("height", height)
    return lambda x: height * np.exp(-np.sum((x - c) ** 2, axis=1) / (2.0 * width**2))


@register_base("step")
def _step(
    d: int, axis: int = 0, threshold: float = 0.5, low: float = 0.0, high: float = 1.0
) -> BaseFn:
    """Indicator-style step along one axis."""
    if not 0 <= int(axis) < d:
        raise ContractViolation(f"step axis must be in [0, {d}), got {axis}")
    axis = int(axis)
    threshold = float(threshold)
    low = _check_unit("low", low)
    high = _check_unit("high", high)
    return lambda x: np.where(x[:, axis] >= threshold, high, low)


@register_base("non_integrable", integrable=False)
def _non_integrable(d: int, scale: float = 1048576.0) -> BaseFn:
    """Stand-in declared non-integrable: fractional part of scale * sum(x)."""
    scale = float(scale)
    return lambda x: np.mod(scale * np.sum(x, axis=1), 1.0)


@dataclass(frozen=True)
class LabelField:
    """Base function plus a finite exception map; every value lies in [0,1]."""

    base: BaseFunction
    exceptions: Mapping[Point, float] = field(default_factory=dict)
    integrable: bool = True

    def __post_init__(self) -> None:
        checked: Dict[Point, float] = {}
        for key, value in self.exceptions.items():
            point = as_point(key, self.base.dim)
            if point in checked:
                raise ContractViolation(f"duplicate exception key {format_point(point)}")
            value = float(value)
            if not (0.0 <= value <= 1.0):
                raise ContractViolation(
                    f"exception value {value} at {format_point(point)} lies outside [0,1]"
                )
            checked[point] = value
        object.__setattr__(self, "exceptions", MappingProxyType(checked))
        object.__setattr__(self, "integrable", bool(self.integrable))

    @property
    def dim(self) -> int:
        return self.base.dim


def _check_base_values(field_: LabelField, points: np.ndarray, values: np.ndarray) -> None:
    bad = ~((values >= 0.0) & (values <= 1.0))
    if np.any(bad):
        row = int(np.argmax(bad))
        raise ContractViolation(
            f"base '{field_.base.identifier}' returned {values[row]} "
            f"outside [0,1] at point {format_point(points[row])}"
        )


def value_at(field_: LabelField, i: Iterable[float]) -> float:
    """
    Label of a single point: the exception if one is stored, else the base.

    Exceptions match by exact floating equality only.

    Raises:
        ContractViolation: If i is not in [0,1]^d or the base leaves [0,1]
    """
    point = as_point(i, field_.dim)
    if point in field_.exceptions:
        return field_.exceptions[point]
    points = np.asarray([point], dtype=np.float64)
    labels = field_.base(points)
    _check_base_values(field_, points, labels)
    return float(labels[0])


def values(field_: LabelField, points: np.ndarray) -> np.ndarray:
    """Vectorized value_at for an array of shape (N, d)."""
    points = np.asarray(points, dtype=np.float64)
    result = np.array(field_.base(points), dtype=np.float64)
    _check_base_values(field_, points, result)
    for key, value in field_.exceptions.items():
        result[np.all(points == np.asarray(key), axis=1)] = value
    return result


def mask(field_: LabelField, X: FiniteSet) -> LabelField:
    """Set the label of every point of X to 0, leaving the rest unchanged."""
    if not isinstance(X, FiniteSet):
        raise ContractViolation("only finite sets can be masked")
    if X.dim != field_.dim:
        raise ContractViolation(f"set dimension {X.dim} does not match field dimension {field_.dim}")
    if not len(X):
        return field_
    exceptions = dict(field_.exceptions)
    exceptions.update({point: 0.0 for point in X})
    return LabelField(field_.base, exceptions, field_.integrable)


def equivalent(a: LabelField, b: LabelField) -> bool:
    """True iff both fields share the base function, so they differ on finitely many points."""
    return a.base.identifier == b.base.identifier


def field_from_description(description: FieldDescription, d: int) -> LabelField:
    """Build a LabelField from its config description."""
    if description.integrable and not base_is_integrable(description.base):
        raise ContractViolation(f"base '{description.base}' cannot be declared integrable")
    base = make_base(description.base, d, description.params)
    exceptions: Dict[Point, float] = {}
    for entry in description.exceptions:
        point = as_point(entry.point, d)
        if point in exceptions:
            raise ContractViolation(f"duplicate exception point {format_point(point)}")
        exceptions[point] = entry.value
    field_ = LabelField(base, exceptions, description.integrable)
    logger.debug(f"Built field {base.identifier} with {len(exceptions)} exceptions")
    return field_

import math
import os
from typing import Iterable, Optional, Sequence, Tuple

from .exceptions import ContractViolation

try:
    import tomllib
except ImportError:
    # Fallback for Python < 3.11
    try:
        import tomli as tomllib
    except ImportError:
        tomllib = None


Point = Tuple[float, ...]


def as_point(values: Iterable[float], dim: Optional[int] = None) -> Point:
    """
    Convert coordinates to a validated point of the unit cube.

    Points are plain tuples of Python floats so that set membership and
    dictionary lookups use exact floating equality.

    Args:
        values: Coordinates of the point
        dim: Expected dimension, or None to accept any positive dimension

    Returns:
        Tuple of floats

    Raises:
        ContractViolation: If the dimension is wrong or a coordinate is
            non-finite or outside [0, 1]

    Examples:
        >>> as_point([0.25, 1])
        (0.25, 1.0)
        >>> as_point([1.5])
        Traceback (most recent call last):
        ...
        choicenet.exceptions.ContractViolation: point [1.5] lies outside [0,1]^1
    """
    try:
        point = tuple(float(v) for v in values)
    except (TypeError, ValueError) as e:
        raise ContractViolation(f"point coordinates must be real numbers: {e}") from e

    if not point:
        raise ContractViolation("point must have at least one coordinate")
    if dim is not None and len(point) != dim:
        raise ContractViolation(
            f"point {list(point)} has dimension {len(point)}, expected {dim}"
        )
    if not all(math.isfinite(c) and 0.0 <= c <= 1.0 for c in point):
        raise ContractViolation(
            f"point {list(point)} lies outside [0,1]^{len(point)}"
        )
    return point


def format_point(point: Sequence[float]) -> str:
    """Render a point as a compact, round-trippable string."""
    return "(" + ", ".join(repr(float(c)) for c in point) + ")"


def get_version() -> str:
    """Get version from pyproject.toml file."""
    if tomllib is None:
        # Return fallback version if tomllib is not available
        return "0.1.0"

    try:
        # Get the project root directory (parent of the package directory)
        current_dir = os.path.dirname(os.path.abspath(__file__))
        project_root = os.path.dirname(current_dir)
        pyproject_path = os.path.join(project_root, "pyproject.toml")

        with open(pyproject_path, "rb") as f:
            pyproject_data = tomllib.load(f)
            return pyproject_data.get("project", {}).get("version", "0.1.0")
    except (FileNotFoundError, KeyError, Exception):
        # Fallback version if file is not found or version is not in file
        return "0.1.0"

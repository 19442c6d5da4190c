"""Sampling, quadrature and certified approximation."""

from .base_approximator import (
    CertificateCache,
    approximate,
    certificate_cache,
    compile_hat_1d,
    compile_interpolant,
    compile_kuhn,
    grid_nodes,
    interpolate_kuhn,
    node_values,
)
from .quadrature import estimate_with, l1_distance
from .sampler import (
    PROBE_STREAM,
    QUADRATURE_STREAM,
    SAMPLER_STREAM,
    VERIFY_STREAM,
    draw_size,
    intersection_trials,
    sample_finite_set,
    stream,
)

__all__ = [
    "CertificateCache",
    "PROBE_STREAM",
    "QUADRATURE_STREAM",
    "SAMPLER_STREAM",
    "VERIFY_STREAM",
    "approximate",
    "certificate_cache",
    "compile_hat_1d",
    "compile_interpolant",
    "compile_kuhn",
    "draw_size",
    "estimate_with",
    "grid_nodes",
    "interpolate_kuhn",
    "intersection_trials",
    "l1_distance",
    "node_values",
    "sample_finite_set",
    "stream",
]

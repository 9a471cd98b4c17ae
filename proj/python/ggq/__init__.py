"""Generalized Gaussian quadrature for complete Chebyshev sets."""

from ._ggq import (  # noqa: F401
    GgqError,
    bessel_k0,
    bessel_k0_scaled,
    certify_rule,
    compute_rule,
    demo_cell,
    hankel0_shifted,
    laguerre_log_moment,
    moments,
    rule_to_json,
)

__all__ = [
    "GgqError",
    "bessel_k0",
    "bessel_k0_scaled",
    "certify_rule",
    "compute_rule",
    "demo_cell",
    "hankel0_shifted",
    "laguerre_log_moment",
    "moments",
    "rule_to_json",
]

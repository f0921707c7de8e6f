"""Exact rational toolkit for density-in-radius questions about finite unions
of intervals: configurations, counterexample checks, periodic good sets and
the polynomial thresholds that bound them."""

from .exact_core import Q, format_decimal, format_rational, parse_rational, zeta
from .intervals import (Configuration, Finding, Interval, IntervalSet, RaySet,
                        VerificationReport, normalize)

__all__ = [
    "Q", "format_decimal", "format_rational", "parse_rational", "zeta",
    "Configuration", "Finding", "Interval", "IntervalSet", "RaySet",
    "VerificationReport", "normalize",
]

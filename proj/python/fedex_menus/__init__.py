"""Exact revenue-optimal and approximately optimal single-bidder FedEx mechanisms.

Rationals cross the boundary as ``fractions.Fraction``; strings such as ``"1/3"``
are accepted wherever a rational is expected. A mechanism is a list of days, each
a list of ``(price, mass)`` pairs.
"""

from ._core import (
    CurveStack,
    Instance,
    approximate,
    build_curve_stack,
    check_ic,
    exponential_instance,
    lba_instance,
    lp_optimum,
    lpl,
    lpl_interval_cover_check,
    menu,
    menu_complexity,
    perturbed_exponential,
    polygon,
    random_instance,
    regular_three_day,
    revenue,
    solve,
    validate,
)

__all__ = [
    "CurveStack",
    "Instance",
    "approximate",
    "build_curve_stack",
    "check_ic",
    "exponential_instance",
    "lba_instance",
    "lp_optimum",
    "lpl",
    "lpl_interval_cover_check",
    "menu",
    "menu_complexity",
    "perturbed_exponential",
    "polygon",
    "random_instance",
    "regular_three_day",
    "revenue",
    "solve",
    "validate",
]

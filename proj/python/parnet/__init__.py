"""Over-parametrized parallel sigmoid network regression estimator.

Thin python facade over the C++ core: fitting, verification suites, rate
studies, covering bounds, and the constructive approximation assembly.
"""

try:
    from ._parnet import (  # noqa: F401
        Fit,
        assembled_sup_error,
        covering_bound_log,
        fit,
        rate_study,
        schedule,
        verify,
    )
except ImportError:  # in-tree build: the extension sits next to us on sys.path
    from _parnet import (  # noqa: F401
        Fit,
        assembled_sup_error,
        covering_bound_log,
        fit,
        rate_study,
        schedule,
        verify,
    )

__all__ = [
    "Fit",
    "assembled_sup_error",
    "covering_bound_log",
    "fit",
    "rate_study",
    "schedule",
    "verify",
]

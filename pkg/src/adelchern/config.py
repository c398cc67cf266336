"""Working-precision policy.

Precision is policy, not truth: every operation tracks the precision it can
actually certify and fails hard below that.  The default number of known
coefficients per variable is 32, configurable globally or per call, and via
the ADELCHERN_PRECISION environment variable.
"""

import os

_DEFAULT = 32


def default_precision() -> int:
    value = os.environ.get("ADELCHERN_PRECISION")
    if value is not None:
        try:
            n = int(value)
        except ValueError:
            raise ValueError(
                "ADELCHERN_PRECISION must be an integer, got %r" % value
            ) from None
        if n <= 0:
            raise ValueError("ADELCHERN_PRECISION must be positive")
        return n
    return _DEFAULT


def set_default_precision(n: int) -> None:
    global _DEFAULT
    if n <= 0:
        raise ValueError("precision must be positive")
    _DEFAULT = n

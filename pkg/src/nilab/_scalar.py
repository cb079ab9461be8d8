"""Exact rational scalar type used throughout the package.

gmpy2's mpq when available (noticeably faster once numerators grow),
stdlib Fraction otherwise.  Both are arbitrary-precision rationals that
are always reduced with a positive denominator, so every computation is
bit-identical under either backend.
"""

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat_str(value) -> str:
    """Canonical lossless string form: "p/q", or "p" when q == 1."""
    return str(value)

"""Built-in recurrences and published bound pairs used by tests and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .bounds import BoundPair
from .ratfunc import RationalFunction
from .recurrence import Recurrence

__all__ = [
    "trinomial",
    "motzkin",
    "motzkin_over_factorial",
    "factorial",
    "inverse_factorial",
    "constant",
    "trinomial_bounds",
    "motzkin_scaled_bounds",
    "PUBLISHED",
]

PUBLISHED = "published"

_n = RationalFunction.n()
_one = Fraction(1)


def trinomial() -> Recurrence:
    """Central trinomial coefficients: (n+2)T_{n+2} = (2n+3)T_{n+1} + 3(n+1)T_n."""
    return Recurrence(((2 * _n + 3) / (_n + 2), 3 * (_n + 1) / (_n + 2)), (_one, _one), name="trinomial")


def motzkin() -> Recurrence:
    """Motzkin numbers: (n+4)M_{n+2} = (2n+5)M_{n+1} + 3(n+1)M_n."""
    return Recurrence(((2 * _n + 5) / (_n + 4), 3 * (_n + 1) / (_n + 4)), (_one, _one), name="motzkin")


def motzkin_over_factorial() -> Recurrence:
    """M_n / n!, kept as the Motzkin recurrence with scale 1/(n+1)."""
    m = motzkin()
    return Recurrence(m.coeffs, m.initials, scale=1 / (_n + 1), name="motzkin-over-factorial")


def factorial() -> Recurrence:
    return Recurrence((_n + 1,), (_one,), name="factorial")


def inverse_factorial() -> Recurrence:
    return Recurrence((1 / (_n + 1),), (_one,), name="inverse-factorial")


def constant() -> Recurrence:
    return Recurrence((RationalFunction.const(1),), (_one,), name="constant")


def _tail(*coeffs) -> RationalFunction:
    """1 + sum c_k / n^k for k = 1, 2, ..."""
    out = RationalFunction.const(1)
    for k, c in enumerate(coeffs, start=1):
        if c:
            out = out + Fraction(c) / _n**k
    return out


def trinomial_bounds(denominator: int = 256) -> BoundPair:
    """Published u-bounds for central trinomial coefficients, claimed from n = 12.

    The fifth-order coefficients appear in print both over 256 and over 265;
    pass ``denominator=265`` for the second reading.
    """
    if denominator not in (256, 265):
        raise ValueError("denominator must be 256 or 265")
    base = (0, Fraction(1, 2), Fraction(-3, 8), Fraction(9, 32))
    g = _tail(*base, Fraction(-355, denominator))
    f = _tail(*base, Fraction(157, denominator))
    return BoundPair(g, f, 12, PUBLISHED, f"fifth-order denominator {denominator}")


def motzkin_scaled_bounds() -> BoundPair:
    """Published u-bounds for M_n/n!, claimed from n = 228."""
    s = _n / (_n + 1)
    g = s * _tail(0, Fraction(3, 2), Fraction(-47, 8))
    f = s * _tail(0, Fraction(3, 2), Fraction(-31, 8))
    return BoundPair(g, f, 228, PUBLISHED, "n/(n+1) times the Motzkin bounds")

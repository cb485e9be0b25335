"""Threshold pipelines for order-three log-monotonicity and the order-two Laguerre inequality.

Both pipelines take bounds ``g(n) < u_n < f(n)`` valid from ``N1``, turn each
inequality of the argument into a hold point, take the maximum, and then
shrink the threshold by an exact scan of the actual sequence up to a horizon.

Index conventions (stated in every report):

* ``{a_n}_{n>=M}`` is 3-log-monotonic when ``u_n > 1`` and ``u_n > u_{n+1}``
  for ``n >= M+1`` and ``u_{n-1}u_{n+1} > u_n^2`` for ``n >= M+2``; these are
  exactly the indices at which each quantity only involves terms ``a_k`` with
  ``k >= M``.
* ``{a_n}_{n>=M}`` satisfies the Laguerre inequality of order two when
  ``3a_{n+2}^2 - 4a_{n+1}a_{n+3} + a_n a_{n+4} > 0`` for ``n >= M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bounds import BoundPair, verify_bounds_scan
from .ratfunc import NEVER, RationalFunction, hold_point
from .recurrence import SequenceCache, scan_laguerre, scan_logmono

__all__ = [
    "InapplicableError",
    "LogMono3Thresholds",
    "Laguerre2Threshold",
    "LogMono3Report",
    "Laguerre2Report",
    "logmono3_thresholds",
    "laguerre2_threshold",
    "logmono3_expressions",
    "laguerre2_expression",
    "refine_threshold_logmono3",
    "refine_threshold_laguerre2",
    "certify_logmono3",
    "certify_laguerre2",
    "default_horizon",
    "closed_form_pair",
    "LOGMONO3_CONVENTION",
    "LAGUERRE2_CONVENTION",
]

LOGMONO3_CONVENTION = (
    "refined_start M means u_n > 1 and u_n > u_{n+1} for M+1 <= n <= horizon "
    "and u_{n-1}u_{n+1} > u_n^2 for M+2 <= n <= horizon"
)
LAGUERRE2_CONVENTION = (
    "refined_start M means 3a_{n+2}^2 - 4a_{n+1}a_{n+3} + a_n a_{n+4} > 0 "
    "for M <= n <= horizon"
)


class InapplicableError(ArithmeticError):
    """A threshold inequality is not eventually true for the given bounds."""


def default_horizon(N: int) -> int:
    return max(2 * N, 5000)


def logmono3_expressions(pair: BoundPair) -> dict[str, RationalFunction]:
    g, f = pair.g, pair.f
    return {
        "N2": g - 1,
        "N3": g - f.shift(1),
        "N4": g.shift(-1) * g.shift(1) - f * f,
    }


def laguerre2_expression(pair: BoundPair) -> RationalFunction:
    g, f = pair.g, pair.f
    return g.shift(-1) * g * g * g.shift(1) - 4 * f + 3


@dataclass(frozen=True)
class LogMono3Thresholds:
    N2: int
    N3: int
    N4: int
    N: int


@dataclass(frozen=True)
class Laguerre2Threshold:
    N2: int
    N: int


def _hp(name: str, expr: RationalFunction, n_min: int) -> int:
    N = hold_point(expr, n_min)
    if N is NEVER:
        raise InapplicableError(f"{name}: {expr} is not eventually positive")
    return N


def logmono3_thresholds(pair: BoundPair, offset: int = 0) -> LogMono3Thresholds:
    """Hold points of g > 1, g(n) > f(n+1) and g(n-1)g(n+1) > f(n)^2.

    Each hold point is the true one for its inequality as a rational-function
    statement, searched from the first index where the inequality is
    meaningful (``offset + 1``, or ``offset + 2`` when ``n - 1`` appears).
    N is their maximum together with ``valid_from``.
    """
    ex = logmono3_expressions(pair)
    N2 = _hp("g(n) - 1", ex["N2"], offset + 1)
    N3 = _hp("g(n) - f(n+1)", ex["N3"], offset + 1)
    N4 = _hp("g(n-1)g(n+1) - f(n)^2", ex["N4"], offset + 2)
    return LogMono3Thresholds(N2, N3, N4, max(pair.valid_from, N2, N3, N4))


def laguerre2_threshold(pair: BoundPair, offset: int = 0) -> Laguerre2Threshold:
    """Hold point of g(n-1) g(n)^2 g(n+1) - 4 f(n) + 3 > 0, and N = max with valid_from."""
    N2 = _hp("g(n-1)g(n)^2g(n+1) - 4f(n) + 3", laguerre2_expression(pair), offset + 2)
    return Laguerre2Threshold(N2, max(pair.valid_from, N2))


@dataclass
class LogMono3Report:
    N1: int
    N2: int
    N3: int
    N4: int
    N: int
    refined_start: int
    horizon: int
    violations: list[tuple[int, str]]
    boundary: list[int]
    sandwich_violations: list[tuple[int, str]] = field(default_factory=list)
    provenance: str = ""
    convention: str = LOGMONO3_CONVENTION

    @property
    def consistent(self) -> bool:
        """True when no exact check contradicts the asymptotic argument."""
        return not self.sandwich_violations and all(n < self.N for n, _ in self.violations)

    @property
    def holds(self) -> bool:
        return self.consistent and self.refined_start < self.horizon


@dataclass
class Laguerre2Report:
    N1: int
    N2: int
    N: int
    refined_start: int
    horizon: int
    violations: list[int]
    boundary: list[int]
    sandwich_violations: list[tuple[int, str]] = field(default_factory=list)
    provenance: str = ""
    convention: str = LAGUERRE2_CONVENTION

    @property
    def consistent(self) -> bool:
        # a-index n corresponds to u-index n + 2
        return not self.sandwich_violations and all(n + 2 < self.N for n in self.violations)

    @property
    def holds(self) -> bool:
        return self.consistent and self.refined_start <= self.horizon


_NAMES = ("u_n > 1", "u_n > u_{n+1}", "u_{n-1}u_{n+1} > u_n^2")


def refine_threshold_logmono3(cache: SequenceCache, N: int, horizon: Optional[int] = None) -> tuple[int, list[tuple[int, str]], list[int]]:
    """Exact scan of the three u-inequalities on [offset+1, horizon].

    Returns ``(refined_start, violations, boundary)`` under the convention in
    :data:`LOGMONO3_CONVENTION`.
    """
    horizon = default_horizon(N) if horizon is None else horizon
    off = cache.offset
    if horizon <= off + 1:
        raise ValueError("horizon must exceed offset + 1")
    rows = scan_logmono(cache, off + 1, horizon)
    M = off
    viol, zero = [], []
    for row in rows:
        bad = False
        for k, ok in enumerate(row.holds):
            if ok is False:
                viol.append((row.n, _NAMES[k]))
                bad = True
                M = max(M, row.n - 1 if k == 2 else row.n)
        if bad and row.boundary:
            zero.append(row.n)
    return min(M, horizon), viol, zero


def refine_threshold_laguerre2(cache: SequenceCache, N: int, horizon: Optional[int] = None) -> tuple[int, list[int], list[int]]:
    """Exact scan of the order-two Laguerre expression on [offset, horizon]."""
    horizon = default_horizon(N) if horizon is None else horizon
    scan = scan_laguerre(cache, 2, cache.offset, horizon)
    start = scan.violations[-1] + 1 if scan.violations else cache.offset
    return start, list(scan.violations), list(scan.boundary)


def _sandwich(cache: SequenceCache, pair: BoundPair, horizon: int) -> list[tuple[int, str]]:
    if pair.provenance == CLOSED_FORM:  # g = u = f, nothing to sandwich
        return []
    return verify_bounds_scan(cache, pair, pair.valid_from, horizon)


def certify_logmono3(cache: SequenceCache, pair: BoundPair, horizon: Optional[int] = None) -> LogMono3Report:
    th = logmono3_thresholds(pair, cache.offset)
    horizon = default_horizon(th.N) if horizon is None else horizon
    start, viol, zero = refine_threshold_logmono3(cache, th.N, horizon)
    sandwich = _sandwich(cache, pair, horizon)
    return LogMono3Report(
        pair.valid_from, th.N2, th.N3, th.N4, th.N, start, horizon, viol, zero, sandwich, pair.provenance
    )


def certify_laguerre2(cache: SequenceCache, pair: BoundPair, horizon: Optional[int] = None) -> Laguerre2Report:
    th = laguerre2_threshold(pair, cache.offset)
    horizon = default_horizon(th.N) if horizon is None else horizon
    start, viol, zero = refine_threshold_laguerre2(cache, th.N, horizon)
    sandwich = _sandwich(cache, pair, horizon)
    return Laguerre2Report(pair.valid_from, th.N2, th.N, start, horizon, viol, zero, sandwich, pair.provenance)


CLOSED_FORM = "closed-form"


def closed_form_pair(rec) -> Optional[BoundPair]:
    """For a first-order recurrence u_n is itself a rational function of n.

    Returns the degenerate pair ``g = f = u`` (provenance ``closed-form``);
    with it every threshold inequality is the exact statement about u_n.
    Returns None for higher orders.
    """
    work = rec.resolved()
    if work.order != 1:
        return None
    b = work.coeffs[0]
    return BoundPair(b / b.shift(-1), b / b.shift(-1), work.offset + 1, CLOSED_FORM, "u_n = R(n)/R(n-1)")

"""P-recursive sequences evaluated exactly.

A :class:`Recurrence` stores ``a[n+d] = R_1(n) a[n+d-1] + ... + R_d(n) a[n]``
for ``n >= offset`` together with ``d`` initial values and an optional
term-wise scale.  :class:`SequenceCache` grows the table of terms on demand
through the kernels in :mod:`holocert.kernels` and exposes the ratio
quantities used by the certification code:

``b_n = a[n+1]/a[n]``, ``u_n = a[n-1]a[n+1]/a[n]^2 = b_n / b_{n-1}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Optional

from . import kernels
from .ratfunc import Poly, RationalFunction, poly_gcd, root_bound

__all__ = [
    "Recurrence",
    "SequenceCache",
    "RecurrenceError",
    "PoleError",
    "RatioError",
    "apply_scale",
    "term",
    "ratio_b",
    "ratio_u",
    "phi_ratio",
    "laguerre_direct",
    "scan_logmono",
    "scan_laguerre",
    "LogMonoRow",
    "LaguerreScan",
]


class RecurrenceError(ValueError):
    """Malformed recurrence or out-of-range index."""


class PoleError(RecurrenceError, ZeroDivisionError):
    """A coefficient (or the scale) has a pole or zero at a needed index."""


class RatioError(RecurrenceError, ZeroDivisionError):
    """A ratio-based quantity met a zero or sign-changing term."""


@dataclass(frozen=True)
class Recurrence:
    coeffs: tuple[RationalFunction, ...]
    initials: tuple[Fraction, ...]
    offset: int = 0
    scale: Optional[RationalFunction] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_rf(c) for c in self.coeffs))
        object.__setattr__(self, "initials", tuple(Fraction(v) for v in self.initials))
        if self.scale is not None:
            object.__setattr__(self, "scale", _rf(self.scale))
        if not self.coeffs:
            raise RecurrenceError("recurrence needs at least one coefficient")
        if len(self.initials) != len(self.coeffs):
            raise RecurrenceError(
                f"order {len(self.coeffs)} recurrence needs {len(self.coeffs)} initial values, "
                f"got {len(self.initials)}"
            )

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def unscaled(self) -> "Recurrence":
        """The same recurrence with the scale dropped."""
        return Recurrence(self.coeffs, self.initials, self.offset, None, self.name)

    def resolved(self) -> "Recurrence":
        """Recurrence with any scale folded into coefficients and initial values."""
        if self.scale is None:
            return self
        return apply_scale(self.unscaled(), self.scale)

    def kernel_form(self) -> tuple[list[list[int]], list[int]]:
        """Integer polynomials (P_1..P_d, Q) with R_i = P_i / Q."""
        den = Poly.const(1)
        for c in self.coeffs:
            den = _poly_lcm(den, c.den)
        polys = [c.num * (den // c.den) for c in self.coeffs]
        # clear rational coefficients jointly
        scale_den = 1
        for p in polys + [den]:
            for c in p.coeffs:
                scale_den = scale_den * c.denominator // gcd(scale_den, c.denominator)
        ints = [[int(c * scale_den) for c in p.coeffs] for p in polys]
        qints = [int(c * scale_den) for c in den.coeffs]
        return ints, qints


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b // poly_gcd(a, b)).monic()


def _rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x)
    return RationalFunction.const(Fraction(x))


def apply_scale(rec: Recurrence, s) -> Recurrence:
    """Recurrence for ``h(n) a[n]`` with ``h(offset) = 1`` and ``h(n+1)/h(n) = s(n)``.

    The coefficients become ``R_i(n) * s(n+d-1) * ... * s(n+d-i)``.  A zero or
    pole of ``s`` at any integer ``>= offset`` raises :class:`PoleError`.
    """
    s = _rf(s)
    rec = rec.resolved()
    for p in (s.num, s.den):
        for k in range(rec.offset, max(rec.offset, root_bound(p)) + 1):
            if p(k) == 0:
                raise PoleError(f"scale has a zero or pole at n={k}")
    d = rec.order
    coeffs = []
    for i, r in enumerate(rec.coeffs, start=1):
        factor = RationalFunction.const(1)
        for j in range(1, i + 1):
            factor = factor * s.shift(d - j)
        coeffs.append(r * factor)
    inits = []
    h = Fraction(1)
    for j, v in enumerate(rec.initials):
        inits.append(h * v)
        h *= s(rec.offset + j)
    return Recurrence(tuple(coeffs), tuple(inits), rec.offset, None, rec.name)


class SequenceCache:
    """Growable exact table of a recurrence's terms and consecutive ratios.

    Terms are kept as reduced integer pairs; :meth:`term` converts to
    :class:`~fractions.Fraction`.  Extension is serialized by a lock, reads of
    the already-filled prefix need none.
    """

    def __init__(self, rec: Recurrence):
        self.rec = rec
        self._work = rec.resolved()
        self.offset = rec.offset
        self._polys, self._q = self._work.kernel_form()
        self._nums = [v.numerator for v in self._work.initials]
        self._dens = [v.denominator for v in self._work.initials]
        self._xs: list[int] = []
        self._ys: list[int] = []
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._nums)

    @property
    def order(self) -> int:
        return self._work.order

    def _index(self, n: int) -> int:
        if n < self.offset:
            raise RecurrenceError(f"index {n} below offset {self.offset}")
        return n - self.offset

    def ensure(self, n: int) -> None:
        """Make sure terms up to index n exist."""
        i = self._index(n)
        if i < len(self._nums):
            return
        with self._lock:
            have = len(self._nums)
            if i < have:
                return
            d = self.order
            k = self.offset + have - d
            try:
                new_n, new_d = kernels.extend_terms(
                    self._polys, self._q, k, self._nums[-d:], self._dens[-d:], i + 1 - have
                )
            except ZeroDivisionError as exc:
                bad = exc.args[0] if exc.args else "?"
                raise PoleError(f"coefficient pole at n={bad} (needed for a[{bad}+{d}])") from None
            self._nums.extend(new_n)
            self._dens.extend(new_d)

    def ensure_ratios(self, n: int) -> None:
        """Make sure b_j exists for all offset <= j <= n."""
        i = self._index(n)
        if i < len(self._xs):
            return
        self.ensure(n + 1)
        with self._lock:
            have = len(self._xs)
            if i < have:
                return
            try:
                xs, ys = kernels.ratio_pairs(self._nums[have : i + 2], self._dens[have : i + 2])
            except ZeroDivisionError as exc:
                j = self.offset + have + exc.args[0]
                raise RatioError(f"a[{j}] = 0; ratios are undefined") from None
            self._xs.extend(xs)
            self._ys.extend(ys)

    def term(self, n: int) -> Fraction:
        self.ensure(n)
        i = n - self.offset
        return Fraction(self._nums[i], self._dens[i])

    def terms(self, lo: int, hi: int) -> list[Fraction]:
        self.ensure(hi)
        return [Fraction(self._nums[i - self.offset], self._dens[i - self.offset]) for i in range(lo, hi + 1)]

    def ratio_b(self, n: int) -> Fraction:
        self.ensure_ratios(n)
        i = n - self.offset
        return Fraction(self._xs[i], self._ys[i])

    def ratio_u(self, n: int) -> Fraction:
        if n < self.offset + 1:
            raise RecurrenceError(f"u_n needs n >= {self.offset + 1}")
        return self.ratio_b(n) / self.ratio_b(n - 1)

    def ratio_arrays(self, lo: int, hi: int) -> tuple[list[int], list[int]]:
        """Raw (x, y) lists for b_lo..b_hi after checking they are all positive."""
        self.ensure_ratios(hi)
        a, b = lo - self.offset, hi - self.offset
        xs = self._xs[a : b + 1]
        for j, x in enumerate(xs):
            if x <= 0:
                raise RatioError(f"b_{lo + j} <= 0: terms change sign or vanish")
        return xs, self._ys[a : b + 1]


def term(cache: SequenceCache, n: int) -> Fraction:
    """Exact value of the (scaled) sequence at n."""
    return cache.term(n)


def ratio_b(cache: SequenceCache, n: int) -> Fraction:
    return cache.ratio_b(n)


def ratio_u(cache: SequenceCache, n: int) -> Fraction:
    return cache.ratio_u(n)


def phi_ratio(cache: SequenceCache, k: int, n: int) -> Fraction:
    """Log-convexity test value of the k-fold ratio iterate at n.

    ``phi_ratio(0, n) = u_n`` and ``phi_ratio(k+1, n) = phi_ratio(k, n+1) / phi_ratio(k, n)``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    level = [cache.ratio_u(n + j) for j in range(k + 1)]
    for _ in range(k):
        nxt = []
        for a, b in zip(level, level[1:]):
            if a == 0:
                raise RatioError("zero intermediate ratio")
            nxt.append(b / a)
        level = nxt
    return level[0]


def laguerre_direct(cache: SequenceCache, m: int, n: int) -> Fraction:
    """L_m(a_n) = 1/2 sum_{k=0}^{2m} (-1)^(k+m) C(2m,k) a[n+k] a[n+2m-k]."""
    if m < 1:
        raise ValueError("order m must be positive")
    a = cache.terms(n, n + 2 * m)
    total = Fraction(0)
    for k in range(2 * m + 1):
        total += (-1) ** (k + m) * comb(2 * m, k) * a[k] * a[2 * m - k]
    return total / 2


@dataclass(frozen=True)
class LogMonoRow:
    """Exact outcome of the three order-three inequalities at one index.

    Each field is the sign of ``u_n - 1``, ``u_n - u_{n+1}`` and
    ``u_{n-1}u_{n+1} - u_n^2``; ``None`` where u_{n-1} is undefined.
    """

    n: int
    convex: int
    decreasing: Optional[int]
    ratio_convex: Optional[int]

    @property
    def signs(self) -> tuple:
        return (self.convex, self.decreasing, self.ratio_convex)

    @property
    def holds(self) -> tuple:
        return tuple(None if s is None else s > 0 for s in self.signs)

    @property
    def boundary(self) -> bool:
        return any(s == 0 for s in self.signs)


def scan_logmono(cache: SequenceCache, lo: int, hi: int) -> list[LogMonoRow]:
    """Exact truth table of u_n > 1, u_n > u_{n+1}, u_{n-1}u_{n+1} > u_n^2 on [lo, hi].

    Requires lo >= offset + 1.  The third inequality is ``None`` at
    n = offset + 1 where u_{n-1} does not exist.
    """
    off = cache.offset
    if lo < off + 1:
        raise RecurrenceError(f"u_n is defined from n = {off + 1}")
    if hi < lo:
        return []
    xs, ys = cache.ratio_arrays(off, hi + 1)
    rows = []
    start = lo
    if lo == off + 1:
        # only u_n and u_{n+1} exist here
        i = 1
        s1 = _sign(xs[i] * ys[i - 1] - xs[i - 1] * ys[i])
        s2 = _sign(xs[i] ** 2 * ys[i - 1] * ys[i + 1] - xs[i - 1] * xs[i + 1] * ys[i] ** 2)
        rows.append(LogMonoRow(lo, s1, s2, None))
        start = lo + 1
    if start <= hi:
        signs = kernels.scan_logmono3(xs, ys, start - off, hi - off)
        rows.extend(LogMonoRow(start + t, *s) for t, s in enumerate(signs))
    return rows


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class LaguerreScan:
    """Indices where L_m(a_n) <= 0; zeros are also listed in ``boundary``."""

    m: int
    lo: int
    hi: int
    violations: tuple[int, ...] = ()
    boundary: tuple[int, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations


def _positive_window(cache: SequenceCache, lo: int, hi: int) -> bool:
    cache.ensure(hi)
    a, b = lo - cache.offset, hi - cache.offset
    nums = cache._nums[a : b + 1]
    return all(v > 0 for v in nums) or all(v < 0 for v in nums)


def scan_laguerre(cache: SequenceCache, m: int, lo: int, hi: int) -> LaguerreScan:
    """Exact scan of L_m(a_n) > 0 for lo <= n <= hi."""
    if hi < lo:
        return LaguerreScan(m, lo, hi)
    viol, zero = [], []
    signs = None
    if m == 2 and _positive_window(cache, lo, hi + 4):
        try:
            xs, ys = cache.ratio_arrays(lo, hi + 3)
            signs = kernels.scan_laguerre2(xs, ys, 0, hi - lo)
        except RatioError:  # a zero term before the window
            signs = None
    if signs is not None:
        for t, s in enumerate(signs):
            if s <= 0:
                viol.append(lo + t)
                if s == 0:
                    zero.append(lo + t)
    else:
        for n in range(lo, hi + 1):
            v = laguerre_direct(cache, m, n)
            if v <= 0:
                viol.append(n)
                if v == 0:
                    zero.append(n)
    return LaguerreScan(m, lo, hi, tuple(viol), tuple(zero))


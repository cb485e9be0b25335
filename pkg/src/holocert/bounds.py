"""Rational-function bounds on the ratio quotient u_n, with certificates.

For an order-two recurrence ``a[n+2] = R1(n) a[n+1] + R2(n) a[n]`` the ratio
``b_n = a[n+1]/a[n]`` obeys ``b_{n+1} = T_n(b_n)`` with
``T_n(x) = R1(n) + R2(n)/x``.  When ``R2 > 0`` the map is decreasing on
``x > 0``, so an interval ``l(n) <= b_n <= h(n)`` is carried to
``[T_n(h(n)), T_n(l(n))]``; when ``R2 < 0`` it is increasing and the ends
are carried to ``[T_n(l(n)), T_n(h(n))]``.  Two hold-point computations plus one exact base
case therefore prove ``l(n) <= b_n <= h(n)`` for every ``n >= N1``.

Candidate ``l``/``h`` come from the formal ansatz
``b_n ~ lam (1 + c_1/n + ... + c_K/n^K)`` widened by ``+-c/n^K``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Optional

from .ratfunc import NEVER, Poly, RationalFunction, hold_point
from .recurrence import Recurrence, SequenceCache
from . import kernels

log = logging.getLogger(__name__)

__all__ = [
    "BoundPair",
    "BoundCertificate",
    "CertificationError",
    "RatioMethodError",
    "expand_ratio",
    "ansatz",
    "propose_bounds",
    "certify_b_bounds",
    "u_bounds_from_b",
    "verify_bounds_scan",
    "N1_GRID",
    "SEARCH_BUDGET",
]

N1_GRID = (10, 20, 50, 100, 250, 500)
SEARCH_BUDGET = 40

CERTIFIED = "certified"
SCAN_VERIFIED = "scan-verified"


class CertificationError(ValueError):
    pass


class RatioMethodError(CertificationError):
    """The ratio ansatz does not apply to this recurrence."""


@dataclass(frozen=True)
class BoundPair:
    """Claimed bounds ``g(n) < u_n < f(n)`` for ``n >= valid_from``."""

    g: RationalFunction
    f: RationalFunction
    valid_from: int
    provenance: str = SCAN_VERIFIED
    note: str = ""

    def ordered_from(self) -> Optional[int]:
        """Hold point of f - g (None if g < f fails eventually)."""
        return hold_point(self.f - self.g, self.valid_from)


@dataclass
class BoundCertificate:
    """Replayable proof that ``l(n) <= b_n <= h(n)`` for all ``n >= base_index``."""

    rec: Recurrence
    lower: RationalFunction
    upper: RationalFunction
    base_index: int
    base_check: tuple[Fraction, Fraction, Fraction]  # l(N1), b_N1, h(N1)
    induction_holds_from: tuple[int, int]
    positivity_holds_from: tuple[int, int]  # sign * R2 > 0, l > 0
    search: dict = field(default_factory=dict)
    r2_sign: int = 1

    def replay(self) -> bool:
        """Recheck the certificate from scratch; raises CertificationError on failure."""
        fresh = certify_b_bounds(self.rec, self.lower, self.upper, self.base_index)
        if (
            fresh.base_check != self.base_check
            or fresh.induction_holds_from != self.induction_holds_from
            or fresh.positivity_holds_from != self.positivity_holds_from
            or fresh.r2_sign != self.r2_sign
        ):
            raise CertificationError("replay produced different certificate data")
        return True


# ratio ansatz ---------------------------------------------------------------


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _series_of(f: RationalFunction, K: int) -> list[Fraction]:
    """Coefficients of f(n) in powers of t = 1/n up to t^K (f must be bounded)."""
    num, den = f.num, f.den
    p, q = num.degree, den.degree
    if p > q:
        raise RatioMethodError(f"coefficient {f} has no finite limit")
    if num.is_zero():
        return [Fraction(0)] * (K + 1)
    nt = list(reversed(num.coeffs))  # sum nt[i] t^i times t^(q-p)
    dt = list(reversed(den.coeffs))
    shift = q - p
    out = [Fraction(0)] * (K + 1)
    # power series division nt / dt
    quo = []
    rem = nt + [Fraction(0)] * (K + 1)
    for i in range(K + 1):
        c = rem[i] / dt[0]
        quo.append(c)
        if c:
            for j, d in enumerate(dt):
                if i + j < len(rem):
                    rem[i + j] -= c * d
    for i in range(K + 1 - shift):
        out[i + shift] = quo[i]
    return out


def _mul(a: list, b: list, K: int) -> list:
    out = [Fraction(0)] * (K + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(K + 1 - i):
                out[i + j] += x * b[j]
    return out


def _shifted_ratio_series(lam: Fraction, cs: list, K: int) -> list:
    """Series in t = 1/n of lam (1 + sum c_k / (n+1)^k)."""
    out = [Fraction(0)] * (K + 1)
    out[0] = lam
    for k, c in enumerate(cs, start=1):
        if not c or k > K:
            continue
        # t^k (1+t)^-k = sum_j C(-k, j) t^(k+j),  C(-k, j) = (-1)^j C(k+j-1, j)
        for j in range(K + 1 - k):
            out[k + j] += lam * c * (-1) ** j * comb(k + j - 1, j)
    return out


def expand_ratio(rec: Recurrence, K: int) -> tuple[Fraction, list[Fraction]]:
    """Dominant ratio ``lam`` and the coefficients ``c_1..c_K`` of its 1/n expansion.

    Solves ``b_{n+1} b_n = R1(n) b_n + R2(n)`` order by order for
    ``b_n = lam (1 + sum c_k / n^k)``.
    """
    if rec.order != 2:
        raise RatioMethodError("the ratio ansatz is implemented for order-2 recurrences")
    if K < 1:
        raise ValueError("K must be positive")
    r1, r2 = rec.coeffs
    s1, s2 = _series_of(r1, K), _series_of(r2, K)
    A, B = s1[0], s2[0]
    disc = A * A + 4 * B
    if disc < 0:
        raise RatioMethodError("characteristic roots are complex (oscillating ratio)")
    if disc == 0:
        raise RatioMethodError("characteristic roots coincide")
    root = _rational_sqrt(disc)
    if root is None:
        raise RatioMethodError("dominant characteristic root is irrational")
    x1, x2 = (A + root) / 2, (A - root) / 2
    if abs(x1) == abs(x2):
        raise RatioMethodError("characteristic roots have equal modulus")
    lam = x1 if abs(x1) > abs(x2) else x2
    if lam == 0:
        raise RatioMethodError("dominant root is zero")
    pivot = lam * (2 * lam - A)
    cs: list[Fraction] = []
    for k in range(1, K + 1):
        trial = cs + [Fraction(0)]
        bn = [lam] + [lam * c for c in trial] + [Fraction(0)] * (K - k)
        bn1 = _shifted_ratio_series(lam, trial, K)
        resid = _mul(bn1, bn, K)
        rb = _mul(s1, bn, K)
        for i in range(K + 1):
            resid[i] -= rb[i] + s2[i]
        cs.append(-resid[k] / pivot)
    return lam, cs


def ansatz(lam: Fraction, cs: list[Fraction]) -> RationalFunction:
    """lam (1 + c_1/n + ... + c_K/n^K) as a rational function of n."""
    K = len(cs)
    # lam (n^K + c_1 n^(K-1) + ... + c_K) / n^K
    num = [lam * c for c in reversed(cs)] + [lam]
    return RationalFunction(Poly(num), Poly([0] * K + [1]))


# certification --------------------------------------------------------------


def _hp(f: RationalFunction, n_min: int) -> Optional[int]:
    return hold_point(f, n_min)


def certify_b_bounds(rec: Recurrence, lower: RationalFunction, upper: RationalFunction, N1: int) -> BoundCertificate:
    """Prove ``lower(n) <= b_n <= upper(n)`` for all n >= N1 or raise CertificationError."""
    rec = rec.unscaled()
    if rec.order != 2:
        raise CertificationError("interval induction needs an order-2 recurrence")
    if N1 < rec.offset:
        raise CertificationError("N1 below the offset")
    r1, r2 = rec.coeffs
    # T_n(x) = R1 + R2/x is decreasing on x > 0 when R2 > 0 and increasing when R2 < 0
    sign = 1
    hp_r2 = _hp(r2, N1)
    if hp_r2 is NEVER or hp_r2 > N1:
        sign = -1
        hp_r2 = _hp(-r2, N1)
        if hp_r2 is NEVER or hp_r2 > N1:
            raise CertificationError(f"R2(n) changes sign or vanishes for some n >= {N1}")
    hp_l = _hp(lower, N1)
    if hp_l is NEVER or hp_l > N1:
        raise CertificationError(f"lower bound is not positive for all n >= {N1}")
    cache = SequenceCache(rec)
    b = cache.ratio_b(N1)
    lo_v, hi_v = lower(N1), upper(N1)
    if not (lo_v <= b <= hi_v):
        raise CertificationError(f"base case fails at N1={N1}: b={b} not in [{lo_v}, {hi_v}]")

    def T(x: RationalFunction) -> RationalFunction:
        return r1 + r2 / x

    # images of the interval ends: T(h) <= T(l) for a decreasing map
    low_img, high_img = (T(upper), T(lower)) if sign > 0 else (T(lower), T(upper))
    step_lo = _hp(low_img - lower.shift(1), N1)
    step_hi = _hp(upper.shift(1) - high_img, N1)
    for name, hp in (("lower", step_lo), ("upper", step_hi)):
        if hp is NEVER or hp > N1:
            raise CertificationError(f"inductive step for the {name} bound holds only from {hp}")
    return BoundCertificate(
        rec=rec,
        lower=lower,
        upper=upper,
        base_index=N1,
        base_check=(lo_v, b, hi_v),
        induction_holds_from=(step_lo, step_hi),
        positivity_holds_from=(hp_r2, hp_l),
        r2_sign=sign,
    )


def propose_bounds(rec: Recurrence, K: int = 5, N1_hint: Optional[int] = None, budget: int = SEARCH_BUDGET) -> BoundCertificate:
    """Search margins ``c`` (doubling from 1) and base indices for a certificate.

    Base indices are tried in ascending order from ``N1_GRID`` (starting at
    ``N1_hint`` when given); at each one the margin doubles until the
    certificate goes through or the total budget of attempts runs out.
    """
    lam, cs = expand_ratio(rec.unscaled(), K)
    center = ansatz(lam, cs)
    bump = RationalFunction(Poly.const(1), Poly([0] * K + [1]))
    grid = list(N1_GRID)
    if N1_hint is not None:
        grid = [N1_hint] + [g for g in grid if g > N1_hint]
    grid = [max(g, rec.offset) for g in grid]
    per_base = max(1, budget // len(grid))
    attempts = 0
    last = ""
    for N1 in grid:
        c = Fraction(1)
        for _ in range(per_base):
            if attempts >= budget:
                break
            attempts += 1
            lower, upper = center - bump * c, center + bump * c
            try:
                cert = certify_b_bounds(rec, lower, upper, N1)
            except CertificationError as exc:
                last = str(exc)
                log.debug("attempt %d (N1=%d, c=%s): %s", attempts, N1, c, exc)
                c *= 2
                continue
            cert.search = {
                "strategy": "doubling margin over base-index grid",
                "K": K,
                "lambda": lam,
                "series": cs,
                "margin": c,
                "attempts": attempts,
            }
            return cert
    raise CertificationError(f"no certificate within {budget} attempts (last failure: {last})")


def u_bounds_from_b(cert: BoundCertificate, scale: Optional[RationalFunction] = None) -> BoundPair:
    """Bounds on u_n = b_n / b_{n-1} implied by a certificate, valid from N1 + 1.

    With a term-wise scale s the working sequence has ``u'_n = u_n s(n)/s(n-1)``,
    so both bounds pick up that factor; it must be positive from N1 + 1 on.
    """
    l, h = cert.lower, cert.upper
    g = l / h.shift(-1)
    f = h / l.shift(-1)
    start = cert.base_index + 1
    note = ""
    if scale is not None:
        factor = scale / scale.shift(-1)
        hp = hold_point(factor, start)
        if hp is NEVER or hp > start:
            raise CertificationError("scale ratio s(n)/s(n-1) is not positive on the certified range")
        g, f = g * factor, f * factor
        note = f"multiplied by s(n)/s(n-1) = {factor}"
    return BoundPair(g, f, start, CERTIFIED, note)


def verify_bounds_scan(cache: SequenceCache, pair: BoundPair, lo: int, hi: int) -> list[tuple[int, str]]:
    """Exact check of g(n) < u_n < f(n) for lo <= n <= hi.

    Returns ``(n, "lower"|"upper")`` for each failure; equality counts as a
    failure.  Indices where g or f has a pole are reported as ``"pole"``.
    """
    lo = max(lo, cache.offset + 1)
    if hi < lo:
        return []
    xs, ys = cache.ratio_arrays(cache.offset, hi)
    out: list[tuple[int, str]] = []
    gn, gd, fn, fd, idx = [], [], [], [], []
    for n in range(lo, hi + 1):
        try:
            gp, gq = pair.g.value_pair(n)
            fp, fq = pair.f.value_pair(n)
        except ZeroDivisionError:
            out.append((n, "pole"))
            continue
        gn.append(gp)
        gd.append(gq)
        fn.append(fp)
        fd.append(fq)
        idx.append(n)
    # kernel wants a contiguous index range; evaluate in runs
    start = 0
    while start < len(idx):
        end = start
        while end + 1 < len(idx) and idx[end + 1] == idx[end] + 1:
            end += 1
        a, b = idx[start] - cache.offset, idx[end] - cache.offset
        signs = kernels.scan_u_bounds(xs, ys, a, b, gn[start : end + 1], gd[start : end + 1], fn[start : end + 1], fd[start : end + 1])
        for t, (s_lo, s_hi) in enumerate(signs):
            n = idx[start + t]
            if s_lo <= 0:
                out.append((n, "lower"))
            if s_hi <= 0:
                out.append((n, "upper"))
        start = end + 1
    out.sort()
    return out

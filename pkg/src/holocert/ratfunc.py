"""Exact univariate polynomials and rational functions over Q.

Everything here works on :class:`fractions.Fraction` coefficients.  A
:class:`RationalFunction` is always kept in canonical form (coprime numerator
and monic denominator), so structural equality is mathematical equality.

The module also answers the one question the certification pipeline keeps
asking: from which integer on is a rational function defined and strictly
positive?  See :func:`hold_point`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

__all__ = [
    "Poly",
    "RationalFunction",
    "NEVER",
    "eventual_sign",
    "hold_point",
    "derivative",
    "root_bound",
    "sturm_count_above",
]

NEVER = None
"""Returned by :func:`hold_point` when the function is not eventually positive."""


def _frac(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r})"

    def to_str(self, var: str = "n") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead = self.lead
        return Poly(c / lead for c in self.coeffs)

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: Number) -> "Poly":
        """Return p(x + k) (Taylor shift by synthetic division)."""
        cs = list(self.coeffs)
        k = _frac(k)
        if k == 0 or len(cs) < 2:
            return Poly(cs)
        d = len(cs) - 1
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                cs[j] += k * cs[j + 1]
        return Poly(cs)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def content_integer(self) -> tuple[list[int], Fraction]:
        """Return (integer primitive coefficients, scale) with self == scale * ints."""
        if not self.coeffs:
            return [], Fraction(1)
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        return ints, Fraction(g, den)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


_PRIME = (1 << 61) - 1


def _trim(v: list) -> list:
    while v and v[-1] == 0:
        v.pop()
    return v


def _gcd_degree_mod_p(a: list[int], b: list[int], p: int = _PRIME) -> int:
    """Degree of gcd(a, b) modulo p (an upper bound on the degree over Q)."""
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            _trim(a)
        a, b = b, a
    return len(a) - 1


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else v


def _prs_gcd(a: list[int], b: list[int]) -> list[int]:
    """gcd of integer polynomials by the primitive pseudo-remainder sequence."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = list(a)
        lb = b[-1]
        while len(r) >= len(b):
            lr = r[-1]
            shift = len(r) - len(b)
            r = [x * lb for x in r]
            for j, y in enumerate(b):
                r[shift + j] -= lr * y
            _trim(r)
        a, b = b, _primitive(r)
    return a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial if both inputs are zero)."""
    if a.is_zero() or b.is_zero():
        return (a if b.is_zero() else b).monic()
    ai, _ = a.content_integer()
    bi, _ = b.content_integer()
    if ai[-1] % _PRIME and bi[-1] % _PRIME and _gcd_degree_mod_p(ai, bi) == 0:
        return Poly.const(1)
    return Poly(_prs_gcd(ai, bi)).monic()


def int_horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class RationalFunction:
    """Canonical quotient num/den of polynomials over Q (den monic, coprime)."""

    __slots__ = ("num", "den", "_ints", "_scale_pair")

    def __init__(self, num: Union[Poly, Number] = 0, den: Union[Poly, Number] = 1, *, _reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = den if isinstance(den, Poly) else Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lead = den.lead
                if lead != 1:
                    num = Poly(c / lead for c in num.coeffs)
                    den = Poly(c / lead for c in den.coeffs)
        self.num = num
        self.den = den
        self._ints = None

    @classmethod
    def n(cls) -> "RationalFunction":
        return cls(Poly.x(), _reduced=True)

    @classmethod
    def const(cls, c: Number) -> "RationalFunction":
        return cls(Poly.const(c), _reduced=True)

    @classmethod
    def from_coeffs(cls, num: Sequence[Number], den: Sequence[Number] = (1,)) -> "RationalFunction":
        return cls(Poly(num), Poly(den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant rational function")
        return self.num.lead if self.num else Fraction(0)

    def __eq__(self, other) -> bool:
        other = _as_rf(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_str()!r})"

    def __str__(self) -> str:
        return self.to_str()

    def to_str(self, var: str = "n") -> str:
        """Render in the expression grammar accepted by the CLI parser."""
        num = self.num.to_str(var)
        if self.den.degree == 0:
            return num
        return f"({num})/({self.den.to_str(var)})"

    # arithmetic -----------------------------------------------------------

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_rf(other) / self

    def __pow__(self, k: int) -> "RationalFunction":
        if k >= 0:
            return RationalFunction(self.num ** k, self.den ** k, _reduced=True)
        if self.is_zero():
            raise ZeroDivisionError("negative power of the zero function")
        return RationalFunction(self.den ** -k, self.num ** -k)

    # evaluation -----------------------------------------------------------

    def __call__(self, x: Number) -> Fraction:
        return self.eval_at(x)

    def eval_at(self, x: Number) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def is_pole(self, x: Number) -> bool:
        return self.den(x) == 0

    def integer_form(self) -> tuple[list[int], list[int], int]:
        """(num_ints, den_ints, sign) with self = sign*c*num_ints/den_ints, c > 0."""
        if self._ints is None:
            ni, ns = self.num.content_integer()
            di, ds = self.den.content_integer()
            scale = ns / ds
            self._ints = (ni, di, _sign(scale) or 1)
            self._scale_pair = (scale.numerator, scale.denominator)
        return self._ints

    @property
    def _scale(self) -> tuple[int, int]:
        self.integer_form()
        return self._scale_pair

    def sign_at(self, k: int) -> int | None:
        """Exact sign of f(k) at an integer; ``None`` at a pole."""
        ni, di, s = self.integer_form()
        d = int_horner(di, k)
        if d == 0:
            return None
        return s * _sign(int_horner(ni, k)) * _sign(d)

    def value_pair(self, k: int) -> tuple[int, int]:
        """Integers (p, q), q > 0, not necessarily coprime, with f(k) = p/q."""
        ni, di, _ = self.integer_form()
        ns, ds = self._scale
        p = ns * int_horner(ni, k)
        q = ds * int_horner(di, k)
        if q == 0:
            raise ZeroDivisionError(f"pole at {k}")
        return (p, q) if q > 0 else (-p, -q)

    def shift(self, k: Number) -> "RationalFunction":
        """f(n + k)."""
        return RationalFunction(self.num.shift(k), self.den.shift(k))

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def leading(self) -> tuple[int, Fraction]:
        """(deg num - deg den, ratio of leading coefficients)."""
        if self.is_zero():
            return (0, Fraction(0))
        return self.num.degree - self.den.degree, self.num.lead / self.den.lead

    def limit(self) -> Fraction:
        """Limit as n -> +oo; raises if infinite."""
        d, c = self.leading()
        if d > 0:
            raise ValueError(f"{self} has no finite limit")
        return c if d == 0 else Fraction(0)


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x, _reduced=True)
    if isinstance(x, (int, Fraction)):
        return RationalFunction.const(x)
    return NotImplemented


def derivative(p):
    """Formal derivative of a Poly or RationalFunction."""
    return p.derivative()


def eventual_sign(f: RationalFunction) -> int:
    """Sign of f(n) as n -> +oo: 1, -1, or 0 for the zero function."""
    if isinstance(f, Poly):
        return _sign(f.lead)
    return _sign(f.leading()[1])


# root bounding -------------------------------------------------------------


def _iroot(c: int, k: int) -> int:
    """floor(c ** (1/k)) for c >= 0, by integer Newton iteration."""
    if c < 2:
        return c
    if k == 2:
        return isqrt(c)
    r = 1 << (c.bit_length() // k + 1)
    while True:
        s = ((k - 1) * r + c // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > c:
        r -= 1
    while (r + 1) ** k <= c:
        r += 1
    return r


def _ceil_root(q: Fraction, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= q (q >= 0)."""
    c = -((-q.numerator) // q.denominator)
    r = _iroot(c, k)
    return r if r ** k >= q else r + 1


def root_bound(p: Poly) -> int:
    """Integer B with every real root of p strictly less than B in absolute value.

    The minimum of the Cauchy bound and Fujiwara's bound, both evaluated with
    exact rounding upwards.
    """
    d = p.degree
    if d <= 0:
        return 0
    lead = abs(p.lead)
    ratios = [abs(c) / lead for c in p.coeffs[:-1]]
    cauchy = 1 + max(ratios)
    cauchy_int = -((-cauchy.numerator) // cauchy.denominator) + 1
    fuj = 0
    for i in range(1, d + 1):
        q = ratios[d - i]
        if i == d:
            q = q / 2
        if q:
            fuj = max(fuj, _ceil_root(q, i))
    fuj_int = 2 * fuj + 1
    return min(cauchy_int, fuj_int)


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return chain


def _variations(chain: Sequence[Poly], x: Number) -> int:
    signs = [_sign(q(x)) for q in chain]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_inf(chain: Sequence[Poly]) -> int:
    signs = [_sign(q.lead) for q in chain if q]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count_above(p: Poly, x: Number) -> int:
    """Number of distinct real roots of p in (x, +oo); requires p(x) != 0."""
    if p.degree <= 0:
        return 0
    sq = p // poly_gcd(p, p.derivative())
    chain = _sturm_chain(sq)
    return _variations(chain, x) - _variations_inf(chain)


def _clear_point(p: Poly, lo: int, hi: int) -> int:
    """Least integer t in [lo, hi] with p(t) != 0 and no real root of p above t.

    ``hi`` must already satisfy the property.
    """
    if p.degree <= 0:
        return lo
    sq = p // poly_gcd(p, p.derivative())
    chain = _sturm_chain(sq)
    vinf = _variations_inf(chain)

    def ok(t: int) -> bool:
        return sq(t) != 0 and _variations(chain, t) - vinf == 0

    if ok(lo):
        return lo
    a, b = lo, hi  # ok(b), not ok(a)
    while b - a > 1:
        m = (a + b) // 2
        if ok(m):
            b = m
        else:
            a = m
    return b


_SCAN_LIMIT = 10_000


def hold_point(f: RationalFunction, n_min: int = 0):
    """Least integer N >= n_min such that f is defined and f(n) > 0 for all n >= N.

    Returns :data:`NEVER` (``None``) when f is not eventually positive.  All
    real roots of the numerator and denominator lie below an exact integer
    bound; above it the sign is the eventual sign, and the integers between
    ``n_min`` and the bound are checked one by one.
    """
    if isinstance(f, Poly):
        f = RationalFunction(f)
    if eventual_sign(f) <= 0:
        return NEVER
    prod = f.num * f.den
    top = max(n_min, root_bound(prod) + 1)
    if top - n_min > _SCAN_LIMIT:
        # huge coefficient bound: shrink it with a Sturm sequence first
        top = max(n_min, _clear_point(prod, n_min, top))
    N = top
    while N - 1 >= n_min:
        s = f.sign_at(N - 1)
        if s is None or s <= 0:
            break
        N -= 1
    return N

"""Pure-Python exact kernels.

Reference implementation of the hot loops; ``_kernels.pyx`` mirrors every
function here with GMP arithmetic.  All inputs and outputs are Python ints.

Conventions shared by both implementations:

* a recurrence step is ``a[k+d] = sum_i P_i(k) * a[k+d-i] / Q(k)`` with
  integer coefficient lists ``P_i`` and ``Q`` (lowest degree first);
* terms travel as reduced pairs ``(num, den)`` with ``den > 0``;
* ratios ``b[j] = a[j+1] / a[j]`` travel as reduced pairs ``(x, y)``,
  ``y > 0``; the scans additionally require every ``x > 0``.
"""

from math import gcd

IMPLEMENTATION = "python"


def _horner(coeffs, k):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * k + c
    return acc


def _sign(v):
    return (v > 0) - (v < 0)


def extend_terms(polys, qpoly, k, nums, dens, count):
    """Produce ``count`` new terms starting with ``a[k+d]``.

    ``nums``/``dens`` hold the ``d`` preceding terms, oldest first.
    Raises ZeroDivisionError with the offending ``k`` on a pole.
    """
    d = len(polys)
    win_n = list(nums[-d:])
    win_d = list(dens[-d:])
    out_n = []
    out_d = []
    for step in range(count):
        q = _horner(qpoly, k)
        if q == 0:
            raise ZeroDivisionError(k)
        # common denominator of the window
        L = 1
        for den in win_d:
            L = L // gcd(L, den) * den
        acc = 0
        for i in range(d):
            c = _horner(polys[i], k)
            if c:
                j = d - 1 - i
                acc += c * win_n[j] * (L // win_d[j])
        den = q * L
        if den < 0:
            acc, den = -acc, -den
        g = gcd(acc, den)
        if g != 1:
            acc //= g
            den //= g
        out_n.append(acc)
        out_d.append(den)
        win_n.pop(0)
        win_d.pop(0)
        win_n.append(acc)
        win_d.append(den)
        k += 1
    return out_n, out_d


def ratio_pairs(nums, dens):
    """Reduced ratios of consecutive terms; ZeroDivisionError(j) if a[j] == 0."""
    xs = []
    ys = []
    for j in range(len(nums) - 1):
        p0, q0, p1, q1 = nums[j], dens[j], nums[j + 1], dens[j + 1]
        if p0 == 0:
            raise ZeroDivisionError(j)
        g1 = gcd(p1, p0)
        g2 = gcd(q0, q1)
        x = (p1 // g1) * (q0 // g2)
        y = (q1 // g2) * (p0 // g1)
        if y < 0:
            x, y = -x, -y
        xs.append(x)
        ys.append(y)
    return xs, ys


def scan_logmono3(xs, ys, lo, hi):
    """Signs of (u_i - 1, u_i - u_{i+1}, u_{i-1}u_{i+1} - u_i^2) for lo <= i <= hi.

    Here ``u_i = b_i / b_{i-1}``; ``lo >= 2`` and ``hi <= len(xs) - 2``.
    """
    out = []
    for i in range(lo, hi + 1):
        xm2, xm1, x0, x1 = xs[i - 2], xs[i - 1], xs[i], xs[i + 1]
        ym2, ym1, y0, y1 = ys[i - 2], ys[i - 1], ys[i], ys[i + 1]
        s1 = _sign(x0 * ym1 - xm1 * y0)
        s2 = _sign(x0 * x0 * ym1 * y1 - xm1 * x1 * y0 * y0)
        s3 = _sign(xm1 ** 3 * x1 * y0 ** 3 * ym2 - x0 ** 3 * xm2 * ym1 ** 3 * y1)
        out.append((s1, s2, s3))
    return out


def scan_laguerre2(xs, ys, lo, hi):
    """Signs of 3 b_i b_{i+1} - 4 b_i b_{i+2} + b_{i+2} b_{i+3} for lo <= i <= hi.

    For positive terms this is the sign of 3a_{i+2}^2 - 4a_{i+1}a_{i+3} + a_i a_{i+4}.
    """
    out = []
    for i in range(lo, hi + 1):
        x0, x1, x2, x3 = xs[i], xs[i + 1], xs[i + 2], xs[i + 3]
        y0, y1, y2, y3 = ys[i], ys[i + 1], ys[i + 2], ys[i + 3]
        v = 3 * x0 * x1 * y2 * y3 - 4 * x0 * x2 * y1 * y3 + x2 * x3 * y0 * y1
        out.append(_sign(v))
    return out


def scan_u_bounds(xs, ys, lo, hi, gn, gd, fn, fd):
    """Signs of (u_i - g_i, f_i - u_i) for lo <= i <= hi; g_i = gn/gd, gd > 0."""
    out = []
    for t, i in enumerate(range(lo, hi + 1)):
        un = xs[i] * ys[i - 1]
        ud = ys[i] * xs[i - 1]
        out.append((_sign(un * gd[t] - gn[t] * ud), _sign(fn[t] * ud - un * fd[t])))
    return out

# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed twin of ``_kernels_py``; same functions, same contracts."""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport malloc, free

IMPLEMENTATION = "gmp"


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct *mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_sub(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_mul_si(mpz_ptr, mpz_ptr, long)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_neg(mpz_ptr, mpz_ptr)
    void mpz_gcd(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_lcm(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_pow_ui(mpz_ptr, mpz_ptr, unsigned long)
    int mpz_sgn(mpz_ptr)
    int mpz_cmp_ui(mpz_ptr, unsigned long)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_import(mpz_ptr, size_t, int, size_t, int, size_t, const void *)
    void *mpz_export(void *, size_t *, int, size_t, int, size_t, mpz_ptr)


cdef void _load(mpz_ptr z, object v):
    cdef bint neg = v < 0
    if neg:
        v = -v
    cdef bytes raw = (<object>v).to_bytes(((<object>v).bit_length() + 7) // 8 or 1, "little")
    mpz_import(z, len(raw), -1, 1, 0, 0, <const char *>raw)
    if neg:
        mpz_neg(z, z)


cdef object _store(mpz_ptr z):
    cdef int s = mpz_sgn(z)
    if s == 0:
        return 0
    cdef size_t n = (mpz_sizeinbase(z, 2) + 7) // 8
    cdef size_t written = 0
    cdef char *buf = <char *>malloc(n)
    try:
        mpz_export(buf, &written, -1, 1, 0, 0, z)
        out = int.from_bytes(PyBytes_FromStringAndSize(buf, written), "little")
    finally:
        free(buf)
    return -out if s < 0 else out


cdef class _Vec:
    """Owned array of mpz_t loaded from a Python list of ints."""
    cdef mpz_t *v
    cdef Py_ssize_t n

    def __cinit__(self, Py_ssize_t n):
        self.n = n
        self.v = <mpz_t *>malloc(max(n, 1) * sizeof(mpz_t))
        cdef Py_ssize_t i
        for i in range(n):
            mpz_init(self.v[i])

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.v != NULL:
            for i in range(self.n):
                mpz_clear(self.v[i])
            free(self.v)

    @staticmethod
    cdef _Vec load(list values):
        cdef _Vec out = _Vec(len(values))
        cdef Py_ssize_t i
        for i in range(len(values)):
            _load(out.v[i], values[i])
        return out


cdef void _horner(mpz_ptr out, _Vec coeffs, mpz_ptr k):
    cdef Py_ssize_t i
    mpz_set_si(out, 0)
    for i in range(coeffs.n - 1, -1, -1):
        mpz_mul(out, out, k)
        mpz_add(out, out, coeffs.v[i])


def extend_terms(list polys, list qpoly, k, list nums, list dens, Py_ssize_t count):
    cdef Py_ssize_t d = len(polys)
    cdef Py_ssize_t step, i, j
    cdef list pv = [_Vec.load(list(p)) for p in polys]
    cdef _Vec qv = _Vec.load(list(qpoly))
    cdef _Vec wn = _Vec.load(list(nums[-d:]))
    cdef _Vec wd = _Vec.load(list(dens[-d:]))
    cdef _Vec tmp = _Vec(6)  # kk, q, L, acc, c, t
    cdef list out_n = []
    cdef list out_d = []
    cdef Py_ssize_t head = 0  # ring buffer start (oldest term)
    _load(tmp.v[0], k)
    for step in range(count):
        _horner(tmp.v[1], qv, tmp.v[0])
        if mpz_sgn(tmp.v[1]) == 0:
            raise ZeroDivisionError(k + step)
        mpz_set_si(tmp.v[2], 1)
        for j in range(d):
            mpz_lcm(tmp.v[2], tmp.v[2], wd.v[j])
        mpz_set_si(tmp.v[3], 0)
        for i in range(d):
            _horner(tmp.v[4], <_Vec>pv[i], tmp.v[0])
            if mpz_sgn(tmp.v[4]) == 0:
                continue
            j = (head + d - 1 - i) % d
            mpz_divexact(tmp.v[5], tmp.v[2], wd.v[j])
            mpz_mul(tmp.v[5], tmp.v[5], wn.v[j])
            mpz_addmul(tmp.v[3], tmp.v[4], tmp.v[5])
        mpz_mul(tmp.v[1], tmp.v[1], tmp.v[2])  # den = q * L
        if mpz_sgn(tmp.v[1]) < 0:
            mpz_neg(tmp.v[1], tmp.v[1])
            mpz_neg(tmp.v[3], tmp.v[3])
        mpz_gcd(tmp.v[5], tmp.v[3], tmp.v[1])
        if mpz_cmp_ui(tmp.v[5], 1) > 0:
            mpz_divexact(tmp.v[3], tmp.v[3], tmp.v[5])
            mpz_divexact(tmp.v[1], tmp.v[1], tmp.v[5])
        out_n.append(_store(tmp.v[3]))
        out_d.append(_store(tmp.v[1]))
        # overwrite the oldest slot
        mpz_set(wn.v[head], tmp.v[3])
        mpz_set(wd.v[head], tmp.v[1])
        head = (head + 1) % d
        mpz_set_si(tmp.v[4], 1)
        mpz_add(tmp.v[0], tmp.v[0], tmp.v[4])
    return out_n, out_d


def ratio_pairs(list nums, list dens):
    cdef Py_ssize_t m = len(nums)
    cdef Py_ssize_t j
    cdef list xs = []
    cdef list ys = []
    if m < 2:
        return xs, ys
    cdef _Vec pn = _Vec.load(nums)
    cdef _Vec pd = _Vec.load(dens)
    cdef _Vec t = _Vec(4)
    for j in range(m - 1):
        if mpz_sgn(pn.v[j]) == 0:
            raise ZeroDivisionError(j)
        mpz_gcd(t.v[0], pn.v[j + 1], pn.v[j])
        mpz_gcd(t.v[1], pd.v[j], pd.v[j + 1])
        mpz_divexact(t.v[2], pn.v[j + 1], t.v[0])
        mpz_divexact(t.v[3], pd.v[j], t.v[1])
        mpz_mul(t.v[2], t.v[2], t.v[3])  # x
        mpz_divexact(t.v[3], pd.v[j + 1], t.v[1])
        mpz_divexact(t.v[0], pn.v[j], t.v[0])
        mpz_mul(t.v[3], t.v[3], t.v[0])  # y
        if mpz_sgn(t.v[3]) < 0:
            mpz_neg(t.v[2], t.v[2])
            mpz_neg(t.v[3], t.v[3])
        xs.append(_store(t.v[2]))
        ys.append(_store(t.v[3]))
    return xs, ys


cdef inline int _sgn(mpz_ptr z):
    cdef int s = mpz_sgn(z)
    return (s > 0) - (s < 0)


def scan_logmono3(list xs, list ys, Py_ssize_t lo, Py_ssize_t hi):
    cdef _Vec X = _Vec.load(xs[lo - 2:hi + 2])
    cdef _Vec Y = _Vec.load(ys[lo - 2:hi + 2])
    cdef _Vec t = _Vec(3)
    cdef Py_ssize_t i, r
    cdef int s1, s2, s3
    cdef list out = []
    for i in range(lo, hi + 1):
        r = i - lo + 2
        # s1: x0*ym1 - xm1*y0
        mpz_mul(t.v[0], X.v[r], Y.v[r - 1])
        mpz_submul(t.v[0], X.v[r - 1], Y.v[r])
        s1 = _sgn(t.v[0])
        # s2: x0^2*ym1*y1 - xm1*x1*y0^2
        mpz_mul(t.v[0], X.v[r], X.v[r])
        mpz_mul(t.v[0], t.v[0], Y.v[r - 1])
        mpz_mul(t.v[0], t.v[0], Y.v[r + 1])
        mpz_mul(t.v[1], Y.v[r], Y.v[r])
        mpz_mul(t.v[1], t.v[1], X.v[r - 1])
        mpz_mul(t.v[1], t.v[1], X.v[r + 1])
        mpz_sub(t.v[0], t.v[0], t.v[1])
        s2 = _sgn(t.v[0])
        # s3: xm1^3*x1*y0^3*ym2 - x0^3*xm2*ym1^3*y1
        mpz_mul(t.v[2], X.v[r - 1], Y.v[r])
        mpz_pow_ui(t.v[0], t.v[2], 3)
        mpz_mul(t.v[0], t.v[0], X.v[r + 1])
        mpz_mul(t.v[0], t.v[0], Y.v[r - 2])
        mpz_mul(t.v[2], X.v[r], Y.v[r - 1])
        mpz_pow_ui(t.v[1], t.v[2], 3)
        mpz_mul(t.v[1], t.v[1], X.v[r - 2])
        mpz_mul(t.v[1], t.v[1], Y.v[r + 1])
        mpz_sub(t.v[0], t.v[0], t.v[1])
        s3 = _sgn(t.v[0])
        out.append((s1, s2, s3))
    return out


def scan_laguerre2(list xs, list ys, Py_ssize_t lo, Py_ssize_t hi):
    cdef _Vec X = _Vec.load(xs[lo:hi + 4])
    cdef _Vec Y = _Vec.load(ys[lo:hi + 4])
    cdef _Vec t = _Vec(3)
    cdef Py_ssize_t i, r
    cdef list out = []
    for i in range(lo, hi + 1):
        r = i - lo
        # 3*x0*x1*y2*y3
        mpz_mul(t.v[0], X.v[r], X.v[r + 1])
        mpz_mul(t.v[0], t.v[0], Y.v[r + 2])
        mpz_mul(t.v[0], t.v[0], Y.v[r + 3])
        mpz_mul_si(t.v[0], t.v[0], 3)
        # -4*x0*x2*y1*y3
        mpz_mul(t.v[1], X.v[r], X.v[r + 2])
        mpz_mul(t.v[1], t.v[1], Y.v[r + 1])
        mpz_mul(t.v[1], t.v[1], Y.v[r + 3])
        mpz_mul_si(t.v[1], t.v[1], 4)
        mpz_sub(t.v[0], t.v[0], t.v[1])
        # + x2*x3*y0*y1
        mpz_mul(t.v[2], X.v[r + 2], X.v[r + 3])
        mpz_mul(t.v[2], t.v[2], Y.v[r])
        mpz_mul(t.v[2], t.v[2], Y.v[r + 1])
        mpz_add(t.v[0], t.v[0], t.v[2])
        out.append(_sgn(t.v[0]))
    return out


def scan_u_bounds(list xs, list ys, Py_ssize_t lo, Py_ssize_t hi, list gn, list gd, list fn, list fd):
    cdef _Vec X = _Vec.load(xs[lo - 1:hi + 1])
    cdef _Vec Y = _Vec.load(ys[lo - 1:hi + 1])
    cdef _Vec t = _Vec(5)
    cdef Py_ssize_t i, r
    cdef int a, b
    cdef list out = []
    for i in range(lo, hi + 1):
        r = i - lo + 1
        mpz_mul(t.v[0], X.v[r], Y.v[r - 1])  # un
        mpz_mul(t.v[1], Y.v[r], X.v[r - 1])  # ud
        _load(t.v[2], gn[i - lo])
        _load(t.v[3], gd[i - lo])
        mpz_mul(t.v[4], t.v[0], t.v[3])
        mpz_submul(t.v[4], t.v[2], t.v[1])
        a = _sgn(t.v[4])
        _load(t.v[2], fn[i - lo])
        _load(t.v[3], fd[i - lo])
        mpz_mul(t.v[4], t.v[2], t.v[1])
        mpz_submul(t.v[4], t.v[0], t.v[3])
        b = _sgn(t.v[4])
        out.append((a, b))
    return out

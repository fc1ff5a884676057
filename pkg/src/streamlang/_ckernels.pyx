# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_pykernels`` symbol for symbol."""

cdef extern from *:
    """
    typedef unsigned __int128 sl_u128;
    static inline unsigned long long sl_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long m) {
        return (unsigned long long)(((sl_u128)a * b) % m);
    }
    """
    unsigned long long sl_mulmod(unsigned long long a, unsigned long long b,
                                 unsigned long long m) nogil

RUNNING = 0
ACCEPTED = 1
REJECTED = 2

R_NONE = 0
R_NO_RULE = 1
R_EPSILON_MISSING = 2
R_LEFTOVER = 3
R_PENDING = 4
R_UNKNOWN_SYMBOL = 5
R_UNDERFLOW = 6
R_VERTEX_RANGE = 7
R_MALFORMED = 8
R_NONZERO = 9

NO_RULE = -2
NO_NT = -1

ctypedef unsigned long long u64
ctypedef long long i64


cdef inline u64 addmod(u64 a, u64 b, u64 m) nogil:
    # a, b < m < 2**63, so a + b cannot wrap
    cdef u64 s = a + b
    return s - m if s >= m else s


cdef inline u64 submod(u64 a, u64 b, u64 m) nogil:
    return a - b if a >= b else a + (m - b)


cdef u64 powmod(u64 base, u64 exp, u64 m) nogil:
    cdef u64 result = 1 % m
    base %= m
    while exp:
        if exp & 1:
            result = sl_mulmod(result, base, m)
        base = sl_mulmod(base, base, m)
        exp >>= 1
    return result


def is_prime(i64 n):
    cdef i64 d
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d <= n // d:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def fp_eval(codes, i64 offset, i64 alpha, i64 p):
    cdef u64 acc = 0
    cdef u64 x = powmod(alpha, offset, p)
    cdef i64 c
    for c in codes:
        acc = addmod(acc, sl_mulmod(<u64>c % <u64>p, x, p), p)
        x = sl_mulmod(x, alpha, p)
    return acc


cdef class DlinKernel:
    cdef readonly i64 n, m, p, alpha, alpha_inv
    cdef readonly i64 value, h, power, nt, consumed
    cdef readonly int status, reason
    cdef i64[:] next_nt
    cdef i64[:] seg_fp
    cdef i64[:] seg_len
    cdef i64[:] seg_pow
    cdef i64[:] has_eps

    def __init__(self, i64 n, i64 m, i64 p, i64 alpha, i64 alpha_inv, i64 start,
                 next_nt, seg_fp, seg_len, seg_pow, has_eps):
        from array import array
        self.n = n
        self.m = m
        self.p = p
        self.alpha = alpha
        self.alpha_inv = alpha_inv
        self.next_nt = array("q", next_nt)
        self.seg_fp = array("q", seg_fp)
        self.seg_len = array("q", seg_len)
        self.seg_pow = array("q", seg_pow)
        self.has_eps = array("q", has_eps)
        self.value = 0
        self.h = 0
        self.power = 1
        self.nt = start
        self.consumed = 0
        self.status = RUNNING
        self.reason = R_NONE

    cdef bint _reject(self, int reason):
        self.status = REJECTED
        self.reason = reason
        return False

    def feed(self, const i64[:] codes):
        if self.status != RUNNING:
            return False
        cdef Py_ssize_t k
        cdef i64 code, idx, nxt
        cdef u64 p = self.p
        cdef u64 value = self.value
        cdef u64 power = self.power
        cdef i64 h = self.h
        cdef i64 nt = self.nt
        cdef i64 consumed = self.consumed
        cdef i64 n = self.n
        cdef i64 m = self.m
        cdef bint ok = True
        for k in range(codes.shape[0]):
            code = codes[k]
            if code < 1 or code > m:
                ok = self._reject(R_UNKNOWN_SYMBOL)
                break
            if nt >= 0 and h + consumed == n:
                if not self.has_eps[nt]:
                    ok = self._reject(R_EPSILON_MISSING)
                    break
                nt = NO_NT
            if nt >= 0:
                idx = nt * (m + 1) + code
                nxt = self.next_nt[idx]
                if nxt == NO_RULE:
                    ok = self._reject(R_NO_RULE)
                    break
                value = addmod(value, sl_mulmod(power, self.seg_fp[idx], p), p)
                power = sl_mulmod(power, self.seg_pow[idx], p)
                h += self.seg_len[idx]
                nt = nxt
            else:
                if h == 0:
                    ok = self._reject(R_UNDERFLOW)
                    break
                power = sl_mulmod(power, self.alpha_inv, p)
                value = submod(value, sl_mulmod(code, power, p), p)
                h -= 1
            consumed += 1
        self.value = value
        self.power = power
        self.h = h
        self.nt = nt
        self.consumed = consumed
        return ok

    def finish(self):
        if self.status != RUNNING:
            return self.status
        if self.consumed != self.n:
            self._reject(R_LEFTOVER)
            return self.status
        if self.nt >= 0:
            if not self.has_eps[self.nt]:
                self._reject(R_PENDING)
                return self.status
            self.nt = NO_NT
        if self.value == 0 and self.h == 0:
            self.status = ACCEPTED
        else:
            self._reject(R_LEFTOVER)
        return self.status


cdef class DegSeqKernel:
    cdef readonly i64 n, p, alpha, total, power, seen
    cdef readonly int status, reason

    def __init__(self, i64 n, i64 p, i64 alpha):
        self.n = n
        self.p = p
        self.alpha = alpha
        self.total = 0
        self.power = 1
        self.seen = 0
        self.status = RUNNING
        self.reason = R_NONE

    cdef bint _reject(self, int reason):
        self.status = REJECTED
        self.reason = reason
        return False

    def feed_degrees(self, const i64[:] degrees):
        if self.status != RUNNING:
            return False
        cdef Py_ssize_t k, count = degrees.shape[0]
        if self.seen + count > self.n:
            return self._reject(R_MALFORMED)
        cdef u64 p = self.p
        cdef u64 alpha = self.alpha
        cdef u64 total = self.total
        cdef u64 power = self.power
        cdef i64 d
        for k in range(count):
            d = degrees[k]
            if d < 0:
                return self._reject(R_MALFORMED)
            power = sl_mulmod(power, alpha, p)
            total = addmod(total, sl_mulmod(<u64>d % p, power, p), p)
        self.total = total
        self.power = power
        self.seen += count
        return True

    def feed_sources(self, const i64[:] sources):
        if self.status != RUNNING:
            return False
        if self.seen != self.n:
            return self._reject(R_MALFORMED)
        cdef Py_ssize_t k
        cdef i64 u, n = self.n
        cdef u64 p = self.p
        cdef u64 alpha = self.alpha
        cdef u64 total = self.total
        for k in range(sources.shape[0]):
            u = sources[k]
            if u < 1 or u > n:
                self.total = total
                return self._reject(R_VERTEX_RANGE)
            total = submod(total, powmod(alpha, u, p), p)
        self.total = total
        return True

    def finish(self):
        if self.status != RUNNING:
            return self.status
        if self.seen != self.n:
            self._reject(R_MALFORMED)
        elif self.total == 0:
            self.status = ACCEPTED
        else:
            self._reject(R_NONZERO)
        return self.status


def window_subtract(i64[:] residual, i64 lo, i64 n, const i64[:] sources):
    cdef Py_ssize_t k
    cdef i64 u
    cdef i64 hi = lo + residual.shape[0]
    for k in range(sources.shape[0]):
        u = sources[k]
        if u < 1 or u > n:
            return k
        if lo < u <= hi:
            residual[u - lo - 1] -= 1
    return -1

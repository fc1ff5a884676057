"""Pure-Python kernels. Same surface as the compiled ``_ckernels`` module."""

RUNNING = 0
ACCEPTED = 1
REJECTED = 2

# reject reasons shared with the compiled twin
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


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def fp_eval(codes, offset, alpha, p):
    acc = 0
    x = pow(alpha, offset, p)
    for c in codes:
        acc = (acc + c * x) % p
        x = x * alpha % p
    return acc


class DlinKernel:
    """Compressed-stack simulation of the canonical PDA for a DL-CFG.

    Rule tables are flat, indexed by ``nt * (m + 1) + code``; ``next_nt`` holds
    ``NO_RULE``, ``NO_NT`` (body has no nonterminal) or the next nonterminal.
    ``seg_fp`` is the pushed segment's fingerprint at offset 0 and ``seg_pow``
    is ``alpha ** seg_len``.
    """

    def __init__(self, n, m, p, alpha, alpha_inv, start,
                 next_nt, seg_fp, seg_len, seg_pow, has_eps):
        self.n = n
        self.m = m
        self.p = p
        self.alpha = alpha
        self.alpha_inv = alpha_inv
        self.next_nt = list(next_nt)
        self.seg_fp = list(seg_fp)
        self.seg_len = list(seg_len)
        self.seg_pow = list(seg_pow)
        self.has_eps = list(has_eps)
        self.value = 0
        self.h = 0
        self.power = 1
        self.nt = start
        self.consumed = 0
        self.status = RUNNING
        self.reason = R_NONE

    def _reject(self, reason):
        self.status = REJECTED
        self.reason = reason
        return False

    def feed(self, codes):
        if self.status != RUNNING:
            return False
        n, m, p = self.n, self.m, self.p
        value, h, power, nt, consumed = self.value, self.h, self.power, self.nt, self.consumed
        ok = True
        for code in codes:
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
                value = (value + power * self.seg_fp[idx]) % p
                power = power * self.seg_pow[idx] % p
                h += self.seg_len[idx]
                nt = nxt
            else:
                if h == 0:
                    ok = self._reject(R_UNDERFLOW)
                    break
                power = power * self.alpha_inv % p
                value = (value - code * power) % p
                h -= 1
            consumed += 1
        self.value, self.h, self.power, self.nt, self.consumed = value, h, power, nt, consumed
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


class DegSeqKernel:
    """Running evaluation of sum(d_i x^i) - sum(x^{u_j}) at a fixed point."""

    def __init__(self, n, p, alpha):
        self.n = n
        self.p = p
        self.alpha = alpha
        self.total = 0
        self.power = 1
        self.seen = 0
        self.status = RUNNING
        self.reason = R_NONE

    def _reject(self, reason):
        self.status = REJECTED
        self.reason = reason
        return False

    def feed_degrees(self, degrees):
        if self.status != RUNNING:
            return False
        if self.seen + len(degrees) > self.n:
            return self._reject(R_MALFORMED)
        p, alpha = self.p, self.alpha
        total, power = self.total, self.power
        for d in degrees:
            if d < 0:
                return self._reject(R_MALFORMED)
            power = power * alpha % p
            total = (total + d * power) % p
        self.total, self.power = total, power
        self.seen += len(degrees)
        return True

    def feed_sources(self, sources):
        if self.status != RUNNING:
            return False
        if self.seen != self.n:
            return self._reject(R_MALFORMED)
        n, p, alpha = self.n, self.p, self.alpha
        total = self.total
        for u in sources:
            if u < 1 or u > n:
                self.total = total
                return self._reject(R_VERTEX_RANGE)
            total = (total - pow(alpha, u, p)) % p
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


def window_subtract(residual, lo, n, sources):
    """Decrement ``residual[u - lo - 1]`` for each source inside the window.

    Returns the index of the first out-of-range vertex, or -1.
    """
    hi = lo + len(residual)
    for k, u in enumerate(sources):
        if u < 1 or u > n:
            return k
        if lo < u <= hi:
            residual[u - lo - 1] -= 1
    return -1

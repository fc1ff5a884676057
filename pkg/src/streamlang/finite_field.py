"""Prime search and arithmetic over F_p."""

from __future__ import annotations

import random
from dataclasses import dataclass

from streamlang import kernels

# Field elements are kept below 2**63 so the compiled kernels can hold them
# in a signed 64-bit word and multiply through a 128-bit intermediate.
MAX_MODULUS = (1 << 63) - 1


class NoPrimeInRange(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class FieldTooLarge(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n > MAX_MODULUS:
        raise FieldTooLarge(f"{n} does not fit a field word")
    return kernels.is_prime(n)


def find_prime(lo: int, hi: int) -> int:
    """Smallest prime in ``[lo, hi]`` by trial division."""
    if lo < 2 or lo > hi:
        raise ValueError(f"need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi > MAX_MODULUS:
        raise FieldTooLarge(f"upper bound {hi} exceeds {MAX_MODULUS}")
    if lo == 2:
        return 2
    candidate = lo | 1
    while candidate <= hi:
        if kernels.is_prime(candidate):
            return candidate
        candidate += 2
    raise NoPrimeInRange(f"no prime in [{lo}, {hi}]")


def default_prime(n: int) -> int:
    """Prime in ``[n^2, 2n^2]`` (n clamped to 2 so tiny inputs still get a field)."""
    m = max(n, 2)
    return find_prime(m * m, 2 * m * m)


def mod_pow(base: int, exp: int, p: int) -> int:
    if exp < 0:
        raise ValueError("negative exponent")
    result = 1 % p
    base %= p
    while exp:
        if exp & 1:
            result = result * base % p
        base = base * base % p
        exp >>= 1
    return result


def mod_inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise NotInvertible(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def sample_point(p: int, seed: int | None = None) -> int:
    """Draw a nonzero evaluation point uniformly from ``[1, p-1]``."""
    if p < 3:
        raise ValueError("need p >= 3 to sample a nonzero point")
    return random.Random(seed).randint(1, p - 1)


def all_points(p: int) -> range:
    return range(1, p)


@dataclass(frozen=True)
class FieldContext:
    """Modulus plus evaluation point, with the point's inverse precomputed."""

    p: int
    alpha: int
    alpha_inv: int

    def __post_init__(self):
        if self.p > MAX_MODULUS:
            raise FieldTooLarge(f"modulus {self.p} exceeds {MAX_MODULUS}")
        if not 1 <= self.alpha < self.p:
            raise ValueError(f"alpha={self.alpha} not in [1, {self.p - 1}]")
        if self.alpha * self.alpha_inv % self.p != 1:
            raise ValueError("alpha_inv is not the inverse of alpha")

    @classmethod
    def create(cls, p: int, alpha: int) -> FieldContext:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p, alpha, mod_inv(alpha, p))

    @classmethod
    def for_length(
        cls,
        n: int,
        seed: int | None = None,
        prime: int | None = None,
        alpha: int | None = None,
    ) -> FieldContext:
        """Field for an input of length ``n``; p defaults to a prime in [n^2, 2n^2]."""
        p = default_prime(n) if prime is None else prime
        if alpha is None:
            alpha = sample_point(p, seed)
        return cls.create(p, alpha)

    def error_bound(self, degree: int) -> float:
        """Schwartz-Zippel false-accept bound over nonzero points."""
        return degree / (self.p - 1)

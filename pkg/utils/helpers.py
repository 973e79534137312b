from functools import lru_cache
from typing import List, Tuple

from sympy import isprime, primefactors, primerange

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from utils.error_handler import ValidationError

# Moduli must fit a machine word
MAX_MODULUS = 2**64


def is_prime(n: int) -> bool:
    """Deterministic primality for the sizes handled here"""
    return n >= 2 and bool(isprime(n))


def require_odd_prime(p: int, minimum: int = 3, what: str = "p") -> int:
    """Validate that p is an odd prime >= minimum below the modulus cap"""
    if not isinstance(p, int) or isinstance(p, bool):
        raise ValidationError(f"{what} must be an integer, got {p!r}")
    if p < minimum or p % 2 == 0 or not is_prime(p):
        raise ValidationError(f"{what}={p} must be an odd prime >= {minimum}")
    if p >= MAX_MODULUS:
        raise ValidationError(f"{what}={p} exceeds the 64-bit modulus cap")
    return p


@lru_cache(maxsize=16384)
def prime_divisors(n: int) -> Tuple[int, ...]:
    """Distinct primes dividing n, ascending"""
    if n == 0:
        raise ValidationError("0 has no finite set of prime divisors")
    return tuple(int(q) for q in primefactors(abs(n)))


def odd_prime_divisors(n: int) -> Tuple[int, ...]:
    return tuple(ell for ell in prime_divisors(n) if ell != 2)


def primes_between(low: int, high: int) -> List[int]:
    """Primes p with low < p <= high"""
    return [int(q) for q in primerange(low + 1, high + 1)]


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0"""
    x, y, g = igcdex(a, b)
    return int(g), int(x), int(y)


def solve_linear_congruence(a: int, b: int, m: int) -> Tuple[int, int]:
    """Solve a*x = b (mod m); the solutions are u + v*n for integer n"""
    g, d, _ = ext_gcd(a, m)
    if b % g:
        raise ValidationError(f"{a}*x = {b} (mod {m}) has no solution")
    u = (b // g) * d % m
    v = m // g
    return u, v

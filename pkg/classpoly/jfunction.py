"""
High-precision evaluation of the modular j-function at CM points

j(tau) = E4(q)^3 / Delta(q) with q = exp(2*pi*i*tau), Delta = eta^24 and
eta(tau) = q^(1/24) * prod(1 - q^n). For reduced forms |q| <= exp(-pi*sqrt(3)),
so both series converge after roughly prec/7.8 terms.
"""
from dataclasses import dataclass

import mpmath

from classgroup.forms import QuadForm
from utils.error_handler import PrecisionError

MIN_PRECISION = 64
GUARD_BITS = 16


@dataclass(frozen=True)
class HighPrecComplex:
    """mpmath complex value tagged with the precision (bits) it was computed at"""
    value: mpmath.mpc
    prec: int

    @property
    def re(self) -> mpmath.mpf:
        return self.value.real

    @property
    def im(self) -> mpmath.mpf:
        return self.value.imag


def _require_precision(prec: int) -> None:
    if prec < MIN_PRECISION:
        raise PrecisionError(f"Working precision {prec} is below the {MIN_PRECISION}-bit floor", prec=prec)


def form_to_tau(f: QuadForm, prec: int = MIN_PRECISION) -> HighPrecComplex:
    """CM point tau = (-b + sqrt(D)) / (2a) in the upper half plane"""
    _require_precision(prec)
    with mpmath.workprec(prec + GUARD_BITS):
        imag = mpmath.sqrt(-f.discriminant) / (2 * f.a)
        real = mpmath.mpf(-f.b) / (2 * f.a)
        return HighPrecComplex(mpmath.mpc(real, imag), prec)


def j_invariant(tau: HighPrecComplex, prec: int) -> HighPrecComplex:
    _require_precision(prec)
    working = prec + GUARD_BITS
    with mpmath.workprec(working):
        t = mpmath.mpc(tau.value)
        if t.imag < mpmath.sqrt(3) / 2 - mpmath.mpf(2) ** (-prec):
            raise PrecisionError(f"tau={t} lies outside the fundamental domain height", prec=prec)

        q = mpmath.expjpi(2 * t)
        tail = mpmath.mpf(2) ** (-working)
        abs_q = abs(q)

        eta_product = mpmath.mpc(1)
        e4_sum = mpmath.mpc(0)
        q_n = mpmath.mpc(1)
        abs_q_n = mpmath.mpf(1)
        n = 0
        while True:
            n += 1
            q_n *= q
            abs_q_n *= abs_q
            one_minus = 1 - q_n
            eta_product *= one_minus
            e4_sum += n ** 3 * q_n / one_minus
            # n^3 |q|^n bounds the next term of both series
            if n ** 3 * abs_q_n < tail:
                break

        delta = q * eta_product ** 24
        e4 = 1 + 240 * e4_sum
        return HighPrecComplex(e4 ** 3 / delta, prec)

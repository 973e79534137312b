"""
Hilbert class polynomials H_D(x) = prod over Pic(O) of (x - j(tau_f))

Roots are evaluated numerically, the product is expanded in real arithmetic
and every coefficient is rounded to the nearest integer. The rounding is
accepted only when every residual is below 1/4; otherwise the whole
computation is repeated at doubled precision.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple, Union

import mpmath

from classgroup.forms import Discriminant, QuadForm, is_ambiguous, make_discriminant
from classgroup.table import ClassGroupTable, enumerate_class_group
from classpoly.jfunction import MIN_PRECISION, HighPrecComplex, form_to_tau, j_invariant
from utils.error_handler import PrecisionError, RetryHandler, ValidationError

logger = logging.getLogger(__name__)

FIXED_GUARD_BITS = 33
ROUNDING_TOLERANCE = mpmath.mpf(1) / 4
DEFAULT_RETRIES = 3


@dataclass(frozen=True)
class IntPolynomial:
    """Monic polynomial with exact integer coefficients, ascending degree"""
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) < 2:
            raise ValidationError("Class polynomials have degree at least 1")
        if self.coeffs[-1] != 1:
            raise ValidationError(f"Polynomial is not monic (leading coefficient {self.coeffs[-1]})")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: Any) -> Any:
        result = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = 'x' if k == 1 else f'x^{k}'
                body = power if magnitude == 1 else f'{magnitude}*{power}'
            terms.append((sign, body))

        first_sign, first_body = terms[0]
        text = first_body if first_sign == '+' else f'-{first_body}'
        for sign, body in terms[1:]:
            text += f' {sign} {body}'
        return text

    def to_dict(self) -> Dict[str, Any]:
        return {'degree': self.degree, 'coeffs': list(self.coeffs), 'text': str(self)}


def precision_bound(D: Discriminant, forms: ClassGroupTable) -> int:
    """Working precision in bits: coefficient height estimate plus guard bits"""
    abs_d = abs(make_discriminant(D))
    height = math.pi * math.sqrt(abs_d) / math.log(2) * sum(1.0 / f.a for f in forms.forms)
    return max(MIN_PRECISION, math.ceil(height) + FIXED_GUARD_BITS + forms.h)


def cm_roots(table: ClassGroupTable, prec: int) -> List[Tuple[QuadForm, HighPrecComplex]]:
    """j(tau_f) for every reduced form f"""
    return [(f, j_invariant(form_to_tau(f, prec), prec)) for f in table.forms]


def _multiply(poly: List[Any], factor: Sequence[Any]) -> List[Any]:
    # ascending coefficient lists
    result = [mpmath.mpf(0)] * (len(poly) + len(factor) - 1)
    for i, a in enumerate(poly):
        for k, b in enumerate(factor):
            result[i + k] += a * b
    return result


def assemble_product(table: ClassGroupTable, prec: int) -> List[mpmath.mpc]:
    """Unrounded coefficients of prod (x - j(tau_f)), ascending degree

    Ambiguous forms have real j and contribute (x - Re j); every other form
    (a, b, c) with b > 0 is paired with its inverse (a, -b, c), whose j is the
    complex conjugate, and contributes x^2 - 2 Re(j) x + |j|^2.
    """
    with mpmath.workprec(prec):
        poly: List[Any] = [mpmath.mpf(1)]
        for f in table.forms:
            if f.b < 0:
                continue
            j = j_invariant(form_to_tau(f, prec), prec)
            if is_ambiguous(f):
                poly = _multiply(poly, [-j.re, 1])
            elif f.b > 0:
                poly = _multiply(poly, [j.re ** 2 + j.im ** 2, -2 * j.re, 1])
        return [mpmath.mpc(c) for c in poly]


def _round_coefficients(disc: Discriminant, table: ClassGroupTable, prec: int) -> IntPolynomial:
    coeffs = assemble_product(table, prec)
    rounded = []
    worst = mpmath.mpf(0)
    with mpmath.workprec(prec):
        for c in coeffs:
            nearest = int(mpmath.nint(c.real))
            residual = max(abs(c.real - nearest), abs(c.imag))
            worst = max(worst, residual)
            rounded.append(nearest)

    if worst >= ROUNDING_TOLERANCE or rounded[-1] != 1:
        raise PrecisionError(
            f"Rounding residual {mpmath.nstr(worst, 5)} for D={disc.value} at {prec} bits",
            disc=disc.value,
            prec=prec,
            residual=float(worst),
        )
    logger.debug(f"D={disc.value} rounded at {prec} bits, worst residual {mpmath.nstr(worst, 5)}")
    return IntPolynomial(tuple(rounded))


def hilbert_class_polynomial(
    D: Union[Discriminant, int],
    max_retries: int = DEFAULT_RETRIES,
) -> IntPolynomial:
    disc = make_discriminant(D)
    table = enumerate_class_group(disc)
    start = precision_bound(disc, table)
    logger.debug(f"D={disc.value}: h={table.h}, starting precision {start} bits")

    polynomial = RetryHandler.retry_with_precision(
        lambda prec: _round_coefficients(disc, table, prec),
        start_prec=start,
        max_retries=max_retries,
    )
    assert polynomial.degree == table.h
    return polynomial

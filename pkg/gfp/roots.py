"""
F_p-roots of reduced class polynomials
"""
import logging
from typing import List

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_multi_eval

from classpoly.hilbert import IntPolynomial
from gfp.polynomial import FpPolynomial, derivative_gcd, frobenius_gcd
from utils.error_handler import ValidationError
from utils.helpers import require_odd_prime

logger = logging.getLogger(__name__)

# exhaustive listing evaluates f at every residue
ROOT_LISTING_CAP = 10**6


def reduce_mod_p(H: IntPolynomial, p: int) -> FpPolynomial:
    """Coefficientwise reduction of H into F_p[x] (p > 3)"""
    require_odd_prime(p, minimum=5)
    return FpPolynomial.from_ints(p, H.coeffs)


def count_fp_roots(f: FpPolynomial) -> int:
    """Number of distinct roots of f in F_p, deg gcd(x^p - x, f)"""
    return len(frobenius_gcd(f)) - 1


def list_fp_roots(f: FpPolynomial, cap: int = ROOT_LISTING_CAP) -> List[int]:
    """Sorted distinct roots by evaluating f at every residue"""
    if f.p > cap:
        raise ValidationError(f"p={f.p} exceeds the exhaustive root listing cap {cap}")
    p = f.p
    values = gf_multi_eval(f.dense, range(p), p, ZZ)
    roots = [x for x, value in enumerate(values) if value == 0]
    logger.debug(f"Listed {len(roots)} roots of degree-{f.degree} polynomial mod {p}")
    return roots


def is_squarefree(f: FpPolynomial) -> bool:
    """True iff gcd(f, f') is constant"""
    if f.degree < 1:
        raise ValidationError("Squarefreeness is only defined here for nonconstant polynomials")
    return len(derivative_gcd(f)) == 1

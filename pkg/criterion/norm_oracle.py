"""
Local solvability of x^2 - y^2 * D/4 = -p over the ell-adic integers

This is decided independently of the congruence criterion: we look for a
solution modulo ell (odd ell) or modulo 8 (ell = 2) at which some partial
derivative has the smallest possible valuation, and Hensel's lemma lifts
exactly those. D/4 is an ell-adic integer in every case reached here: odd ell
inverts 4, and ell = 2 forces 4 | D.
"""
import logging
from typing import Optional, Tuple

from classgroup.forms import Discriminant, make_discriminant
from criterion.symbols import is_inert
from utils.error_handler import ValidationError
from utils.helpers import is_prime

logger = logging.getLogger(__name__)


def _quarter_disc(d: int, modulus: int, ell: int) -> int:
    # D/4 as a residue mod ell^k
    if ell == 2:
        return (d // 4) % modulus
    return d * pow(4, -1, modulus) % modulus


def _norm_form(x: int, y: int, q: int, p: int) -> int:
    return x * x - y * y * q + p


def _check_preconditions(D: Discriminant, p: int, ell: int) -> int:
    d = make_discriminant(D).value
    if ell < 2 or not is_prime(ell):
        raise ValidationError(f"ell={ell} is not prime")
    if d % ell:
        raise ValidationError(f"ell={ell} does not divide D={d}")
    if ell == 2 and d % 4:
        raise ValidationError(f"D={d} is odd, so 2 does not divide it as a discriminant")
    if (ell * d) % p == 0:
        raise ValidationError(f"p={p} divides ell*D={ell * d}")
    if not is_inert(D, p):
        raise ValidationError(f"p={p} is not inert for D={d}")
    return d


def _base_level(ell: int) -> int:
    # mod ell for odd ell, mod 8 = 2^3 for ell = 2
    return 1 if ell != 2 else 3


def _find_liftable_solution(d: int, p: int, ell: int) -> Optional[Tuple[int, int]]:
    modulus = ell ** _base_level(ell)
    q = _quarter_disc(d, modulus, ell)
    for x in range(modulus):
        for y in range(modulus):
            if _norm_form(x, y, q, p) % modulus:
                continue
            if ell == 2:
                # partials 2x and -2y*q have valuation exactly 1
                if x % 2 or (y * q) % 2:
                    return x, y
            elif (2 * x) % ell or (2 * y * q) % ell:
                return x, y
    return None


def local_norm_solvable(D: Discriminant, p: int, ell: int) -> bool:
    """Whether -p is a norm of an ell-adic unit of O, via the norm equation"""
    d = _check_preconditions(D, p, ell)
    witness = _find_liftable_solution(d, p, ell)
    logger.debug(f"D={d} p={p} ell={ell}: liftable witness {witness}")
    return witness is not None


def lift_norm_solution(D: Discriminant, p: int, ell: int, k: int) -> Tuple[int, int]:
    """Hensel-lift the witness to a solution modulo ell^k"""
    d = _check_preconditions(D, p, ell)
    base = _base_level(ell)
    if k < base:
        raise ValidationError(f"Lifting starts at ell^{base}; got k={k}")

    witness = _find_liftable_solution(d, p, ell)
    if witness is None:
        raise ValidationError(f"x^2 - y^2*D/4 = -{p} has no {ell}-adic solution for D={d}")

    x, y = witness
    # valuation of the partial derivative being used
    shift = 1 if ell == 2 else 0
    for level in range(base, k):
        modulus = ell ** (level + 1)
        q = _quarter_disc(d, modulus, ell)
        step = ell ** (level - shift)
        lift_x = x % ell if ell != 2 else x % 2
        for t in range(ell):
            candidate = (x + t * step, y) if lift_x else (x, y + t * step)
            if _norm_form(candidate[0], candidate[1], q, p) % modulus == 0:
                x, y = candidate[0] % modulus, candidate[1] % modulus
                break
        else:
            raise AssertionError(f"Hensel step failed at {ell}^{level + 1}")
    return x, y

from sympy import jacobi_symbol

from classgroup.forms import Discriminant, make_discriminant
from utils.error_handler import ValidationError
from utils.helpers import require_odd_prime


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n); the Legendre symbol when n is an odd prime"""
    if n == 0:
        raise ValidationError("Kronecker symbol (a/0) is not used here")

    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result

    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        twos = 0
        while n % 2 == 0:
            n //= 2
            twos += 1
        # (a/2) = -1 exactly when a = 3, 5 (mod 8)
        if twos % 2 and a % 8 in (3, 5):
            result = -result

    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def is_inert(D: Discriminant, p: int) -> bool:
    """p stays prime in the quadratic field: (D/p) = -1"""
    require_odd_prime(p)
    return kronecker(make_discriminant(D).value, p) == -1

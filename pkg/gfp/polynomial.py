"""
Polynomials over F_p

FpPolynomial stores coefficients in ascending degree so that it lines up with
IntPolynomial and the cache format. Arithmetic is delegated to sympy's dense
galoistools kernels, which work on descending lists; the `_dense` helpers
translate between the two orders.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_diff, gf_eval, gf_gcd, gf_pow_mod, gf_rem, gf_strip, gf_sub

from utils.error_handler import ValidationError, ZeroPolynomialError
from utils.helpers import require_odd_prime

Dense = List[int]


def _dense(coeffs: Sequence[int]) -> Dense:
    return [ZZ(c) for c in reversed(coeffs)]


def _ascending(dense: Sequence[int]) -> Tuple[int, ...]:
    return tuple(int(c) for c in reversed(gf_strip(list(dense))))


@dataclass(frozen=True)
class FpPolynomial:
    """Nonzero polynomial with coefficients in [0, p), ascending degree"""
    p: int
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        require_odd_prime(self.p)
        if not self.coeffs:
            raise ZeroPolynomialError(f"Zero polynomial over F_{self.p}")
        if self.coeffs[-1] == 0:
            raise ValidationError("Leading coefficient must be nonzero")
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValidationError(f"Coefficients must be reduced into [0, {self.p})")

    @classmethod
    def from_ints(cls, p: int, values: Iterable[int]) -> 'FpPolynomial':
        """Reduce integer coefficients (ascending) mod p and drop leading zeros"""
        reduced = [v % p for v in values]
        while reduced and reduced[-1] == 0:
            reduced.pop()
        return cls(p, tuple(reduced))

    @classmethod
    def _from_dense(cls, p: int, dense: Sequence[int]) -> 'FpPolynomial':
        return cls(p, _ascending(dense))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    @property
    def dense(self) -> Dense:
        return _dense(self.coeffs)

    def evaluate(self, x: int) -> int:
        return int(gf_eval(self.dense, x % self.p, self.p, ZZ))

    def derivative(self) -> Tuple[int, ...]:
        """Formal derivative; may be the zero tuple"""
        return _ascending(gf_diff(self.dense, self.p, ZZ))

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            power = '' if k == 0 else ('x' if k == 1 else f'x^{k}')
            if not power:
                terms.append(str(c))
            else:
                terms.append(power if c == 1 else f'{c}*{power}')
        return ' + '.join(terms) + f' (mod {self.p})'


def _require_same_field(*polys: FpPolynomial) -> int:
    primes = {f.p for f in polys}
    if len(primes) != 1:
        raise ValidationError(f"Polynomials live over different fields: {sorted(primes)}")
    return primes.pop()


def poly_powmod(base: FpPolynomial, e: int, m: FpPolynomial) -> FpPolynomial:
    """base^e mod m by repeated squaring"""
    p = _require_same_field(base, m)
    if m.degree < 1:
        raise ValidationError("Modulus must be nonconstant")
    if e < 0:
        raise ValidationError("Exponent must be non-negative")
    residue = gf_pow_mod(base.dense, e, m.dense, p, ZZ)
    if not residue:
        raise ZeroPolynomialError(f"{base}^{e} vanishes modulo {m}")
    return FpPolynomial._from_dense(p, residue)


def frobenius_gcd(f: FpPolynomial) -> Dense:
    """gcd(x^p - x, f) as a monic dense list"""
    p = f.p
    x = [ZZ(1), ZZ(0)]
    x_p = gf_pow_mod(x, p, f.dense, p, ZZ)
    difference = gf_rem(gf_sub(x_p, x, p, ZZ), f.dense, p, ZZ)
    return gf_gcd(f.dense, difference, p, ZZ)


def derivative_gcd(f: FpPolynomial) -> Dense:
    """gcd(f, f') as a monic dense list"""
    return gf_gcd(f.dense, gf_diff(f.dense, f.p, ZZ), f.p, ZZ)

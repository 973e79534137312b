"""
Binary quadratic forms of negative discriminant

Pic(O) is modelled by reduced primitive positive definite forms (a, b, c)
with b^2 - 4ac = disc(O) under Gauss composition. Non-fundamental
discriminants are handled the same way as fundamental ones.
"""
from dataclasses import dataclass
from math import gcd
from typing import Iterator

from utils.error_handler import ValidationError
from utils.helpers import solve_linear_congruence


@dataclass(frozen=True, order=True)
class Discriminant:
    """Validated discriminant D < 0 with D = 0, 1 (mod 4)"""
    value: int

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise ValidationError(f"Discriminant must be an integer, got {self.value!r}")
        if self.value >= 0:
            raise ValidationError(f"Discriminant {self.value} must be negative")
        if self.value % 4 not in (0, 1):
            raise ValidationError(f"Discriminant {self.value} is {self.value % 4} mod 4, expected 0 or 1")

    def __int__(self) -> int:
        return self.value

    def __abs__(self) -> int:
        return -self.value

    def __str__(self) -> str:
        return str(self.value)


def make_discriminant(D: int) -> Discriminant:
    return D if isinstance(D, Discriminant) else Discriminant(D)


@dataclass(frozen=True)
class QuadForm:
    """Positive definite integral binary quadratic form a*x^2 + b*x*y + c*y^2"""
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a <= 0 or self.c <= 0:
            raise ValidationError(f"Form {self} is not positive definite")
        if self.discriminant >= 0:
            raise ValidationError(f"Form {self} has non-negative discriminant {self.discriminant}")

    def __iter__(self) -> Iterator[int]:
        yield self.a
        yield self.b
        yield self.c

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if abs(b) == a or a == c:
            return b >= 0
        return True


def principal_form(D: Discriminant) -> QuadForm:
    """Identity class [O]"""
    d = make_discriminant(D).value
    if d % 4 == 0:
        return QuadForm(1, 0, -d // 4)
    return QuadForm(1, 1, (1 - d) // 4)


def _require_primitive(f: QuadForm) -> None:
    if not f.is_primitive:
        raise ValidationError(f"Form {f} is not primitive")


def _normalize(a: int, b: int, c: int) -> tuple:
    # translate so that -a < b <= a
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def reduce_form(f: QuadForm) -> QuadForm:
    """Unique reduced form properly equivalent to f"""
    _require_primitive(f)
    a, b, c = _normalize(*f)
    while not (a < c or (a == c and b >= 0)):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return QuadForm(a, b, c)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Reduced representative of the product class [f][g]"""
    if f.discriminant != g.discriminant:
        raise ValidationError(
            f"Cannot compose {f} (D={f.discriminant}) with {g} (D={g.discriminant})"
        )
    _require_primitive(f)
    _require_primitive(g)

    a, b, c = f
    alpha, beta, _ = g
    half_sum = (b + beta) // 2
    half_diff = -(b - beta) // 2
    w = gcd(gcd(a, alpha), half_sum)
    s, t, u = a // w, alpha // w, half_sum // w

    mu, nu = solve_linear_congruence(t * u, half_diff * u + s * c, s * t)
    lam, _ = solve_linear_congruence(t * nu, half_diff - t * mu, s)
    k = mu + nu * lam
    l = (k * t - half_diff) // s
    m = (t * u * k - half_diff * u - c * s) // (s * t)

    return reduce_form(QuadForm(s * t, w * u - (k * t + l * s), k * l - w * m))


def inverse(f: QuadForm) -> QuadForm:
    return reduce_form(QuadForm(f.a, -f.b, f.c))


def form_power(f: QuadForm, n: int) -> QuadForm:
    """f composed with itself n times (n >= 0)"""
    if n < 0:
        raise ValidationError("Exponent must be non-negative; compose with inverse() instead")
    result = principal_form(Discriminant(f.discriminant))
    base = reduce_form(f)
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def is_ambiguous(f: QuadForm) -> bool:
    """Reduced form of order dividing 2: b = 0, a = b or a = c"""
    return f.b == 0 or f.a == f.b or f.a == f.c

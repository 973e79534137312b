"""
Enumeration of Pic(O) and its 2-torsion
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Any, Dict, List, Tuple

from classgroup.forms import (
    Discriminant,
    QuadForm,
    compose,
    is_ambiguous,
    make_discriminant,
    principal_form,
)
from utils.helpers import odd_prime_divisors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassGroupTable:
    """Reduced forms of discriminant D, principal form first"""
    disc: Discriminant
    forms: Tuple[QuadForm, ...]
    two_torsion: Tuple[QuadForm, ...] = field(default=())
    mu: int = 0

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def principal(self) -> QuadForm:
        return self.forms[0]

    @property
    def two_torsion_order(self) -> int:
        return len(self.two_torsion)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'D': self.disc.value,
            'h': self.h,
            'forms': [list(f) for f in self.forms],
            'two_torsion': [list(f) for f in self.two_torsion],
            'mu': self.mu,
            'two_torsion_order': 2 ** (self.mu - 1),
        }


def _reduced_forms(d: int) -> List[QuadForm]:
    abs_d = -d
    forms = []
    a = 1
    while 3 * a * a <= abs_d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            numerator = b * b - d
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
        a += 1
    forms.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    return forms


@lru_cache(maxsize=4096)
def enumerate_class_group(D: Discriminant) -> ClassGroupTable:
    """All reduced primitive forms of discriminant D with the 2-torsion found by squaring"""
    disc = make_discriminant(D)
    forms = _reduced_forms(disc.value)
    identity = principal_form(disc)
    assert forms[0] == identity

    two_torsion = tuple(f for f in forms if compose(f, f) == identity)
    mu = gauss_mu(disc)
    logger.debug(f"D={disc.value}: h={len(forms)}, |Pic[2]|={len(two_torsion)}, mu={mu}")
    return ClassGroupTable(disc=disc, forms=tuple(forms), two_torsion=two_torsion, mu=mu)


def class_number(D: Discriminant) -> int:
    return enumerate_class_group(make_discriminant(D)).h


def ambiguous_forms(table: ClassGroupTable) -> List[QuadForm]:
    return [f for f in table.forms if is_ambiguous(f)]


def gauss_mu(D: Discriminant) -> int:
    """Genus count: |Pic(O)[2]| = 2^(mu - 1)"""
    d = make_discriminant(D).value
    r = len(odd_prime_divisors(d))
    if d % 4 == 1:
        return r
    n = -d // 4
    if n % 4 == 3:
        return r
    if n % 4 in (1, 2):
        return r + 1
    if n % 8 == 4:
        return r + 1
    return r + 2


def two_torsion_order(D: Discriminant) -> int:
    return 2 ** (gauss_mu(D) - 1)

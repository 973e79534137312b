"""
Nonemptiness criterion for F_p-roots of H_D at inert primes p > |D|

For every prime ell dividing D:
  odd ell  -> (-p / ell) = 1
  ell = 2  -> p = 7 (mod 8), or -p + D/4 = 0, 1, 4 (mod 8), or -p + D = 1 (mod 8)
The roots exist iff all of these hold, and then there are exactly
|Pic(O)[2]| of them.

The quaternion algebra ramification condition for the fundamental
discriminant is not checked on its own: each odd prime dividing the
squarefree kernel also divides D, so it is one of the per-ell checks above.
"""
import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from classgroup.forms import Discriminant, make_discriminant
from classgroup.table import gauss_mu
from criterion.symbols import is_inert, kronecker
from utils.error_handler import ValidationError
from utils.helpers import prime_divisors, require_odd_prime

logger = logging.getLogger(__name__)


class Subcase(str, Enum):
    """Which congruence made an ell-condition true"""
    ODD = "odd"      # (-p / ell) = 1
    A = "a"          # p = 7 (mod 8)
    B = "b"          # -p + D/4 = 0, 1, 4 (mod 8)
    C = "c"          # -p + D = 1 (mod 8)
    NONE = "none"


@dataclass(frozen=True)
class EllCondition:
    ell: int
    condition_met: bool
    which_subcase: Subcase

    def to_dict(self) -> Dict[str, Any]:
        return {'ell': self.ell, 'condition_met': self.condition_met, 'which_subcase': self.which_subcase.value}


@dataclass
class CriterionReport:
    """Prediction for one (D, p) pair; prediction fields are None when not applicable"""
    D: int
    p: int
    inert: bool
    applicable: bool
    per_ell: List[EllCondition] = field(default_factory=list)
    predicted_nonempty: Optional[bool] = None
    predicted_count: Optional[int] = None
    reason: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['per_ell'] = [c.to_dict() for c in self.per_ell]
        return data


def odd_ell_condition(D: Discriminant, p: int, ell: int) -> bool:
    d = make_discriminant(D).value
    if ell % 2 == 0:
        raise ValidationError(f"ell={ell} must be odd")
    if d % ell:
        raise ValidationError(f"ell={ell} does not divide D={d}")
    return kronecker(-p, ell) == 1


def two_ell_condition(D: Discriminant, p: int) -> Tuple[bool, Subcase]:
    d = make_discriminant(D).value
    if d % 2:
        raise ValidationError(f"D={d} is odd; the 2-adic condition does not apply")
    if p % 8 == 7:
        return True, Subcase.A
    if (-p + d // 4) % 8 in (0, 1, 4):
        return True, Subcase.B
    if (-p + d) % 8 == 1:
        return True, Subcase.C
    return False, Subcase.NONE


def ell_conditions(D: Discriminant, p: int) -> List[EllCondition]:
    """Evaluate the condition for every distinct prime ell | D"""
    d = make_discriminant(D).value
    results = []
    for ell in prime_divisors(d):
        if ell == 2:
            met, subcase = two_ell_condition(D, p)
        else:
            met = odd_ell_condition(D, p, ell)
            subcase = Subcase.ODD if met else Subcase.NONE
        results.append(EllCondition(ell, met, subcase))
    return results


def predict(D: Discriminant, p: int) -> CriterionReport:
    disc = make_discriminant(D)
    require_odd_prime(p, minimum=5)
    d = disc.value

    inert = is_inert(disc, p)
    report = CriterionReport(D=d, p=p, inert=inert, applicable=False)

    if d % p == 0:
        report.reason = f"p={p} ramifies (divides D={d})"
    elif not inert:
        report.reason = f"p={p} splits in Q(sqrt({d}))"
    elif p <= -d:
        report.reason = f"p={p} does not exceed |D|={-d}"
    else:
        report.applicable = True

    if not report.applicable:
        logger.debug(f"D={d} p={p} not applicable: {report.reason}")
        return report

    report.per_ell = ell_conditions(disc, p)
    report.predicted_nonempty = all(c.condition_met for c in report.per_ell)
    report.predicted_count = 2 ** (gauss_mu(disc) - 1) if report.predicted_nonempty else 0
    return report

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from utils.error_handler import ValidationError

CACHE_FORMAT_VERSION = 'v1'


@dataclass
class SweepRecord:
    """Observed and predicted root counts for one (D, p) pair"""
    D: int
    p: int
    h: int
    mu: int
    two_torsion_order: int
    inert: bool
    predicted_nonempty: Optional[bool]
    predicted_count: Optional[int]
    observed_count: int
    observed_roots: Optional[List[int]] = None
    squarefree: bool = True
    agreement: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.predicted_count is not None and self.agreement is None:
            self.agreement = (
                self.observed_count == self.predicted_count
                and self.observed_count in (0, self.two_torsion_order)
                and self.squarefree
            )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class PolyCacheEntry:
    """Cached class polynomial, coefficients ascending"""
    D: int
    h: int
    coeffs: Tuple[int, ...] = field(default=())
    version: str = CACHE_FORMAT_VERSION

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.h + 1:
            raise ValidationError(f"Entry for D={self.D} has {len(self.coeffs)} coefficients, expected {self.h + 1}")
        if self.coeffs[-1] != 1:
            raise ValidationError(f"Entry for D={self.D} is not monic")

    def to_line(self) -> str:
        return f"{self.version}|{self.D}|{self.h}|{','.join(str(c) for c in self.coeffs)}"

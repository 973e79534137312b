from criterion.conditions import (
    CriterionReport,
    EllCondition,
    Subcase,
    ell_conditions,
    odd_ell_condition,
    predict,
    two_ell_condition,
)
from criterion.norm_oracle import lift_norm_solution, local_norm_solvable
from criterion.symbols import is_inert, kronecker

__all__ = [
    'CriterionReport',
    'EllCondition',
    'Subcase',
    'ell_conditions',
    'is_inert',
    'kronecker',
    'lift_norm_solution',
    'local_norm_solvable',
    'odd_ell_condition',
    'predict',
    'two_ell_condition',
]

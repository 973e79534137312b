from classgroup.forms import (
    Discriminant,
    QuadForm,
    compose,
    form_power,
    inverse,
    is_ambiguous,
    make_discriminant,
    principal_form,
    reduce_form,
)
from classgroup.table import (
    ClassGroupTable,
    ambiguous_forms,
    class_number,
    enumerate_class_group,
    gauss_mu,
    two_torsion_order,
)

__all__ = [
    'ClassGroupTable',
    'Discriminant',
    'QuadForm',
    'ambiguous_forms',
    'class_number',
    'compose',
    'enumerate_class_group',
    'form_power',
    'gauss_mu',
    'inverse',
    'is_ambiguous',
    'make_discriminant',
    'principal_form',
    'reduce_form',
    'two_torsion_order',
]

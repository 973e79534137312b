from classpoly.hilbert import (
    IntPolynomial,
    assemble_product,
    cm_roots,
    hilbert_class_polynomial,
    precision_bound,
)
from classpoly.jfunction import HighPrecComplex, form_to_tau, j_invariant

__all__ = [
    'HighPrecComplex',
    'IntPolynomial',
    'assemble_product',
    'cm_roots',
    'form_to_tau',
    'hilbert_class_polynomial',
    'j_invariant',
    'precision_bound',
]

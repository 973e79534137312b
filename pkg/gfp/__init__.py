from gfp.polynomial import FpPolynomial, poly_powmod
from gfp.roots import count_fp_roots, is_squarefree, list_fp_roots, reduce_mod_p

__all__ = [
    'FpPolynomial',
    'count_fp_roots',
    'is_squarefree',
    'list_fp_roots',
    'poly_powmod',
    'reduce_mod_p',
]

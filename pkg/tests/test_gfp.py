import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_diff, gf_mul, gf_rem, gf_sqf_p

from classpoly.hilbert import IntPolynomial
from gfp.polynomial import FpPolynomial, derivative_gcd, frobenius_gcd, poly_powmod
from gfp.roots import count_fp_roots, is_squarefree, list_fp_roots, reduce_mod_p
from utils.error_handler import ValidationError, ZeroPolynomialError

ODD_PRIMES = [int(p) for p in primerange(3, 10**4)]


class TestFpPolynomial:
    def test_from_ints_reduces(self):
        f = FpPolynomial.from_ints(7, [-1, 8, 14, 1])
        assert f.coeffs == (6, 1, 0, 1)
        assert f.degree == 3
        assert f.is_monic

    def test_from_ints_drops_leading_zeros(self):
        assert FpPolynomial.from_ints(5, [1, 2, 5, 10]).coeffs == (1, 2)

    def test_zero_is_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            FpPolynomial.from_ints(5, [5, 10])

    def test_rejects_unreduced_coefficients(self):
        with pytest.raises(ValidationError):
            FpPolynomial(5, (7, 1))

    def test_rejects_composite_modulus(self):
        with pytest.raises(ValidationError):
            FpPolynomial(9, (1, 1))

    def test_evaluate(self):
        f = FpPolynomial.from_ints(29, [-121287375, 191025, 1])
        assert f.evaluate(2) == 0
        assert f.evaluate(25) == 0
        assert f.evaluate(3) != 0

    def test_derivative(self):
        assert FpPolynomial.from_ints(7, [1, 2, 3, 1]).derivative() == (2, 6, 3)
        assert FpPolynomial.from_ints(7, [3]).derivative() == ()
        # x^7 has zero derivative over F_7
        assert FpPolynomial.from_ints(7, [0] * 7 + [1]).derivative() == ()

    def test_str(self):
        assert str(FpPolynomial.from_ints(7, [6, 0, 1])) == "x^2 + 6 (mod 7)"


class TestPowmod:
    def test_fermat(self):
        x = FpPolynomial.from_ints(11, [0, 1])
        m = FpPolynomial.from_ints(11, [-3, 1])
        # x^11 mod (x - 3) = 3^11 = 3 (mod 11)
        assert poly_powmod(x, 11, m).coeffs == (3,)

    def test_exponent_zero(self):
        x = FpPolynomial.from_ints(11, [0, 1])
        m = FpPolynomial.from_ints(11, [1, 0, 1])
        assert poly_powmod(x, 0, m).coeffs == (1,)

    def test_zero_residue_raises(self):
        x = FpPolynomial.from_ints(5, [0, 1])
        with pytest.raises(ZeroPolynomialError):
            poly_powmod(x, 3, FpPolynomial.from_ints(5, [0, 0, 1]))

    def test_constant_modulus_rejected(self):
        x = FpPolynomial.from_ints(5, [0, 1])
        with pytest.raises(ValidationError):
            poly_powmod(x, 2, FpPolynomial.from_ints(5, [3]))

    def test_field_mismatch(self):
        with pytest.raises(ValidationError):
            poly_powmod(FpPolynomial.from_ints(5, [0, 1]), 2, FpPolynomial.from_ints(7, [1, 1]))


class TestRoots:
    def test_minus_15_mod_29(self):
        f = reduce_mod_p(IntPolynomial((-121287375, 191025, 1)), 29)
        assert count_fp_roots(f) == 2
        assert list_fp_roots(f) == [2, 25]
        assert is_squarefree(f)

    def test_minus_4_mod_7(self):
        f = reduce_mod_p(IntPolynomial((-1728, 1)), 7)
        assert count_fp_roots(f) == 1
        assert list_fp_roots(f) == [6]

    def test_minus_20_mod_37(self):
        f = reduce_mod_p(IntPolynomial((-681472000, -1264000, 1)), 37)
        assert count_fp_roots(f) == 0
        assert list_fp_roots(f) == []

    def test_repeated_root(self):
        f = FpPolynomial.from_ints(7, [1, -2, 1])
        assert count_fp_roots(f) == 1
        assert not is_squarefree(f)

    def test_reduce_requires_prime_above_three(self):
        with pytest.raises(ValidationError):
            reduce_mod_p(IntPolynomial((0, 1)), 3)
        with pytest.raises(ValidationError):
            reduce_mod_p(IntPolynomial((0, 1)), 15)

    def test_listing_cap(self):
        f = FpPolynomial.from_ints(101, [1, 1])
        with pytest.raises(ValidationError):
            list_fp_roots(f, cap=100)

    def test_squarefree_needs_nonconstant(self):
        with pytest.raises(ValidationError):
            is_squarefree(FpPolynomial.from_ints(7, [3]))


@st.composite
def fp_polynomials(draw):
    p = draw(st.sampled_from(ODD_PRIMES))
    degree = draw(st.integers(min_value=1, max_value=8))
    lower = draw(st.lists(st.integers(min_value=0, max_value=p - 1), min_size=degree, max_size=degree))
    lead = draw(st.integers(min_value=1, max_value=p - 1))
    return FpPolynomial(p, tuple(lower) + (lead,))


@settings(max_examples=200, deadline=None)
@given(fp_polynomials())
def test_gcd_count_matches_exhaustive_count(f):
    assert count_fp_roots(f) == len(list_fp_roots(f))


@settings(max_examples=200, deadline=None)
@given(fp_polynomials())
def test_squarefree_matches_sympy(f):
    assert is_squarefree(f) == gf_sqf_p(f.dense, f.p, ZZ)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ODD_PRIMES[1:200]), st.lists(st.integers(min_value=0, max_value=10**6), min_size=1, max_size=5))
def test_product_of_linear_factors(p, roots):
    # prod (x - r) has exactly the distinct r mod p as roots
    coeffs = [1]
    for r in roots:
        shifted = [0] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= r * c
        coeffs = shifted
    f = FpPolynomial.from_ints(p, coeffs)
    distinct = sorted({r % p for r in roots})
    assert list_fp_roots(f) == distinct
    assert count_fp_roots(f) == len(distinct)
    assert is_squarefree(f) == (len(distinct) == len(roots))


def test_x_to_the_fifth_mod_x_squared_plus_one():
    x = FpPolynomial.from_ints(5, [0, 1])
    assert poly_powmod(x, 5, FpPolynomial.from_ints(5, [1, 0, 1])).coeffs == (0, 1)


def test_frobenius_fixes_x_modulo_split_class_polynomial():
    f = reduce_mod_p(IntPolynomial((-121287375, 191025, 1)), 29)
    assert f.coeffs == (21, 2, 1)
    x = FpPolynomial.from_ints(29, [0, 1])
    assert poly_powmod(x, 29, f).coeffs == (0, 1)


@st.composite
def powmod_cases(draw):
    p = draw(st.sampled_from(ODD_PRIMES[:300]))
    base = draw(st.lists(st.integers(min_value=0, max_value=p - 1), min_size=1, max_size=6))
    modulus = draw(st.lists(st.integers(min_value=0, max_value=p - 1), min_size=1, max_size=6))
    modulus.append(draw(st.integers(min_value=1, max_value=p - 1)))
    base.append(draw(st.integers(min_value=1, max_value=p - 1)))
    e = draw(st.integers(min_value=0, max_value=64))
    return FpPolynomial(p, tuple(base)), e, FpPolynomial(p, tuple(modulus))


@settings(max_examples=200, deadline=None)
@given(powmod_cases())
def test_powmod_matches_repeated_multiplication(case):
    base, e, m = case
    p = base.p
    expected = [ZZ(1)]
    for _ in range(e):
        expected = gf_rem(gf_mul(expected, base.dense, p, ZZ), m.dense, p, ZZ)
    if not expected:
        with pytest.raises(ZeroPolynomialError):
            poly_powmod(base, e, m)
    else:
        assert poly_powmod(base, e, m).dense == expected


def _x_to_the_p_minus_x(p):
    # descending: x^p + (p - 1) x
    return [ZZ(1)] + [ZZ(0)] * (p - 2) + [ZZ(p - 1), ZZ(0)]


@settings(max_examples=200, deadline=None)
@given(fp_polynomials())
def test_gcds_are_monic_common_divisors(f):
    p = f.p
    g = frobenius_gcd(f)
    assert g[0] == 1
    assert gf_rem(f.dense, g, p, ZZ) == []
    assert gf_rem(_x_to_the_p_minus_x(p), g, p, ZZ) == []

    h = derivative_gcd(f)
    assert h[0] == 1
    assert gf_rem(f.dense, h, p, ZZ) == []
    assert gf_rem(gf_diff(f.dense, p, ZZ), h, p, ZZ) == []

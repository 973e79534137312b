import pytest

from classgroup.forms import QuadForm, compose, make_discriminant, principal_form
from classgroup.table import (
    ambiguous_forms,
    class_number,
    enumerate_class_group,
    gauss_mu,
    two_torsion_order,
)

KNOWN_CLASS_NUMBERS = {
    -3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -12: 1, -15: 2, -16: 1, -19: 1, -20: 2,
    -23: 3, -24: 2, -27: 1, -28: 1, -43: 1, -56: 4, -84: 4, -120: 4, -163: 1, -420: 8,
}


@pytest.mark.parametrize("d,h", sorted(KNOWN_CLASS_NUMBERS.items()))
def test_class_numbers(d, h):
    assert class_number(d) == h


def test_minus_15_table():
    table = enumerate_class_group(make_discriminant(-15))
    assert table.forms == (QuadForm(1, 1, 4), QuadForm(2, 1, 2))
    assert table.principal == QuadForm(1, 1, 4)
    assert table.two_torsion_order == 2
    assert table.mu == 2


def test_minus_23_has_no_nontrivial_two_torsion():
    table = enumerate_class_group(make_discriminant(-23))
    assert table.forms == (QuadForm(1, 1, 6), QuadForm(2, 1, 3), QuadForm(2, -1, 3))
    assert table.two_torsion == (QuadForm(1, 1, 6),)


def test_minus_4_table():
    table = enumerate_class_group(make_discriminant(-4))
    assert table.h == 1
    assert table.forms == (QuadForm(1, 0, 1),)


def test_to_dict():
    data = enumerate_class_group(make_discriminant(-20)).to_dict()
    assert data == {
        'D': -20,
        'h': 2,
        'forms': [[1, 0, 5], [2, 2, 3]],
        'two_torsion': [[1, 0, 5], [2, 2, 3]],
        'mu': 2,
        'two_torsion_order': 2,
    }


@pytest.mark.parametrize("d,mu", [
    (-3, 1), (-4, 1), (-15, 2), (-20, 2), (-84, 3), (-120, 3),
    (-420, 4), (-16, 1), (-32, 2), (-64, 2), (-12, 1),
])
def test_gauss_mu(d, mu):
    assert gauss_mu(d) == mu
    assert two_torsion_order(d) == 2 ** (mu - 1)


def test_every_reduced_form_is_reduced_and_primitive():
    for d in (-231, -420, -1155, -3315):
        for f in enumerate_class_group(make_discriminant(d)).forms:
            assert f.is_reduced
            assert f.is_primitive
            assert f.discriminant == d


def _valid_discriminants(bound):
    return [-n for n in range(3, bound + 1) if (-n) % 4 in (0, 1)]


@pytest.mark.slow
def test_genus_formula_matches_brute_force():
    for d in _valid_discriminants(5000):
        table = enumerate_class_group(make_discriminant(d))
        identity = principal_form(table.disc)
        squares_to_identity = [f for f in table.forms if compose(f, f) == identity]
        assert len(squares_to_identity) == 2 ** (gauss_mu(d) - 1), d
        assert set(squares_to_identity) == set(ambiguous_forms(table)), d

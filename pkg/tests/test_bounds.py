from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bplab.harness.bounds import (BOUND_INFO, DENOMINATOR, NOT_CHECKABLE, closed_form_bounds, d_k, exact,
                                  root_up)

getcontext().prec = 60


def true_value(coef, radicand, degree):
    x = Decimal(radicand.numerator) / Decimal(radicand.denominator)
    root = x.sqrt() if degree == 2 else x.sqrt().sqrt()
    return Decimal(coef.numerator) / Decimal(coef.denominator) * root


def as_decimal(f):
    return Decimal(f.numerator) / Decimal(f.denominator)


@given(st.fractions(min_value=0, max_value=100), st.fractions(min_value=0, max_value=10**6), st.sampled_from([2, 4]))
def test_root_up_rounds_upward_within_one_unit(coef, radicand, degree):
    b = root_up(coef, radicand, degree)
    truth = true_value(coef, radicand, degree)
    v = as_decimal(b.value)
    if b.rounding == "exact":
        assert abs(v - truth) < Decimal(10) ** -40
    else:
        assert b.value.denominator <= DENOMINATOR
        assert truth <= v <= truth + Decimal(1) / DENOMINATOR


def test_perfect_powers_are_exact():
    assert root_up(8, 4, 2) == exact(16)
    assert root_up(21, Fraction(16 * 81, 1), 4) == exact(21 * 6)
    assert root_up(1, Fraction(9, 4), 2) == exact(Fraction(3, 2))


def test_examples():
    b = closed_form_bounds(k=0)
    assert b["extremal"].value == 8 and b["degeneracy"].value == 16
    assert b["extremal_gap_cover"].value == 3
    b = closed_form_bounds(k=1, r=1)
    assert b["linear_expansion"].value == 72
    assert b["gap_cover_expansion"].value == d_k(3) == Fraction(3 * 4**4, 27)
    assert b["extremal"].rounding == "up" and b["extremal"].value == Fraction(11313709, 10**6)
    b = closed_form_bounds(k=2, r=0, g=1, n=10)
    assert b["extremal_gap_cover_surface"].value == 3 * 3153 * 3
    assert b["extremal_surface"] == root_up(1, 20 * 11, 2)


def test_d_k_values():
    assert [d_k(k) for k in range(3)] == [3, 12, Fraction(81, 4)]
    assert all(d_k(k) < 9 * (k + 1) for k in range(60))
    with pytest.raises(ValueError):
        d_k(-1)


def test_every_bound_is_described():
    assert set(closed_form_bounds()) == set(BOUND_INFO)
    assert all(v.startswith("not checkable") for v in NOT_CHECKABLE.values())


def test_negative_parameters_rejected():
    with pytest.raises(ValueError):
        closed_form_bounds(k=-1)
    with pytest.raises(ValueError):
        root_up(-1, 2, 2)


def test_gap_cover_linear_form_dominates():
    for k in range(8):
        for r in range(4):
            b = closed_form_bounds(k=k, r=r)
            assert b["gap_cover_expansion"].value < b["gap_cover_expansion_linear"].value

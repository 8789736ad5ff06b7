from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from fockgeom.polynomial import (
    ExpandedPoly,
    FactoredClass,
    LinearForm,
    eps_form,
    exact_ratio,
    expand,
    equal,
    format_rational,
    multiply,
    weight_form,
)
from oracles import sympy_ratio, to_sympy

R = 2


def forms(r=R):
    return st.builds(
        LinearForm,
        st.tuples(*[st.integers(-2, 2)] * r),
        st.integers(-3, 3),
    ).filter(lambda f: not f.is_zero())


def test_normalization_pulls_out_sign_and_content():
    unit, prim = LinearForm((0, 0), -2).normalized()
    assert (unit, prim) == (-2, LinearForm((0, 0), 1))
    unit, prim = LinearForm((-1, 1), 2).normalized()
    assert unit == -1 and prim == LinearForm((1, -1), -2)
    with pytest.raises(ZeroDivisionError):
        LinearForm((0, 0), 0).normalized()


def test_weight_form_layout():
    assert weight_form(2, 2, 1, 3) == LinearForm((-1, 1), 3)
    assert weight_form(2, 1, 1, -1) == eps_form(2, -1)


def test_zero_factor_collapses_the_product():
    f = FactoredClass.product(1, [eps_form(1), LinearForm((0,), 0)])
    assert f.is_zero() and f.degree is None
    assert expand(f).is_zero()


def test_empty_product_is_one():
    f = FactoredClass.product(2, [])
    assert expand(f) == ExpandedPoly.constant(2, 1)
    assert expand(f).to_text() == "1"


def test_text_rendering():
    p = expand(FactoredClass.product(2, [weight_form(2, 1, 2, 2)]))
    assert p.to_text() == "b1 - b2 + 2*eps"
    assert expand(FactoredClass.product(1, [eps_form(1, -1)])).to_text() == "-eps"
    assert expand(FactoredClass.product(1, [eps_form(1), eps_form(1)])).to_text() == "eps^2"
    assert ExpandedPoly(1, {}).to_text() == "0"
    assert format_rational(Fraction(-1, 2)) == "-1/2" and format_rational(3) == "3"


def test_json_round_trip():
    p = expand(FactoredClass.product(2, [weight_form(2, 1, 2, 1), eps_form(2, 3)], Fraction(1, 2)))
    q = ExpandedPoly.from_dict(p.to_dict())
    assert p == q
    assert p.to_dict()["r"] == 2


@given(st.lists(forms(), max_size=4), st.lists(forms(), max_size=4))
def test_expand_agrees_with_sympy(fs, gs):
    f = FactoredClass.product(R, fs)
    g = FactoredClass.product(R, gs)
    assert to_sympy(expand(f * g), R) == sympy.expand(to_sympy(f, R) * to_sympy(g, R))


@given(st.lists(forms(), max_size=4), st.lists(forms(), min_size=0, max_size=4),
       st.fractions(max_denominator=5).filter(lambda q: q != 0))
def test_exact_ratio_agrees_with_sympy(fs, gs, scale):
    num = FactoredClass.product(R, fs, scale)
    den = FactoredClass.product(R, gs)
    assert exact_ratio(num, den) == sympy_ratio(num, den, R)


@given(st.lists(forms(), max_size=5), st.fractions(max_denominator=7).filter(lambda q: q != 0))
def test_ratio_of_a_permuted_product(fs, q):
    num = FactoredClass.product(R, list(reversed(fs)), q)
    den = FactoredClass.product(R, fs)
    assert exact_ratio(num, den) == q


def test_ratio_needs_the_expansion_fallback():
    # the same polynomial held with unnormalized factors does not cancel by multiset
    a = FactoredClass.product(1, [LinearForm((1,), 1), LinearForm((1,), -1)])
    b = FactoredClass(1, Fraction(1), (LinearForm((-1,), -1), LinearForm((-1,), 1)))
    assert exact_ratio(a, b) == 1
    assert exact_ratio(a * 3, b) == 3
    assert exact_ratio(FactoredClass.product(1, [eps_form(1)]),
                       FactoredClass.product(1, [LinearForm((1,), 0)])) is None


def test_ratio_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        exact_ratio(FactoredClass.one(1), FactoredClass.zero(1))


def test_rank_mismatch_is_rejected():
    with pytest.raises(ValueError):
        FactoredClass.product(2, [eps_form(1)])
    with pytest.raises(ValueError):
        ExpandedPoly.constant(1, 1) + ExpandedPoly.constant(2, 1)


def test_reference_values():
    assert expand(FactoredClass.product(2, [weight_form(2, 1, 2, 2)], -1)).to_text() == "-b1 + b2 - 2*eps"
    one = FactoredClass.one(1)
    f = FactoredClass.product(1, [eps_form(1, 2)])
    assert multiply(f, one) == f
    assert multiply(f, FactoredClass.zero(1)).is_zero()
    assert equal(expand(f), expand(f * 1))
    assert exact_ratio(f, f) == 1
    assert exact_ratio(FactoredClass.zero(1), f) == 0

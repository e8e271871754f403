import math
from fractions import Fraction as F

import mpmath
import pytest

from scalefree_cordic.errors import CordicError, RangeError
from scalefree_cordic.refmath import first_omitted_term_bound
from scalefree_cordic.variants import ShiftAddForm, Variant, coefficients, describe_variants, scalefree_variants


def closed_form(v, k):
    """Coefficients typed in from the closed-form formulas, independent of the series code."""
    p = lambda e: F(1, 2 ** e)  # noqa: E731
    c3 = 1 - p(2 * k + 1)
    c4 = c3 + 3 * p(4 * k + 3)
    s3 = p(k) - p(3 * k + 1)
    return {
        Variant.COMPETITOR_A: (c3, p(k) - p(3 * k + 3)),
        Variant.COMPETITOR_B: (c3, p(k) - p(3 * k + 2)),
        Variant.PROPOSED_O3: (c3, s3),
        Variant.PROPOSED_O4: (c4, s3),
        Variant.PROPOSED_O5: (c4, s3 + 3 * p(5 * k + 3)),
    }[v]


def test_exactly_six_variants():
    assert len(Variant) == 6
    assert len({v.value for v in Variant}) == 6
    assert Variant.CONVENTIONAL not in scalefree_variants()


@pytest.mark.parametrize("v", scalefree_variants())
@pytest.mark.parametrize("k", range(32))
def test_coefficients_match_closed_forms(v, k):
    m = coefficients(v, k)
    c, s = closed_form(v, k)
    assert m.cos_approx.exact() == c
    assert m.sin_approx.exact() == s
    assert abs(m.c - float(c)) <= 1e-15 and abs(m.s - float(s)) <= 1e-15
    assert m.angle == math.atan(2.0 ** -k)


def test_worked_values():
    m = coefficients(Variant.PROPOSED_O3, 1)
    assert (m.c, m.s) == (0.875, 0.4375)
    m = coefficients(Variant.COMPETITOR_A, 0)
    assert (m.c, m.s) == (0.5, 0.875)


def test_three_times_power_split_into_two_shifts():
    m = coefficients(Variant.PROPOSED_O5, 2)
    # 3 * 2^-11 -> 2^-10 + 2^-11 ; 3 * 2^-13 -> 2^-12 + 2^-13
    assert m.cos_approx.terms == ((1, 0), (-1, 5), (1, 10), (1, 11))
    assert m.sin_approx.terms == ((1, 2), (-1, 7), (1, 12), (1, 13))


@pytest.mark.parametrize("v", scalefree_variants())
def test_forms_are_normalized(v):
    for k in range(32):
        m = coefficients(v, k)
        for form in (m.cos_approx, m.sin_approx):
            shifts = [sh for _, sh in form.terms]
            assert len(set(shifts)) == len(shifts)


def test_normalization_merges_and_carries():
    assert ShiftAddForm.normalized([(1, 3), (1, 3)]).terms == ((1, 2),)
    assert ShiftAddForm.normalized([(1, 3), (-1, 3), (1, 1)]).terms == ((1, 1),)
    with pytest.raises(CordicError):
        ShiftAddForm(((1, 2), (-1, 2)))


def test_angles_strictly_decreasing():
    angles = [coefficients(Variant.PROPOSED_O3, k).angle for k in range(32)]
    assert all(a > b for a, b in zip(angles, angles[1:]))


@pytest.mark.parametrize("v", [Variant.PROPOSED_O3, Variant.PROPOSED_O4, Variant.PROPOSED_O5])
def test_proposed_tangent_ratio(v):
    for k in range(32):
        m = coefficients(v, k)
        assert m.sin_approx.exact() == F(1, 2 ** k) * m.cos_approx.exact() or v is Variant.PROPOSED_O4
        if v is not Variant.PROPOSED_O4:
            assert abs(m.s - 2.0 ** -k * m.c) <= 1e-15


def test_order4_breaks_the_tangent_ratio_only_at_degree_five():
    # order 4 keeps the x^4 cosine term without its x^5 sine partner
    for k in range(32):
        m = coefficients(Variant.PROPOSED_O4, k)
        gap = F(1, 2 ** k) * m.cos_approx.exact() - m.sin_approx.exact()
        assert gap == 3 * F(1, 2 ** (5 * k + 3))


@pytest.mark.parametrize("v", [Variant.PROPOSED_O3, Variant.PROPOSED_O4, Variant.PROPOSED_O5])
def test_truncation_error_bounded_by_first_omitted_term(v):
    mpmath.mp.prec = 300
    for k in range(16):
        m = coefficients(v, k)
        x = mpmath.mpf(2) ** -k
        bound = first_omitted_term_bound(k, v.order)
        c_err = abs(mpmath.mpf(m.cos_approx.exact().numerator) / m.cos_approx.exact().denominator - 1 / mpmath.sqrt(1 + x * x))
        s_err = abs(mpmath.mpf(m.sin_approx.exact().numerator) / m.sin_approx.exact().denominator - x / mpmath.sqrt(1 + x * x))
        assert c_err <= bound * (1 + 1e-12)
        assert s_err <= bound * (1 + 1e-12)


def test_sine_ordering_from_below():
    for k in range(1, 16):
        sa, sb, s3 = (coefficients(v, k).sin_approx.exact()
                      for v in (Variant.COMPETITOR_A, Variant.COMPETITOR_B, Variant.PROPOSED_O3))
        true = math.sin(math.atan(2.0 ** -k))
        # the order is by distance to the true value: the proposed term sits just under it
        assert abs(float(s3) - true) < abs(float(sb) - true) < abs(float(sa) - true)
        assert float(s3) <= true


def test_order4_and_order5_cosines_agree():
    for k in range(32):
        assert coefficients(Variant.PROPOSED_O4, k).cos_approx == coefficients(Variant.PROPOSED_O5, k).cos_approx


def test_errors():
    with pytest.raises(RangeError):
        coefficients(Variant.PROPOSED_O3, 32)
    with pytest.raises(RangeError):
        coefficients(Variant.PROPOSED_O3, -1)
    with pytest.raises(CordicError):
        coefficients(Variant.CONVENTIONAL, 3)
    assert Variant.parse("PROPOSED_O5") is Variant.PROPOSED_O5
    with pytest.raises(CordicError):
        Variant.parse("nope")


def test_describe_lists_every_variant():
    text = describe_variants()
    assert all(v.value in text for v in Variant)
    assert "3*2^(-5k-3)" in text

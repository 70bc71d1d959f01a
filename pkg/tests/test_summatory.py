"""Summatory closed forms, Trollope's identity, Takagi and blancmange data."""

from fractions import Fraction
from math import isfinite

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpmaps import blancmange_tables, closed_sums, summatory, takagi, trollope_rhs
from hpmaps.summatory import (
    chi_checkpoint_printed,
    chi_sandwich_report,
    product_identity_check,
    sign_density,
    triangle_wave,
)


def test_summatory_examples():
    assert summatory("ones", 3, 3).ys == (1, 2, 4)
    assert summatory("r_p", 3, 3).ys == (Fraction(3, 2), Fraction(9, 4),
                                         Fraction(9, 2))
    assert summatory("chi_p", 3, 3).ys == (Fraction(1, 2), Fraction(3, 4),
                                           Fraction(2))
    with pytest.raises(ValueError):
        summatory("nope", 3, 3)


def test_closed_sums_examples():
    assert closed_sums(3, 3)["r_closed"] == Fraction(21, 2)
    assert closed_sums(3, 2)["chi_closed"] == 2
    assert closed_sums(3, 3)["ones_closed"] == 12
    # the printed variant of the chi checkpoint disagrees with brute force
    assert chi_checkpoint_printed(2) == 1
    assert chi_checkpoint_printed(2) != closed_sums(3, 2)["chi_closed"]


def test_closed_form_checkpoints():
    for p in (3, 5, 7):
        table = summatory("r_p", p, (1 << 14) - 1)
        for n in range(1, 15):
            assert table.ys[(1 << n) - 2] == closed_sums(p, n)["r_closed"]


def test_chi_checkpoints_corrected_vs_printed():
    table = summatory("chi_p", 3, (1 << 14) - 1)
    for n in range(1, 15):
        brute = table.ys[(1 << n) - 2]
        assert brute == closed_sums(3, n)["chi_closed"]
        assert brute == Fraction(n * (1 << n), 4)
        if n >= 2:  # printed (N-1)/4 * 2^N never matches for n >= 2
            assert brute != chi_checkpoint_printed(n)


def test_chi_checkpoint_recursion_general_p():
    # closed_sums for p != 3 uses S_N = (p+1)/2 S_{N-1} + 2^(N-2)
    for p in (5, 7):
        table = summatory("chi_p", p, (1 << 10) - 1)
        for n in range(1, 11):
            assert table.ys[(1 << n) - 2] == closed_sums(p, n)["chi_closed"]


def test_trollope_identity_exhaustive():
    table = summatory("ones", 3, 1 << 12)
    for n in range(1, (1 << 12) + 1):
        assert table.ys[n - 1] == trollope_rhs(n)


def test_trollope_examples():
    assert trollope_rhs(3) == 4
    assert trollope_rhs(1) == 1
    assert trollope_rhs(7) == 12


def test_takagi_examples():
    assert takagi(Fraction(1, 2), Fraction(1, 2)) == Fraction(1, 2)
    assert takagi(Fraction(1, 4), Fraction(1, 2)) == Fraction(1, 2)
    for w in (Fraction(1, 2), Fraction(-1, 3)):
        assert takagi(w, 0) == 0
    with pytest.raises(ValueError):
        takagi(Fraction(1, 2), Fraction(1, 3), tol=0.0)


def test_takagi_quarter_weight_is_parabola():
    # T_{1/4}(x) = 2x(1-x), exactly at dyadic points
    for k in range(0, 1 << 10, 37):
        x = Fraction(k, 1 << 10)
        assert takagi(Fraction(1, 4), x) == 2 * x * (1 - x)


def test_takagi_float_path_matches_exact():
    x = Fraction(1, 3)
    v = takagi(Fraction(1, 2), x, tol=1e-12)
    # T_{1/2}(1/3) = 2/3 (classical value of the blancmange at 1/3)
    assert abs(v - 2 / 3) < 1e-10


def test_triangle_wave():
    assert triangle_wave(Fraction(1, 4)) == Fraction(1, 4)
    assert triangle_wave(Fraction(7, 8)) == Fraction(1, 8)
    assert triangle_wave(Fraction(-1, 4)) == Fraction(1, 4)
    assert triangle_wave(Fraction(3)) == 0


def test_dominant_asymptotic_bound():
    import math
    for p in (3, 5):
        sig = math.log2((p + 1) / 2)
        acc = 0.0
        table = summatory("r_p", p, 1 << 14)
        for n in range(1, (1 << 14) + 1):
            acc = float(table.ys[n - 1])
            bound = p / (p - 1) * ((n + 1) ** sig - 1)
            assert acc <= bound * (1 + 1e-12) + 1e-9


def test_blancmange_examples():
    tables = blancmange_tables(3, 3)
    assert tables["bl_p"].ys[2] == 0
    assert tables["bl_tilde"].ys[0] == Fraction(-1, 2)
    assert abs(tables["bl"].ys[2]) < 1e-12
    assert all(isfinite(float(v)) for v in tables["bl"].ys)


def test_blancmange_irrational_sigma_path():
    tables = blancmange_tables(5, 8)
    assert all(isfinite(float(v)) for v in tables["bl_p"].ys)


def test_sign_density_examples():
    d = sign_density(3, 4)
    assert (d["plus_fraction"], d["minus_fraction"]) == (Fraction(1, 2),
                                                         Fraction(1, 2))
    d = sign_density(5, 2)
    assert (d["plus_fraction"], d["minus_fraction"]) == (0, 1)
    d = sign_density(3, 1)
    assert (d["plus_fraction"], d["minus_fraction"]) == (0, 1)


def test_product_identity_examples():
    assert product_identity_check(1, 1, 3)
    assert product_identity_check(3, 1, 2)
    assert product_identity_check(2, Fraction(1, 2), 2)


@settings(max_examples=50)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=8),
       st.fractions(min_value=-2, max_value=2, max_denominator=8),
       st.integers(min_value=1, max_value=6))
def test_product_identity_property(a, z, m):
    assert product_identity_check(a, z, m)


def test_chi_sandwich_is_a_report():
    # conjecture check: counts are reported, not asserted
    rep = chi_sandwich_report(3, 1 << 10)
    assert set(rep) == {"n_max", "lower_failures", "upper_failures"}
    assert rep["n_max"] == 1 << 10

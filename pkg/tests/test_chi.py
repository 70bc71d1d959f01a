"""chi_p, r_p, branch composition, and the periodic-point sweep."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpmaps import (
    TwoAdic,
    big_B,
    branch_affine,
    chi,
    chi_mod,
    chi_of_B,
    find_periodic_points,
    hp_orbit,
    r,
)
from hpmaps.digits import abs2, concat_power, nat_to_word, word_to_nat


def test_hp_orbit_examples():
    rep = hp_orbit(3, 3)
    assert rep.iterates[:6] == (3, 5, 8, 4, 2, 1)
    assert rep.cycle and set(rep.cycle_members) == {1, 2}

    rep = hp_orbit(1, 3)
    assert rep.cycle and set(rep.cycle_members) == {1, 2}

    rep = hp_orbit(-1, 3)
    assert rep.cycle and rep.cycle_members == (-1,)


def test_hp_orbit_parity_word():
    rep = hp_orbit(3, 3)
    assert rep.parity_word[: len(rep.iterates) - 1] == tuple(
        x % 2 for x in rep.iterates[:-1])


def test_chi_examples():
    for p in (3, 5, 7):
        assert chi(3, p) == Fraction(2 + p, 4)
        assert chi(0, p) == 0
        assert chi(5, p) == Fraction(4 + p, 8)


def test_r_examples():
    assert r(1, 3) == Fraction(3, 2)
    assert r(2, 3) == Fraction(3, 4)
    assert r(3, 3) == Fraction(9, 4)
    assert r(0, 3) == 1


def test_branch_affine_examples():
    h = branch_affine((0, 1), 3)
    assert (h.slope, h.intercept) == (Fraction(3, 4), Fraction(1, 4))
    h = branch_affine((0,), 3)
    assert (h.slope, h.intercept) == (Fraction(1, 2), Fraction(0))
    h = branch_affine((1, 1), 3)
    assert (h.slope, h.intercept) == (Fraction(9, 4), Fraction(5, 4))


@given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=8),
       st.integers(min_value=0, max_value=100))
def test_branch_affine_matches_stepwise_composition(word, x0):
    # h_j = h_{j_1} o ... o h_{j_L} applied innermost-first along the word.
    p = 3
    h = branch_affine(word, p)
    val = Fraction(x0)
    for bit in reversed(word):
        val = val / 2 if bit == 0 else (p * val + 1) / 2
    assert h(x0) == val


def test_chi_functional_equations_small():
    for p in (3, 5):
        for t in range(1 << 12):
            assert chi(2 * t, p) == chi(t, p) / 2
            assert chi(2 * t + 1, p) == (p * chi(t, p) + 1) / 2


def test_chi_of_B_examples():
    assert chi_of_B(10, 3) == 1
    assert chi_of_B(1, 3) == -1
    # t = 14: the symbolic column (4+2p+p^2)/(16-p^3) gives -19/11 at p=3.
    assert chi_of_B(14, 3) == Fraction(-19, 11)
    assert chi_of_B(14, 3) != Fraction(19, 7)


def test_chi_of_B_closed_form():
    for p in (3, 5):
        for t in range(1, 1 << 12):
            assert chi_of_B(t, p) == chi(t, p) / (1 - r(t, p))


def test_chi_of_B_is_2adic_unit():
    for t in range(1, 1 << 12):
        assert abs2(chi_of_B(t, 3)) == 1


def test_chi_mod_examples():
    assert chi_mod(TwoAdic(-1), 3, 2).value == 8
    assert chi_mod(5, 3, 2).value == 2
    assert chi_mod(0, 3, 4).value == 0


def test_chi_mod_consistent_with_chi_on_naturals():
    for t in range(1, 200):
        for n in (1, 2, 3):
            mod = 3**n
            v = chi(t, 3)
            expected = v.numerator * pow(v.denominator, -1, mod) % mod
            assert chi_mod(t, 3, n).value == expected


def test_double_convergence_chi_mod_of_B():
    # chi_3 evaluated 2-adically at B(t) lands on chi_3(B(t)) mod 3^n.
    for t in range(1, 257):
        q = chi_of_B(t, 3)
        for n in (1, 2, 4):
            mod = 3**n
            if q.denominator % 3 == 0:
                continue
            expected = q.numerator * pow(q.denominator, -1, mod) % mod
            assert chi_mod(TwoAdic(big_B(t)), 3, n).value == expected


@given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=8).filter(any),
       st.integers(min_value=1, max_value=4))
@settings(max_examples=100)
def test_repeated_word_geometric_identity(word, m):
    # slope(j^m) = slope(j)^m and (1 - r^m) chi_p(B(j)) = chi_p(beta(j^m)).
    j = tuple(word)
    while j[-1] == 0:
        j = j[:-1]
    p = 3
    t = word_to_nat(j)
    h1 = branch_affine(j, p)
    hm = branch_affine(concat_power(j, m), p)
    assert hm.slope == h1.slope**m
    assert (1 - h1.slope**m) * chi_of_B(t, p) == chi(word_to_nat(concat_power(j, m)), p)


def test_sweep_p3_t15():
    recs = find_periodic_points(3, 15)
    found = {rec.witness_t: rec.omega for rec in recs}
    # stated witness set for t <= 14, plus t = 15 (all-ones word, omega -1)
    assert {t: w for t, w in found.items() if t <= 14} == \
        {1: -1, 2: 1, 3: -1, 5: -7, 6: -5, 7: -1, 10: 1}
    assert found[15] == -1
    assert all(rec.verified_by_orbit for rec in recs)
    assert all(rec.word == nat_to_word(rec.witness_t) for rec in recs)


def test_sweep_p5_t15():
    found = {rec.witness_t: rec.omega for rec in find_periodic_points(5, 15)}
    assert found == {2: -1, 10: -1}


def test_sweep_p3_t1():
    found = {rec.witness_t: rec.omega for rec in find_periodic_points(3, 1)}
    assert found == {1: -1}
    with pytest.raises(ValueError):
        find_periodic_points(3, 0)


def test_sweep_parallel_matches_serial():
    serial = find_periodic_points(3, 4096)
    parallel = find_periodic_points(3, 4096, threads=2)
    assert serial == parallel

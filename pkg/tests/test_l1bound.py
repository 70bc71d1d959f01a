"""Digit-spreading maps, the real chi extensions, Fourier coefficients,
and the L1-norm constraint on positive cycles."""

import random
from fractions import Fraction

import pytest

from hpmaps import (
    TwoAdic,
    chi_kappa_hat,
    chi_kappa_real,
    chi_mod,
    chi_prime_real,
    d_kappa_member,
    fourier_reconstruct,
    l1_bound,
    l1_norm_truncated,
    tau_kappa,
)
from hpmaps.digits import val2
from hpmaps.l1bound import (
    DivergenceError,
    mean_identity,
    positive_dkappa_witnesses,
)


def test_tau_examples():
    assert tau_kappa(3, 2).value == 5
    assert tau_kappa(3, 3).value == 9
    assert tau_kappa(TwoAdic(-1), 3).value == Fraction(-1, 7)
    assert tau_kappa(5, 1).value == 5
    with pytest.raises(ValueError):
        tau_kappa(3, 0)


def test_tau_functional_equations():
    rng = random.Random(7)
    for kappa in (2, 3):
        for _ in range(200):
            z = Fraction(rng.randrange(-500, 500),
                         2 * rng.randrange(0, 200) + 1)
            tz = tau_kappa(z, kappa).value
            assert tau_kappa(2 * z, kappa).value == (1 << kappa) * tz
            assert tau_kappa(2 * z + 1, kappa).value == (1 << kappa) * tz + 1


def test_tau_is_holder():
    # |tau(x) - tau(y)|_2 = |x - y|_2^kappa
    rng = random.Random(1)
    for kappa in (2, 3):
        for _ in range(500):
            x = rng.randrange(1 << 20)
            y = rng.randrange(1 << 20)
            if x == y:
                continue
            d = tau_kappa(x, kappa).value - tau_kappa(y, kappa).value
            assert val2(d) == kappa * val2(x - y)


def test_chi_prime_real_examples():
    assert chi_prime_real(TwoAdic(Fraction(-1, 7)), 3) == Fraction(4, 5)
    assert chi_prime_real(4, 3) == Fraction(1, 8)
    assert chi_prime_real(0, 3) == 0
    with pytest.raises(DivergenceError):
        chi_prime_real(TwoAdic(-1), 3)


def test_chi_prime_real_matches_chi_on_naturals():
    from hpmaps import chi
    for t in range(0, 512):
        assert chi_prime_real(t, 3) == chi(t, 3)


def test_chi_kappa_functional_equations():
    # chi(2z) = chi(z)/2^kappa, chi(2z+1) = (p chi(z) + 2^(kappa-1))/2^kappa
    rng = random.Random(5)
    p, kappa = 3, 3
    for _ in range(200):
        z = Fraction(rng.randrange(-500, 500), 2 * rng.randrange(0, 200) + 1)
        c = chi_kappa_real(z, p, kappa)
        assert chi_kappa_real(2 * z, p, kappa) == c / (1 << kappa)
        assert chi_kappa_real(2 * z + 1, p, kappa) == \
            (p * c + (1 << (kappa - 1))) / (1 << kappa)


def test_chi_kappa_hat_examples():
    assert chi_kappa_hat(0, 3, 3) == complex(Fraction(1, 3))
    assert chi_kappa_hat(Fraction(1, 2), 3, 3) == complex(Fraction(-7, 24))
    v = chi_kappa_hat(Fraction(1, 4), 3, 3)
    assert abs(v - complex(Fraction(-7, 384)) * (1 - 3j)) < 1e-15
    with pytest.raises(ValueError):
        chi_kappa_hat(Fraction(1, 3), 3, 3)


def test_l1_bound_closed_form():
    assert l1_bound(3, 3) == Fraction(11, 12)
    assert l1_bound(3, 4) == Fraction(9, 14)
    with pytest.raises(ValueError):
        l1_bound(3, 2)  # needs 2^kappa - 1 > p


def test_l1_norm_truncated_bounded_and_monotone():
    prev = 0.0
    for M in range(1, 15):
        total, tail = l1_norm_truncated(3, 3, M)
        assert prev <= total + 1e-12
        assert total <= float(Fraction(11, 12)) + 1e-12
        assert total + tail >= prev
        prev = total
    # the closed form dominates the whole series, truncation plus tail
    total, tail = l1_norm_truncated(3, 3, 14)
    assert total + tail <= float(Fraction(11, 12)) + 1e-12


def test_fourier_reconstruct_matches_real_values():
    p, kappa, M = 3, 3, 14
    _, tail = l1_norm_truncated(p, kappa, M)
    for z in (TwoAdic(-1), TwoAdic(Fraction(-1, 3)), TwoAdic(5)):
        rec = fourier_reconstruct(z, p, kappa, M)
        exact = chi_kappa_real(z, p, kappa)
        assert abs(rec - float(exact)) <= tail + 1e-9


def test_mean_identity():
    emp, limit = mean_identity(16, 3, 3)
    assert limit == float(Fraction(1, 3))
    assert abs(emp - limit) < 0.05 * limit


def test_chi_mod_residues_of_minus_one_seventh():
    # the 2-adic value -1/7 has real chi_{3;3} image 4/5; the p-adic
    # residues of chi_3 at the same point match 4/5 mod 3^n
    z = TwoAdic(Fraction(-1, 7))
    for n in (1, 2, 3, 4):
        mod = 3**n
        expected = 4 * pow(5, -1, mod) % mod
        assert chi_mod(z, 3, n).value == expected


def test_d_kappa_member():
    assert d_kappa_member((1, 0, 0), 3) is True
    assert d_kappa_member((1, 0, 0, 1, 0, 0), 3) is True
    assert d_kappa_member((1, 0), 3) is False
    assert d_kappa_member((1,), 3) is False
    assert d_kappa_member((1, 0, 1, 0, 0, 0), 3) is False
    assert d_kappa_member((0, 0, 0), 3) is False
    assert d_kappa_member((1,), 1) is True
    with pytest.raises(ValueError):
        d_kappa_member((1, 0), 0)


def test_no_positive_cycle_routed_through_d3(sweep_3_20):
    # every positive-omega witness word must leave D_3
    routed = [rec for rec in sweep_3_20
              if rec.omega > 0 and d_kappa_member(rec.word, 3)]
    assert routed == []
    assert positive_dkappa_witnesses(3, 3, 1 << 14) == []

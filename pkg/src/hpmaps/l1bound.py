"""Digit-spreading maps tau_kappa, the real-valued chi extensions, and
the Wiener-style L1 bound.

tau_kappa sends the one-digit at position b to position kappa*b, so
composites chi_{p;kappa} = chi'_p o tau_kappa satisfy
chi(2z) = chi(z)/2^kappa, chi(2z+1) = (p chi(z) + 2^(kappa-1))/2^kappa
and have 2-adically continuous real values whose Fourier series over
the Pontryagin dual of Z_2 is absolutely summable once 2^kappa - 1 > p.
Cycles of H_p routed through the image set D_kappa (streams whose
cyclic one-gaps are all >= kappa) are then constrained by the L1 norm.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .digits import TwoAdic, val2


class DivergenceError(ArithmeticError):
    """The geometric tail of the requested series has ratio >= 1."""


def tau_kappa(z, kappa: int) -> TwoAdic:
    """Spread the one-digits of z: position b moves to kappa*b.

    Exact on eventually periodic 2-adics: a prefix of length L maps to
    length kappa*L, a period of length T to length kappa*T.
    """
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    if not isinstance(z, TwoAdic):
        z = TwoAdic(z)
    prefix, period = z.to_prefix_period()
    new_prefix = [0] * (kappa * len(prefix))
    for i, b in enumerate(prefix):
        if b:
            new_prefix[kappa * i] = 1
    new_period = [0] * (kappa * len(period))
    for i, b in enumerate(period):
        if b:
            new_period[kappa * i] = 1
    return TwoAdic.from_prefix_period(tuple(new_prefix), tuple(new_period))


def chi_prime_real(z, p: int) -> Fraction:
    """The real value of chi_p extended to an eventually periodic 2-adic.

    Sum over all one-digits of p^(k-1)/2^(position+1); the periodic tail
    is an exact geometric series with ratio p^J / 2^T (J ones in a period
    of length T), so the value is rational. Raises DivergenceError when
    the ratio is >= 1 (the series has no real value there).
    """
    if not isinstance(z, TwoAdic):
        z = TwoAdic(z)
    prefix, period = z.to_prefix_period()
    total = Fraction(0)
    pk = 1  # p^(k-1)
    for i, b in enumerate(prefix):
        if b:
            total += Fraction(pk, 1 << (i + 1))
            pk *= p
    ones = [i for i, b in enumerate(period) if b]
    if not ones:
        return total
    ratio = Fraction(p ** len(ones), 1 << len(period))
    if ratio >= 1:
        raise DivergenceError(f"periodic tail ratio {ratio} >= 1")
    L = len(prefix)
    tail = Fraction(0)
    for o in ones:
        tail += Fraction(pk, 1 << (L + o + 1))
        pk *= p
    return total + tail / (1 - ratio)


def chi_kappa_real(z, p: int, kappa: int) -> Fraction:
    """chi_{p;kappa}(z) = chi'_p(tau_kappa(z)), exact."""
    return chi_prime_real(tau_kappa(z, kappa), p)


def _hat_denominator(p: int, kappa: int) -> int:
    d = (1 << (kappa + 1)) - 1 - p
    if (1 << kappa) - 1 <= p:
        raise ValueError("the L1 machinery needs 2^kappa - 1 > p")
    return d


def chi_kappa_hat(t, p: int, kappa: int) -> complex:
    """Fourier coefficient of chi_{p;kappa} at the dyadic frequency t.

    hat(0) = 2^(kappa-1) / (2^(kappa+1)-1-p), hat(1/2) = (1-2^kappa) times
    half that denominator's reciprocal, and for |t|_2 = 2^m >= 4 the
    coefficient is hat(1/2) prod_{i=0}^{m-2} (1 + p e^(-2 pi i t 2^i)) / 2^(kappa+1).
    """
    d = _hat_denominator(p, kappa)
    t = Fraction(t) % 1
    if t == 0:
        return complex(Fraction(1 << (kappa - 1), d))
    if t == Fraction(1, 2):
        return complex(Fraction(1 - (1 << kappa), 2 * d))
    m = -val2(t)
    if m < 2 or (t.denominator & (t.denominator - 1)):
        raise ValueError("t must be dyadic")
    val = complex(Fraction(1 - (1 << kappa), 2 * d))
    for i in range(m - 1):
        val *= (1 + p * np.exp(-2j * math.pi * float(t * (1 << i) % 1)))
        val /= 1 << (kappa + 1)
    return val


def l1_bound(p: int, kappa: int) -> Fraction:
    """Closed form of the full L1 norm of the chi_{p;kappa} coefficients.

    2^(kappa-1) (2^(kappa+1)-2-p) / ((2^kappa-p-1)(2^(kappa+1)-p-1));
    requires 2^kappa - 1 > p.
    """
    _hat_denominator(p, kappa)
    num = (1 << (kappa - 1)) * ((1 << (kappa + 1)) - 2 - p)
    den = ((1 << kappa) - p - 1) * ((1 << (kappa + 1)) - p - 1)
    return Fraction(num, den)


def _shell_hats(p: int, kappa: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """(odd j array, hat values) on the shell |t|_2 = 2^m (m >= 2)."""
    d = _hat_denominator(p, kappa)
    j = np.arange(1, 1 << m, 2)
    vals = np.full(len(j), (1.0 - (1 << kappa)) / (2.0 * d), dtype=complex)
    for i in range(m - 1):
        vals *= (1 + p * np.exp(-2j * math.pi * ((j * (1 << i)) % (1 << m)) / (1 << m)))
        vals /= 1 << (kappa + 1)
    return j, vals


def l1_norm_truncated(p: int, kappa: int, M: int) -> tuple[float, float]:
    """(sum of |hat| over |t|_2 <= 2^M, geometric bound on the rest).

    Shell m contributes at most |hat(1/2)| ((p+1)/2^kappa)^(m-1), so the
    tail is |hat(1/2)| q^M / (1-q) with q = (p+1)/2^kappa < 1.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    d = _hat_denominator(p, kappa)
    total = float((1 << (kappa - 1)) / d) + ((1 << kappa) - 1) / (2.0 * d)
    for m in range(2, M + 1):
        _, vals = _shell_hats(p, kappa, m)
        total += float(np.sum(np.abs(vals)))
    q = (p + 1) / (1 << kappa)
    tail = (((1 << kappa) - 1) / (2.0 * d)) * q**M / (1 - q)
    return total, tail


def fourier_reconstruct(z, p: int, kappa: int, M: int) -> float:
    """Partial Fourier series of chi_{p;kappa} at z, over |t|_2 <= 2^M.

    {t z}_2 only needs z mod 2^m per shell, computed exactly from the
    rational form of z. Converges to chi_kappa_real(z) within the
    l1_norm_truncated tail bound.
    """
    if not isinstance(z, TwoAdic):
        z = TwoAdic(z)
    a, b = z.value.numerator, z.value.denominator
    d = _hat_denominator(p, kappa)
    total = (1 << (kappa - 1)) / d
    z1 = (a * pow(b, -1, 2)) % 2
    total += ((1.0 - (1 << kappa)) / (2.0 * d)) * (-1.0 if z1 else 1.0)
    acc = complex(0.0)
    for m in range(2, M + 1):
        zm = (a * pow(b, -1, 1 << m)) % (1 << m)
        j, vals = _shell_hats(p, kappa, m)
        phases = np.exp(2j * math.pi * ((j * zm) % (1 << m)) / (1 << m))
        acc += complex(vals @ phases)
    if abs(acc.imag) > 1e-9:
        raise ArithmeticError("reconstruction should be real")
    return total + acc.real


def d_kappa_member(word, kappa: int) -> bool:
    """Whether a repeating bit-word lies in D_kappa.

    True iff every cyclic gap between consecutive one-digits of the
    repeated stream is >= kappa (a single one needs period length >= kappa).
    """
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    word = tuple(word)
    ones = [i for i, b in enumerate(word) if b]
    if not ones:
        return False
    if len(ones) == 1:
        return len(word) >= kappa
    gaps = [b - a for a, b in zip(ones, ones[1:])]
    gaps.append(ones[0] + len(word) - ones[-1])
    return min(gaps) >= kappa


def mean_identity(N: int, p: int, kappa: int) -> tuple[float, float]:
    """(empirical mean of chi_{p;kappa} over n < 2^N, the limit hat(0)).

    Uses the dynamic program chi(2u) = chi(u)/2^kappa,
    chi(2u+1) = (p chi(u) + 2^(kappa-1))/2^kappa in float64.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    d = _hat_denominator(p, kappa)
    size = 1 << N
    c = np.empty(size)
    c[0] = 0.0
    c[1] = (1 << (kappa - 1)) / float(1 << kappa)
    scale = float(1 << kappa)
    half = float(1 << (kappa - 1))
    for n in range(2, size):
        u = n >> 1
        c[n] = (p * c[u] + half) / scale if n & 1 else c[u] / scale
    return float(c.mean()), (1 << (kappa - 1)) / d


def positive_dkappa_witnesses(p: int, kappa: int, t_max: int,
                              threads: int = 1) -> list:
    """Periodic-point sweep filtered to positive cycles routed through D_kappa."""
    from .chi import find_periodic_points

    out = []
    for rec in find_periodic_points(p, t_max, threads=threads):
        if rec.omega > 0 and d_kappa_member(rec.word, kappa):
            out.append(rec)
    return out

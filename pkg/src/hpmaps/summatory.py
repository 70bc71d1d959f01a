"""Summatory functions of #1, r_p, chi_p and the blancmange identities.

Everything here is exact rational arithmetic except where a log2 factor
forces floats (the Bl table) or where sigma_p is irrational (Bl_p for
p not in {3, 7}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log2

from .chi import chi, r
from .digits import digit_profile


@dataclass(frozen=True)
class SeriesTable:
    xs: tuple[int, ...]
    ys: tuple
    label: str


def summatory(kind: str, p: int, n_max: int) -> SeriesTable:
    """Exact prefix sums sum_{m=1..n} f(m) for n <= n_max.

    kind is one of 'ones', 'r_p', 'chi_p'.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if kind == "ones":
        term = lambda m: digit_profile(m).ones
    elif kind == "r_p":
        term = lambda m: r(m, p)
    elif kind == "chi_p":
        term = lambda m: chi(m, p)
    else:
        raise ValueError(f"unknown summatory kind: {kind!r}")
    ys = []
    acc = Fraction(0) if kind != "ones" else 0
    for m in range(1, n_max + 1):
        acc += term(m)
        ys.append(acc)
    return SeriesTable(tuple(range(1, n_max + 1)), tuple(ys), kind)


def closed_sums(p: int, n: int) -> dict:
    """Closed forms of the three summatory functions at the point 2**n - 1.

    ones: n * 2**(n-1).
    r_p:  p/(p-1) * (((p+1)/2)**n - 1).
    chi_p: N * 2**(N-2) for p = 3; general p by the exact recursion
    S_N = ((p+1)/2) * S_{N-1} + 2**(N-2), which the brute sum satisfies.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ones_closed = n * (1 << (n - 1))
    r_closed = Fraction(p, p - 1) * (Fraction(p + 1, 2) ** n - 1)
    if p == 3:
        chi_closed = Fraction(n * (1 << n), 4)
    else:
        s = Fraction(0)
        for k in range(1, n + 1):
            s = Fraction(p + 1, 2) * s + Fraction(1 << k, 4)
        chi_closed = s
    return {"ones_closed": ones_closed, "r_closed": r_closed,
            "chi_closed": chi_closed}


def chi_checkpoint_printed(n: int) -> Fraction:
    """The (n-1)/4 * 2**n variant of the p=3 chi checkpoint.

    Kept only so reports can flag its disagreement with the brute sum.
    """
    return Fraction((n - 1) * (1 << n), 4)


def triangle_wave(x: Fraction) -> Fraction:
    """Distance from x to the nearest integer, exact."""
    frac = x - int(x)
    if frac < 0:
        frac += 1
    return min(frac, 1 - frac)


def takagi(w: Fraction, x: Fraction, tol: float = 1e-12):
    """Takagi-Landsberg T_w(x) = sum of w**n * s(2**n x).

    Exact Fraction for dyadic x (the series terminates); otherwise a float
    partial sum with tail bound sum_{n>N} |w|**n / 2 < tol.
    """
    w = Fraction(w)
    x = Fraction(x)
    if not -1 < w < 1:
        raise ValueError("need |w| < 1")
    if not 0 <= x <= 1:
        raise ValueError("need 0 <= x <= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    den = x.denominator
    if den & (den - 1) == 0:
        total = Fraction(0)
        y = x
        wn = Fraction(1)
        while y.denominator > 1:
            total += wn * triangle_wave(y)
            y = y * 2 - int(y * 2)
            wn *= w
        return total
    total = 0.0
    y = x
    wn = 1.0
    wf = float(w)
    n = 0
    while abs(wn) / (2 * (1 - abs(wf))) >= tol:
        total += wn * float(triangle_wave(y))
        y = y * 2 - int(y * 2)
        wn *= wf
        n += 1
    return total


def trollope_rhs(n: int) -> Fraction:
    """Closed form for sum_{m=1..n} #1(m) via the classical Takagi curve.

    ((n+1)(lambda(n)+1) - 2**lambda)/2 - 2**(lambda-2) * T((n+1)/2**(lambda-1) - 1)
    with T = T_{1/2}, evaluated exactly (the argument is dyadic).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = digit_profile(n).length
    arg = Fraction(n + 1, 1 << (lam - 1)) - 1
    t_val = takagi(Fraction(1, 2), arg)
    return (Fraction((n + 1) * (lam + 1) - (1 << lam), 2)
            - Fraction(1 << lam, 4) * t_val)


def blancmange_tables(p: int, x_max: int) -> dict:
    """The Bl, Bl_p and Bl-tilde tables at integer x <= x_max.

    Bl(x) = (x+1)/2 * log2(x+1) - sum #1 (float for the log term).
    Bl_p(x) = p/(p-1) * ((x+1)**sigma_p - 1) - sum r_p; exact when sigma_p
    is an integer (p in {3, 7}), float otherwise.
    Bl~_p(x) = sum (1 - r_p(m)), always exact.
    """
    if x_max < 1:
        raise ValueError("x_max must be >= 1")
    xs = tuple(range(1, x_max + 1))
    ones_acc = 0
    r_acc = Fraction(0)
    bl, bl_p, bl_tilde = [], [], []
    sigma_int = {3: 1, 7: 2}.get(p)
    for x in xs:
        ones_acc += digit_profile(x).ones
        r_acc += r(x, p)
        bl.append((x + 1) / 2 * log2(x + 1) - ones_acc)
        if sigma_int is not None:
            main = Fraction(p, p - 1) * ((x + 1) ** sigma_int - 1)
            bl_p.append(main - r_acc)
        else:
            main = p / (p - 1) * ((x + 1) ** log2((p + 1) / 2) - 1)
            bl_p.append(main - float(r_acc))
        bl_tilde.append(x - r_acc)
    return {"bl": SeriesTable(xs, tuple(bl), "bl"),
            "bl_p": SeriesTable(xs, tuple(bl_p), f"bl_{p}"),
            "bl_tilde": SeriesTable(xs, tuple(bl_tilde), f"bl_tilde_{p}")}


def sign_density(p: int, n_max: int) -> dict:
    """Fractions of n <= n_max with r_p(n) < 1 and r_p(n) > 1."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    plus = sum(1 for n in range(1, n_max + 1) if r(n, p) < 1)
    return {"plus_fraction": Fraction(plus, n_max),
            "minus_fraction": Fraction(n_max - plus, n_max)}


def product_identity_check(a, z, m: int) -> bool:
    """Verify the digit-sum generating products exactly in Q.

    Full range: sum_{n < 2**m} a**#1(n) z**n = prod_{j<m} (1 + a z**(2**j)).
    Top half:   sum over 2**(m-1) <= n < 2**m equals
                a z**(2**(m-1)) prod_{j<m-1} (1 + a z**(2**j)).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    a, z = Fraction(a), Fraction(z)
    lhs = sum(a ** digit_profile(n).ones * z**n for n in range(1 << m))
    rhs = Fraction(1)
    for j in range(m):
        rhs *= 1 + a * z ** (1 << j)
    lhs_half = sum(a ** digit_profile(n).ones * z**n
                   for n in range(1 << (m - 1), 1 << m))
    rhs_half = a * z ** (1 << (m - 1))
    for j in range(m - 1):
        rhs_half *= 1 + a * z ** (1 << j)
    return lhs == rhs and lhs_half == rhs_half


def chi_sandwich_report(p: int, n_max: int) -> dict:
    """Empirical check of the conjectured chi_3 summatory sandwich.

    (n+1)/4 * log2((n+1)/2) <= sum_{k<=n} chi_3(k) <= (n+1)/4 * (1 + log2((n+1)/2)).
    Returns counts, not assertions (it is a conjecture check).
    """
    failures_lo, failures_hi = [], []
    acc = Fraction(0)
    for n in range(1, n_max + 1):
        acc += chi(n, p)
        mid = (n + 1) / 4 * log2((n + 1) / 2)
        if float(acc) < mid - 1e-9:
            failures_lo.append(n)
        if float(acc) > (n + 1) / 4 + mid + 1e-9:
            failures_hi.append(n)
    return {"n_max": n_max, "lower_failures": failures_lo,
            "upper_failures": failures_hi}

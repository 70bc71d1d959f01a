"""chi_p as a p-adic random variable on the 2-adic coin-flip space.

With Haar probability on the 2-adic integers, chi_p(Z) mod p^n has an
exact rational distribution f_p (only the first n one-positions of Z
matter, and position masses are dyadic). phi_p is the characteristic
function E[e^(2 pi i {t chi_p}_p)]. Both have closed forms when 2 is a
primitive root mod p and p^2 ("p is a friend of 2"), plus brute-force
oracles here (digit enumeration with an exact tail interval, and a
seeded Monte Carlo) that do not share code paths with the closed forms.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from fractions import Fraction

import numpy as np

from .chi import branch_affine, chi, chi_mod
from .digits import TwoAdic, _mult_order, digit_profile, is_friend_of_2, padic_valuation


def vdp_coeff(t: int, p: int) -> Fraction:
    """van der Put coefficient of chi_p at t: p^(#1(t)-1) / 2^lambda(t).

    Equals chi_p(t) - chi_p(t - 2^(lambda(t)-1)); 0 at t = 0.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return Fraction(0)
    prof = digit_profile(t)
    return Fraction(p ** (prof.ones - 1), 1 << prof.length)


def chi_N_hat(N: int, p: int) -> np.ndarray:
    """DFT of chi_p over one period of depth N.

    Entry k is (1/2^N) sum_{n < 2^N} chi_p(n) e^(-2 pi i k n / 2^N).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    vals = np.array([float(chi(n, p)) for n in range(1 << N)])
    return np.fft.fft(vals) / (1 << N)


# ---------------------------------------------------------------------------
# the distribution f_p

def _check_friend(p: int) -> None:
    if not is_friend_of_2(p):
        raise ValueError(f"closed form needs 2 to be a friend of {p}")


def f_p(k: int, n: int, p: int, term_cap: int = 10**6) -> Fraction:
    """P(chi_p = k mod p^n) by the closed tuple-sum formula.

    Sums 2^((p-1) Sigma(u)) 2^(Sigma(j)) [alpha_p(u; j) = k mod p^n] over
    u in prod_i [0, p^(n-i)) (length n-1) and j in [0, p-1)^n, divided by
    prod_{l<n} (2^((p-1) p^l) - 1); alpha_p(u; j) is the truncating
    partial-sum combination sum_l 2^((p-1) Sigma_l(u)) 2^(Sigma_l(j)) p^(l-1).
    """
    _check_friend(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    mod = p**n
    k %= mod
    if k % p == 0:
        # alpha is a unit mod p (its l = 1 term is a power of 2), so the
        # indicator never fires.
        return Fraction(0)
    terms = (p - 1) ** n
    for i in range(1, n):
        terms *= p ** (n - i)
    if terms > term_cap:
        raise ValueError(f"tuple sum needs {terms} terms, cap is {term_cap}")
    denom = 1
    for ell in range(n):
        denom *= (1 << ((p - 1) * p**ell)) - 1
    ppow = [p**i % mod for i in range(n)]
    num = 0
    u_ranges = [range(p ** (n - i)) for i in range(1, n)]
    for u in itertools.product(*u_ranges):
        # Sigma_l(u) truncates at the tuple length n-1
        su = list(itertools.accumulate(u)) or [0]
        su_l = [su[min(ell, len(u) - 1)] if u else 0 for ell in range(n)]
        a_l = [pow(2, (p - 1) * s, mod) for s in su_l]
        w_u = 1 << ((p - 1) * (su[-1] if u else 0))
        for j in itertools.product(range(p - 1), repeat=n):
            sj = list(itertools.accumulate(j))
            alpha = 0
            for ell in range(n):
                alpha += a_l[ell] * pow(2, sj[ell], mod) * ppow[ell]
            if alpha % mod == k:
                num += w_u << sj[-1]
    return Fraction(num, denom)


def f_p_interval(k: int, n: int, p: int, depth: int = 40) -> tuple[Fraction, Fraction]:
    """Brute-force enclosure of P(chi_p = k mod p^n) from digit patterns.

    Enumerates placements of the first n one-positions within `depth`
    digits (each pattern has exact mass 2^-(last position + 1)); the
    unresolved mass is the probability of fewer than n ones in `depth`
    fair digits, returned as the interval width.
    """
    _check_friend(p)
    if n < 1 or depth < n:
        raise ValueError("need depth >= n >= 1")
    mod = p**n
    k %= mod
    lower = Fraction(0)
    inv2 = [pow(2, -(b + 1), mod) for b in range(depth)]
    for positions in itertools.combinations(range(depth), n):
        total = 0
        pk = 1
        for b in positions:
            total = (total + pk * inv2[b]) % mod
            pk = (pk * p) % mod
        if total == k:
            lower += Fraction(1, 1 << (positions[-1] + 1))
    tail = Fraction(sum(math.comb(depth, i) for i in range(n)), 1 << depth)
    return lower, lower + tail


def f_p_montecarlo(k: int, n: int, p: int, samples: int = 200_000,
                   seed: int = 0) -> dict:
    """Seeded Monte Carlo estimate of P(chi_p = k mod p^n).

    Draws the gaps between one-positions of a Haar-random 2-adic integer
    (geometric with ratio 1/2) and tallies chi_p mod p^n. Returns the
    frequency and a 3-sigma binomial half-width; deterministic per seed.
    """
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    mod = p**n
    k %= mod
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        total = 0
        pk = 1
        pos = -1
        for _ in range(n):
            gap = 1
            while rng.getrandbits(1):
                gap += 1
            pos += gap
            total = (total + pk * pow(2, -(pos + 1), mod)) % mod
            pk = (pk * p) % mod
        if total == k:
            hits += 1
    freq = hits / samples
    sigma = math.sqrt(max(freq * (1 - freq), 1.0 / samples) / samples)
    return {"estimate": freq, "three_sigma": 3 * sigma, "samples": samples,
            "seed": seed}


# ---------------------------------------------------------------------------
# the characteristic function phi_p

def phi_p(t: Fraction, p: int, term_cap: int = 10**6) -> complex:
    """phi_p(t) = E[e^(2 pi i {t chi_p}_p)] for t with p-power denominator.

    Closed nested-sum formula driven by the multiplicative orders of 2
    mod p^l (valid for every odd prime p, friend of 2 or not); phi_p(0) = 1.
    """
    t = Fraction(t) % 1
    if t == 0:
        return complex(1.0)
    den = t.denominator
    n = padic_valuation(den, p)
    if p**n != den:
        raise ValueError("t must have a p-power denominator")
    k = t.numerator
    mod = p**n
    orders = [_mult_order(2, p**m) for m in range(1, n + 1)]  # orders[m-1]
    # j_l ranges over the order of 2 mod p^(n-l+1)
    ranges = [orders[n - ell] for ell in range(1, n + 1)]
    terms = math.prod(ranges)
    if terms > term_cap:
        raise ValueError(f"nested sum needs {terms} terms, cap is {term_cap}")
    log_denom = sum(math.log2((1 << w) - 1) for w in orders)
    ppow = [p**i % mod for i in range(n)]
    total = complex(0.0)
    for j in itertools.product(*(range(w) for w in ranges)):
        sj = list(itertools.accumulate(j))
        alpha = 0
        for ell in range(n):
            alpha += pow(2, sj[ell], mod) * ppow[ell]
        weight = 2.0 ** (sj[-1] - log_denom)
        total += weight * cmath.exp(2j * math.pi * ((k * alpha) % mod) / mod)
    return total


def phi_p_from_f(t: Fraction, p: int) -> complex:
    """Cross-check: phi_p(t) = sum_k f_p(k mod p^n) e^(2 pi i t k)."""
    t = Fraction(t) % 1
    if t == 0:
        return complex(1.0)
    n = padic_valuation(t.denominator, p)
    mod = p**n
    total = complex(0.0)
    for k in range(mod):
        mass = f_p(k, n, p)
        if mass:
            total += float(mass) * cmath.exp(2j * math.pi * float(t * k % 1))
    return total


# ---------------------------------------------------------------------------
# p-adic Lipschitz estimates and digit congruences

def _one_positions(z, count: int) -> tuple[int, ...]:
    if isinstance(z, TwoAdic):
        try:
            return z.one_positions(count)
        except ValueError:
            pass
        # terminating expansion: take every one there is
        prefix, period = z.to_prefix_period()
        if period:
            raise
        return tuple(i for i, b in enumerate(prefix) if b)
    prof = digit_profile(int(z))
    return prof.positions[:count]


def lipschitz_bound(s, t, p: int, K: int = 32) -> Fraction:
    """Upper bound for |chi_p(s) - chi_p(t)|_p from the one-positions.

    Term k contributes p^(-e_k + k - 1 ... ) precisely:
    p^(-[beta_k(s) = beta_k(t) mod p-1] (1 + nu_p(beta_k(s) - beta_k(t))) - k + 1);
    equal positions contribute nothing, a position present in only one
    argument contributes p^(-k+1). Terms with k > K are covered by p^-K.
    """
    _check_friend(p)
    bs = _one_positions(s, K)
    bt = _one_positions(t, K)
    if bs == bt and len(bs) < K:
        return Fraction(0)
    best = None
    for k in range(1, max(len(bs), len(bt)) + 1):
        a = bs[k - 1] if k <= len(bs) else None
        b = bt[k - 1] if k <= len(bt) else None
        if a == b:
            continue
        if a is None or b is None:
            e = 0
        elif (a - b) % (p - 1) == 0:
            e = 1 + padic_valuation(a - b, p)
        else:
            e = 0
        exponent = -e - k + 1
        val = Fraction(1, p**-exponent) if exponent <= 0 else Fraction(p**exponent)
        if best is None or val > best:
            best = val
    residual = Fraction(1, p**K)
    if len(bs) == K or len(bt) == K:
        best = residual if best is None else max(best, residual)
    return best if best is not None else Fraction(0)


def padic_distance(s: int, t: int, p: int) -> Fraction:
    """|chi_p(s) - chi_p(t)|_p for naturals, exact."""
    d = chi(s, p) - chi(t, p)
    if d == 0:
        return Fraction(0)
    v = padic_valuation(d.numerator, p) - padic_valuation(d.denominator, p)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def congruence_sufficient(s: int, t: int, m: int, p: int) -> bool:
    """Digit congruences that force chi_p(s) = chi_p(t) mod p^m.

    True iff beta_k(s) = beta_k(t) both mod p-1 and mod p^(m-k) for each
    k = 1..m (both arguments need at least m one-digits).
    """
    _check_friend(p)
    if m < 1:
        raise ValueError("m must be >= 1")
    bs = digit_profile(s).positions
    bt = digit_profile(t).positions
    if len(bs) < m or len(bt) < m:
        return False
    for k in range(1, m + 1):
        d = bs[k - 1] - bt[k - 1]
        if d % (p - 1) != 0 or d % p ** (m - k) != 0:
            return False
    return True


def bayes_check(x: int, j, n: int, p: int) -> dict:
    """Fixed-point indicator vs the f_p ceiling for the word j repeated n times.

    Tests [h_{j^n}(x) = x mod p^m] <= 2^(n |j|) f_p(x mod p^m / p^m) with
    m = n * #1(j), and, when the indicator fires, the entailed length
    bound n |j| >= -log2 f_p.
    """
    _check_friend(p)
    word = tuple(j)
    ones = sum(word)
    if ones == 0:
        raise ValueError("the word must contain a one")
    if x % p == 0:
        raise ValueError("x must be a p-adic unit")
    m = n * ones
    h = branch_affine(word * n, p)
    diff = h(x) - x
    if diff == 0:
        indicator = 1
    else:
        v = padic_valuation(diff.numerator, p) - padic_valuation(diff.denominator, p)
        indicator = 1 if v >= m else 0
    mass = f_p(x % p**m, m, p)
    bound = Fraction(1 << (n * len(word))) * mass
    out = {"indicator": indicator, "bound": bound,
           "bound_holds": indicator <= bound}
    if indicator:
        out["length_bound_holds"] = n * len(word) >= -math.log2(mass)
    return out


def chi_mod_matches_f_support(k: int, n: int, p: int, depth: int = 16) -> bool:
    """Consistency probe: a natural with chi_p = k mod p^n exists within
    depth digits iff the closed-form mass is positive (used by oracles)."""
    mass = f_p(k, n, p)
    found = any(chi_mod(t, p, n).value == k % p**n for t in range(1 << depth)
                if t % 2)  # odd t covers every leading-digit pattern
    return (mass > 0) == found

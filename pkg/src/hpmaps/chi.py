"""The maps H_p and the branch-composition limit function chi_p.

chi_p(t) collects one dyadic term per one-digit of t, weighted by rising
powers of p; r_p(t) is the slope of the affine map obtained by composing
the even/odd branches of H_p along t's digits. chi_p(B(t)) enumerates
every odd periodic-point candidate of H_p (one per repeating digit word),
and the sweep below tests all t up to a bound with an integer dynamic
program, confirming each hit by direct orbit iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digits import DigitProfile, TwoAdic, digit_profile, nat_to_word, word_to_nat


@dataclass(frozen=True)
class AffineMap:
    """x -> slope*x + intercept with p-power slope numerator."""

    slope: Fraction
    intercept: Fraction

    def __call__(self, x):
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class PadicResidue:
    p: int
    n: int
    value: int

    def __post_init__(self):
        if not (0 <= self.value < self.p**self.n):
            raise ValueError("residue out of range")


@dataclass(frozen=True)
class CycleRecord:
    witness_t: int
    omega: int
    word: tuple[int, ...]
    verified_by_orbit: bool


@dataclass(frozen=True)
class OrbitReport:
    iterates: tuple[int, ...]
    parity_word: tuple[int, ...]
    cycle: bool
    cycle_members: tuple[int, ...]


def hp(x: int, p: int) -> int:
    """One step of H_p: halve if even, else (p*x + 1)/2."""
    return x // 2 if x % 2 == 0 else (p * x + 1) // 2


def hp_orbit(x: int, p: int, max_steps: int = 10**6) -> OrbitReport:
    """Iterate H_p from x until a value repeats or max_steps is hit.

    The parity word records each iterate mod 2 (the branch taken).
    Divergence (no repeat within the cap) is reported, not raised.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    seen = {x: 0}
    iterates = [x]
    parity = []
    cur = x
    for _ in range(max_steps):
        parity.append(cur % 2)
        cur = hp(cur, p)
        if cur in seen:
            members = tuple(iterates[seen[cur]:])
            iterates.append(cur)
            return OrbitReport(tuple(iterates), tuple(parity), True, members)
        seen[cur] = len(iterates)
        iterates.append(cur)
    return OrbitReport(tuple(iterates), tuple(parity), False, ())


def chi(t: int, p: int) -> Fraction:
    """chi_p(t) = sum over ones of t of p**(k-1) / 2**(position+1)."""
    prof = digit_profile(t)
    total = Fraction(0)
    pk = 1
    for pos in prof.positions:
        total += Fraction(pk, 1 << (pos + 1))
        pk *= p
    return total


def chi_poly(t: int) -> tuple[Fraction, ...]:
    """chi_p(t) as a polynomial in p: coefficient of p**k at index k."""
    prof = digit_profile(t)
    return tuple(Fraction(1, 1 << (pos + 1)) for pos in prof.positions)


def r(t: int, p: int) -> Fraction:
    """r_p(t) = p**#1(t) / 2**lambda(t); r_p(0) = 1."""
    prof = digit_profile(t)
    return Fraction(p**prof.ones, 1 << prof.length)


def branch_affine(j, p: int) -> AffineMap:
    """The affine map h_j obtained by composing branches along the word j."""
    word = tuple(j)
    t = word_to_nat(word)
    ones = sum(word)
    return AffineMap(Fraction(p**ones, 1 << len(word)), chi(t, p))


def chi_of_B(t: int, p: int) -> Fraction:
    """chi_p(B(t)) = chi_p(t) / (1 - r_p(t)), exact; 0 at t = 0.

    After reduction the numerator and denominator are both odd for t >= 1.
    """
    if t == 0:
        return Fraction(0)
    prof = digit_profile(t)
    num = sum((1 << (prof.length - pos - 1)) * p**k
              for k, pos in enumerate(prof.positions))
    den = (1 << prof.length) - p**prof.ones
    return Fraction(num, den)


def chi_of_B_symbolic(t: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """chi_p(B(t)) as a rational function of p.

    Returns (numerator, denominator) coefficient tuples, index = power of p:
    numerator_k = 2**(lambda - beta_{k+1} - 1), denominator = 2**lambda - p**#1.
    """
    if t == 0:
        return ((0,), (1,))
    prof = digit_profile(t)
    num = tuple(1 << (prof.length - pos - 1) for pos in prof.positions)
    den = [0] * (prof.ones + 1)
    den[0] = 1 << prof.length
    den[prof.ones] = -1
    return num, tuple(den)


def chi_mod(z, p: int, n: int) -> PadicResidue:
    """chi_p(z) mod p**n for a 2-adic integer z.

    Only the first n one-positions contribute, since p**(k-1) kills the
    rest mod p**n; each term needs the inverse of 2**(position+1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not isinstance(z, TwoAdic):
        z = TwoAdic(z)
    mod = p**n
    if z.value == 0:
        return PadicResidue(p, n, 0)
    if z.is_natural():
        positions = digit_profile(int(z.value)).positions[:n]
    else:
        positions = z.one_positions(n)
    total = 0
    pk = 1
    for pos in positions:
        total = (total + pk * pow(2, -(pos + 1), mod)) % mod
        pk = (pk * p) % mod
    return PadicResidue(p, n, total)


def find_periodic_points(p: int, t_max: int, threads: int = 1) -> list[CycleRecord]:
    """All t <= t_max whose chi_p(B(t)) is an integer, orbit-verified.

    Uses the integer recurrences num(2u) = num(u),
    num(2u+1) = 2**lambda(u) + p*num(u) with denominator
    2**lambda(t) - p**#1(t), so the sweep is O(t_max) big-int work.
    Results are in ascending t regardless of sharding.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    if threads > 1:
        return _sweep_parallel(p, t_max, threads)
    return _sweep_range(p, 1, t_max)


def _sweep_range(p: int, t_lo: int, t_hi: int) -> list[CycleRecord]:
    # DP over all t up to t_hi; filter to [t_lo, t_hi] afterwards.
    num = [0] * (t_hi + 1)
    lam = [0] * (t_hi + 1)
    ones = [0] * (t_hi + 1)
    ppow = [p**k for k in range(t_hi.bit_length() + 1)]
    num[1], lam[1], ones[1] = 1, 1, 1
    hits = []
    if t_lo <= 1 and 1 % (2 - p) == 0:
        hits.append(1)
    for t in range(2, t_hi + 1):
        u = t >> 1
        if t & 1:
            num[t] = (1 << lam[u]) + p * num[u]
            ones[t] = ones[u] + 1
        else:
            num[t] = num[u]
            ones[t] = ones[u]
        lam[t] = lam[u] + 1
        if t >= t_lo:
            den = (1 << lam[t]) - ppow[ones[t]]
            if num[t] % den == 0:
                hits.append(t)
    return [_verify_witness(t, p) for t in hits]


def _sweep_parallel(p: int, t_max: int, threads: int) -> list[CycleRecord]:
    from concurrent.futures import ProcessPoolExecutor

    bounds = [(t_max * i) // threads for i in range(threads + 1)]
    shards = [(p, lo + 1, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    out: list[CycleRecord] = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_sweep_shard, shards):
            out.extend(part)
    return out


def _sweep_shard(args):
    return _sweep_range(*args)


def _verify_witness(t: int, p: int) -> CycleRecord:
    omega_frac = chi_of_B(t, p)
    if omega_frac.denominator != 1:
        raise RuntimeError("internal sweep error: non-integer witness")
    omega = int(omega_frac)
    word = nat_to_word(t)
    h = branch_affine(word, p)
    if h(omega) != omega:
        raise RuntimeError("internal sweep error: affine fixed point failed")
    report = hp_orbit(omega, p, max_steps=len(word) + 1)
    orbit_ok = report.cycle and omega in report.cycle_members
    if not orbit_ok:
        raise RuntimeError("internal sweep error: orbit verification failed")
    return CycleRecord(t, omega, word, True)

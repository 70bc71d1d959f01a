"""Binary/2-adic digit calculus.

Bit-words are tuples over {0,1} read LSB-first: index l holds the
coefficient of 2**(l-1) under the beta encoding. Naturals, exact
rationals (fractions.Fraction) and eventually periodic 2-adic integers
(TwoAdic) are the value types everything else builds on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class DigitProfile:
    """Ones count, digit length, and ordered one-positions of a natural."""

    ones: int
    length: int
    positions: tuple[int, ...]


def digit_profile(n: int) -> DigitProfile:
    """Return #1(n), lambda(n) and the 0-indexed one positions of n.

    lambda(0) = 0 by convention; positions are strictly increasing.
    """
    if n < 0:
        raise ValueError("digit_profile requires n >= 0")
    if n == 0:
        return DigitProfile(0, 0, ())
    positions = []
    i = 0
    m = n
    while m:
        if m & 1:
            positions.append(i)
        m >>= 1
        i += 1
    return DigitProfile(len(positions), n.bit_length(), tuple(positions))


def word_to_nat(j) -> int:
    """beta(j) = sum of j_l * 2**(l-1); terminal zeros are immaterial."""
    n = 0
    for l, bit in enumerate(j):
        if bit not in (0, 1):
            raise ValueError("bit-words contain only 0s and 1s")
        n |= bit << l
    return n


def nat_to_word(n: int) -> tuple[int, ...]:
    """Shortest bit-word j with beta(j) = n (LSB first, length lambda(n))."""
    if n < 0:
        raise ValueError("nat_to_word requires n >= 0")
    return tuple((n >> i) & 1 for i in range(n.bit_length()))


def concat_power(j, m: int) -> tuple[int, ...]:
    """j repeated m times (m >= 1)."""
    if m < 1:
        raise ValueError("concat_power requires m >= 1")
    return tuple(j) * m


def big_B(t: int) -> Fraction:
    """B(t) = t / (1 - 2**lambda(t)); B(0) = 0. Denominator is odd."""
    if t < 0:
        raise ValueError("big_B requires t >= 0")
    if t == 0:
        return Fraction(0)
    return Fraction(t, 1 - (1 << t.bit_length()))


def padic_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n; n = 0 is rejected."""
    if n == 0:
        raise ValueError("p-adic valuation of 0 is infinite")
    if p < 2:
        raise ValueError("p must be at least 2")
    e = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        e += 1
    return e


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_friend_of_2(p: int) -> bool:
    """True iff 2 is a primitive root mod p and mod p**2.

    That is sufficient for 2 to be a primitive root mod every power of p,
    which is what the digit-congruence machinery needs.
    """
    if not _is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if _mult_order(2, p) != p - 1:
        return False
    return _mult_order(2, p * p) == p * (p - 1)


def _mult_order(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise ValueError("order undefined: gcd(a, m) != 1")
    order = 1
    x = a % m
    while x != 1:
        x = (x * a) % m
        order += 1
    return order


def abs_2m_minus1_exponent(m: int, p: int) -> int:
    """Exponent e with |2**m - 1|_p = p**(-e), for p a friend of 2.

    e = [m == 0 mod p-1] * (nu_p(m) + 1); e = 0 when m = 0 mod nothing,
    i.e. |2**0 - 1|_p is left out (m >= 1 required).
    """
    if m < 1:
        raise ValueError("abs_2m_minus1_exponent requires m >= 1")
    if not is_friend_of_2(p):
        raise ValueError("p must be a friend of 2")
    if m % (p - 1) != 0:
        return 0
    return padic_valuation(m, p) + 1


def val2(x: Fraction) -> int:
    """2-adic valuation of a non-zero rational."""
    if x == 0:
        raise ValueError("2-adic valuation of 0 is infinite")
    return padic_valuation(x.numerator, 2) - padic_valuation(x.denominator, 2)


def abs2(x: Fraction) -> Fraction:
    """2-adic absolute value of a rational; |0|_2 = 0."""
    if x == 0:
        return Fraction(0)
    v = val2(Fraction(x))
    return Fraction(1, 1 << v) if v >= 0 else Fraction(1 << (-v))


class TwoAdic:
    """A 2-adic integer given exactly as a rational with odd denominator.

    The rational form is canonical; (prefix, period) bit-word form is an
    input/output convenience. digit(i) is defined for all i >= 0.
    """

    __slots__ = ("value",)

    def __init__(self, value) -> None:
        v = Fraction(value)
        if v.denominator % 2 == 0:
            raise ValueError("a 2-adic integer needs an odd denominator")
        object.__setattr__(self, "value", v)

    @classmethod
    def from_prefix_period(cls, prefix, period) -> "TwoAdic":
        """2-adic integer with the given initial digits and repeating tail.

        An empty period means the expansion terminates (a natural number).
        """
        pre = word_to_nat(prefix)
        L = len(tuple(prefix))
        if not period:
            return cls(pre)
        per = word_to_nat(period)
        T = len(tuple(period))
        return cls(pre + Fraction(per << L, 1 - (1 << T)))

    def digit(self, i: int) -> int:
        num, den = self.value.numerator, self.value.denominator
        for _ in range(i):
            num = (num - (num % 2) * den) // 2
        return num % 2

    def digits(self, count: int) -> tuple[int, ...]:
        """The first `count` digits, LSB first."""
        num, den = self.value.numerator, self.value.denominator
        out = []
        for _ in range(count):
            d = num % 2
            out.append(d)
            num = (num - d * den) // 2
        return tuple(out)

    def one_positions(self, count: int) -> tuple[int, ...]:
        """Positions of the first `count` one-digits (raises if too few)."""
        if count == 0:
            return ()
        num, den = self.value.numerator, self.value.denominator
        out = []
        i = 0
        while len(out) < count:
            d = num % 2
            if d:
                out.append(i)
            num = (num - d * den) // 2
            i += 1
            if num == 0:
                break
        if len(out) < count:
            raise ValueError("expansion terminated with fewer ones")
        return tuple(out)

    def to_prefix_period(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Eventually periodic expansion as (prefix, period) bit-words."""
        num, den = self.value.numerator, self.value.denominator
        seen: dict[int, int] = {}
        bits = []
        while num not in seen:
            seen[num] = len(bits)
            d = num % 2
            bits.append(d)
            num = (num - d * den) // 2
        start = seen[num]
        prefix, period = tuple(bits[:start]), tuple(bits[start:])
        if period == (0,):
            period = ()
            while prefix and prefix[-1] == 0:
                prefix = prefix[:-1]
        return prefix, period

    def is_natural(self) -> bool:
        return self.value.denominator == 1 and self.value >= 0

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoAdic) and self.value == other.value

    def __hash__(self) -> int:
        return hash(("TwoAdic", self.value))

    def __repr__(self) -> str:
        return f"TwoAdic({self.value})"

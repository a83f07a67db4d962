"""Greedy digital representations and exact golden-ratio arithmetic.

A representing sequence is a strictly increasing sequence of positive
integers starting at 1.  Every nonnegative integer has a unique greedy
expansion over such a sequence; the digit machinery here (volatility, zends,
trailing-zero counts) is what the representation-word layer is built on.
Wythoff membership is decided with integer square roots only, never floats.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Callable, Optional, Sequence

# Rule-generated terms beyond this width fail loudly instead of silently
# grinding through huge integers.
DEFAULT_TERM_LIMIT = 1 << 63


class RepresentingSequence:
    """Strictly increasing positive integers with term(0) = 1.

    Either an explicit finite list, or an initial segment plus an extension
    rule mapping the materialized prefix to the next term.  Rule-generated
    terms are memoized; extension is locked so concurrent readers see an
    append-only list.
    """

    def __init__(self, initial: Sequence[int],
                 extend: Optional[Callable[[list[int]], int]] = None,
                 name: str = "",
                 term_limit: int = DEFAULT_TERM_LIMIT):
        terms = [int(t) for t in initial]
        if not terms or terms[0] != 1:
            raise ValueError("a representing sequence must start at 1")
        if any(b <= a for a, b in zip(terms, terms[1:])):
            raise ValueError("terms must be strictly increasing")
        self._terms = terms
        self._extend = extend
        self._lock = threading.Lock()
        self.name = name or ("(" + ",".join(map(str, terms)) + ")" if extend is None else "rule")
        self.term_limit = term_limit

    @classmethod
    def from_terms(cls, terms: Sequence[int], name: str = "") -> "RepresentingSequence":
        return cls(terms, None, name)

    @classmethod
    def from_rule(cls, initial: Sequence[int],
                  extend: Callable[[list[int]], int], name: str = "") -> "RepresentingSequence":
        return cls(initial, extend, name)

    @property
    def is_finite(self) -> bool:
        return self._extend is None

    def known_length(self) -> int:
        return len(self._terms)

    def _materialize(self, count: int) -> None:
        if self._extend is None or len(self._terms) >= count:
            return
        with self._lock:
            while len(self._terms) < count:
                nxt = int(self._extend(self._terms))
                if nxt <= self._terms[-1]:
                    raise ValueError(f"extension rule broke monotonicity at index {len(self._terms)}")
                if nxt > self.term_limit:
                    raise OverflowError(
                        f"term {len(self._terms)} of {self.name} exceeds the configured width")
                self._terms.append(nxt)

    def term(self, i: int) -> int:
        if i < 0:
            raise IndexError("term index must be nonnegative")
        if i >= len(self._terms):
            if self._extend is None:
                raise IndexError(f"{self.name} is finite with {len(self._terms)} terms")
            self._materialize(i + 1)
        return self._terms[i]

    def terms(self, count: int) -> list[int]:
        self._materialize(count)
        if count > len(self._terms):
            raise IndexError(f"{self.name} is finite with {len(self._terms)} terms")
        return self._terms[:count]

    def has_term(self, i: int) -> bool:
        """Whether term(i) exists (always true for rule sequences)."""
        return self._extend is not None or i < len(self._terms)

    def index_of(self, n: int) -> int:
        """The j with term(j) <= n < term(j+1); top index for finite tails."""
        if n < 1:
            raise ValueError("index is defined for positive integers")
        if self._extend is not None:
            while self._terms[-1] <= n:
                self._materialize(len(self._terms) + 1)
        return bisect_right(self._terms, n) - 1

    def __repr__(self) -> str:
        head = ",".join(map(str, self._terms[:6]))
        tail = "" if self.is_finite and len(self._terms) <= 6 else ",..."
        return f"RepresentingSequence({head}{tail})"


@dataclass(frozen=True)
class DigitString:
    """Digits of a greedy expansion, least significant place first.

    digits[i] is the coefficient of term(i).  The canonical form has no zero
    in the highest stored place (the empty string represents 0).  Rendering
    is most-significant-first: digit characters while every digit fits in one,
    comma-separated integers otherwise.
    """

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d < 0 for d in self.digits):
            raise ValueError("digits must be nonnegative")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("highest stored place must be nonzero")

    @classmethod
    def from_lsb(cls, digits: Sequence[int]) -> "DigitString":
        digits = list(digits)
        while digits and digits[-1] == 0:
            digits.pop()
        return cls(tuple(digits))

    @classmethod
    def from_msb(cls, digits: Sequence[int]) -> "DigitString":
        return cls.from_lsb(list(reversed(list(digits))))

    def msb_digits(self) -> tuple[int, ...]:
        return tuple(reversed(self.digits))

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def is_zero(self) -> bool:
        return not self.digits

    @property
    def last_digit(self) -> int:
        """Digit in the ones place; 0 for the empty string."""
        return self.digits[0] if self.digits else 0

    @property
    def trailing_zeros(self) -> int:
        t = 0
        for d in self.digits:
            if d != 0:
                break
            t += 1
        return t

    def __str__(self) -> str:
        if not self.digits:
            return ""
        msb = self.msb_digits()
        if all(d <= 9 for d in msb):
            return "".join(str(d) for d in msb)
        return ",".join(str(d) for d in msb)


def represent(seq: RepresentingSequence, n: int) -> DigitString:
    """Greedy expansion of n; 0 is the empty digit string."""
    if n < 0:
        raise ValueError("cannot represent negative integers")
    if n == 0:
        return DigitString(())
    j = seq.index_of(n)
    digits = [0] * (j + 1)
    for i in range(j, -1, -1):
        digits[i], n = divmod(n, seq.term(i))
    return DigitString(tuple(digits))


def value_of(seq: RepresentingSequence, d: DigitString) -> int:
    return sum(dig * seq.term(i) for i, dig in enumerate(d.digits))


def index_of(seq: RepresentingSequence, n: int) -> int:
    return seq.index_of(n)


def is_m_volatile(seq: RepresentingSequence, n: int, m: int = 1) -> bool:
    """Whether the expansion of n+1 ends in at least m zeros."""
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    return represent(seq, n + 1).trailing_zeros >= m


def is_zend(seq: RepresentingSequence, n: int) -> bool:
    """Whether the expansion of n ends in 0; 0 itself counts as a zend."""
    if n < 0:
        raise ValueError("need n >= 0")
    return n == 0 or represent(seq, n).last_digit == 0


# --- exact Wythoff / Beatty arithmetic ------------------------------------
#
# floor(n*phi) = (n + isqrt(5 n^2)) // 2 exactly, because sqrt(5 n^2) is
# irrational for n >= 1 and n + sqrt(5 n^2) never sits on an even integer.

def wythoff_lower(n: int) -> int:
    """floor(n * phi) for n >= 1."""
    if n < 1:
        raise ValueError("lower Wythoff numbers start at n = 1")
    _check_width(n)
    return (n + isqrt(5 * n * n)) // 2


def wythoff_upper(n: int) -> int:
    """floor(n * phi^2) = floor(n * phi) + n, with wythoff_upper(0) = 0."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return 0
    return wythoff_lower(n) + n


def _check_width(n: int, limit: int = DEFAULT_TERM_LIMIT) -> None:
    if n > limit:
        raise OverflowError(f"argument {n} exceeds the configured width")


def lower_wythoff_index(n: int) -> Optional[int]:
    """The m with floor(m*phi) == n, or None when n is not lower Wythoff."""
    if n < 1:
        return None
    guess = (isqrt(5 * n * n) - n) // 2  # ~ n/phi
    for m in (guess, guess + 1, guess + 2):
        if m >= 1 and wythoff_lower(m) == n:
            return m
    return None


def upper_wythoff_index(n: int) -> Optional[int]:
    """The m with floor(m*phi^2) == n (m=0 for n=0), or None."""
    if n < 0:
        return None
    if n == 0:
        return 0
    guess = max(1, (3 * (n + 1) - isqrt(5 * (n + 1) * (n + 1))) // 2 - 1)  # ~ n/phi^2
    for m in (guess, guess + 1, guess + 2):
        if m >= 1 and wythoff_upper(m) == n:
            return m
    return None


def in_lower_wythoff(n: int) -> bool:
    return lower_wythoff_index(n) is not None


def in_upper_wythoff(n: int) -> bool:
    """Membership in the upper Wythoff set, which here includes 0."""
    return upper_wythoff_index(n) is not None


class WythoffSide(Enum):
    LOWER = "lower"
    UPPER = "upper"


_zeckendorf_singleton: Optional[RepresentingSequence] = None


def zeckendorf_sequence() -> RepresentingSequence:
    """The representing sequence 1, 2, 3, 5, 8, ... of Zeckendorf expansions."""
    global _zeckendorf_singleton
    if _zeckendorf_singleton is None:
        _zeckendorf_singleton = RepresentingSequence.from_rule(
            [1, 2], lambda t: t[-1] + t[-2], name="zeckendorf")
    return _zeckendorf_singleton


def base_sequence(b: int) -> RepresentingSequence:
    """Powers of b, the ordinary base-b positional system."""
    if b < 2:
        raise ValueError("base must be at least 2")
    return RepresentingSequence.from_rule([1], lambda t: t[-1] * b, name=f"base{b}")


def wythoff_class(n: int) -> WythoffSide:
    """Classify n by the parity of trailing zeros of its Zeckendorf expansion.

    An odd count lands in the upper set, an even count in the lower; 0 is
    classified upper by convention.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return WythoffSide.UPPER
    t = represent(zeckendorf_sequence(), n).trailing_zeros
    return WythoffSide.UPPER if t % 2 == 1 else WythoffSide.LOWER


def _floor_upper_multiple(ell: int) -> int:
    """floor(ell * phi^2) for any integer ell (phi^2 irrational for ell != 0)."""
    if ell >= 0:
        return wythoff_upper(ell)
    return -(wythoff_upper(-ell) + 1)


@dataclass(frozen=True)
class BeattyWitness:
    """Difference of two upper Wythoff numbers realized as floor or ceiling."""

    ell: int
    kind: str  # "floor" or "ceiling"
    value: int


def beatty_difference_witness(m: int, n: int) -> BeattyWitness:
    """Witness that m - n is floor(ell*phi^2) or ceiling(ell*phi^2).

    Both arguments must lie in the upper Wythoff set; ell is the difference of
    their indices, and the matching side is verified with exact arithmetic.
    """
    a = upper_wythoff_index(m)
    b = upper_wythoff_index(n)
    if a is None or b is None:
        raise ValueError("both arguments must be upper Wythoff numbers")
    ell = a - b
    diff = m - n
    fl = _floor_upper_multiple(ell)
    if diff == fl:
        return BeattyWitness(ell, "floor", diff)
    if ell != 0 and diff == fl + 1:
        return BeattyWitness(ell, "ceiling", diff)
    raise AssertionError(f"difference {diff} is neither floor nor ceiling of {ell}*phi^2")

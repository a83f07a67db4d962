"""The odd-index Fibonacci construction and its alphabet promotions.

The central object is the ternary word built by w_1 = 01,
w_i = w_{i-1}^2 (w_{i-2} w_{i-3} ... w_1) 2.  Its levels have odd-index
Fibonacci lengths, it is the representation word of (1, 2, 5, 13, 34, ...),
its zeros sit exactly on the upper Wythoff numbers, and it is the Nim
sequence of every subtraction set squeezed between the term-predecessor set T
and the two-block set I.  Promotions rebuild the same structure one alphabet
size up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .grundy import ResourceLimitError, SubtractionSet
from .numeration import (DigitString, RepresentingSequence, in_upper_wythoff,
                         is_m_volatile, is_zend, represent, value_of,
                         wythoff_class, WythoffSide, zeckendorf_sequence)
from .repwords import (CheckOutcome, RepWord, VerificationReport, derived_sets)

DEFAULT_MAX_WORD = 2_000_000

_fib_cache = [0, 1, 1]


def fib(n: int) -> int:
    """F(n) with F(1) = F(2) = 1 (and F(0) = 0)."""
    if n < 0:
        raise ValueError("need n >= 0")
    while len(_fib_cache) <= n:
        _fib_cache.append(_fib_cache[-1] + _fib_cache[-2])
    return _fib_cache[n]


def fib_repseq(i: int) -> int:
    """Term i of the construction's representing sequence: F(2i+1)."""
    return fib(2 * i + 1)


_ternary_seq: Optional[RepresentingSequence] = None
_ternary_word: Optional[RepWord] = None


def ternary_sequence() -> RepresentingSequence:
    """The sequence 1, 2, 5, 13, 34, ... of odd-index Fibonacci numbers."""
    global _ternary_seq
    if _ternary_seq is None:
        _ternary_seq = RepresentingSequence.from_rule(
            [1, 2], lambda t: 3 * t[-1] - t[-2], name="fibonacci-odd")
    return _ternary_seq


def ternary_word() -> RepWord:
    global _ternary_word
    if _ternary_word is None:
        _ternary_word = RepWord(ternary_sequence())
    return _ternary_word


def word_lengths(depth: int, k: int = 2) -> list[int]:
    """Lengths of levels 1..depth of the doubling block construction.

    Pure integer recurrence (no words are materialized), so this is usable
    far past any buildable level.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    lengths = [k]
    total = k  # sum of lengths so far
    for _ in range(2, depth + 1):
        nxt = lengths[-1] + total + 1
        lengths.append(nxt)
        total += nxt
    return lengths


def build_word_prefix(depth: int, *, max_length: int = DEFAULT_MAX_WORD) -> list[int]:
    """Level-depth word of the ternary construction by direct concatenation."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if word_lengths(depth)[-1] > max_length:
        raise ResourceLimitError(f"level {depth} exceeds {max_length} symbols")
    levels = [[0, 1]]
    for i in range(2, depth + 1):
        w = levels[-1] + levels[-1]
        for j in range(1, i - 1):
            w.extend(levels[i - 1 - j - 1])
        w.append(2)
        levels.append(w)
    return levels[-1]


def morphic_word_prefix(m: int, *, max_length: int = DEFAULT_MAX_WORD) -> list[int]:
    """psi(phi^m(0)) for the inner morphism 0 -> 001, 1 -> 01 and the coding
    psi: 0 -> 01, 1 -> 2.  Equals the level-(m+1) word of the construction."""
    if m < 0:
        raise ValueError("need m >= 0")
    s = [0]
    for _ in range(m):
        nxt: list[int] = []
        for c in s:
            nxt.extend((0, 0, 1) if c == 0 else (0, 1))
        if len(nxt) > max_length:
            raise ResourceLimitError(f"morphic iterate exceeds {max_length} symbols")
        s = nxt
    out: list[int] = []
    for c in s:
        out.extend((0, 1) if c == 0 else (2,))
    return out


def ends_in_two_block(d: DigitString) -> bool:
    """Whether the digit string ends (least-significant side) in 2 1^m 0."""
    digits = d.digits
    if not digits or digits[0] != 0:
        return False
    i = 1
    while i < len(digits) and digits[i] == 1:
        i += 1
    return i < len(digits) and digits[i] == 2


def in_I(n: int) -> bool:
    """Membership in I: 1 together with integers whose expansion over the
    construction sequence ends in a two-block."""
    if n < 1:
        return False
    return n == 1 or ends_in_two_block(represent(ternary_sequence(), n))


def ternary_i_set() -> SubtractionSet:
    return SubtractionSet.from_predicate(in_I, name="construction:k=2:I")


def ternary_t_set() -> SubtractionSet:
    ds = derived_sets(ternary_word())
    return SubtractionSet.from_predicate(ds.in_t, name="construction:k=2:T")


def ternary_v_set() -> SubtractionSet:
    ds = derived_sets(ternary_word())
    return SubtractionSet.from_predicate(ds.in_v, name="construction:k=2:V")


def valid_ternary_rep(d: DigitString) -> bool:
    """Whether a ternary digit string is a greedy expansion over the
    construction sequence: every 2 must be followed (toward the ones place)
    by a run of ones closed off by a zero."""
    digits = d.digits
    if any(dig > 2 for dig in digits):
        return False
    for i, dig in enumerate(digits):
        if dig != 2:
            continue
        j = i - 1
        while j >= 0 and digits[j] == 1:
            j -= 1
        if j < 0 or digits[j] != 0:
            return False
    return True


def odd_fib_to_zeck(d: DigitString) -> DigitString:
    """Convert a two-block-free zend expansion to its Zeckendorf expansion.

    The digits are interleaved with zeros (digit i moves to Zeckendorf place
    2i-1, the ones place stays), then 2s are cleared high-to-low using
    2 F(n) = F(n+1) + F(n-2), then adjacent-one pairs are merged upward until
    none remain.  The result represents the same integer and ends in an odd
    number of zeros.
    """
    if not valid_ternary_rep(d):
        raise ValueError("not a valid expansion over the construction sequence")
    if d.last_digit != 0 and not d.is_zero:
        raise ValueError("expansion must end in 0")
    if ends_in_two_block(d):
        raise ValueError("expansion must not end in a two-block")
    if d.is_zero:
        return DigitString(())

    n = value_of(ternary_sequence(), d)
    digits = d.digits
    e = [0] * (2 * len(digits) + 3)
    e[0] = digits[0]
    for i in range(1, len(digits)):
        e[2 * i - 1] = digits[i]
    assert _zeck_value(e) == n
    assert _trailing(e) % 2 == 1

    top = max(i for i, x in enumerate(e) if x)
    for i in range(top, 1, -1):
        if e[i] == 2:
            e[i] = 0
            e[i + 1] += 1
            e[i - 2] += 1
    assert all(x in (0, 1) for x in e)
    assert _zeck_value(e) == n
    assert _trailing(e) % 2 == 1

    while any(e[i] and e[i - 1] for i in range(1, len(e))):
        if e[-2] or e[-1]:
            e.extend([0, 0])
        top = max(i for i, x in enumerate(e) if x)
        for i in range(top, 0, -1):
            if e[i] == 1 and e[i - 1] == 1:
                e[i] = 0
                e[i - 1] = 0
                e[i + 1] += 1

    assert _zeck_value(e) == n
    assert _trailing(e) % 2 == 1
    result = DigitString.from_lsb(e)
    assert _is_zeckendorf(result)
    return result


def _zeck_value(e: Sequence[int]) -> int:
    return sum(x * fib(i + 2) for i, x in enumerate(e))


def _trailing(e: Sequence[int]) -> int:
    t = 0
    for x in e:
        if x:
            break
        t += 1
    return t


def _is_zeckendorf(d: DigitString) -> bool:
    digs = d.digits
    if any(x not in (0, 1) for x in digs):
        return False
    return all(not (a == 1 and b == 1) for a, b in zip(digs, digs[1:]))


def verify_wythoff_zeros(horizon: int) -> VerificationReport:
    """Certify the four descriptions of the construction word's zeros.

    On [0, horizon]: symbol 0 at n, n upper Wythoff (exact Beatty), n a
    non-volatile zend, odd trailing-zero count in Zeckendorf form -- all
    equivalent.  Also certifies that a zend is volatile exactly when its
    expansion ends in a two-block, and spot-checks that upper Wythoff numbers
    shifted by I never land back in the upper set.
    """
    seq = ternary_sequence()
    word = ternary_word().prefix(horizon + 1)
    checks = []

    bad = None
    for n in range(horizon + 1):
        views = (word[n] == 0,
                 in_upper_wythoff(n),
                 is_zend(seq, n) and not is_m_volatile(seq, n),
                 wythoff_class(n) is WythoffSide.UPPER)
        if any(v != views[0] for v in views):
            bad = (n, views)
            break
    checks.append(CheckOutcome("zero-positions-four-ways", bad is None,
                               "" if bad is None else f"views disagree at {bad[0]}: {bad[1]}"))

    bad = next((n for n in range(horizon + 1)
                if is_zend(seq, n) and n > 0
                and is_m_volatile(seq, n) != ends_in_two_block(represent(seq, n))),
               None)
    checks.append(CheckOutcome("volatile-zend-is-two-block", bad is None,
                               "" if bad is None else f"disagreement at {bad}"))

    upper = [n for n in range(horizon + 1) if in_upper_wythoff(n)]
    upper_set = frozenset(upper)
    i_elems = [n for n in range(1, horizon + 1) if in_I(n)]
    hit = None
    for u in upper:
        for a in i_elems:
            if u + a > horizon:
                break
            if u + a in upper_set:
                hit = (u, a)
                break
        if hit:
            break
    checks.append(CheckOutcome("upper-plus-I-avoids-upper", hit is None,
                               "" if hit is None else f"{hit[0]} + {hit[1]} is upper"))

    return VerificationReport(f"zero structure up to {horizon}", checks)


class PromotionMap:
    """A j-promotion: the derived sequence together with its value map.

    The promoted sequence keeps terms below j and otherwise rebuilds each
    term from the base expansion of term-1, bumping the place-(j-1) digit
    when it is nonzero.  The value map applies the same digit rule to every
    integer; it sends base terms to promoted terms.
    """

    def __init__(self, base: RepresentingSequence, j: int = 1):
        if j < 1:
            raise ValueError("promotion position must be at least 1")
        self.base = base
        self.j = j
        self.sequence = self._build_sequence()

    def _build_sequence(self) -> RepresentingSequence:
        base, j = self.base, self.j
        initial = [base.term(i) for i in range(j)]

        def extend(terms: list[int]) -> int:
            i = len(terms)
            digits = represent(base, base.term(i) - 1).digits
            val = 1 + sum(dig * terms[ell] for ell, dig in enumerate(digits))
            if j - 1 < len(digits) and digits[j - 1] > 0:
                val += terms[j - 1]
            return val

        return RepresentingSequence.from_rule(
            initial, extend, name=f"{j}-promotion of {base.name}")

    def value(self, n: int) -> int:
        """The promotion function f; f(base term i) = promoted term i."""
        if n < 0:
            raise ValueError("need n >= 0")
        if n == 0:
            return 0
        digits = represent(self.base, n).digits
        self.sequence._materialize(len(digits))
        val = sum(dig * self.sequence.term(ell) for ell, dig in enumerate(digits))
        if self.j - 1 < len(digits) and digits[self.j - 1] > 0:
            val += self.sequence.term(self.j - 1)
        return val


def promote(base: RepresentingSequence, j: int = 1) -> RepresentingSequence:
    return PromotionMap(base, j).sequence


def promotion_value(base: RepresentingSequence, j: int, n: int) -> int:
    return PromotionMap(base, j).value(n)


def promote_word(word: Sequence[int], k: int) -> list[int]:
    """Image of a word over 0..k under the morphism 0 -> 01, i -> i+1."""
    out: list[int] = []
    for c in word:
        if c < 0 or c > k:
            raise ValueError(f"symbol {c} outside alphabet 0..{k}")
        if c == 0:
            out.extend((0, 1))
        else:
            out.append(c + 1)
    return out


def promoted_subtraction_set(s: SubtractionSet, base: RepresentingSequence,
                             j: int = 1) -> SubtractionSet:
    """The image set f(S) with 1 adjoined, for f the j-promotion map."""
    pmap = PromotionMap(base, j)

    def member(m: int) -> bool:
        if m == 1:
            return True
        # f is strictly increasing, so invert by doubling + binary search
        lo, hi = 1, 1
        while pmap.value(hi) < m:
            lo, hi = hi, hi * 2
        while lo < hi:
            mid = (lo + hi) // 2
            if pmap.value(mid) < m:
                lo = mid + 1
            else:
                hi = mid
        return pmap.value(lo) == m and lo in s

    return SubtractionSet.from_predicate(member, name=f"f({s.name})+{{1}}")


@dataclass(frozen=True)
class FamilyConstruction:
    """The alphabet-k instance of the construction, built by promotion."""

    k: int
    sequence: RepresentingSequence
    word: RepWord
    t_set: SubtractionSet
    closed_form: tuple[int, ...]
    closed_form_mismatches: tuple[int, ...]  # indices where 3a-b disagrees


def family(k: int, depth: int) -> FamilyConstruction:
    """The k-alphabet construction: (k-2)-fold promotion of the ternary data.

    The companion closed form (1, k, then 3a - b) is recomputed and compared,
    never substituted: at k >= 3 it disagrees with the promoted sequence at
    index 2, and only the promoted sequence yields a representation word that
    is a Nim sequence.
    """
    if k < 2:
        raise ValueError("the family starts at alphabet bound 2")
    seq = ternary_sequence()
    for _ in range(k - 2):
        seq = promote(seq, 1)
    seq.terms(depth + 1)
    word = RepWord(seq)
    t_set = SubtractionSet.from_predicate(derived_sets(word).in_t,
                                          name=f"construction:k={k}:T")
    closed = [1, k]
    while len(closed) <= depth:
        closed.append(3 * closed[-1] - closed[-2])
    mismatches = tuple(i for i in range(depth + 1) if closed[i] != seq.term(i))
    return FamilyConstruction(k, seq, word, t_set, tuple(closed), mismatches)

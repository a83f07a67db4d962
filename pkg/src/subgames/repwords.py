"""Representation words and their connection to Nim sequences.

The representation word of a sequence (a_i) takes the value k = a_1 at every
2-volatile position and otherwise the last digit of the position's greedy
expansion.  For the right sequences these words are exactly the Nim sequences
of the derived subtraction sets, and the structural verifier below runs the
finite certificate for that claim: containments between the derived sets, the
sum-freeness of the non-volatile zends, and a brute-force table comparison.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .grundy import SubtractionSet, nim_sequence
from .numeration import (DigitString, RepresentingSequence, is_m_volatile,
                         is_zend, represent)
from .words import render_word


class RepWord:
    """Lazily evaluated representation word of a representing sequence.

    symbol() follows the positional recursion (value n below k, value k one
    short of a term, otherwise shift down by the current term), which costs
    one index lookup per digit.  symbol_by_definition() recomputes straight
    from the greedy expansion; the two must always agree.
    """

    def __init__(self, seq: RepresentingSequence):
        self.seq = seq
        self.k = seq.term(1)
        self._prefix: list[int] = []
        self._lock = threading.Lock()

    def symbol_by_definition(self, n: int) -> int:
        if n < 0:
            raise ValueError("positions are nonnegative")
        if is_m_volatile(self.seq, n, 2):
            return self.k
        return represent(self.seq, n).last_digit

    def symbol(self, n: int) -> int:
        """Value at position n via the recursion; O(index of n) lookups."""
        if n < 0:
            raise ValueError("positions are nonnegative")
        seq = self.seq
        while n >= self.k:
            j = seq.index_of(n)
            if j >= 1 and seq.has_term(j + 1) and n == seq.term(j + 1) - 1:
                return self.k
            n -= seq.term(j)
        return n

    # the spec-facing name for the recursion route
    symbol_by_recursion = symbol

    def prefix(self, length: int) -> list[int]:
        """First `length` symbols (memoized table fill)."""
        w = self._prefix
        if len(w) < length:
            with self._lock:
                seq, k = self.seq, self.k
                while len(w) < length:
                    n = len(w)
                    if n < k:
                        w.append(n)
                        continue
                    j = seq.index_of(n)
                    if j >= 1 and seq.has_term(j + 1) and n == seq.term(j + 1) - 1:
                        w.append(k)
                    else:
                        w.append(w[n - seq.term(j)])
        return w[:length]

    def __getitem__(self, n: int) -> int:
        return self.symbol(n)

    def __repr__(self) -> str:
        return f"RepWord({self.seq.name}, k={self.k})"


def is_fergusonian(word: Sequence[int], k: int) -> bool:
    """Whether each value i < k-1 is followed by i+1 and each value in
    1..k-1 is preceded by its predecessor, over all adjacent pairs."""
    for a, b in zip(word, word[1:]):
        if a < k - 1 and b != a + 1:
            return False
        if 0 < b <= k - 1 and a != b - 1:
            return False
    return True


def is_strongly_fergusonian(word: Sequence[int], k: int) -> bool:
    """Fergusonian with no two adjacent k symbols."""
    if not is_fergusonian(word, k):
        return False
    return all(not (a == k and b == k) for a, b in zip(word, word[1:]))


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class VerificationReport:
    """A named list of structural checks; passes only if every check passed."""

    subject: str
    checks: tuple[CheckOutcome, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[CheckOutcome]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'} {self.subject}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def fergusonian_criterion(rw: RepWord, horizon: int) -> VerificationReport:
    """Verify the three-way equivalence behind the Fergusonian property.

    On [0, horizon] the following are evaluated independently: (a) the window
    is Fergusonian, (b) every k follows a k-1 or a k, (c) the k positions are
    exactly the volatile zends.  The criterion passes when the three views
    agree -- also for words where all three are false.
    """
    word = rw.prefix(horizon + 1)
    k = rw.k
    a = is_fergusonian(word, k)
    b = all(word[i - 1] in (k - 1, k) for i in range(1, len(word)) if word[i] == k)
    c_bad = next((n for n in range(len(word))
                  if (word[n] == k) != (is_zend(rw.seq, n) and is_m_volatile(rw.seq, n))),
                 None)
    c = c_bad is None
    checks = (
        CheckOutcome("fergusonian-iff-k-rule", a == b,
                     f"fergusonian={a}, every-k-follows-(k-1|k)={b}"),
        CheckOutcome("k-rule-iff-volatile-zends", b == c,
                     f"k-rule={b}, k-on-volatile-zends={c}"
                     + ("" if c_bad is None else f" (first k/zend mismatch at {c_bad})")),
    )
    return VerificationReport(f"fergusonian criterion for {rw!r}", checks)


def generate_fergusonian(k: int, p: Callable[[int, int], int],
                         depth: int) -> tuple[list[int], RepresentingSequence]:
    """Build the level-depth word of the block construction and its sequence.

    Level 1 is 01...(k-1); level i concatenates p(i, i-j) copies of each
    previous level (j = 1..i-1, newest first) and appends one k.  The exponent
    table must be column-monotone (p(i, l) >= p(i+1, l)) with p(i, 1) >= 1;
    the result is then a strongly Fergusonian representation word whose
    sequence is 1 followed by the level lengths.
    """
    if k < 2 or depth < 1:
        raise ValueError("need k >= 2 and depth >= 1")
    for i in range(2, depth + 1):
        if p(i, 1) < 1:
            raise ValueError(f"p({i},1) must be at least 1")
        for ell in range(1, i):
            if p(i, ell) < 0:
                raise ValueError("exponents must be nonnegative")
            if ell < i and i + 1 <= depth and p(i, ell) < p(i + 1, ell):
                raise ValueError(f"exponents must not grow down a column: p({i},{ell}) < p({i + 1},{ell})")
    levels = [list(range(k))]
    for i in range(2, depth + 1):
        w: list[int] = []
        for j in range(1, i):
            w.extend(levels[i - j - 1] * p(i, i - j))
        w.append(k)
        levels.append(w)
    lengths = [1] + [len(w) for w in levels]
    return levels[-1], RepresentingSequence.from_terms(lengths, name=f"blocks(k={k})")


class DerivedSets:
    """The subtraction-set side of a representation word.

    T collects the predecessors of the sequence terms together with 1..k-1,
    W/N split the zends into volatile and non-volatile, V = W with 1..k-1
    added, and L is everything outside N.  All are exposed as membership
    predicates plus bounded enumeration.
    """

    def __init__(self, rw: RepWord):
        self.rw = rw
        self.seq = rw.seq
        self.k = rw.k

    def in_t(self, n: int) -> bool:
        if 1 <= n <= self.k - 1:
            return True
        if n < self.k:
            return False
        seq = self.seq
        if seq.is_finite and n + 1 > seq.term(seq.known_length() - 1):
            return False
        j = seq.index_of(n + 1)
        return seq.term(j) == n + 1 and j >= 2

    def in_w(self, n: int) -> bool:
        return n >= 0 and is_zend(self.seq, n) and is_m_volatile(self.seq, n)

    def in_n(self, n: int) -> bool:
        return n >= 0 and is_zend(self.seq, n) and not is_m_volatile(self.seq, n)

    def in_v(self, n: int) -> bool:
        return (1 <= n <= self.k - 1) or self.in_w(n)

    def in_l(self, n: int) -> bool:
        return n >= 0 and not self.in_n(n)

    def up_to(self, which: str, bound: int) -> list[int]:
        pred = {"T": self.in_t, "W": self.in_w, "N": self.in_n,
                "V": self.in_v, "L": self.in_l}[which]
        start = 0 if which in ("N", "L", "W") else 1
        return [n for n in range(start, bound + 1) if pred(n)]

    def t_set(self) -> SubtractionSet:
        return SubtractionSet.from_predicate(self.in_t, name=f"T({self.seq.name})")

    def v_set(self) -> SubtractionSet:
        return SubtractionSet.from_predicate(self.in_v, name=f"V({self.seq.name})")


def derived_sets(rw: RepWord) -> DerivedSets:
    return DerivedSets(rw)


def _sum_avoids(first: Sequence[int], second: Sequence[int], avoid: frozenset,
                horizon: int) -> Optional[tuple[int, int]]:
    """First (a, s) with a + s <= horizon and a + s in avoid, else None."""
    for a in first:
        for s in second:
            if a + s > horizon:
                break
            if a + s in avoid:
                return a, s
    return None


def verify_absmain(rw: RepWord, s: SubtractionSet, i_set: SubtractionSet,
                   horizon: int) -> VerificationReport:
    """Finite certificate that the representation word is the Nim sequence of s.

    Checks, on [0, horizon]: the word is strongly Fergusonian; T <= S <= I;
    (N + I) does not meet N; and the brute-force Sprague-Grundy table of s
    equals the word.
    """
    word = rw.prefix(horizon + 1)
    ds = derived_sets(rw)
    checks = []

    checks.append(CheckOutcome("strongly-fergusonian",
                               is_strongly_fergusonian(word, rw.k)))

    t_elems = ds.up_to("T", horizon)
    bad = next((t for t in t_elems if t not in s), None)
    checks.append(CheckOutcome("T-subset-S", bad is None,
                               "" if bad is None else f"{bad} in T but not in S"))

    s_elems = s.elements_up_to(horizon)
    bad = next((x for x in s_elems if x not in i_set), None)
    checks.append(CheckOutcome("S-subset-I", bad is None,
                               "" if bad is None else f"{bad} in S but not in I"))

    n_elems = ds.up_to("N", horizon)
    n_frozen = frozenset(n_elems)
    i_elems = i_set.elements_up_to(horizon)
    hit = _sum_avoids(n_elems, i_elems, n_frozen, horizon)
    checks.append(CheckOutcome("N-plus-I-avoids-N", hit is None,
                               "" if hit is None else f"{hit[0]} + {hit[1]} lands in N"))

    table = nim_sequence(s, horizon + 1)
    diff = next((n for n in range(horizon + 1) if table[n] != word[n]), None)
    checks.append(CheckOutcome("nim-sequence-oracle", diff is None,
                               "" if diff is None else
                               f"table {table[diff]} != word {word[diff]} at {diff}"))

    return VerificationReport(f"word of {rw.seq.name} as Nim sequence of {s.name}", checks)


def verify_truncation(rw: RepWord, s: SubtractionSet, i: int,
                      horizon: int) -> VerificationReport:
    """Certificate that cutting s below term(i) periodifies the word.

    The side condition demands a + term(i) - s_i inside L for every
    non-volatile zend a below term(i).  When term(i+1) > 2*term(i) the cheaper
    route confirms a + term(i) is again a non-volatile zend; otherwise the
    differences are enumerated directly.  Either way, the brute-force table of
    the truncated set must be the length-term(i) prefix repeated.
    """
    seq = rw.seq
    a_i = seq.term(i)
    s_i = s.restricted_below(a_i)
    ds = derived_sets(rw)
    checks = []

    n_below = [a for a in ds.up_to("N", a_i - 1)]
    doubling = seq.has_term(i + 1) and seq.term(i + 1) > 2 * a_i
    if doubling:
        bad = next((a for a in n_below if not ds.in_n(a + a_i)), None)
        checks.append(CheckOutcome("shift-stays-in-N (doubling shortcut)", bad is None,
                                   "" if bad is None else f"{a_i} + {bad} leaves N"))
    else:
        s_elems = s_i.elements_up_to(a_i)
        bad = next(((a, t) for a in n_below for t in s_elems
                    if not ds.in_l(a + a_i - t)), None)
        checks.append(CheckOutcome("difference-set-in-L (direct)", bad is None,
                                   "" if bad is None else
                                   f"{bad[0]} + {a_i} - {bad[1]} lands in N"))

    period = rw.prefix(a_i)
    table = nim_sequence(s_i, horizon)
    diff = next((n for n in range(horizon) if table[n] != period[n % a_i]), None)
    checks.append(CheckOutcome("periodified-nim-oracle", diff is None,
                               "" if diff is None else
                               f"table {table[diff]} != word {period[diff % a_i]} at {diff}"))
    return VerificationReport(
        f"truncation of {s.name} below term({i})={a_i}", checks)


@dataclass(frozen=True)
class ExtractionResult:
    """Outcome of recovering a representing sequence from a word."""

    terms: tuple[int, ...]
    complete: bool          # reached the requested depth
    purely_periodic: bool   # no forced new term within the supplied window

    def sequence(self) -> RepresentingSequence:
        return RepresentingSequence.from_terms(self.terms, name="extracted")


def extract_representation_sequence(word: Sequence[int], k: int,
                                    depth: int) -> ExtractionResult:
    """Recover the minimal representing sequence of a strongly Fergusonian word.

    Starting from (1, k), each further term is found where the positional
    recursion run with the terms so far stops reproducing the word: the word
    there must carry a forced k one position before the new term.  If the
    supplied window is exhausted with no mismatch the word is (so far)
    periodic with the last term as period.
    """
    if len(word) < k or list(word[:k]) != list(range(k)):
        raise ValueError("word must begin 0 1 ... k-1")
    terms = [1, k]
    n = len(word)
    while len(terms) < depth + 1:
        top = terms[-1]
        q = next((q for q in range(top, n) if word[q] != word[q % top]), None)
        if q is None:
            return ExtractionResult(tuple(terms), False, True)
        if word[q] != k:
            raise ValueError(
                f"no consistent next term: position {q} is {word[q]}, "
                f"neither the periodic value {word[q % top]} nor {k}")
        terms.append(q + 1)
    return ExtractionResult(tuple(terms), True, False)


def word_to_text(word: Sequence[int]) -> str:
    return render_word(word)

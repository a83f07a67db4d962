"""Sprague-Grundy machinery for subtraction games.

A subtraction game is determined by its set of allowed move sizes.  The value
of a position is the mex of the values of the positions reachable from it, and
position 0 (no legal moves) has value 0.  Everything here works off that one
recurrence; the checks at the bottom validate structural facts that every
computed table must satisfy (Ferguson-type shifts, gcd scaling, the forced
shape of binary tables).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

DEFAULT_MAX_LENGTH = 10_000_000

# Predicate-defined sets scan from 1 for their least element; give up past this.
_MIN_SCAN_LIMIT = 1_000_000


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a configured size limit."""


def mex(values: Iterable[int]) -> int:
    """Least nonnegative integer not present in values."""
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def _mex_of_mask(seen: int) -> int:
    # Lowest clear bit of the occupancy mask.
    return ((~seen) & (seen + 1)).bit_length() - 1


class SubtractionSet:
    """A set of positive move sizes, explicit and finite or rule-defined.

    Rule-defined sets carry a total membership predicate and are enumerated by
    scanning; explicit sets store their elements.  Both support the two
    queries the game engine needs: membership and sorted enumeration up to a
    bound.
    """

    def __init__(self, *, elements: Optional[Sequence[int]] = None,
                 predicate: Optional[Callable[[int], bool]] = None,
                 name: str = ""):
        if (elements is None) == (predicate is None):
            raise ValueError("give exactly one of elements or predicate")
        if elements is not None:
            elems = sorted(set(int(e) for e in elements))
            if not elems or elems[0] < 1:
                raise ValueError("elements must be positive integers")
            self._elements: Optional[tuple[int, ...]] = tuple(elems)
            self._members = frozenset(elems)
            self._predicate = None
        else:
            self._elements = None
            self._members = None
            self._predicate = predicate
        self.name = name or (render_set(self._elements) if elements is not None else "rule")

    @classmethod
    def of(cls, *elements: int) -> "SubtractionSet":
        return cls(elements=elements)

    @classmethod
    def explicit(cls, elements: Iterable[int]) -> "SubtractionSet":
        return cls(elements=list(elements))

    @classmethod
    def from_predicate(cls, predicate: Callable[[int], bool], name: str = "") -> "SubtractionSet":
        return cls(predicate=predicate, name=name)

    @classmethod
    def residues(cls, modulus: int, residues: Iterable[int]) -> "SubtractionSet":
        rset = frozenset(r % modulus for r in residues)
        return cls(predicate=lambda n: n % modulus in rset,
                   name=f"mod{modulus}:{','.join(str(r) for r in sorted(rset))}")

    @property
    def is_finite(self) -> bool:
        return self._elements is not None

    def __contains__(self, n: int) -> bool:
        if n < 1:
            return False
        if self._members is not None:
            return n in self._members
        return bool(self._predicate(n))

    def elements_up_to(self, bound: int) -> list[int]:
        """Sorted elements not exceeding bound."""
        if self._elements is not None:
            return list(self._elements[:bisect_right(self._elements, bound)])
        return [n for n in range(1, bound + 1) if self._predicate(n)]

    def min_element(self) -> int:
        if self._elements is not None:
            return self._elements[0]
        for n in range(1, _MIN_SCAN_LIMIT + 1):
            if self._predicate(n):
                return n
        raise ResourceLimitError("no element found while scanning for the minimum")

    def max_element(self) -> int:
        if self._elements is None:
            raise ValueError("max_element is only defined for explicit finite sets")
        return self._elements[-1]

    def scaled(self, g: int) -> "SubtractionSet":
        """The set g*S of all multiples g*s, s in S."""
        if g < 1:
            raise ValueError("scale factor must be positive")
        if self._elements is not None:
            return SubtractionSet(elements=[g * s for s in self._elements])
        pred = self._predicate
        return SubtractionSet(predicate=lambda n: n % g == 0 and pred(n // g),
                              name=f"{g}*({self.name})")

    def restricted_below(self, cutoff: int) -> "SubtractionSet":
        """Explicit finite set of the elements strictly below cutoff."""
        return SubtractionSet(elements=self.elements_up_to(cutoff - 1))

    def __repr__(self) -> str:
        return f"SubtractionSet({self.name})"


def render_set(elements: Optional[Sequence[int]]) -> str:
    if elements is None:
        return "rule"
    return "{" + ",".join(str(e) for e in elements) + "}"


@dataclass(frozen=True)
class NimSequence:
    """An eventually periodic word stored as (prefix, period)."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(c < 0 for c in self.prefix) or any(c < 0 for c in self.period):
            raise ValueError("symbols must be nonnegative")

    def value_at(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.period[(n - len(self.prefix)) % len(self.period)]

    def __getitem__(self, n: int) -> int:
        return self.value_at(n)

    def take(self, n: int) -> list[int]:
        return [self.value_at(i) for i in range(n)]


def extend_sg_table(table, moves: Sequence[int], upto: int,
                    symbol_bound: Optional[int] = None) -> bool:
    """Extend a mutable Sprague-Grundy table in place to length `upto`.

    `moves` must be sorted ascending.  Returns False (leaving the table at the
    offending length) as soon as a value would exceed symbol_bound.
    """
    n = len(table)
    append = table.append
    while n < upto:
        seen = 0
        for s in moves:
            if s > n:
                break
            seen |= 1 << table[n - s]
        v = _mex_of_mask(seen)
        if symbol_bound is not None and v > symbol_bound:
            return False
        append(v)
        n += 1
    return True


def nim_sequence(s: SubtractionSet, length: int, *,
                 max_length: int = DEFAULT_MAX_LENGTH) -> list[int]:
    """First `length` Sprague-Grundy values of the subtraction game on s."""
    if length < 1:
        raise ValueError("length must be at least 1")
    if length > max_length:
        raise ResourceLimitError(f"requested {length} values, limit is {max_length}")
    moves = s.elements_up_to(length - 1)
    table: list[int] = []
    extend_sg_table(table, moves, length)
    return table


def best_move(s: SubtractionSet, n: int) -> Optional[int]:
    """A winning move from position n, or None when n is a P-position.

    Returns the smallest move size reaching a zero position.
    """
    if n < 0:
        raise ValueError("position must be nonnegative")
    if n == 0:
        return None
    table = nim_sequence(s, n + 1)
    if table[n] == 0:
        return None
    for m in s.elements_up_to(n):
        if table[n - m] == 0:
            return m
    # table[n] != 0 guarantees a move to a zero position exists
    raise AssertionError("inconsistent Sprague-Grundy table")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a structural check over a computed table."""

    name: str
    passed: bool
    detail: str = ""
    first_violation: Optional[int] = None

    def __bool__(self) -> bool:
        return self.passed


def check_generalized_ferguson(values: Sequence[int], s: SubtractionSet,
                               horizon: Optional[int] = None) -> CheckReport:
    """Check the Ferguson shift structure of a computed table.

    With m = min(S) and k the smallest positive multiple of m outside S:
    value i at position p forces i+1 at p+m for i < k/m - 1, and forces i-1
    at p-m for 0 < i <= k/m - 1.  (The shift-chain argument needs the moves
    m, 2m, ..., (i+1)m all inside S, which bounds i by k/m - 1; for sets with
    min element 1 this is the familiar k-1.)  When every multiple of m up to
    the horizon lies in S the bound is treated as unbounded.
    """
    horizon = len(values) if horizon is None else min(horizon, len(values))
    m = s.min_element()
    bound = None  # largest value the shift structure governs
    mult = m
    while mult <= horizon:
        if mult not in s:
            bound = mult // m - 1
            break
        mult += m
    for p in range(horizon - m):
        i = values[p]
        if (bound is None or i < bound) and values[p + m] != i + 1:
            return CheckReport("generalized-ferguson", False,
                               f"value {i} at {p} not followed by {i + 1} at {p + m}",
                               first_violation=p)
    for p in range(m, horizon):
        i = values[p]
        if 0 < i and (bound is None or i <= bound) and values[p - m] != i - 1:
            return CheckReport("generalized-ferguson", False,
                               f"value {i} at {p} not preceded by {i - 1} at {p - m}",
                               first_violation=p)
    return CheckReport("generalized-ferguson", True)


def check_gcd_scaling(s: SubtractionSet, g: int, horizon: int) -> CheckReport:
    """Check SG_{gS}(n) == SG_S(n // g) for all n up to the horizon."""
    if g < 2:
        raise ValueError("scale factor must be at least 2")
    scaled = nim_sequence(s.scaled(g), horizon + 1)
    base = nim_sequence(s, horizon // g + 1)
    for n in range(horizon + 1):
        if scaled[n] != base[n // g]:
            return CheckReport("gcd-scaling", False,
                               f"SG_gS({n})={scaled[n]} but SG_S({n // g})={base[n // g]}",
                               first_violation=n)
    return CheckReport("gcd-scaling", True)


def check_binary_period(s: SubtractionSet, horizon: int) -> CheckReport:
    """Confirm a binary table has the forced shape (0^m 1^m)^omega, m = min(S).

    Raises ValueError when the computed table is not binary, since the claim
    only applies to binary tables.
    """
    values = nim_sequence(s, horizon)
    bad = next((n for n, v in enumerate(values) if v > 1), None)
    if bad is not None:
        raise ValueError(f"table is not binary: value {values[bad]} at position {bad}")
    m = s.min_element()
    for n, v in enumerate(values):
        if v != (n // m) % 2:
            return CheckReport("binary-period", False,
                               f"position {n} has {v}, expected {(n // m) % 2}",
                               first_violation=n)
    return CheckReport("binary-period", True, detail=f"pattern (0^{m}1^{m})^w")

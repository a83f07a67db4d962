"""Minimal prefix/period decomposition of Nim sequences of finite sets.

Every finite subtraction set has an eventually periodic Nim sequence (the
state space of max(S) consecutive values is finite), so the decomposition
u v^omega with |u| and |v| minimal is well defined.  The detector generates a
table (starting at 50 terms and doubling), scans tail periods of increasing
length, certifies a candidate by running the mex recurrence over enough
repeated copies to cover 2*max(S), then rotates the period left while the
prefix can be shortened.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .grundy import (NimSequence, ResourceLimitError, SubtractionSet,
                     extend_sg_table, mex, nim_sequence)

DEFAULT_MAX_TERMS = 1 << 22
INITIAL_TERMS = 50

# The decomposition type of get_period_and_prefix is the eventually periodic
# word itself.
PeriodDecomposition = NimSequence


def scan_for_period(table: Sequence[int], moves: Sequence[int]) -> Optional[tuple[list[int], list[int]]]:
    """One scan pass over a computed table; returns (prefix, period) or None.

    Tail candidates are tried in increasing period length.  A candidate tail v
    is accepted when the table ends with x = v^(ceil(2*max/|v|) + 1) and x
    satisfies the mex recurrence of the move set at every index from max(S)
    on; the final rotation step makes the prefix minimal.
    """
    if not moves:
        raise ValueError("moves must be nonempty")
    n = len(table)
    max_s = moves[-1]
    for plen in range(1, n - 2 * max_s + 1):
        # cheap necessary condition before any slicing
        if table[n - 1 - plen] != table[n - 1]:
            continue
        reps = -(-2 * max_s // plen) + 1
        xlen = plen * reps
        if xlen > n:
            continue
        if table[n - xlen:n - plen] != table[n - xlen + plen:n]:
            continue
        x = table[n - xlen:]
        if not _satisfies_recurrence(x, moves, max_s):
            continue
        u = list(table[:n - xlen])
        v = list(table[n - plen:])
        while u and u[-1] == v[-1]:
            v = [v[-1]] + v[:-1]
            u.pop()
        return u, v
    return None


def _satisfies_recurrence(x: Sequence[int], moves: Sequence[int], max_s: int) -> bool:
    for j in range(max_s, len(x)):
        if x[j] != mex(x[j - s] for s in moves):
            return False
    return True


def get_period_and_prefix(s: SubtractionSet, *,
                          max_terms: int = DEFAULT_MAX_TERMS) -> PeriodDecomposition:
    """Minimal (prefix, period) of the Nim sequence of a finite nonempty set."""
    if not s.is_finite:
        raise ValueError("periodicity detection needs a finite subtraction set")
    moves = s.elements_up_to(s.max_element())
    table: list[int] = []
    n = INITIAL_TERMS
    extend_sg_table(table, moves, n)
    while True:
        found = scan_for_period(table, moves)
        if found is not None:
            u, v = found
            return NimSequence(tuple(u), tuple(v))
        n *= 2
        if n > max_terms:
            raise ResourceLimitError(
                f"no period found within {max_terms} terms for {s.name}")
        extend_sg_table(table, moves, n)


def verify_decomposition(s: SubtractionSet, decomposition: PeriodDecomposition,
                         horizon: int) -> bool:
    """Recompute the Nim sequence and compare against prefix . period^omega."""
    return nim_sequence(s, horizon) == decomposition.take(horizon)

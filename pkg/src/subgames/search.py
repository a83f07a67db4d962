"""Greedy extension searches with explicit budgets and resumable checkpoints.

The two extension procedures are semi-decision loops in their raw form: scan
candidates upward, accept the first that keeps the Nim sequence purely
periodic within the symbol bound (set form), or keeps the representation word
a Nim sequence of its derived set (sequence form).  Every loop here carries a
budget, and running out of budget is a distinct outcome from rejection.

The chain driver runs the set extension depth-first with optional
period-doubling, which is what steers the search away from residue-class
traps and toward aperiodic limits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .grundy import SubtractionSet, extend_sg_table, nim_sequence
from .numeration import RepresentingSequence
from .periodicity import DEFAULT_MAX_TERMS, INITIAL_TERMS, scan_for_period
from .repwords import RepWord, derived_sets

CHECKPOINT_FORMAT = "subgames-search/1"


class BudgetExhaustedError(RuntimeError):
    """The candidate budget ran out before any acceptance."""

    def __init__(self, message: str, tested: int):
        super().__init__(message)
        self.tested = tested


@dataclass(frozen=True)
class StepRecord:
    added: int
    period_length: int
    candidates_tested: int


@dataclass(frozen=True)
class SearchState:
    """A resumable snapshot of a chain search."""

    mode: str                      # "set" or "repseq"
    k: int
    chain: tuple[int, ...]
    next_start: int
    budget_remaining: int
    history: tuple[StepRecord, ...] = field(default_factory=tuple)

    def to_json(self) -> str:
        return json.dumps({
            "format": CHECKPOINT_FORMAT,
            "mode": self.mode,
            "k": self.k,
            "chain": list(self.chain),
            "next_start": self.next_start,
            "budget_remaining": self.budget_remaining,
            "history": [{"added": h.added, "period_length": h.period_length,
                         "candidates_tested": h.candidates_tested}
                        for h in self.history],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "SearchState":
        data = json.loads(line)
        if data.get("format") != CHECKPOINT_FORMAT:
            raise ValueError(f"unsupported checkpoint format: {data.get('format')!r}")
        history = tuple(StepRecord(h["added"], h["period_length"], h["candidates_tested"])
                        for h in data["history"])
        return cls(data["mode"], data["k"], tuple(data["chain"]),
                   data["next_start"], data["budget_remaining"], history)


def write_checkpoint(path: str, state: SearchState) -> None:
    with open(path, "a", encoding="ascii") as fh:
        fh.write(state.to_json() + "\n")


def read_checkpoint(path: str) -> SearchState:
    """Last record of a checkpoint file."""
    last = None
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if line.strip():
                last = line
    if last is None:
        raise ValueError(f"checkpoint file {path} has no records")
    return SearchState.from_json(last)


# --- candidate evaluation ---------------------------------------------------

@dataclass(frozen=True)
class _Candidate:
    accepted: bool
    reason: str
    period: Optional[tuple[int, ...]] = None


def _evaluate_set_candidate(moves: list[int], k: int,
                            base_period: Sequence[int],
                            max_terms: int) -> _Candidate:
    """Run the period detector on moves, bounding symbols by k.

    The table is seeded from the current chain's (purely periodic) sequence
    up to the candidate value, below which the new move cannot act.
    """
    candidate = moves[-1]
    table = bytearray()
    while len(table) < candidate:
        table.extend(base_period)
    table = table[:candidate]
    n = INITIAL_TERMS
    while True:
        if not extend_sg_table(table, moves, max(n, len(table)), symbol_bound=k):
            return _Candidate(False, "symbol-bound")
        found = scan_for_period(table, moves)
        if found is not None:
            u, v = found
            if u:
                return _Candidate(False, "nonempty-prefix")
            if list(v) == list(base_period):
                return _Candidate(False, "period-unchanged")
            if max(v) > k:
                return _Candidate(False, "symbol-bound")
            return _Candidate(True, "accepted", tuple(v))
        n *= 2
        if n > max_terms:
            return _Candidate(False, "no-period-within-cap")


def extend_set(elements: Sequence[int], start: int, k: int, budget: int, *,
               max_terms: int = DEFAULT_MAX_TERMS) -> tuple[tuple[int, ...], StepRecord]:
    """Least i >= start whose addition keeps the sequence purely periodic
    with symbols bounded by k and a changed period.

    The incoming set must itself have an empty prefix and symbols within
    bound.  Candidates are tested in increasing order, so the accepted index
    is minimal; raises BudgetExhaustedError after `budget` rejections.
    """
    elems = sorted(elements)
    if start <= elems[-1]:
        raise ValueError("start must exceed the largest current element")
    base_period = list(_bootstrap_period(elems, k, max_terms))
    tested = 0
    i = start
    while tested < budget:
        tested += 1
        cand = _evaluate_set_candidate(elems + [i], k, base_period, max_terms)
        if cand.accepted:
            record = StepRecord(i, len(cand.period), tested)
            return tuple(elems + [i]), record
        i += 1
    raise BudgetExhaustedError(f"no extension of {elems} in [{start}, {i})", tested)


def _bootstrap_period(elems: list[int], k: int, max_terms: int) -> tuple[int, ...]:
    """Period of the base chain, checking the entry preconditions."""
    table: list[int] = []
    n = INITIAL_TERMS
    while True:
        extend_sg_table(table, elems, n)
        found = scan_for_period(table, elems)
        if found is not None:
            u, v = found
            if u:
                raise ValueError(f"base set {elems} has a nonempty prefix")
            if max(v) > k:
                raise ValueError(f"base set {elems} exceeds the symbol bound {k}")
            return tuple(v)
        n *= 2
        if n > max_terms:
            raise ValueError(f"no period found for base set {elems}")


def greedy_chain(k: int, depth: int, doubling: bool, budget: int, *,
                 seed: Sequence[int] = (1, 4),
                 level_budget: Optional[int] = None,
                 checkpoint_path: Optional[str] = None,
                 max_terms: int = DEFAULT_MAX_TERMS) -> SearchState:
    """Depth-first greedy chain of set extensions, with backtracking.

    Levels extend the chain by the least acceptable candidate; with
    `doubling`, scanning starts past twice the current period length, which
    is the regime whose limits are aperiodic.  A level that burns through
    `level_budget` candidates is abandoned and its parent resumes scanning;
    exhausting the global budget at the seed raises.
    """
    state = SearchState("set", k, tuple(sorted(seed)), 0, budget)
    return _run_chain(state, depth, doubling, level_budget, checkpoint_path, max_terms)


def resume_chain(checkpoint_path: str, depth: int, doubling: bool, *,
                 level_budget: Optional[int] = None,
                 max_terms: int = DEFAULT_MAX_TERMS) -> SearchState:
    """Continue a checkpointed set chain to the requested depth."""
    state = read_checkpoint(checkpoint_path)
    return _run_chain(state, depth, doubling, level_budget, checkpoint_path, max_terms)


def _run_chain(state: SearchState, depth: int, doubling: bool,
               level_budget: Optional[int], checkpoint_path: Optional[str],
               max_terms: int) -> SearchState:
    root_length = len(state.chain)
    chain = list(state.chain)
    budget = state.budget_remaining
    history = list(state.history)
    periods: list[tuple[int, ...]] = [_bootstrap_period(chain, state.k, max_terms)]
    # resume scan positions per level; the stored next_start applies to the top
    scan_at: list[int] = [state.next_start or _level_start(chain, periods[-1], doubling)]

    while len(chain) < depth:
        if budget <= 0:
            raise BudgetExhaustedError("global budget exhausted", sum(
                h.candidates_tested for h in history))
        base_period = periods[-1]
        allowance = min(budget, level_budget) if level_budget else budget
        tested = 0
        i = scan_at[-1]
        accepted = None
        while tested < allowance:
            tested += 1
            cand = _evaluate_set_candidate(chain + [i], state.k, list(base_period), max_terms)
            if cand.accepted:
                accepted = (i, cand.period)
                break
            i += 1
        budget -= tested
        if accepted is None:
            if len(chain) <= root_length:
                raise BudgetExhaustedError("budget exhausted at the root chain", tested)
            # abandon this level, resume the parent past its last acceptance
            chain.pop()
            periods.pop()
            scan_at.pop()
            scan_at[-1] = history[-1].added + 1
            history.pop()
            continue
        value, period = accepted
        chain.append(value)
        periods.append(period)
        scan_at[-1] = i + 1
        scan_at.append(_level_start(chain, period, doubling))
        history.append(StepRecord(value, len(period), tested))
        state = SearchState(state.mode, state.k, tuple(chain), scan_at[-1],
                            budget, tuple(history))
        if checkpoint_path:
            write_checkpoint(checkpoint_path, state)
    return state


def _level_start(chain: list[int], period: Sequence[int], doubling: bool) -> int:
    if doubling:
        return max(chain[-1] + 1, 2 * len(period) + 1)
    return chain[-1] + 1


# --- representation-sequence extension (word form) --------------------------

def _word_is_nim_sequence(terms: Sequence[int], horizon: Optional[int] = None) -> bool:
    """Whether the representation word of `terms` is the Nim sequence of its
    derived set T, checked by brute force at the horizon."""
    seq = RepresentingSequence.from_terms(terms)
    rw = RepWord(seq)
    h = horizon or 3 * terms[-1]
    t_elems = derived_sets(rw).up_to("T", h)
    return nim_sequence(SubtractionSet.explicit(t_elems), h) == rw.prefix(h)


def extend_rep_seq(terms: Sequence[int], start: int, budget: int, *,
                   horizon: Optional[int] = None) -> tuple[tuple[int, ...], StepRecord]:
    """Least j >= start whose appended term changes the representation word
    and keeps it the Nim sequence of the derived set T.

    The incoming sequence must already pass that test.  Raises
    BudgetExhaustedError after `budget` rejections.
    """
    terms = list(terms)
    if terms != sorted(set(terms)) or terms[0] != 1:
        raise ValueError("terms must be a strictly increasing sequence starting at 1")
    if start <= terms[-1]:
        raise ValueError("start must exceed the last term")
    if len(terms) >= 2 and not _word_is_nim_sequence(terms, horizon):
        raise ValueError("base sequence's word is not the Nim sequence of its T")
    base_rw = RepWord(RepresentingSequence.from_terms(terms)) if len(terms) >= 2 else None
    tested = 0
    j = start
    while tested < budget:
        tested += 1
        cand = terms + [j]
        # 3j symbols cover the Fine-Wilf bound for the two candidate periods,
        # so agreement there means the infinite words are equal
        cand_word = RepWord(RepresentingSequence.from_terms(cand)).prefix(3 * j)
        changed = base_rw is None or cand_word != base_rw.prefix(3 * j)
        if changed and _word_is_nim_sequence(cand, horizon):
            return tuple(cand), StepRecord(j, cand[-1], tested)
        j += 1
    raise BudgetExhaustedError(f"no extension of {terms} in [{start}, {j})", tested)


# --- conjecture explorers ----------------------------------------------------

@dataclass(frozen=True)
class ExplorationStep:
    term: int
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ConjectureReport:
    seed: tuple[int, ...]
    recurrence: str
    seed_ok: bool
    seed_detail: str
    steps: tuple[ExplorationStep, ...]

    @property
    def passed(self) -> bool:
        return self.seed_ok and all(s.passed for s in self.steps)

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'} seed={self.seed} rule={self.recurrence}"]
        if not self.seed_ok:
            lines.append(f"  [FAIL] seed: {self.seed_detail}")
        for s in self.steps:
            lines.append(f"  [{'ok  ' if s.passed else 'FAIL'}] extend to {s.term}"
                         + (f": {s.detail}" if s.detail else ""))
        return "\n".join(lines)


def _explore(seed: Sequence[int], coeffs: tuple[int, int], steps: int,
             horizon: Optional[int], recurrence: str,
             seed_ok: bool, seed_detail: str,
             max_term: int = 1 << 40) -> ConjectureReport:
    terms = list(seed)
    outcomes: list[ExplorationStep] = []
    for _ in range(steps):
        nxt = coeffs[0] * terms[-1] - coeffs[1] * terms[-2]
        if nxt > max_term:
            outcomes.append(ExplorationStep(nxt, False, "exceeds the term limit"))
            break
        terms.append(nxt)
        ok = _word_is_nim_sequence(terms, horizon)
        outcomes.append(ExplorationStep(
            nxt, ok, "" if ok else "word is not the Nim sequence of T"))
        if not ok:
            break
    return ConjectureReport(tuple(seed), recurrence, seed_ok, seed_detail,
                            tuple(outcomes))


def explore_conjecture1(seed: Sequence[int], steps: int,
                        horizon: Optional[int] = None) -> ConjectureReport:
    """Extend by b = 3*last - previous and verify each extension's word.

    Evidence gathering only: each extension is certified at a finite horizon.
    """
    seed_ok = _word_is_nim_sequence(seed, horizon)
    return _explore(seed, (3, 1), steps, horizon, "b[i] = 3 b[i-1] - b[i-2]",
                    seed_ok, "" if seed_ok else "seed word is not a Nim sequence")


def explore_conjecture2(seed: Sequence[int], m: int, steps: int,
                        horizon: Optional[int] = None) -> ConjectureReport:
    """Extend by b = (m+1)*last - (m-1)*previous and verify each extension.

    The conjecture's hypothesis wants the seed's last step to satisfy the
    same recurrence already; when it does not, that is reported but the
    exploration still runs.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    seed = list(seed)
    seed_ok = True
    detail = ""
    if len(seed) >= 3:
        want = (m + 1) * seed[-2] - (m - 1) * seed[-3]
        if seed[-1] != want:
            seed_ok = False
            detail = f"last step {seed[-1]} != {want} from the recurrence"
    if seed_ok and not _word_is_nim_sequence(seed, horizon):
        seed_ok = False
        detail = "seed word is not a Nim sequence"
    return _explore(seed, (m + 1, m - 1), steps, horizon,
                    f"b[i] = {m + 1} b[i-1] - {m - 1} b[i-2]", seed_ok, detail)

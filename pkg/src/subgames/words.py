"""Tiny helpers for finite words over alphabets of small nonnegative integers."""

from __future__ import annotations

from typing import Sequence


def render_word(word: Sequence[int]) -> str:
    """Render a word as digit characters, or comma-separated once symbols pass 9."""
    if all(0 <= c <= 9 for c in word):
        return "".join(str(c) for c in word)
    return ",".join(str(c) for c in word)


def parse_word(text: str) -> tuple[int, ...]:
    """Inverse of render_word for nonempty text; '' is the empty word."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    return tuple(int(ch) for ch in text)


def take_periodic(prefix: Sequence[int], period: Sequence[int], n: int) -> list[int]:
    """First n symbols of prefix . period^omega."""
    if not period:
        raise ValueError("period must be nonempty")
    out = list(prefix[:n])
    plen = len(period)
    for i in range(len(out), n):
        out.append(period[(i - len(prefix)) % plen])
    return out

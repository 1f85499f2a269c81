"""Slow, definition-level reference computations used as test oracles.

Nothing here touches the covering-word machinery: words are built by
composing elementary substitutions and every quantity is read off a long
prefix of eta by brute force.
"""

from __future__ import annotations

from collections import Counter


def eta_by_composition(letters: str, n: int) -> str:
    """First n letters of tau_{b_1} o ... o tau_{b_k}(a) for the filler stream ``letters``."""
    w = "a"
    for b in reversed(letters):
        w = w.replace("a", "a" + b + "a")
    if len(w) < n:
        raise ValueError("stream too short for the requested prefix")
    return w[:n]


def windows(text: str, n: int) -> set[str]:
    return {text[i : i + n] for i in range(len(text) - n + 1)}


def longest_border_naive(w: str) -> int:
    for b in range(len(w) - 1, 0, -1):
        if w[:b] == w[-b:]:
            return b
    return 0


def repetitive_by_definition(text: str, n: int, language: set[str]) -> int:
    """max over start positions i of the shortest text[i:e] containing every
    word of ``language`` (all of length n): R(n) restricted to ``text``."""
    need = len(language)
    count: Counter[str] = Counter()
    have = 0
    end = 0  # next window start to add
    best = 0
    last = len(text) - n
    for i in range(last + 1):
        while have < need and end <= last:
            w = text[end : end + n]
            if w in language:
                count[w] += 1
                if count[w] == 1:
                    have += 1
            end += 1
        if have < need:
            break
        best = max(best, end - 1 + n - i)
        w = text[i : i + n]
        if w in language:
            count[w] -= 1
            if count[w] == 0:
                have -= 1
    return best


def max_power_naive(text: str, v: str) -> int:
    p = 1
    while v * (p + 1) in text:
        p += 1
    return p


def covering_by_composition(letters: str, J: int) -> list[str]:
    """w_J b w_J for b in x, y, z, with w_J built by composition."""
    w = eta_by_composition(letters[:J], 2 ** (J + 1) - 1)
    return [w + b + w for b in "xyz"]


def repetitive_on_texts(texts: list[str], n: int) -> int:
    """R(n) from the definition, scanning every text that jointly realises
    all factors of length R(n) (e.g. the three covering words of a deep
    enough level)."""
    language = set().union(*(windows(t, n) for t in texts))
    return max(repetitive_by_definition(t, n, language) for t in texts)

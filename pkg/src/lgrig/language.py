"""Exact factor sets of eta via the three covering words.

Every factor of length n <= |w_J| sits inside some w_J b w_J with
b in {x, y, z}: eta is a concatenation of copies of w_J separated by single
fillers, so a window of that length crosses at most one filler. The three
covering words are themselves factors, hence their windows are exactly the
language at that length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lgrig.errors import NotAFactor
from lgrig.session import SubshiftSession
from lgrig.words import check_word


@dataclass(frozen=True)
class FactorTable:
    n: int
    factors: frozenset[str]
    extensions: dict[str, frozenset[str]]

    def __len__(self) -> int:
        return len(self.factors)

    def __contains__(self, w: object) -> bool:
        return w in self.factors


def _windows(texts, n: int) -> set[str]:
    out: set[str] = set()
    for t in texts:
        out.update(t[i : i + n] for i in range(len(t) - n + 1))
    return out


def factors(session: SubshiftSession, n: int) -> FactorTable:
    """All factors of length n with their one-letter right extensions."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")

    def build() -> FactorTable:
        ext: dict[str, set[str]] = {}
        for u in _windows(session.covering_words(n + 1), n + 1):
            ext.setdefault(u[:-1], set()).add(u[-1])
        frozen = {w: frozenset(s) for w, s in sorted(ext.items())}
        return FactorTable(n, frozenset(frozen), frozen)

    return session.cached(("factors", n), build)


def covering_words(session: SubshiftSession, n: int) -> tuple[str, str, str]:
    return session.covering_words(n)


def is_factor(session: SubshiftSession, w: str) -> bool:
    check_word(w)
    if not w:
        return True
    return any(w in c for c in session.covering_words(len(w)))


def right_special_words(session: SubshiftSession, n: int) -> list[tuple[str, int]]:
    """Factors of length n with at least two right extensions, and how many."""
    table = factors(session, n)
    return [(w, len(e)) for w, e in sorted(table.extensions.items()) if len(e) >= 2]


def occurrences(text: str, w: str) -> list[int]:
    out = []
    i = text.find(w)
    while i >= 0:
        out.append(i)
        i = text.find(w, i + 1)
    return out


def max_gap(session: SubshiftSession, w: str, horizon: int) -> int | None:
    """Largest distance between successive occurrences of w in eta[:horizon].

    Returns None when w occurs fewer than twice within the horizon.
    """
    if not is_factor(session, w):
        raise NotAFactor(w)
    occ = occurrences(session.eta_prefix(horizon), w)
    if len(occ) < 2:
        return None
    return max(b - a for a, b in zip(occ, occ[1:]))


# numpy window identification -----------------------------------------------

# 'b' separates texts in shared_window_ids; it shares a code with 'a', which is
# harmless because every window containing it is discarded.
_CODES = np.zeros(256, dtype=np.int64)
for _i, _ch in enumerate("axyz"):
    _CODES[ord(_ch)] = _i

_PACK = 15  # 2 bits per letter; two packed blocks still fit an int64 product


def _packed(codes: np.ndarray, k: int) -> np.ndarray:
    m = len(codes) - k + 1
    v = np.zeros(m, dtype=np.int64)
    for i in range(k):
        v = (v << 2) | codes[i : i + m]
    return v


def _pair_rank(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    base = int(max(left.max(initial=0), right.max(initial=0))) + 1
    _, inv = np.unique(left * base + right, return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


def window_ids(text: str, n: int) -> np.ndarray:
    """Integer ids of the n-windows of ``text``: equal ids iff equal windows.

    Windows of up to 31 letters are packed 2 bits per letter. Longer ones are
    ranked by prefix doubling from packed blocks: a window of length n is
    determined by its two (possibly overlapping) windows of length k <= n at
    offsets 0 and n - k. Exact throughout, no hashing.
    """
    if n < 1 or n > len(text):
        raise ValueError(f"window length {n} out of range for text of length {len(text)}")
    codes = _CODES[np.frombuffer(text.encode("ascii"), dtype=np.uint8)]
    if n <= 31:
        return _packed(codes, n)
    rank = _packed(codes, _PACK)
    k = _PACK
    while 2 * k <= n:
        rank = _pair_rank(rank[:-k], rank[k:])
        k *= 2
    if k == n:
        return rank
    shift = n - k
    return _pair_rank(rank[:-shift], rank[shift:])


def shared_window_ids(texts, n: int) -> list[np.ndarray]:
    """window_ids for several texts with one common id space."""
    ids = window_ids("b".join(texts), n)
    out = []
    start = 0
    for t in texts:
        out.append(ids[start : start + len(t) - n + 1])
        start += len(t) + 1
    return out

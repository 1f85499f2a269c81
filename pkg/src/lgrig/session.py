"""Cached construction of the level words w_j = tau^(j)(a) for one l-sequence."""

from __future__ import annotations

import logging
import os
import threading
from typing import Callable, TypeVar

from lgrig.errors import DepthExceeded
from lgrig.lspec import GUARD, LSpec
from lgrig.words import level_for_length

log = logging.getLogger(__name__)

T = TypeVar("T")

DEFAULT_MEMORY_BUDGET = 64 * 2**20
MEMORY_ENV = "GRIG_MEMORY_BUDGET"


def default_memory_budget() -> int:
    raw = os.environ.get(MEMORY_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            log.warning("ignoring non-integer %s=%r", MEMORY_ENV, raw)
    return DEFAULT_MEMORY_BUDGET


def level_for_budget(budget: int) -> int:
    """Deepest level whose word, three covering words and slack fit in ``budget`` bytes.

    A level-J covering word has 2^{J+2} - 1 letters; level word plus the
    three covering words stay below 2^{J+4} bytes.
    """
    return max(1, min(61, budget.bit_length() - 1 - 4))


class SubshiftSession:
    """An l-sequence together with lazily filled caches.

    Cache fills are serialised by a lock; once filled, entries are never
    mutated, so concurrent readers are safe.
    """

    def __init__(self, spec: LSpec, memory_budget: int | None = None, max_level: int | None = None):
        self.spec = spec
        self.memory_budget = default_memory_budget() if memory_budget is None else memory_budget
        self.max_level = level_for_budget(self.memory_budget) if max_level is None else max_level
        if 2 ** (self.max_level + 2) > GUARD:
            raise DepthExceeded(f"max_level {self.max_level} leaves the guarded integer range")
        self._letters = ""
        self._levels = ["a"]
        self._cache: dict[tuple, object] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"SubshiftSession({self.spec}, max_level={self.max_level})"

    def cached(self, key: tuple, build: Callable[[], T]) -> T:
        try:
            return self._cache[key]  # type: ignore[return-value]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]  # type: ignore[return-value]

    def _check_level(self, j: int) -> None:
        if j < 0:
            raise ValueError(f"level must be >= 0, got {j}")
        if j > self.max_level:
            raise DepthExceeded(
                f"level {j} exceeds max_level {self.max_level} (memory budget {self.memory_budget} bytes)"
            )

    def beta(self, j: int) -> str:
        """beta^(j), the filler inserted when passing from w_j to w_{j+1}."""
        if j >= len(self._letters):
            with self._lock:
                if j >= len(self._letters):
                    want = max(j + 1, 2 * len(self._letters), self.max_level + 1)
                    try:
                        self._letters = self.spec.substitution_letters(want)
                    except DepthExceeded:
                        # finite explicit lists: only what is actually asked for
                        self._letters = self.spec.substitution_letters(j + 1)
        return self._letters[j]

    def level_word(self, j: int) -> str:
        """w_j = tau^(j)(a), of length 2^{j+1} - 1; w_{j+1} = w_j beta^(j) w_j."""
        self._check_level(j)
        if j >= len(self._levels):
            with self._lock:
                while len(self._levels) <= j:
                    k = len(self._levels) - 1
                    w = self._levels[k]
                    self._levels.append(w + self.beta(k) + w)
        return self._levels[j]

    def eta_prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError(f"prefix length must be >= 0, got {n}")
        return self.level_word(level_for_length(n))[:n]

    def covering_words(self, n: int) -> tuple[str, str, str]:
        """w_J x w_J, w_J y w_J, w_J z w_J for the smallest J with |w_J| >= n."""
        J = level_for_length(n)
        self._check_level(J)

        def build():
            w = self.level_word(J)
            return tuple(w + b + w for b in "xyz")

        return self.cached(("cover", J), build)

    def tau(self, j: int, w: str) -> str:
        """tau^(j)(w): every a becomes w_j, fillers are fixed."""
        return w.replace("a", self.level_word(j))

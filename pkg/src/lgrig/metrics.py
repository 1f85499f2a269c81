"""Finite-scale order metrics: p(n), Q(n), Q(v), R(n), A_{alpha,n} and partials.

All exact metrics are computed from the covering-word language, so they hold
for the subshift itself, not for a sampled prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from lgrig.errors import BracketError, DepthExceeded, NotAFactor, OutOfRange
from lgrig.language import factors, is_factor, shared_window_ids
from lgrig.lspec import LSpec, block_decompose
from lgrig.session import SubshiftSession
from lgrig.words import level_for_length

DEFAULT_POWER_CAP_LENGTH = 2**20

Number = int | float | Fraction


@dataclass(frozen=True)
class Inconclusive:
    """Q(v) >= lower was established but the cap stopped the search."""

    lower: int

    def __str__(self) -> str:
        return f">={self.lower}"


@dataclass
class MetricsRow:
    n: int
    p: int
    Q: int | Inconclusive
    R: int | None = None
    A_alpha: Number | None = None
    bordered_count: int = 0


# complexity ------------------------------------------------------------------


def complexity(session: SubshiftSession, n: int) -> int:
    return len(factors(session, n))


def M(spec: LSpec, m: int) -> int:
    """|tau^(l_1 + ... + l_m)(a)| = 2^{1 + l_1 + ... + l_m} - 1."""
    s = spec.partial_sum(m)
    if s + 1 > 62:
        raise DepthExceeded(f"M({m}) = 2^{s + 1} - 1 leaves the guarded integer range")
    return 2 ** (s + 1) - 1


def complexity_formula(spec: LSpec, n: int) -> int:
    """The closed form p(M(m) + 1 + r), evaluated as printed, for m >= 1."""
    if n <= M(spec, 1):
        raise OutOfRange(f"n = {n} <= M(1) = {M(spec, 1)}; the m = 0 branch needs M(-1)")
    m = 1
    while n >= M(spec, m + 1) + 1:
        m += 1
    Mm, Mprev = M(spec, m), M(spec, m - 1)
    r = n - Mm - 1
    if r < Mm - Mprev:
        return 2 * Mm + Mprev + 3 * r
    return 3 * Mm + 2 * r


# borders and repulsiveness ---------------------------------------------------


def border_array(w: str) -> list[int]:
    """f[i] = length of the longest proper border of w[:i+1]."""
    f = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = f[k - 1]
        if w[i] == w[k]:
            k += 1
        f[i] = k
    return f


def longest_border(w: str) -> int:
    if not w:
        raise ValueError("longest_border needs a non-empty word")
    return border_array(w)[-1]


def all_borders(w: str) -> list[int]:
    """Lengths of every non-empty proper border, longest first."""
    f = border_array(w)
    out = []
    b = f[-1] if w else 0
    while b:
        out.append(b)
        b = f[b - 1]
    return out


def _overlap_ratio(n: int, b: int, alpha: Number) -> Number:
    if alpha == 1:
        return Fraction(n - b, b)
    return (n - b) / b ** (1 / float(alpha))


def repulsiveness(session: SubshiftSession, alpha: Number, n: int) -> Number:
    """A_{alpha,n}: min over bordered factors W of length n of (n - b) / b^(1/alpha).

    Only the longest border b of each W matters: the ratio decreases in b.
    Exact (Fraction) for alpha == 1, float otherwise; inf if nothing is bordered.
    """
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    best: Number = math.inf
    for W in factors(session, n).factors:
        b = longest_border(W)
        if b:
            v = _overlap_ratio(n, b, alpha)
            if v < best:
                best = v
    return best


def bordered_count(session: SubshiftSession, n: int) -> int:
    return sum(1 for W in factors(session, n).factors if longest_border(W))


# powers ------------------------------------------------------------------


def word_power(session: SubshiftSession, v: str, cap: int | None = None) -> int | Inconclusive:
    """Q(v): the largest p with v^p in the language.

    Membership of v^p is monotone in p, so an exponential search followed by
    bisection finds the boundary. ``cap`` bounds p (default 2^20 // |v|).
    """
    if not v:
        raise ValueError("word_power needs a non-empty word")
    if not is_factor(session, v):
        raise NotAFactor(v)
    if cap is None:
        cap = max(1, DEFAULT_POWER_CAP_LENGTH // len(v))
    lo = 1
    hi = 2
    while hi <= cap and is_factor(session, v * hi):
        lo, hi = hi, 2 * hi
    if hi > cap:
        if lo == cap or is_factor(session, v * cap):
            return Inconclusive(cap)
        hi = cap
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if is_factor(session, v * mid):
            lo = mid
        else:
            hi = mid
    return lo


def max_power(session: SubshiftSession, n: int, cap: int | None = None) -> int | Inconclusive:
    """Q(n) = max of Q(v) over factors of length n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")

    def build():
        squares = factors(session, 2 * n).factors
        best = 1
        lower = None
        for v in sorted(factors(session, n).factors):
            if v + v not in squares:
                continue
            p = word_power(session, v, cap)
            if isinstance(p, Inconclusive):
                lower = max(lower or 0, p.lower)
            else:
                best = max(best, p)
        if lower is not None and lower >= best:
            return Inconclusive(lower)
        return best

    return session.cached(("Q", n, cap), build)


# repetitive function --------------------------------------------------------


def lemma_r_bounds(spec: LSpec, j: int) -> tuple[int, int]:
    """The printed bracket for R(2^{j+1} - 1):
    2^{l_{N+1} + l_N - q + j + 1} <= R <= 2^{l_{N+1} + l_N - q + j + 2}."""
    N, q = block_decompose(spec, j)
    e = spec.length(N + 1) + spec.length(N) - q + j
    return 2 ** (e + 1), 2 ** (e + 2)


@dataclass(frozen=True)
class RepetitiveWitness:
    """A factor of length R(n) - 1 that misses the n-factor ``missing``."""

    window: str
    missing: str


def _repetitive_in_window(session: SubshiftSession, n: int, window: int):
    """(R(n), witness) if every factor of length ``window`` contains every
    n-factor, else None.

    Uses R(n) = (largest gap between consecutive occurrences of an n-factor) + n - 1.
    The covering words for length window + 1 contain every return word once
    R(n) <= window, which the boundary conditions below certify.
    """
    texts = session.covering_words(window + 1)
    expected = len(factors(session, n))
    best = 0
    where = None
    for t, ids in enumerate(shared_window_ids(texts, n)):
        length = len(ids) + n - 1
        order = np.argsort(ids, kind="stable")
        sorted_ids = ids[order]
        starts = np.flatnonzero(np.r_[True, sorted_ids[1:] != sorted_ids[:-1]])
        if len(starts) != expected:
            return None
        ends = np.r_[starts[1:], len(order)] - 1
        if order[starts].max() > window - n or order[ends].min() < length - window:
            return None
        same = sorted_ids[1:] == sorted_ids[:-1]
        if same.any():
            gaps = np.where(same, np.diff(order), 0)
            k = int(gaps.argmax())
            if gaps[k] > best:
                best = int(gaps[k])
                where = (t, int(order[k]))
    R = best + n - 1
    if R > window or where is None:
        return None
    t, p = where
    text = texts[t]
    return R, RepetitiveWitness(text[p + 1 : p + R], text[p : p + n])


def _repetitive(session: SubshiftSession, n: int):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")

    def build():
        spec = session.spec
        if spec.weak_zero:
            window = 4 * n
            while True:
                if level_for_length(window + 1) > session.max_level:
                    raise DepthExceeded(f"R({n}) needs windows beyond the memory budget")
                found = _repetitive_in_window(session, n, window)
                if found is not None:
                    return found
                window *= 2
        # printed upper bound at the smallest dyadic length >= n, doubled once
        # (to 2^{J+1} - 2, the longest window the same covering level serves)
        hi = lemma_r_bounds(spec, level_for_length(n))[1]
        window = 2 ** (level_for_length(hi + 1) + 1) - 2
        if level_for_length(window + 1) > session.max_level:
            raise DepthExceeded(f"R({n}) bracket {window} needs level > {session.max_level}")
        found = _repetitive_in_window(session, n, window)
        if found is None:
            raise BracketError(f"R({n}) is not certified within the window {window}")
        return found

    return session.cached(("R", n), build)


def repetitive(session: SubshiftSession, n: int) -> int:
    """R(n): the least r such that every factor of length r contains all n-factors."""
    return _repetitive(session, n)[0]


def repetitive_witness(session: SubshiftSession, n: int) -> RepetitiveWitness:
    """A factor of length R(n) - 1 lacking some n-factor, proving R(n) is not smaller."""
    return _repetitive(session, n)[1]


# finite partials of the critical exponents -----------------------------------

PARTIAL_LABEL = "finite-scale partial - not a limit"


@dataclass
class ExponentPartial:
    alpha: float
    kind: str
    index: list[int]
    values: list[float]
    running: list[float]
    closed_form: list[float] | None = None
    label: str = PARTIAL_LABEL

    @property
    def last(self) -> float:
        return self.running[-1]


def _pow2(exponent: float) -> float:
    try:
        return math.ldexp(1.0, int(exponent)) * 2.0 ** (exponent - int(exponent))
    except OverflowError:
        return math.inf


def _running_sup(values: list[float]) -> list[float]:
    out, cur = [], -math.inf
    for v in values:
        cur = max(cur, v)
        out.append(cur)
    return out


def _tail_min(values: list[float]) -> list[float]:
    out, cur = [], math.inf
    for v in reversed(values):
        cur = min(cur, v)
        out.append(cur)
    return out[::-1]


def q_closed_form(spec: LSpec, alpha: float, m: int) -> float:
    """2^{l_{m+1} + 1} / 2^{(alpha - 1) (l_1 + ... + l_m)}."""
    return _pow2(spec.length(m + 1) + 1 - (alpha - 1) * spec.partial_sum(m))


def exponent_partials(
    session: SubshiftSession, alpha: float, kind: str, depth: int, start: int | None = None
) -> ExponentPartial:
    """Defining terms of Q_alpha (kind "Q"), R_alpha ("R") or ell_alpha ("ell").

    Q and R carry running sups, ell a running tail minimum (entry k is the
    minimum of values[k:]). For Q the closed-form terms over m = 1..depth are
    attached as well.
    """
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if kind == "Q":
        index = list(range(start or 1, depth + 1))
        values = []
        for n in index:
            q = max_power(session, n)
            if isinstance(q, Inconclusive):
                raise DepthExceeded(f"Q({n}) hit the power cap")
            values.append(q / n ** (alpha - 1))
        closed = [q_closed_form(session.spec, alpha, m) for m in range(1, depth + 1)]
        return ExponentPartial(alpha, kind, index, values, _running_sup(values), closed)
    if kind == "R":
        index = list(range(start or 1, depth + 1))
        values = [repetitive(session, n) / n**alpha for n in index]
        return ExponentPartial(alpha, kind, index, values, _running_sup(values))
    if kind == "ell":
        index = list(range(start or 2, depth + 1))
        values = [float(repulsiveness(session, alpha, n)) for n in index]
        return ExponentPartial(alpha, kind, index, values, _tail_min(values))
    raise ValueError(f"kind must be Q, R or ell, got {kind!r}")


def metrics_row(session: SubshiftSession, n: int, alpha: Number = 1, with_R: bool = False) -> MetricsRow:
    return MetricsRow(
        n=n,
        p=complexity(session, n),
        Q=max_power(session, n),
        R=repetitive(session, n) if with_R else None,
        A_alpha=repulsiveness(session, alpha, n),
        bordered_count=bordered_count(session, n),
    )

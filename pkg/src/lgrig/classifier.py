"""Boundedness criteria on the sequence l and critical-exponent estimates.

For an l-Grigorchuk subshift,

    alpha-finite / alpha-repulsive  <=>  sup_n |l_{n+1} + (1 - alpha) S_n| < inf
    alpha-repetitive                <=>  sup_n |l_{n+2} + l_{n+1} + (1 - alpha) S_n| < inf

with S_n = l_1 + ... + l_n. Finitely many terms cannot decide a limsup, so
the verdicts here are labelled heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from lgrig.errors import InvalidSpec
from lgrig.lspec import LSpec

BOUNDED = "bounded-so-far"
DIVERGING = "diverging"
INCONCLUSIVE = "inconclusive"

KINDS = ("finite", "repetitive")
DEFAULT_ALPHA_GRID = (1, 1.5, 2, 3, 4)
DEFAULT_TOLERANCE = 0.05


@dataclass
class CriterionTrace:
    alpha: Fraction
    kind: str
    terms: list[Fraction]
    sup_abs: list[Fraction]
    verdict: str

    @property
    def bounded(self) -> bool:
        return self.verdict == BOUNDED


def _verdict(abs_terms: list[Fraction]) -> str:
    """Three-valued heuristic on |terms|.

    diverging: the last quarter sets a new record that exceeds the first-half
        maximum by at least 1 (terms are integers for integer alpha).
    bounded-so-far: otherwise, when the last-half maximum is already attained
        within the last quarter or the second half never exceeds the first.
    inconclusive: anything else, e.g. a spike in the third quarter only.
    """
    n = len(abs_terms)
    half, quarter = abs_terms[n // 2 :], abs_terms[n - max(1, n // 4) :]
    before_quarter = abs_terms[: n - len(quarter)]
    first_half = abs_terms[: n // 2] or abs_terms[:1]
    if max(quarter) > max(before_quarter) and max(quarter) >= max(first_half) + 1:
        return DIVERGING
    if max(half) == max(quarter) or max(half) <= max(first_half):
        return BOUNDED
    return INCONCLUSIVE


def criterion_trace(spec: LSpec, alpha, kind: str, depth: int) -> CriterionTrace:
    """Terms n = 1..depth of the finite (c_n) or repetitive (d_n) criterion."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if depth < 3:
        raise ValueError("depth must be >= 3")
    a = Fraction(alpha)
    if a < 1:
        raise ValueError("alpha must be >= 1")
    ls = spec.lengths(depth + 2)
    terms = []
    s = 0
    for n in range(1, depth + 1):
        s += ls[n - 1]
        t = ls[n] + (1 - a) * s
        if kind == "repetitive":
            t += ls[n + 1]
        terms.append(t)
    abs_terms = [abs(t) for t in terms]
    sup, cur = [], Fraction(0)
    for t in abs_terms:
        cur = max(cur, t)
        sup.append(cur)
    return CriterionTrace(a, kind, terms, sup, _verdict(abs_terms))


@dataclass
class ExponentEstimate:
    kind: str
    values: list[float]
    last: float
    drift: float


def exponent_estimate(spec: LSpec, kind: str, depth: int) -> ExponentEstimate:
    """alpha_n solving c_n = 0 (finite) or d_n = 0 (repetitive) for alpha.

    finite: 1 + l_{n+1} / S_n; repetitive: 1 + (l_{n+1} + l_{n+2}) / S_n.
    ``drift`` is max - min over the last quarter of the window.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if spec.weak_zero:
        raise InvalidSpec("exponent estimates need a strict-positive spec")
    if depth < 3:
        raise ValueError("depth must be >= 3")
    ls = spec.lengths(depth + 2)
    values = []
    s = 0
    for n in range(1, depth + 1):
        s += ls[n - 1]
        top = ls[n] + (ls[n + 1] if kind == "repetitive" else 0)
        values.append(float(1 + Fraction(top, s)))
    tail = values[depth - max(2, depth // 4) :]
    return ExponentEstimate(kind, values, values[-1], max(tail) - min(tail))


@dataclass
class SquareRelation:
    status: str
    reason: str
    finite_alphas: list[float] = field(default_factory=list)
    repetitive_alphas: list[float] = field(default_factory=list)
    finite_estimate: float | None = None
    repetitive_estimate: float | None = None


def bounded_alphas(spec: LSpec, kind: str, depth: int, grid=DEFAULT_ALPHA_GRID) -> list[float]:
    return [a for a in grid if criterion_trace(spec, a, kind, depth).bounded]


def square_relation_check(
    spec: LSpec, depth: int = 20, tolerance: float = DEFAULT_TOLERANCE, grid=DEFAULT_ALPHA_GRID
) -> SquareRelation:
    """alpha-finite should imply alpha^2-repetitive.

    pass when the repetitive exponent is the square of the finite one (grid
    verdicts and estimates within ``tolerance``) or when neither criterion is
    bounded anywhere on the grid.
    """
    fin = bounded_alphas(spec, "finite", depth, grid)
    rep = bounded_alphas(spec, "repetitive", depth, grid)
    if not fin and not rep:
        return SquareRelation("pass", "both criteria unbounded on the whole grid", fin, rep)
    if not fin:
        return SquareRelation(
            "inconclusive", "finite criterion unbounded on the grid; hypothesis not met", fin, rep
        )
    est_f = exponent_estimate(spec, "finite", depth)
    est_r = exponent_estimate(spec, "repetitive", depth)
    out = SquareRelation("pass", "", fin, rep, est_f.last, est_r.last)
    if max(est_f.drift, est_r.drift) > tolerance:
        out.status, out.reason = "inconclusive", "estimate drift exceeds tolerance"
        return out
    grid_ok = all(a * a in rep for a in fin if a * a in grid)
    est_ok = abs(est_r.last - est_f.last**2) < tolerance
    if grid_ok and est_ok:
        out.reason = f"repetitive {est_r.last:.6g} ~ finite^2 {est_f.last**2:.6g}"
    else:
        out.status = "fail"
        out.reason = f"repetitive {est_r.last:.6g} vs finite^2 {est_f.last**2:.6g}; grid {fin} -> {rep}"
    return out

"""Named checks pairing a statement about eta with an independent computation.

Every check returns a CheckReport whose status is pass, fail (with a
witness), skip (with a reason) or inconclusive. ``run_suite`` runs a set of
checks, optionally on a thread pool, and always reports them in registry order.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

from lgrig.errors import DepthExceeded, OutOfRange, UnknownCheck
from lgrig.language import factors, is_factor, right_special_words
from lgrig.lspec import LSpec, block_decompose, derived_spec, shifted_spec
from lgrig.metrics import (
    M,
    Inconclusive,
    complexity,
    complexity_formula,
    lemma_r_bounds,
    max_power,
    repetitive,
    repetitive_witness,
    word_power,
)
from lgrig.session import SubshiftSession
from lgrig.words import is_palindrome, kappa_apply, rotate_fillers, tau_apply

PASS = "pass"
FAIL = "fail"
SKIP = "skip"
INCONCLUSIVE = "inconclusive"

WEAK_ZERO_REASON = "weak-zero spec"
PRECONDITION_REASON = "precondition (η|_k)² ∉ L"


@dataclass
class CheckReport:
    check_id: str
    spec: str
    params: dict[str, Any]
    status: str
    witness: dict[str, Any] | None = None
    reason: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class _Outcome:
    status: str
    witness: dict[str, Any] | None = None
    reason: str | None = None
    details: dict[str, Any] = field(default_factory=dict)


def _pass(**details) -> _Outcome:
    return _Outcome(PASS, details=details)


def _fail(witness: dict[str, Any], **details) -> _Outcome:
    return _Outcome(FAIL, witness=witness, details=details)


def _skip(reason: str, **details) -> _Outcome:
    return _Outcome(SKIP, reason=reason, details=details)


@dataclass(frozen=True)
class _Check:
    check_id: str
    run: Callable[..., _Outcome]
    defaults: dict[str, Any]
    strict_only: bool


REGISTRY: dict[str, _Check] = {}

#: Report order of a full suite.
SUITE_ORDER = (
    "lengths",
    "recursion-palindrome",
    "positions",
    "kappa-fixed-point",
    "lysenok-identity",
    "q-statement-i",
    "q-statement-ii",
    "q-statement-iii",
    "q-statement-iv",
    "q-statement-v",
    "q-corollary",
    "r-bounds",
    "r-gt-nq",
    "complexity-structure",
    "special-counts",
    "three-special",
    "aperiodicity",
    "uniform-recurrence",
    "frequency-diagnostic",
    "derived-word",
)


def check(check_id: str, strict_only: bool = False, **defaults):
    """Register a check; ``strict_only`` checks skip on weak-zero specs."""

    def register(fn):
        REGISTRY[check_id] = _Check(check_id, fn, defaults, strict_only)
        return fn

    return register


def check_ids() -> list[str]:
    return [cid for cid in SUITE_ORDER if cid in REGISTRY] + sorted(set(REGISTRY) - set(SUITE_ORDER))


def run_check(check_id: str, session: SubshiftSession, params: dict[str, Any] | None = None) -> CheckReport:
    try:
        entry = REGISTRY[check_id]
    except KeyError:
        raise UnknownCheck(check_id) from None
    unknown = set(params or {}) - set(entry.defaults)
    if unknown:
        raise ValueError(f"{check_id} does not take {sorted(unknown)}")
    merged = {**entry.defaults, **(params or {})}
    if entry.strict_only and session.spec.weak_zero:
        outcome = _skip(WEAK_ZERO_REASON)
    else:
        try:
            outcome = entry.run(session, **merged)
        except DepthExceeded as exc:
            outcome = _skip(f"depth exceeded: {exc}")
    return CheckReport(
        check_id, str(session.spec), merged, outcome.status, outcome.witness, outcome.reason, outcome.details
    )


def run_suite(
    session: SubshiftSession,
    checks: list[str] | None = None,
    params: dict[str, dict[str, Any]] | None = None,
    workers: int = 1,
) -> list[CheckReport]:
    """Run ``checks`` (default: all) and return reports in registry order."""
    wanted = check_ids() if checks is None else list(checks)
    for cid in wanted:
        if cid not in REGISTRY:
            raise UnknownCheck(cid)
    order = {cid: i for i, cid in enumerate(check_ids())}
    wanted = sorted(set(wanted), key=order.__getitem__)
    params = params or {}

    def one(cid: str) -> CheckReport:
        return run_check(cid, session, params.get(cid))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, wanted))
    return [one(cid) for cid in wanted]


# substitution core ----------------------------------------------------------


@check("lengths", j_max=20)
def _lengths(session: SubshiftSession, j_max: int) -> _Outcome:
    for j in range(j_max + 1):
        got = len(session.level_word(j))
        if got != 2 ** (j + 1) - 1:
            return _fail({"j": j, "length": got, "expected": 2 ** (j + 1) - 1})
    return _pass(levels=j_max + 1)


def _composed_level_word(spec: LSpec, j: int) -> str:
    """tau^(j)(a) by applying the elementary substitutions one at a time."""
    w = "a"
    for letter in reversed(spec.substitution_letters(j)):
        w = tau_apply(letter, w)
    return w


@check("recursion-palindrome", j_max=16, compose_max=12)
def _recursion_palindrome(session: SubshiftSession, j_max: int, compose_max: int) -> _Outcome:
    for j in range(j_max + 1):
        w = session.level_word(j)
        if not is_palindrome(w):
            return _fail({"j": j, "reason": "w_j is not a palindrome"})
        if j < j_max and session.level_word(j + 1) != w + session.beta(j) + w:
            return _fail({"j": j, "reason": "w_{j+1} != w_j beta^(j) w_j"})
        if j <= compose_max and _composed_level_word(session.spec, j) != w:
            return _fail({"j": j, "reason": "cached w_j differs from the composed substitutions"})
    return _pass(composed_up_to=min(j_max, compose_max))


@check("positions", horizon=2**16)
def _positions(session: SubshiftSession, horizon: int) -> _Outcome:
    spec = session.spec
    if spec.length(1) == 0:
        return _skip(WEAK_ZERO_REASON)
    eta = session.eta_prefix(horizon)
    odd = eta[0::2]
    if odd.strip("a"):
        i = next(k for k, ch in enumerate(odd) if ch != "a")
        return _fail({"position": 2 * i + 1, "letter": odd[i], "expected": "a"})
    first = spec.block_letter(1)
    mod4 = eta[1::4]
    if mod4.strip(first):
        i = next(k for k, ch in enumerate(mod4) if ch != first)
        return _fail({"position": 4 * i + 2, "letter": mod4[i], "expected": first})
    return _pass(letter_at_4k_plus_2=first)


def _tau_power(beta: str, times: int, w: str) -> str:
    """tau_beta^times(w), using tau_beta^t(a) = (a beta)^{2^t - 1} a."""
    return w.replace("a", (("a" + beta) * (2**times - 1)) + "a")


@check("kappa-fixed-point", n=2**15)
def _kappa_fixed_point(session: SubshiftSession, n: int) -> _Outcome:
    """eta = tau_{b_1}^{l_1}(rho(eta')) where eta' belongs to (l_2, l_3, ...).

    For l = (1, 1, ...) this is eta = kappa(eta), which is also checked
    letter by letter with kappa itself.
    """
    spec = session.spec
    eta = session.eta_prefix(n)
    details: dict[str, Any] = {}
    if spec == LSpec.const(1):
        image = kappa_apply(eta)[:n]
        if image != eta:
            i = next(k for k in range(n) if image[k] != eta[k])
            return _fail({"form": "kappa", "position": i + 1, "got": image[i], "expected": eta[i]})
        details["kappa"] = "exact"
    shifted = SubshiftSession(shifted_spec(spec, 1), session.memory_budget, session.max_level)
    image = _tau_power(spec.block_letter(1), spec.length(1), rotate_fillers(shifted.eta_prefix(n), 1))[:n]
    if image != eta:
        i = next(k for k in range(n) if image[k] != eta[k])
        return _fail({"form": "shift-conjugacy", "position": i + 1, "got": image[i], "expected": eta[i]})
    details["shift_conjugacy"] = "exact"
    return _pass(**details)


@check("lysenok-identity", j_max=12)
def _lysenok_identity(session: SubshiftSession, j_max: int) -> _Outcome:
    """kappa^j(az) = w_j beta^(j-1) for l = (1, 1, ...), whatever the session's spec."""
    classical = SubshiftSession(LSpec.const(1), session.memory_budget, session.max_level)
    u = "az"
    for j in range(1, j_max + 1):
        u = kappa_apply(u)
        if u != classical.level_word(j) + classical.beta(j - 1):
            return _fail({"j": j, "identity": "kappa^j(az)"}, evaluated_on="const:1")
    return _pass(evaluated_on="const:1")


@check("derived-word", strict_only=True, j_max=8, length=2**14)
def _derived_word(session: SubshiftSession, j_max: int, length: int) -> _Outcome:
    spec = session.spec
    eta = session.eta_prefix(length)
    levels = sorted(set(range(1, j_max + 1)) | {spec.length(1)})
    for j in levels:
        derived = SubshiftSession(derived_spec(spec, j), session.memory_budget, session.max_level)
        inner = derived.eta_prefix(length // 2**j + 2)
        image = session.tau(j, inner)[:length]
        if image != eta:
            i = next((k for k in range(min(len(image), length)) if image[k] != eta[k]), len(image))
            return _fail({"j": j, "derived_spec": str(derived.spec), "position": i + 1})
    return _pass(levels=levels)


# powers --------------------------------------------------------------------


@check("q-statement-i")
def _q_statement_i(session: SubshiftSession) -> _Outcome:
    l1 = session.spec.length(1)
    if l1 == 0:
        return _skip(WEAK_ZERO_REASON)
    got = max_power(session, 2)
    expected = 2 ** (l1 + 1) - 1
    if got != expected:
        return _fail({"n": 2, "Q": str(got), "expected": expected})
    return _pass(Q2=got)


@check("q-statement-ii", k_max=33)
def _q_statement_ii(session: SubshiftSession, k_max: int) -> _Outcome:
    for k in range(1, k_max + 1, 2):
        got = max_power(session, k)
        if got != 1:
            return _fail({"k": k, "Q": str(got), "expected": 1})
    return _pass(odd_k_checked=len(range(1, k_max + 1, 2)))


def _prefix_power_check(session: SubshiftSession, ks, expected_for) -> _Outcome:
    eta = session.eta_prefix(max(ks) if ks else 1)
    tested, unmet = [], []
    for k in ks:
        v = eta[:k]
        if not is_factor(session, v + v):
            unmet.append(k)
            continue
        got = word_power(session, v)
        want = expected_for(k)
        if got != want:
            return _fail({"k": k, "Q": str(got), "expected": want})
        tested.append(k)
    if not tested:
        return _skip(PRECONDITION_REASON, precondition_unmet=unmet)
    return _pass(tested=tested, precondition_unmet=unmet)


@check("q-statement-iii", strict_only=True, k_max=64)
def _q_statement_iii(session: SubshiftSession, k_max: int) -> _Outcome:
    l1 = session.spec.length(1)
    return _prefix_power_check(session, list(range(2, k_max + 1, 4)), lambda k: (2 ** (l1 + 2) - 2) // k)


@check("q-statement-iv", strict_only=True, k_max=64)
def _q_statement_iv(session: SubshiftSession, k_max: int) -> _Outcome:
    spec = session.spec

    def expected(k: int) -> int:
        j = 0
        while (k >> j) % 4 != 2:
            j += 1
        N, q = block_decompose(spec, j)
        return (2 ** (spec.length(N) - q + 1) - 1) // (k >> (j + 1))

    return _prefix_power_check(session, list(range(4, k_max + 1, 4)), expected)


@check("q-statement-v", n_max=40)
def _q_statement_v(session: SubshiftSession, n_max: int) -> _Outcome:
    """A cube v^3 of length m forces eta|_m to be a conjugate of v with
    Q(v) - 1 <= Q(eta|_m) <= Q(v)."""
    eta = session.eta_prefix(n_max)
    cubes = 0
    for m in range(1, n_max + 1):
        pref = eta[:m]
        cubes_of_length = factors(session, 3 * m).factors
        for v in sorted(factors(session, m).factors):
            if v * 3 not in cubes_of_length:
                continue
            cubes += 1
            if pref not in v + v:
                return _fail({"m": m, "v": v, "prefix": pref, "reason": "prefix is not a conjugate of v"})
            qv, qp = word_power(session, v), word_power(session, pref)
            if isinstance(qv, Inconclusive) or isinstance(qp, Inconclusive):
                return _Outcome(INCONCLUSIVE, reason="power cap reached", details={"m": m, "v": v})
            if not qv - 1 <= qp <= qv:
                return _fail({"m": m, "v": v, "Q_v": qv, "Q_prefix": qp})
    return _pass(cubes_checked=cubes)


@check("q-corollary", strict_only=True, j_max=7)
def _q_corollary(session: SubshiftSession, j_max: int) -> _Outcome:
    spec = session.spec
    values = {}
    for j in range(j_max + 1):
        N, q = block_decompose(spec, j)
        n = 2 ** (j + 1)
        got = max_power(session, n)
        expected = 2 ** (spec.length(N) - q + 1) - 1
        if got != expected:
            return _fail({"j": j, "n": n, "Q": str(got), "expected": expected})
        values[n] = got
    return _pass(Q=values)


# repetitive function ------------------------------------------------------


@check("r-bounds", strict_only=True, j_max=12, max_window=2**16)
def _r_bounds(session: SubshiftSession, j_max: int, max_window: int) -> _Outcome:
    spec = session.spec
    rows, untested = [], []
    first_bad = None
    for j in range(j_max + 1):
        lo, hi = lemma_r_bounds(spec, j)
        if hi > max_window:
            untested.append(j)
            continue
        n = 2 ** (j + 1) - 1
        r = repetitive(session, n)
        rows.append({"j": j, "n": n, "R": r, "lower": lo, "upper": hi})
        if first_bad is None and not lo <= r <= hi:
            wit = repetitive_witness(session, n)
            first_bad = {
                "j": j,
                "n": n,
                "R": r,
                "lower": lo,
                "upper": hi,
                "missing_factor": wit.missing,
                "factor_length": len(wit.window),
            }
            if len(wit.window) <= 256:
                first_bad["factor_without_it"] = wit.window
    if first_bad is not None:
        return _fail(first_bad, rows=rows, untested_j=untested)
    if not rows:
        return _skip(f"depth exceeded: no bracket below {max_window}", untested_j=untested)
    return _pass(rows=rows, untested_j=untested)


@check("r-gt-nq", n_max=32)
def _r_gt_nq(session: SubshiftSession, n_max: int) -> _Outcome:
    for n in range(1, n_max + 1):
        r, q = repetitive(session, n), max_power(session, n)
        if isinstance(q, Inconclusive):
            return _Outcome(INCONCLUSIVE, reason=f"Q({n}) hit the power cap")
        if not r > n * q:
            return _fail({"n": n, "R": r, "Q": q})
    return _pass(n_max=n_max)


@check("uniform-recurrence", n_max=4)
def _uniform_recurrence(session: SubshiftSession, n_max: int) -> _Outcome:
    """Gaps between successive occurrences of each n-factor never exceed R(n) - n + 1.

    Gaps are measured on two prefixes, the second twice as long, and the
    largest gap must already be attained on the first.
    """
    stable = True
    summary = {}
    for n in range(1, n_max + 1):
        r = repetitive(session, n)
        horizon = max(4 * r, 2**12)
        eta1 = session.eta_prefix(horizon)
        eta2 = session.eta_prefix(2 * horizon)
        worst = 0
        for w in sorted(factors(session, n).factors):
            pattern = re.compile(f"(?={w})")
            g1, g2 = _max_gap(pattern, eta1), _max_gap(pattern, eta2)
            if g2 is None or g2 > r - n + 1:
                return _fail({"w": w, "max_gap": g2, "bound": r - n + 1, "horizon": 2 * horizon})
            stable = stable and g1 == g2
            worst = max(worst, g2)
        summary[n] = {"R": r, "max_gap": worst}
    return _pass(gaps=summary, stabilized=stable)


def _max_gap(pattern: re.Pattern, text: str) -> int | None:
    occ = [m.start() for m in pattern.finditer(text)]
    if len(occ) < 2:
        return None
    return max(b - a for a, b in zip(occ, occ[1:]))


# complexity and special words -----------------------------------------------


@check("complexity-structure", n_max=255)
def _complexity_structure(session: SubshiftSession, n_max: int) -> _Outcome:
    spec = session.spec
    p = {n: complexity(session, n) for n in range(1, n_max + 2)}
    for n in range(1, n_max + 1):
        if p[n + 1] - p[n] not in (2, 3):
            return _fail({"n": n, "increment": p[n + 1] - p[n]})
    offsets = {}
    formula_prev = None
    for n in range(1, n_max + 1):
        try:
            f = complexity_formula(spec, n)
        except OutOfRange:
            continue
        offsets[n] = p[n] - f
        if formula_prev is not None and f - formula_prev != p[n] - p[n - 1]:
            return _fail({"n": n, "oracle_increment": p[n] - p[n - 1], "formula_increment": f - formula_prev})
        formula_prev = f
    distinct = sorted(set(offsets.values()))
    if len(distinct) > 1:
        n = next(k for k in offsets if offsets[k] != offsets[min(offsets)])
        return _fail({"n": n, "offset": offsets[n], "first_offset": offsets[min(offsets)]})
    breakpoints = []
    m = 1
    while M(spec, m) + 1 <= n_max:
        start = M(spec, m) + 1
        breakpoints.append({"m": m, "slope3_from": start, "slope2_from": start + M(spec, m) - M(spec, m - 1)})
        m += 1
    return _pass(offset=distinct[0] if distinct else None, formula_from=min(offsets, default=None), breakpoints=breakpoints)


@check("special-counts", n_max=128)
def _special_counts(session: SubshiftSession, n_max: int) -> _Outcome:
    counts = {}
    for n in range(1, n_max + 1):
        c = len(right_special_words(session, n))
        if c not in (1, 2):
            return _fail({"n": n, "right_special": c})
        counts[c] = counts.get(c, 0) + 1
    return _pass(lengths_with_count=counts)


@check("three-special", j_max=6)
def _three_special(session: SubshiftSession, j_max: int) -> _Outcome:
    for j in range(j_max + 1):
        w = session.level_word(j)
        ext = factors(session, len(w)).extensions.get(w, frozenset())
        if len(ext) != 3:
            return _fail({"j": j, "extensions": "".join(sorted(ext))})
    return _pass()


@check("aperiodicity", n_max=128)
def _aperiodicity(session: SubshiftSession, n_max: int) -> _Outcome:
    prev = None
    for n in range(1, n_max + 2):
        p = complexity(session, n)
        if p < n + 1 or (prev is not None and p <= prev):
            return _fail({"n": n, "p": p, "previous": prev})
        prev = p
    return _pass()


@check("frequency-diagnostic", j_max=16, horizon=2**16)
def _frequency_diagnostic(session: SubshiftSession, j_max: int, horizon: int) -> _Outcome:
    """Informational: letter frequencies on w_j and on dyadic prefixes."""
    a_on_levels = {}
    exact = True
    for j in range(j_max + 1):
        w = session.level_word(j)
        f = Fraction(w.count("a"), len(w))
        exact = exact and f == Fraction(2**j, 2 ** (j + 1) - 1)
        a_on_levels[j] = str(f)
    eta = session.eta_prefix(horizon)
    prefixes = {}
    k = 1
    while 2**k <= horizon:
        head = eta[: 2**k]
        prefixes[2**k] = {c: round(head.count(c) / len(head), 6) for c in "axyz"}
        k += 1
    return _pass(a_frequency_on_levels=a_on_levels, a_count_doubles=exact, prefix_frequencies=prefixes)

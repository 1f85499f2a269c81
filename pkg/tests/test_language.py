import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import windows

from lgrig import NotAFactor
from lgrig.language import (
    factors,
    is_factor,
    max_gap,
    occurrences,
    right_special_words,
    shared_window_ids,
    window_ids,
)
from lgrig.metrics import repetitive

from conftest import ALL_SPECS, NAMED_SPECS, session_for


def test_factor_examples(const1):
    assert factors(const1, 1).factors == {"a", "x", "y", "z"}
    assert factors(const1, 2).factors == {"ax", "xa", "ay", "ya", "az", "za"}
    t4 = factors(const1, 4)
    assert len(t4) == 10 and "axax" in t4 and "xaxa" in t4
    assert factors(const1, 0).factors == {""}


def test_is_factor_examples(const1, geom2):
    assert is_factor(const1, "axax")
    assert const1.eta_prefix(16)[12:16] == "axax"
    assert not is_factor(const1, "yay")
    assert is_factor(const1, "")
    for s in (const1, geom2):
        assert not is_factor(s, "aa")
    with pytest.raises(ValueError):
        is_factor(const1, "abc")


def test_right_special_examples(const1):
    assert right_special_words(const1, 1) == [("a", 3)]
    assert right_special_words(const1, 2) == [("xa", 3)]
    assert right_special_words(const1, 3) == [("axa", 3)]


@pytest.mark.parametrize("label", NAMED_SPECS)
def test_exact_against_long_prefix(label):
    """Factors of length <= 16 agree with windows of a long prefix.

    geom:2 needs the letter z as a separator between copies of w_6 before
    every 16-factor has shown up, so a prefix of w_8 is not always enough;
    2^18 letters covers all named specs at this length.
    """
    s = session_for(label)
    eta = s.eta_prefix(2**18)
    for n in range(1, 17):
        assert factors(s, n).factors == windows(eta, n), n


@pytest.mark.parametrize("label", ALL_SPECS)
def test_extension_sum(label):
    s = session_for(label)
    for n in range(0, 128):
        t = factors(s, n)
        assert all(t.extensions.values())
        assert sum(len(e) for e in t.extensions.values()) == len(factors(s, n + 1))


@pytest.mark.parametrize("label", ALL_SPECS)
def test_extensions_are_factors(label):
    s = session_for(label)
    t = factors(s, 9)
    longer = factors(s, 10).factors
    for w, ext in t.extensions.items():
        assert {w + c for c in ext} <= longer


def test_max_gap_examples(const1, geom2):
    assert max_gap(const1, "a", 2**10) == 2
    assert max_gap(geom2, "a", 2**10) == 2
    assert max_gap(const1, "x", 2**10) == 4
    assert max_gap(const1, "axa", 2**12) <= repetitive(const1, 3)
    with pytest.raises(NotAFactor):
        max_gap(const1, "yay", 100)
    assert max_gap(const1, "z", 4) is None


def test_occurrences():
    assert occurrences("axaxa", "axa") == [0, 2]
    assert occurrences("xyz", "a") == []


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="axyz", min_size=1, max_size=200), st.integers(1, 80))
def test_window_ids_are_exact(text, n):
    n = min(n, len(text))
    ids = window_ids(text, n)
    wins = [text[i : i + n] for i in range(len(text) - n + 1)]
    assert len(ids) == len(wins)
    for i in range(len(wins)):
        for j in range(i + 1, min(len(wins), i + 40)):
            assert (ids[i] == ids[j]) == (wins[i] == wins[j])


def test_window_ids_long_windows(const1):
    text = const1.eta_prefix(3000)
    for n in (31, 32, 45, 60, 61, 100):
        ids = window_ids(text, n)
        wins = [text[i : i + n] for i in range(len(text) - n + 1)]
        assert len(np.unique(ids)) == len(set(wins))


def test_shared_ids_common_space():
    a, b = shared_window_ids(["axayax", "xaya"], 3)
    assert a[1] == b[0]  # "xay"
    assert len(a) == 4 and len(b) == 2

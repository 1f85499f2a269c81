"""Letterwise morphisms on words over {a, x, y, z}.

Words are plain ``str`` objects; the empty string is the empty word.
"""

from __future__ import annotations

from lgrig.lspec import ALPHABET, FILLERS

_KAPPA = str.maketrans({"a": "axa", "x": "y", "y": "z", "z": "x"})
_TAU = {b: str.maketrans({"a": "a" + b + "a"}) for b in FILLERS}
_ROTATE = {k: str.maketrans(FILLERS, FILLERS[k:] + FILLERS[:k]) for k in range(3)}


def check_word(w: str) -> str:
    if not isinstance(w, str) or w.strip(ALPHABET):
        raise ValueError(f"not a word over {{a,x,y,z}}: {w!r}")
    return w


def kappa_apply(w: str) -> str:
    """Lysenok's substitution: a -> axa, x -> y, y -> z, z -> x."""
    return w.translate(_KAPPA)


def tau_apply(beta: str, w: str, times: int = 1) -> str:
    """tau_beta^times(w); tau_beta maps a -> a beta a and fixes x, y, z."""
    table = _TAU[beta]
    for _ in range(times):
        w = w.translate(table)
    return w


def rotate_fillers(w: str, k: int = 1) -> str:
    """Apply the cyclic permutation x -> y -> z -> x k times, fixing a."""
    return w.translate(_ROTATE[k % 3])


def level_for_length(n: int) -> int:
    """Smallest J with 2^{J+1} - 1 >= n."""
    return max(0, n.bit_length() - 1)


def is_palindrome(w: str) -> bool:
    return w == w[::-1]

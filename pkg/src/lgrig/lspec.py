"""Parameter sequences l = (l_1, l_2, ...) and the block bookkeeping built on them.

The word eta_l is generated by the stream of elementary substitutions

    tau_x^{l_1}, tau_y^{l_2}, tau_z^{l_3}, tau_x^{l_4}, ...

Block i contributes l_i copies of one substitution whose filler letter cycles
x, y, z with i. Everything here is indexed so that substitution number j+1
(1-based) lives in block N(j) at offset q(j).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import NamedTuple

from lgrig.errors import DepthExceeded, InvalidSpec, ParseError

FILLERS = "xyz"
ALPHABET = "axyz"

#: Lengths, partial sums and indices are kept inside a signed 64-bit range.
GUARD = 2**63 - 1

FAMILIES = ("const", "geom", "poly", "list", "ex3", "ex4")


class BlockDecomposition(NamedTuple):
    N: int
    q: int


@dataclass(frozen=True)
class LSpec:
    """An l-sequence, optionally viewed through a block shift.

    ``block_offset``, ``trim`` and ``rotation`` describe derived sequences:
    block i of this spec is block ``i + block_offset`` of the base family,
    shortened by ``trim`` when i == 1, and its filler letter is rotated by
    ``rotation`` steps of the x -> y -> z cycle.
    """

    family: str
    params: tuple[int, ...] = ()
    repeat_last: bool = False
    weak_zero: bool = False
    block_offset: int = 0
    trim: int = 0
    rotation: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}")
        if self.family in ("const", "geom") and (len(self.params) != 1 or self.params[0] < 1):
            raise InvalidSpec(f"{self.family} needs one positive parameter, got {self.params}")
        if self.family in ("poly", "list") and not self.params:
            raise InvalidSpec(f"{self.family} needs at least one value")
        if self.family == "list" and any(v < 0 for v in self.params):
            raise InvalidSpec("list entries must be non-negative")

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, k: int) -> LSpec:
        return cls("const", (k,))

    @classmethod
    def geom(cls, b: int) -> LSpec:
        return cls("geom", (b,))

    @classmethod
    def poly(cls, *coefficients: int) -> LSpec:
        """l_n = P(n) with coefficients given from the highest degree down."""
        return cls("poly", tuple(coefficients))

    @classmethod
    def explicit(cls, values, repeat_last: bool, weak_zero: bool = False) -> LSpec:
        return cls("list", tuple(values), repeat_last=repeat_last, weak_zero=weak_zero)

    @classmethod
    def example_iii(cls) -> LSpec:
        """l_n = 2^{n/2} - 1 for even n and 1 for odd n (bounded part fixed to 1)."""
        return cls("ex3")

    @classmethod
    def example_iv(cls) -> LSpec:
        """l_n = 2^{n/2} - n for even n and n for odd n; contains zeros."""
        return cls("ex4", weak_zero=True)

    # sequence access -------------------------------------------------------

    @property
    def is_derived(self) -> bool:
        return bool(self.block_offset or self.trim or self.rotation)

    def _base(self, i: int) -> int:
        fam, p = self.family, self.params
        if fam == "const":
            return p[0]
        if fam == "geom":
            return p[0] ** i
        if fam == "poly":
            v = 0
            for c in p:
                v = v * i + c
            return v
        if fam == "list":
            if i <= len(p):
                return p[i - 1]
            if self.repeat_last:
                return p[-1]
            raise DepthExceeded(f"explicit list has no entry l_{i} (length {len(p)}, no extension)")
        if fam == "ex3":
            return 2 ** (i // 2) - 1 if i % 2 == 0 else 1
        # ex4
        return 2 ** (i // 2) - i if i % 2 == 0 else i

    def _raw(self, i: int) -> int:
        v = self._base(i + self.block_offset)
        if i == 1:
            v -= self.trim
        return v

    def length(self, i: int) -> int:
        """l_i (1-based), validated against the spec's mode."""
        if i < 1:
            raise ValueError(f"block index must be >= 1, got {i}")
        v = self._raw(i)
        if v > GUARD:
            raise DepthExceeded(f"l_{i} exceeds the guarded integer range")
        if v < 0:
            raise InvalidSpec(f"l_{i} = {v} is negative")
        if v == 0:
            if not self.weak_zero:
                raise InvalidSpec(f"l_{i} = 0 is not allowed in strict-positive mode")
            if (i > 1 and self._raw(i - 1) == 0) or self._raw(i + 1) == 0:
                raise InvalidSpec(f"l_{i} = 0 has a zero neighbour (consecutive zeros)")
        return v

    def lengths(self, count: int) -> list[int]:
        return [self.length(i) for i in range(1, count + 1)]

    def partial_sum(self, n: int) -> int:
        s = 0
        for i in range(1, n + 1):
            s += self.length(i)
            if s > GUARD:
                raise DepthExceeded(f"partial sum S_{i} exceeds the guarded integer range")
        return s

    def block_letter(self, i: int) -> str:
        return FILLERS[(i - 1 + self.block_offset + self.rotation) % 3]

    def substitution_letters(self, count: int) -> str:
        """Filler letters of the first ``count`` elementary substitutions."""
        out: list[str] = []
        i = 0
        while len(out) < count:
            i += 1
            out.extend(self.block_letter(i) * min(self.length(i), count - len(out)))
        return "".join(out)

    def __str__(self) -> str:
        if self.family in ("ex3", "ex4"):
            base = self.family
        elif self.family == "list":
            base = "list:" + ",".join(map(str, self.params))
            if self.repeat_last:
                base += ":repeat-last"
        else:
            base = f"{self.family}:" + ",".join(map(str, self.params))
        if self.is_derived:
            base += f"@offset={self.block_offset},trim={self.trim},rot={self.rotation % 3}"
        return base


def block_decompose(spec: LSpec, j: int) -> BlockDecomposition:
    """Return (N(j), q(j)) with j = q + l_1 + ... + l_{N-1} and 0 <= q < l_N.

    N is the first block whose partial sum reaches j + 1, so zero-length
    blocks in weak-zero mode are skipped automatically.
    """
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    if j > GUARD:
        raise DepthExceeded("j exceeds the guarded integer range")
    s = 0
    i = 0
    while True:
        i += 1
        li = spec.length(i)
        if s + li >= j + 1:
            return BlockDecomposition(i, j - s)
        s += li
        if s > GUARD:
            raise DepthExceeded("partial sums exceed the guarded integer range")


def filler_letter(spec: LSpec, j: int) -> str:
    """beta^(j): the filler of substitution number j+1."""
    return spec.block_letter(block_decompose(spec, j).N)


def derived_spec(spec: LSpec, j: int) -> LSpec:
    """The spec whose word is eta^(j), so that tau^(j)(eta^(j)) = eta."""
    if spec.weak_zero:
        raise InvalidSpec("derived words are only defined for strict-positive specs")
    if j == 0:
        return spec
    N, q = block_decompose(spec, j)
    if N == 1:
        return replace(spec, trim=spec.trim + q)
    return replace(spec, block_offset=spec.block_offset + N - 1, trim=q)


def shifted_spec(spec: LSpec, k: int = 1) -> LSpec:
    """(l_{k+1}, l_{k+2}, ...) with the filler cycle restarted at x."""
    return replace(spec, block_offset=spec.block_offset + k, trim=0, rotation=spec.rotation - k)


# parsing -------------------------------------------------------------------

_INT_LIST = re.compile(r"-?\d+(,-?\d+)*\Z")


def _int_list(text: str, offset: int) -> tuple[int, ...]:
    if not _INT_LIST.match(text):
        bad = next((i for i, ch in enumerate(text) if not (ch.isdigit() or ch in ",-")), len(text))
        raise ParseError(f"expected comma-separated integers, got {text!r}", offset + bad)
    return tuple(int(t) for t in text.split(","))


def parse_lspec(text: str) -> LSpec:
    """Parse ``const:k | geom:b | poly:c_d,...,c_0 | list:v1,...[:repeat-last] | ex3 | ex4``."""
    if not text:
        raise ParseError("empty l-spec", 0)
    head, sep, rest = text.partition(":")
    body_at = len(head) + 1
    if head in ("ex3", "ex4"):
        if sep:
            raise ParseError(f"{head} takes no arguments", len(head))
        return LSpec.example_iii() if head == "ex3" else LSpec.example_iv()
    if head not in FAMILIES:
        raise ParseError(f"unknown family {head!r}", 0)
    if not sep or not rest:
        raise ParseError(f"{head} needs arguments", len(head))

    if head == "list":
        values_text, sep2, policy = rest.partition(":")
        if sep2 and policy != "repeat-last":
            raise ParseError(f"unknown list policy {policy!r}", body_at + len(values_text) + 1)
        values = _int_list(values_text, body_at)
        spec = LSpec.explicit(values, repeat_last=bool(sep2), weak_zero=0 in values)
        for i in range(1, len(values) + 1):
            spec.length(i)
        return spec

    values = _int_list(rest, body_at)
    if head in ("const", "geom"):
        if len(values) != 1:
            raise ParseError(f"{head} takes exactly one integer", body_at)
        if values[0] < 1:
            raise InvalidSpec(f"{head} parameter must be positive, got {values[0]}")
        return LSpec(head, values)
    spec = LSpec.poly(*values)
    spec.lengths(16)  # rejects non-positive values at small n with their index
    return spec

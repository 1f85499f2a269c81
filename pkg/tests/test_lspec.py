import pytest

from lgrig import DepthExceeded, InvalidSpec, LSpec, ParseError, parse_lspec
from lgrig.lspec import block_decompose, derived_spec, filler_letter, shifted_spec


@pytest.mark.parametrize(
    "text, first",
    [
        ("const:1", [1, 1, 1, 1]),
        ("const:3", [3, 3, 3, 3]),
        ("geom:2", [2, 4, 8, 16]),
        ("geom:3", [3, 9, 27, 81]),
        ("poly:1,0,1", [2, 5, 10, 17]),
        ("list:3,1,4,1,5:repeat-last", [3, 1, 4, 1, 5, 5, 5]),
        ("ex3", [1, 1, 1, 3, 1, 7, 1, 15]),
        ("ex4", [1, 0, 3, 0, 5, 2, 7, 8]),
    ],
)
def test_parse_and_values(text, first):
    spec = parse_lspec(text)
    assert spec.lengths(len(first)) == first
    assert str(spec) == text


def test_ex4_is_weak_zero_and_ex3_is_not():
    assert parse_lspec("ex4").weak_zero
    assert not parse_lspec("ex3").weak_zero


def test_list_with_zero_switches_to_weak_zero():
    spec = parse_lspec("list:1,0,2:repeat-last")
    assert spec.weak_zero
    assert spec.substitution_letters(3) == "xzz"


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0),
        ("cnst:1", 0),
        ("const", 5),
        ("const:1,2", 6),
        ("const:a", 6),
        ("list:1,2:cycle", 9),
        ("ex3:1", 3),
        ("geom:2x", 6),
    ],
)
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_lspec(text)
    assert info.value.position == position
    assert f"(at position {position})" in str(info.value)


@pytest.mark.parametrize("text", ["const:0", "geom:0", "poly:1,-5", "list:0,0,1", "list:1,-1"])
def test_invalid_specs(text):
    with pytest.raises(InvalidSpec):
        parse_lspec(text)


def test_poly_rejection_names_the_index():
    with pytest.raises(InvalidSpec, match="l_1"):
        parse_lspec("poly:1,-1")


def test_zero_in_strict_mode_rejected():
    with pytest.raises(InvalidSpec):
        LSpec.explicit((1, 0, 1), repeat_last=True).length(2)


def test_finite_list_past_end():
    spec = parse_lspec("list:2,3")
    assert spec.lengths(2) == [2, 3]
    with pytest.raises(DepthExceeded):
        spec.length(3)


def test_guarded_range():
    with pytest.raises(DepthExceeded):
        LSpec.geom(2).length(63)
    assert LSpec.geom(2).partial_sum(62) == 2**63 - 2
    with pytest.raises(DepthExceeded):
        LSpec.geom(3).partial_sum(40)


@pytest.mark.parametrize(
    "label, j, expected",
    [
        ("const:1", 0, (1, 0)),
        ("const:1", 5, (6, 0)),
        ("const:2", 3, (2, 1)),
        ("geom:2", 0, (1, 0)),
        ("geom:2", 1, (1, 1)),
        ("geom:2", 2, (2, 0)),
        ("geom:2", 5, (2, 3)),
        ("geom:2", 6, (3, 0)),
        ("ex4", 1, (3, 0)),  # block 2 is empty and skipped
        ("ex4", 3, (3, 2)),
        ("ex4", 4, (5, 0)),
    ],
)
def test_block_decompose(label, j, expected):
    spec = parse_lspec(label)
    N, q = block_decompose(spec, j)
    assert (N, q) == expected
    assert 0 <= q < spec.length(N)
    assert spec.partial_sum(N - 1) + q == j


def test_filler_letters_cycle_through_blocks():
    assert parse_lspec("geom:2").substitution_letters(14) == "xxyyyyzzzzzzzz"
    assert parse_lspec("ex4").substitution_letters(5) == "xzzzy"  # blocks 2 and 4 are empty
    assert [filler_letter(parse_lspec("const:1"), j) for j in range(4)] == list("xyzx")


def test_derived_spec_identity_and_blocks():
    c1 = LSpec.const(1)
    assert derived_spec(c1, 0) == c1
    d2 = derived_spec(c1, 2)
    assert d2.lengths(3) == [1, 1, 1]
    assert d2.block_letter(1) == "z"
    d1 = derived_spec(c1, 1)
    assert d1.block_letter(1) == "y"
    g = derived_spec(LSpec.geom(2), 5)  # N = 2, q = 3
    assert g.lengths(3) == [1, 8, 16]
    assert g.substitution_letters(3) == "yzz"


def test_derived_spec_rejects_weak_zero():
    with pytest.raises(InvalidSpec):
        derived_spec(LSpec.example_iv(), 1)


def test_shifted_spec_restarts_cycle():
    s = shifted_spec(LSpec.geom(2), 1)
    assert s.lengths(3) == [4, 8, 16]
    assert s.substitution_letters(5) == "xxxxy"

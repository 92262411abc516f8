from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from permc.errors import LengthMismatch, NotAFactor
from permc.infinite_word import factors
from permc.morphism import THUE_MORSE, fixed_point_prefix
from permc.patterns import (
    Pattern,
    SpecialStats,
    can_have_equivalent,
    equivalent,
    extract_pattern,
    generated_patterns,
    is_special,
    pattern_sets,
    special_stats,
    split_pairs,
)

from conftest import FORM_A
from permc.checks import equivalent_by_definition, has_equivalent_by_tournament


def deep(m, size):
    s = "0"
    while len(s) < size:
        s = "".join(m.image(c) for c in s)
    return s


def naive_patterns(m, u, size):
    """Patterns of every occurrence of u in the first size/4 symbols, by sorting string suffixes."""
    s = deep(m, size)
    n, out = len(u), set()
    for i in range(len(s) // 4):
        if s.startswith(u, i):
            order = sorted(range(n), key=lambda k: s[i + k :])
            ranks = [0] * n
            for r, k in enumerate(order):
                ranks[k] = r + 1
            out.add(tuple(ranks))
    return out


def test_extract_examples(tm):
    p = fixed_point_prefix(tm, 16)
    assert extract_pattern(p, 4, 3) == Pattern((2, 3, 1))
    assert extract_pattern(p, 11, 3) == Pattern((1, 3, 2))
    for pos in range(1, 15):
        if p.symbols[pos - 1 : pos + 1] == "01":
            assert extract_pattern(p, pos, 2) == (1, 2)


def test_pattern_parse_and_str():
    assert Pattern.parse("132") == (1, 3, 2)
    assert Pattern.parse("1 3 2") == (1, 3, 2)
    assert str(Pattern((1, 3, 2))) == "1 3 2"
    with pytest.raises(ValueError):
        Pattern((1, 1, 2))


def test_equivalent_examples():
    assert equivalent(Pattern.parse("132"), Pattern.parse("231"))
    assert not equivalent(Pattern.parse("1324"), Pattern.parse("3421"))
    assert equivalent((1, 2), (2, 1))
    with pytest.raises(LengthMismatch):
        equivalent((1, 2), (1, 2, 3))


def test_can_have_equivalent_examples():
    assert can_have_equivalent(Pattern.parse("132"))
    assert not can_have_equivalent(Pattern.parse("1324"))
    assert can_have_equivalent((1, 2))


@pytest.mark.parametrize("k", range(2, 7))
def test_equivalent_matches_definition_exhaustively(k):
    perms = list(permutations(range(1, k + 1)))
    for x in perms:
        partners = [y for y in perms if equivalent_by_definition(x, y)]
        assert [y for y in perms if equivalent(x, y)] == partners
        assert bool(partners) == can_have_equivalent(x) == has_equivalent_by_tournament(x)
        assert len(partners) <= 1


@given(st.permutations(range(1, 10)))
def test_equivalence_is_symmetric(x):
    x = tuple(x)
    y = (x[-1],) + x[1:-1] + (x[0],)
    assert equivalent(x, y) == equivalent(y, x) == can_have_equivalent(x)


def test_pattern_sets_examples(tm):
    ps = pattern_sets(tm, "010")
    assert (ps.m, ps.n, ps.f) == (0, 1, 2)
    assert ps.n_pairs == {frozenset({(1, 3, 2), (2, 3, 1)})}
    ps = pattern_sets(tm, "011")
    assert ps.m_set == {(1, 3, 2)} and ps.n == 0 and ps.f == 1
    ps = pattern_sets(tm, "00")
    assert (ps.m, ps.n) == (1, 0)
    assert ps.m_set == naive_patterns(tm, "00", 1 << 12)


def test_pattern_sets_unknown_word(tm):
    with pytest.raises(NotAFactor):
        pattern_sets(tm, "000")


@pytest.mark.parametrize("m, size, top", [(THUE_MORSE, 1 << 14, 10), (FORM_A, 6**5, 8)])
def test_generated_patterns_match_naive(m, size, top):
    for n in range(2, top + 1):
        for u in factors(m, n):
            assert generated_patterns(m, u) == naive_patterns(m, u, size), u


@pytest.mark.parametrize("m", [THUE_MORSE, FORM_A])
def test_pattern_sets_partition(m):
    for n in range(2, 14):
        for u in factors(m, n):
            ps = pattern_sets(m, u)
            inside = set().union(*ps.n_pairs) if ps.n_pairs else set()
            assert not (inside & ps.m_set)
            for pair in ps.n_pairs:
                x, y = tuple(pair)
                assert equivalent(x, y)
            for x in ps.m_set:
                assert not any(equivalent(x, y) for y in ps.all_patterns if y != x)
            assert ps.f == len(generated_patterns(m, u))


def test_split_pairs_small():
    ps = split_pairs({(1, 3, 2), (2, 3, 1), (1, 2, 3)})
    assert ps.m_set == {(1, 2, 3)} and ps.n == 1 and ps.f == 3


def test_is_special_examples(tm):
    assert is_special(tm, "01")
    five = factors(tm, 5)
    assert is_special(tm, "0110") == ("01100" in five and "01101" in five)
    assert not is_special(tm, "00")


def test_special_stats_examples(tm):
    assert special_stats(tm, "01") == SpecialStats(0, 0, 1)
    assert special_stats(tm, "10") == SpecialStats(0, 0, 1)
    assert special_stats(tm, "010") == SpecialStats(0, 0, 0)
    assert special_stats(tm, "101") == SpecialStats(0, 0, 0)
    with pytest.raises(NotAFactor):
        special_stats(tm, "00")


@pytest.mark.parametrize("m", [THUE_MORSE, FORM_A])
def test_special_stats_bounds(m):
    for n in range(1, 12):
        for v in factors(m, n):
            if is_special(m, v):
                s = special_stats(m, v)
                main = pattern_sets(m, v + v[0])
                other = pattern_sets(m, v + ("1" if v[0] == "0" else "0"))
                assert s.k + s.t <= main.m and s.r <= main.n
                assert other.n == 0

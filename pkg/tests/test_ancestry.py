import pytest

from permc.ancestry import (
    Interpretation,
    SeedTables,
    WordClass,
    ancestor_chain,
    build_seed_tables,
    classified_census,
    classify,
    interpret,
    terminal,
)
from permc.errors import NotAFactor, TooShort
from permc.infinite_word import factors, synchronization_length
from permc.morphism import THUE_MORSE

from conftest import FORM_A, MORE_Q


def test_interpret_examples(tm):
    assert interpret(tm, "0110") == Interpretation("01", 0, 0)
    assert interpret(tm, "1001") == Interpretation("10", 0, 0)
    assert interpret(tm, "1101") == Interpretation("011", 1, 1)


def test_interpret_errors(tm):
    with pytest.raises(TooShort):
        interpret(tm, "010")
    with pytest.raises(NotAFactor):
        interpret(tm, "00000")


@pytest.mark.parametrize("m", [THUE_MORSE, FORM_A])
def test_interpretation_reconstructs(m):
    for n in range(synchronization_length(m), 3 * m.l):
        for u in factors(m, n):
            s = interpret(m, u)
            image = "".join(m.image(c) for c in s.ancestor)
            assert image[s.left_cut : len(image) - s.right_cut] == u
            assert 0 <= s.left_cut < m.l and 0 <= s.right_cut < m.l


def test_chain_examples(tm):
    assert ancestor_chain(tm, "01101001") == ["01101001", "0110", "01"]
    assert terminal(tm, "01101001") == "01"
    assert terminal(tm, "010") == "010"


@pytest.mark.parametrize(
    "word, cls",
    [
        ("010", WordClass.BAD),
        ("011", WordClass.NEUTRAL),
        ("0101", WordClass.NEUTRAL),
        ("0011", WordClass.NARROW),
        ("00110", WordClass.BAD),
        ("010010", WordClass.NARROW),
        ("011001", WordClass.WIDE),
    ],
)
def test_classify_examples(tm, word, cls):
    assert classify(tm, word) is cls


def test_seed_tables_thue_morse(tm_tables):
    assert tm_tables.sync_length == 4
    assert tm_tables.base_threshold == 12
    assert tm_tables.a1 == {"010": (0, 1), "101": (0, 1)}
    assert set(tm_tables.a2) == {"00", "01", "10", "11", "001", "011", "100", "110"}
    assert set(tm_tables.a2.values()) == {1}
    assert {w: (s.k, s.t, s.r) for w, s in tm_tables.b.items()} == {
        "001": (1, 0, 0),
        "110": (1, 0, 0),
        "01": (0, 0, 1),
        "10": (0, 0, 1),
        "010": (0, 0, 0),
        "101": (0, 0, 0),
    }


def test_seed_tables_json_round_trip(tm, tm_tables):
    text = tm_tables.to_json()
    back = SeedTables.from_json(text, tm)
    assert back.to_json() == text
    assert back.a1 == tm_tables.a1 and back.b == tm_tables.b
    assert back.base_counts == tm_tables.base_counts


@pytest.mark.parametrize("m", [THUE_MORSE, FORM_A, *MORE_Q])
def test_census_partitions_factors(m):
    sync = synchronization_length(m)
    for n in range(sync, sync + 3 * m.l):
        census = classified_census(m, n)
        total = sum(c for (_, k), c in census.items() if k == "any")
        assert total == len(factors(m, n))
        classes = sum(c for (_, k), c in census.items() if k in ("bad", "narrow", "wide", "neutral"))
        assert classes == total


def test_seeds_cover_terminals(tm):
    tables = build_seed_tables(tm)
    for n in range(4, 40):
        for u in factors(tm, n):
            assert terminal(tm, u) in tables.seeds()


def test_threshold_floor(tm):
    with pytest.raises(ValueError):
        build_seed_tables(tm, 2)

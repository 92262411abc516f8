import pytest

from permc.ancestry import build_seed_tables
from permc.engine import CountQuery, Engine, count, delta, lambda_, lambda_range, sum_f, sum_g
from permc.errors import ArithmeticOverflow, UnknownSeed
from permc.infinite_word import synchronization_length
from permc.morphism import THUE_MORSE
from permc.oracle import classified_counts_bruteforce, oracle_lambda

from conftest import FORM_A, MORE_Q


def test_count_examples(tm_tables):
    assert count(tm_tables, CountQuery("010", "bad", 9)) == 4
    assert count(tm_tables, CountQuery("010", "wide", 10)) == 3
    assert count(tm_tables, CountQuery("010", "wide", 8)) == 0
    assert count(tm_tables, CountQuery("010", "bad", 10)) == 0


def test_count_rejects_unknown(tm_tables):
    with pytest.raises(UnknownSeed):
        count(tm_tables, CountQuery("0000", "any", 9))
    with pytest.raises(UnknownSeed):
        count(tm_tables, CountQuery("00", "special", 9))
    with pytest.raises(ValueError):
        count(tm_tables, CountQuery("010", "neutral", 9))


def test_delta_examples(tm_tables):
    assert delta(tm_tables, 5, "01") == 0
    assert delta(tm_tables, 9, "01") == 0
    assert delta(tm_tables, 17, "01") == 0
    assert delta(tm_tables, 3, "01") == 1
    assert delta(tm_tables, 7, "010") == 0
    assert delta(tm_tables, 4, "010") == 1


def test_lambda_examples(tm_tables):
    assert lambda_(tm_tables, 9) == 30
    assert lambda_(tm_tables, 6) == 16
    assert lambda_range(tm_tables, 6, 9) == [(6, 16), (7, 18), (8, 20), (9, 30)]


def test_sums_thue_morse(tm_tables):
    for n in range(6, 300):
        k = (n - 1).bit_length() - 1
        assert sum_f(tm_tables, n) == 2 * (n - 1) + 2 ** (k + 1)
        assert sum_g(tm_tables, n) == 2


@pytest.mark.parametrize("m", [THUE_MORSE, FORM_A, *MORE_Q])
def test_theorem_with_minimal_threshold(m):
    sync = synchronization_length(m)
    eng = Engine(build_seed_tables(m, sync - 1), use_oracle=False)
    for n in range(sync, 12 * m.l):
        assert eng.theorem(n) == oracle_lambda(m, n), n


@pytest.mark.parametrize("m", [THUE_MORSE, FORM_A])
def test_counts_against_census(m):
    sync = synchronization_length(m)
    tables = build_seed_tables(m, sync - 1)
    eng = Engine(tables, use_oracle=False)
    for n in range(sync, 10 * m.l):
        truth = classified_counts_bruteforce(m, tables, n)
        for kind in ("bad", "narrow", "wide", "any"):
            for a in tables.seeds():
                assert eng.count(CountQuery(a, kind, n)) == truth.get((a, kind), 0), (a, kind, n)
        for b in tables.b:
            assert eng.count(CountQuery(b, "special", n)) == truth.get((b, "special"), 0), (b, n)


def test_cold_and_warm_agree(tm):
    warm = Engine(build_seed_tables(tm))
    first = [warm.lambda_(n) for n in range(2, 200)]
    again = [warm.lambda_(n) for n in range(2, 200)]
    cold = [Engine(build_seed_tables(tm)).lambda_(n) for n in range(2, 200)]
    assert first == again == cold


def test_large_n_is_iterative(tm_tables):
    eng = Engine(tm_tables)
    n = 10**15
    k = (n - 1).bit_length() - 1
    assert eng.theorem(n) == 2 * (n - 1) + 2 ** (k + 1) - 2


def test_overflow(tm_tables):
    with pytest.raises(ArithmeticOverflow):
        Engine(tm_tables).theorem(2**70)

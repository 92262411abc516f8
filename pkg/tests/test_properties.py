import pytest

from permc.checks import CheckResult, check_lemma4, check_total_order, run_all
from permc.morphism import Morphism, THUE_MORSE

from conftest import FORM_A


@pytest.mark.parametrize("m", [THUE_MORSE, FORM_A, Morphism("011", "100")], ids=str)
def test_run_all_passes(m):
    results = run_all(m, samples=2000)
    failed = [r.line() for r in results if not r.passed]
    assert not failed
    if m in (THUE_MORSE, FORM_A):
        assert all(r.checked > 0 for r in results)


def test_morphism_without_bad_words():
    from permc.ancestry import build_seed_tables

    assert build_seed_tables(Morphism("011", "100")).a1 == {}


@pytest.mark.slow
def test_run_all_long_blocks():
    results = run_all(Morphism("0111001", "1000110"), window=30, samples=1000)
    assert [r.line() for r in results if not r.passed] == []


def test_names_are_unique(tm):
    names = [r.name for r in run_all(tm, window=16, samples=200)]
    assert len(names) == len(set(names))


def test_result_lines():
    ok = CheckResult("order", True, 5)
    bad = CheckResult("order", False, 5, "R(3) > R(4)")
    assert ok.line() == "PASS order (5 cases)"
    assert bad.line() == "FAIL order (5 cases)  counterexample: R(3) > R(4)"


def test_small_checks(tm):
    assert check_total_order(tm, window=20).passed
    assert check_lemma4(tm, max_len=6).passed

"""Invariant suite behind ``permc verify`` and the property tests.

Each check returns a :class:`CheckResult`; a failing check carries the first
counterexample it met.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .ancestry import (
    SeedTables,
    WordClass,
    ancestor_chain,
    build_seed_tables,
    classify,
    interpret,
    is_bad,
    terminal,
)
from .engine import Engine
from .infinite_word import Order, compare_suffixes, factors, fixed_point
from .morphism import Morphism, apply, fixed_point_prefix
from .oracle import classified_counts_bruteforce, lambda_bruteforce
from .patterns import (
    can_have_equivalent,
    equivalent,
    generated_patterns,
    is_special,
    pattern_sets,
    special_stats,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    checked: int
    counterexample: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  counterexample: {self.counterexample}" if self.counterexample else ""
        return f"{status} {self.name} ({self.checked} cases){tail}"


class _Check:
    def __init__(self, name: str):
        self.name = name
        self.count = 0
        self.failure = ""

    def expect(self, ok: bool, detail) -> None:
        self.count += 1
        if not ok and not self.failure:
            self.failure = detail() if callable(detail) else str(detail)

    def result(self) -> CheckResult:
        return CheckResult(self.name, not self.failure, self.count, self.failure)


def _sample_pairs(size: int, count: int, rng: random.Random):
    for _ in range(count):
        i = rng.randint(1, size)
        j = rng.randint(1, size)
        if i != j:
            yield i, j


def check_lemma1(m: Morphism, samples: int = 10_000, seed: int = 1) -> CheckResult:
    """A 0 opening a block beats every other 0; a 1 opening a block loses to every other 1."""
    chk = _Check("block-start order (Lemma 1)")
    p = fixed_point_prefix(m, 4096)
    cap = 4 * len(p) * m.l  # distant positions can share long prefixes
    l, rng = m.l, random.Random(seed)
    starts = {s: [i for i in range(1, len(p) + 1, l) if p.at(i) == s] for s in "01"}
    others = {s: [i for i in range(1, len(p) + 1) if i % l != 1 and p.at(i) == s] for s in "01"}
    for k in range(samples):
        s = "01"[k % 2]
        i, j = rng.choice(starts[s]), rng.choice(others[s])
        want = Order.GREATER if s == "0" else Order.LESS
        got = compare_suffixes(p, i, j, cap)
        chk.expect(got is want, lambda: f"omega_{i}=omega_{j}={s}: got {got.value}")
    return chk.result()


def check_lemma2(m: Morphism, samples: int = 10_000, seed: int = 2) -> CheckResult:
    """Residues plus block types fix the order whenever they tell the positions apart."""
    chk = _Check("residue/type signature fixes order (Lemma 2)")
    p = fixed_point_prefix(m, 4096)
    cap = 4 * len(p) * m.l  # distant positions can share long prefixes
    l, rng = m.l, random.Random(seed)
    seen: dict[tuple, tuple[Order, int, int]] = {}
    for i, j in _sample_pairs(len(p) - l, samples, rng):
        if p.at(i) != p.at(j):
            continue
        ti, tj = p.at((i - 1) // l + 1), p.at((j - 1) // l + 1)
        ri, rj = (i - 1) % l, (j - 1) % l
        if ri == rj and ti == tj:
            continue
        key = (p.at(i), ri, rj, ti, tj)
        got = compare_suffixes(p, i, j, cap)
        first = seen.setdefault(key, (got, i, j))
        chk.expect(
            first[0] is got,
            lambda: f"signature {key}: ({first[1]},{first[2]}) vs ({i},{j}) disagree",
        )
    return chk.result()


def check_lemma3(m: Morphism, samples: int = 10_000, seed: int = 3) -> CheckResult:
    """Order of equal-symbol positions carries over to every offset of their blocks."""
    chk = _Check("order lifts to blocks (Lemma 3)")
    p = fixed_point_prefix(m, 4096)
    cap = 4 * len(p) * m.l  # distant positions can share long prefixes
    l, rng = m.l, random.Random(seed)
    limit = len(p) // l - 1
    done = 0
    while done < samples:
        i, j = rng.randint(1, limit), rng.randint(1, limit)
        if i == j or p.at(i) != p.at(j):
            continue
        done += 1
        if compare_suffixes(p, i, j, cap) is not Order.LESS:
            i, j = j, i
        bad = [
            r
            for r in range(1, l + 1)
            if compare_suffixes(p, (i - 1) * l + r, (j - 1) * l + r, cap) is not Order.LESS
        ]
        chk.expect(not bad, lambda: f"R({i})<R({j}) but not at offset r={bad[0] if bad else ''}")
    return chk.result()


def check_total_order(m: Morphism, window: int = 40) -> CheckResult:
    """compare_suffixes is a strict total order and agrees with the suffix ranks."""
    chk = _Check("suffix comparison is a total order")
    fp = fixed_point(m)
    p = fixed_point_prefix(m, 4 * window)
    ranks = fp.ranks(p.depth + 1)
    pos = range(1, window + 1)
    rel = {}
    for i, j in combinations(pos, 2):
        a, b = compare_suffixes(p, i, j), compare_suffixes(p, j, i)
        rel[(i, j)] = a
        chk.expect(a is b.flip(), lambda: f"compare({i},{j}) not antisymmetric")
        agree = (ranks[i - 1] < ranks[j - 1]) == (a is Order.LESS)
        chk.expect(agree, lambda: f"compare({i},{j}) disagrees with suffix ranks")
    less = lambda i, j: rel[(i, j)] is Order.LESS if i < j else rel[(j, i)] is Order.GREATER  # noqa: E731
    for i, j, k in combinations(pos, 3):
        for a, b, c in ((i, j, k), (k, j, i), (j, i, k), (k, i, j), (i, k, j), (j, k, i)):
            if less(a, b) and less(b, c):
                chk.expect(less(a, c), lambda: f"R({a})<R({b})<R({c}) but not R({a})<R({c})")
    return chk.result()


def has_equivalent_by_tournament(x: tuple) -> bool:
    """Flip the extreme relation of x and test whether a permutation still realizes it.

    A complete set of pairwise relations is realized by some permutation iff
    the tournament is transitive, i.e. its out-degrees are 0 .. k-1.
    """
    k = len(x)
    if k < 2:
        return False
    wins = [0] * k
    for s, t in combinations(range(k), 2):
        greater = x[s] > x[t]
        if (s, t) == (0, k - 1):
            greater = not greater
        wins[s if greater else t] += 1
    return sorted(wins) == list(range(k))


def equivalent_by_definition(x: tuple, y: tuple) -> bool:
    k = len(x)
    if (x[0] < x[-1]) == (y[0] < y[-1]):
        return False
    return all(
        (x[s] < x[t]) == (y[s] < y[t])
        for s, t in combinations(range(k), 2)
        if (s, t) != (0, k - 1)
    )


def check_lemma4(m: Morphism, max_len: int = 8) -> CheckResult:
    chk = _Check("equivalent exists iff extremes adjacent (Lemma 4)")
    for n in range(2, max_len + 1):
        for pats in fixed_point(m).stable_patterns(n)[0].values():
            for x in pats:
                chk.expect(
                    has_equivalent_by_tournament(x) == can_have_equivalent(x),
                    lambda: f"pattern {x}",
                )
                for y in pats:
                    if y != x:
                        chk.expect(
                            equivalent(x, y) == equivalent_by_definition(x, y),
                            lambda: f"equivalent({x}, {y})",
                        )
    return chk.result()


def _words(m: Morphism, lo: int, hi: int):
    for n in range(lo, hi + 1):
        yield from sorted(factors(m, n))


def check_pairs_adjacent(m: Morphism, hi: int) -> CheckResult:
    chk = _Check("paired patterns have adjacent extremes")
    for u in _words(m, 2, hi):
        for pair in pattern_sets(m, u).n_pairs:
            for x in pair:
                chk.expect(can_have_equivalent(x), lambda: f"{u}: {x}")
    return chk.result()


def check_bad_length(m: Morphism, sync: int, hi: int) -> CheckResult:
    chk = _Check("long bad words have length 1 mod l")
    for u in _words(m, sync, hi):
        if is_bad(m, u):
            chk.expect(len(u) % m.l == 1, lambda: f"bad word {u} of length {len(u)}")
    return chk.result()


def check_interpretations(m: Morphism, sync: int, hi: int) -> CheckResult:
    chk = _Check("interpretations reproduce their words")
    for u in _words(m, sync, hi):
        s = interpret(m, u)
        img = apply(m, s.ancestor)
        got = img[s.left_cut : len(img) - s.right_cut]
        chk.expect(
            got == u and 0 <= s.left_cut < m.l and 0 <= s.right_cut < m.l,
            lambda: f"{u} -> {s}",
        )
    return chk.result()


def check_f_laws(m: Morphism, tables: SeedTables, hi: int) -> list[CheckResult]:
    sync = tables.sync_length
    l5 = _Check("f never grows along ancestry (Lemma 5.1)")
    l5b = _Check("no pairs in the ancestor means none in the word (Lemma 5.2)")
    l6 = _Check("bad words have bad ancestors with equal m, n (Lemma 6)")
    l8 = _Check("narrow child of a bad word (Lemma 8)")
    l10 = _Check("wide child of a bad word (Lemma 10)")
    term = _Check("f fixed by chain terminal and class (Lemmas 7, 9, 11)")
    for u in _words(m, sync, hi):
        ps = pattern_sets(m, u)
        parent = interpret(m, u).ancestor
        pp = pattern_sets(m, parent)
        l5.expect(ps.f <= pp.f, lambda: f"f({u})={ps.f} > f({parent})={pp.f}")
        if not pp.n_pairs:
            l5b.expect(not ps.n_pairs and ps.f == pp.f, lambda: f"{u} under {parent}")
        cls = classify(m, u)
        if cls is WordClass.BAD:
            l6.expect(
                is_bad(m, parent) and (ps.m, ps.n) == (pp.m, pp.n),
                lambda: f"{u}: (m,n)=({ps.m},{ps.n}) parent {parent} ({pp.m},{pp.n})",
            )
        elif pp.n_pairs and cls is WordClass.NARROW:
            l8.expect(ps.n == 0 and ps.f == pp.m + pp.n, lambda: f"{u} under {parent}")
        elif pp.n_pairs and cls is WordClass.WIDE:
            l10.expect(ps.n == 0 and ps.f == pp.m + 2 * pp.n, lambda: f"{u} under {parent}")
        a = terminal(m, u)
        if a in tables.a1:
            m_a, n_a = tables.a1[a]
            want = m_a + n_a if cls is WordClass.NARROW else m_a + 2 * n_a
            term.expect(cls is not WordClass.NEUTRAL and ps.f == want, lambda: f"{u} -> {a} {cls}")
        else:
            term.expect(
                cls is WordClass.NEUTRAL and ps.f == tables.a2[a], lambda: f"{u} -> {a} {cls}"
            )
    return [c.result() for c in (l5, l5b, l6, l8, l10, term)]


def check_special_laws(m: Morphism, tables: SeedTables, hi: int) -> list[CheckResult]:
    sync, l = tables.sync_length, m.l
    closed = _Check("ancestors of special words are special")
    cut = _Check("long special words end on a block boundary")
    stats = _Check("k, t, r along special chains (Lemmas 15-17)")
    gval = _Check("g(v) from the seed statistics (Lemma 19)")
    for v in _words(m, sync, hi - 1):
        if not is_special(m, v):
            continue
        s = interpret(m, v)
        closed.expect(is_special(m, s.ancestor), lambda: f"{v} -> {s.ancestor}")
        cut.expect(s.right_cut == 0, lambda: f"{v}: {s}")
        mine, theirs = special_stats(m, v), special_stats(m, s.ancestor)
        if len(v) < l * len(s.ancestor):
            want = (theirs.k + theirs.t + theirs.r, 0, 0)
        else:
            want = (theirs.k, theirs.t, theirs.r)
        got = (mine.k, mine.t, mine.r)
        stats.expect(got == want, lambda: f"{v}: {got}, ancestor {s.ancestor}: {theirs}")
        if theirs.t == theirs.r == 0:
            stats.expect(got == (theirs.k, 0, 0), lambda: f"{v} (Lemma 17)")
        b = ancestor_chain(m, v)[-1]
        sb = tables.b[b]
        size = len(b)
        while size < len(v):
            size *= l
        want_g = sb.k + sb.r if size == len(v) else sb.k + sb.t + sb.r
        common = len(generated_patterns(m, v + "0") & generated_patterns(m, v + "1"))
        gval.expect(common == want_g, lambda: f"g({v})={common}, seed {b} gives {want_g}")
    return [c.result() for c in (closed, cut, stats, gval)]


def check_overlap(m: Morphism, tables: SeedTables) -> CheckResult:
    """Each recurrence, fed only shorter table entries, reproduces the brute-force entry."""
    chk = _Check("recurrences agree with brute force on the overlap window")
    sync, top = tables.sync_length, tables.base_threshold
    for n in range(max(sync, 3), top + 1):
        trimmed = SeedTables(
            sync, n - 1, tables.a1, tables.a2, tables.b, tables.base_counts, tables.morphism
        )
        eng = Engine(trimmed, use_oracle=False)
        for a in sorted(tables.seeds()):
            kinds = ("bad", "narrow", "wide", "any") if a in tables.a1 else ("any",)
            for kind in kinds:
                got = eng._count(a, kind, n)
                want = tables.base_counts.get((a, kind, n), 0)
                chk.expect(got == want, lambda: f"C[{a},{kind}]({n}) = {got}, brute force {want}")
        for b in sorted(tables.b):
            got = eng._count(b, "special", n)
            want = tables.base_counts.get((b, "special", n), 0)
            chk.expect(got == want, lambda: f"S[{b}]({n}) = {got}, brute force {want}")
    return chk.result()


def check_partition(m: Morphism, tables: SeedTables, hi: int) -> CheckResult:
    chk = _Check("every long factor has one terminal and one class")
    for n in range(tables.sync_length, hi + 1):
        counts = classified_counts_bruteforce(m, tables, n)
        classes = sum(c for (a, k), c in counts.items() if k in ("bad", "narrow", "wide", "neutral"))
        total = sum(c for (a, k), c in counts.items() if k == "any")
        size = len(factors(m, n))
        chk.expect(classes == total == size, lambda: f"n={n}: {classes}, {total}, {size}")
        for (a, k), c in counts.items():
            if k == "bad" and n % m.l != 1:
                chk.expect(c == 0, lambda: f"C[{a},bad]({n}) = {c}")
    return chk.result()


def check_theorem(m: Morphism, tables: SeedTables, hi: int) -> list[CheckResult]:
    sums = _Check("sum f and sum g match brute force (Theorems 1, 2)")
    thm = _Check("lambda from the recurrences matches brute force (Theorem 3)")
    mono = _Check("lambda is nondecreasing")
    repro = _Check("cold and warm evaluations agree")
    cold = Engine(tables, use_oracle=False)
    previous = None
    for n in range(tables.sync_length, hi + 1):
        rep = lambda_bruteforce(m, n)
        f_brute, g_brute = sum(rep.per_factor_f.values()), sum(rep.per_special_g.values())
        sums.expect(
            cold.sum_f(n) == f_brute and cold.sum_g(n) == g_brute,
            lambda: f"n={n}: ({cold.sum_f(n)}, {cold.sum_g(n)}) vs ({f_brute}, {g_brute})",
        )
        thm.expect(cold.theorem(n) == rep.lambda_, lambda: f"n={n}: {cold.theorem(n)} vs {rep.lambda_}")
        if previous is not None:
            mono.expect(rep.lambda_ >= previous, lambda: f"lambda({n}) < lambda({n - 1})")
        previous = rep.lambda_
    warm = Engine(tables, use_oracle=False)
    far = [hi * 3, hi * 7 + 1, hi * 50 + 3]
    for n in far:
        a = cold.theorem(n)
        repro.expect(a == cold.theorem(n) == warm.theorem(n), lambda: f"n={n}")
    return [c.result() for c in (sums, thm, mono, repro)]


def check_lemma20(m: Morphism, hi: int, samples: int = 2000, seed: int = 20) -> CheckResult:
    chk = _Check("words differing before the last symbol share no pattern (Lemma 20)")
    rng = random.Random(seed)
    for n in range(2, hi + 1):
        mapping = fixed_point(m).stable_patterns(n)[0]
        words = sorted(mapping)
        pairs = list(combinations(words, 2))
        for u, v in rng.sample(pairs, min(len(pairs), max(1, samples // hi))):
            if u[:-1] != v[:-1]:
                chk.expect(not (mapping[u] & mapping[v]), lambda: f"{u} and {v}")
    return chk.result()


def run_all(m: Morphism, window: int | None = None, samples: int = 10_000) -> list[CheckResult]:
    tables = build_seed_tables(m)
    hi = 2 * tables.base_threshold if window is None else window
    sync = tables.sync_length
    results = [
        check_lemma1(m, samples),
        check_lemma2(m, samples),
        check_lemma3(m, samples),
        check_total_order(m),
        check_lemma4(m),
        check_pairs_adjacent(m, hi),
        check_bad_length(m, sync, hi),
        check_interpretations(m, sync, hi),
        *check_f_laws(m, tables, hi),
        *check_special_laws(m, tables, hi),
        check_overlap(m, tables),
        check_partition(m, tables, hi),
        *check_theorem(m, tables, hi),
        check_lemma20(m, hi),
    ]
    return results

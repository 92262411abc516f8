"""Finite permutation patterns generated by occurrences of factors."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import LengthMismatch, NotAFactor
from .infinite_word import Order, compare_suffixes, factors, fixed_point
from .morphism import Morphism, Prefix


class Pattern(tuple):
    """Ranks pi_1 ... pi_n of a permutation of {1..n}."""

    def __new__(cls, ranks):
        ranks = tuple(int(r) for r in ranks)
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise ValueError(f"{ranks} is not a permutation of 1..{len(ranks)}")
        return super().__new__(cls, ranks)

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Accepts ``"1 3 2"`` or, for n < 10, the compact ``"132"``."""
        parts = text.split() if " " in text.strip() else list(text.strip())
        return cls(int(p) for p in parts)

    def __str__(self) -> str:
        return " ".join(map(str, self))


def serialize(p: tuple) -> str:
    return " ".join(map(str, p))


def extract_pattern(p: Prefix, pos: int, n: int) -> Pattern:
    """Pattern induced by R(pos), ..., R(pos+n-1), one comparison at a time."""
    if n < 2:
        raise ValueError("patterns need n >= 2")
    smaller = [0] * n
    for s, t in combinations(range(n), 2):
        if compare_suffixes(p, pos + s, pos + t) is Order.LESS:
            smaller[t] += 1
        else:
            smaller[s] += 1
    return Pattern(c + 1 for c in smaller)


def _gamma(a: int, b: int) -> Order:
    return Order.LESS if a < b else Order.GREATER


def equivalent(x: tuple, y: tuple) -> bool:
    """x and y disagree on the extreme pair and nowhere else."""
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)}")
    k = len(x)
    if k < 2 or _gamma(x[0], x[-1]) == _gamma(y[0], y[-1]):
        return False
    # Flipping one relation keeps a permutation only if the extremes are
    # adjacent in value, so y must be x with its end values swapped.
    if abs(x[0] - x[-1]) != 1:
        return False
    return y[0] == x[-1] and y[-1] == x[0] and x[1:-1] == y[1:-1]


def can_have_equivalent(x: tuple) -> bool:
    return len(x) >= 2 and abs(x[0] - x[-1]) == 1


@dataclass(frozen=True)
class PatternSets:
    m_set: frozenset
    n_pairs: frozenset

    @property
    def m(self) -> int:
        return len(self.m_set)

    @property
    def n(self) -> int:
        return len(self.n_pairs)

    @property
    def f(self) -> int:
        return self.m + 2 * self.n

    @property
    def all_patterns(self) -> frozenset:
        return self.m_set.union(*self.n_pairs) if self.n_pairs else self.m_set


def split_pairs(patterns) -> PatternSets:
    pats = sorted(patterns)
    pairs = set()
    paired = set()
    for x, y in combinations(pats, 2):
        if equivalent(x, y):
            pairs.add(frozenset((x, y)))
            paired.update((x, y))
    return PatternSets(frozenset(p for p in pats if p not in paired), frozenset(pairs))


def generated_patterns(m: Morphism, u: str) -> frozenset:
    mapping, _ = fixed_point(m).stable_patterns(len(u))
    if u not in mapping:
        raise NotAFactor(f"{u!r} is not a factor of the fixed point of {m}")
    return mapping[u]


def pattern_sets(m: Morphism, u: str) -> PatternSets:
    return split_pairs(generated_patterns(m, u))


def is_special(m: Morphism, v: str) -> bool:
    longer = factors(m, len(v) + 1)
    return v + "0" in longer and v + "1" in longer


@dataclass(frozen=True)
class SpecialStats:
    k: int
    t: int
    r: int


def special_stats(m: Morphism, v: str) -> SpecialStats:
    """Overlap statistics between the two one-letter extensions of ``v``.

    The extension repeating the first letter of ``v`` plays the role of v0;
    the other extension starts and ends differently and never has pairs.
    """
    if not is_special(m, v):
        raise NotAFactor(f"{v!r} is not a special factor of the fixed point of {m}")
    main = pattern_sets(m, v + v[0])
    other = pattern_sets(m, v + ("1" if v[0] == "0" else "0"))
    k = len(main.m_set & other.m_set)
    t = sum(1 for x in main.m_set if any(equivalent(x, y) for y in other.m_set))
    r = 0
    for pair in main.n_pairs:
        a, b = tuple(pair)
        for x, y in ((a, b), (b, a)):
            if x in other.m_set and any(equivalent(y, z) for z in other.m_set):
                r += 1
                break
    return SpecialStats(k, t, r)

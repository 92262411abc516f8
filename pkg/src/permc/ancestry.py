"""Interpretations, ancestor chains, word classes and seed tables."""
from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DegenerateBoundary, NotAFactor, TooShort
from .infinite_word import factors, fixed_point, synchronization_length
from .morphism import Morphism
from .patterns import SpecialStats, is_special, pattern_sets, special_stats

KINDS = ("bad", "narrow", "wide", "any", "special")


@dataclass(frozen=True)
class Interpretation:
    ancestor: str
    left_cut: int
    right_cut: int


class WordClass(enum.Enum):
    BAD = "bad"
    NARROW = "narrow"
    WIDE = "wide"
    NEUTRAL = "neutral"


@lru_cache(maxsize=None)
def interpret(m: Morphism, u: str) -> Interpretation:
    """The unique <v, i, j> with u = phi(v) minus i symbols left and j right."""
    sync = synchronization_length(m)
    if len(u) < sync:
        raise TooShort(f"{u!r} is shorter than the synchronization length {sync}")
    fp = fixed_point(m)
    phases = fp.stable_phases(len(u))
    if u not in phases:
        raise NotAFactor(f"{u!r} is not a factor of the fixed point of {m}")
    if len(phases[u]) != 1:
        raise AssertionError(f"{u!r} occurs at phases {sorted(phases[u])}")
    text = fp.prefix_at_least(len(u))
    pos = text.find(u)
    while pos < 0:
        text = fp.prefix_at_least(2 * len(text))
        pos = text.find(u)
    l, end = m.l, pos + len(u)
    ancestor = text[pos // l : (end - 1) // l + 1]
    return Interpretation(ancestor, pos % l, (-end) % l)


def ancestor_chain(m: Morphism, u: str) -> list[str]:
    sync = synchronization_length(m)
    chain = [u]
    interpret(m, u)
    while len(chain[-1]) >= sync:
        chain.append(interpret(m, chain[-1]).ancestor)
    return chain


def terminal(m: Morphism, u: str) -> str:
    return ancestor_chain(m, u)[-1] if len(u) >= synchronization_length(m) else u


@lru_cache(maxsize=None)
def is_bad(m: Morphism, u: str) -> bool:
    return bool(pattern_sets(m, u).n_pairs)


@lru_cache(maxsize=None)
def classify(m: Morphism, u: str) -> WordClass:
    if is_bad(m, u):
        return WordClass.BAD
    if len(u) < synchronization_length(m):
        return WordClass.NEUTRAL
    chain = ancestor_chain(m, u)
    for child, parent in zip(chain, chain[1:]):
        if is_bad(m, parent):
            s = interpret(m, child)
            if s.left_cut + 1 > m.l - s.right_cut:
                return WordClass.NARROW
            if s.left_cut + 1 < m.l - s.right_cut:
                return WordClass.WIDE
            raise DegenerateBoundary(
                f"{child!r} has cuts i={s.left_cut}, j={s.right_cut} under bad {parent!r}"
            )
    return WordClass.NEUTRAL


@dataclass(frozen=True, eq=False)
class SeedTables:
    sync_length: int
    base_threshold: int
    a1: dict[str, tuple[int, int]]
    a2: dict[str, int]
    b: dict[str, SpecialStats]
    base_counts: dict[tuple[str, str, int], int] = field(repr=False)
    morphism: Morphism = field(repr=False)

    @property
    def l(self) -> int:
        return self.morphism.l

    def seeds(self) -> set[str]:
        return set(self.a1) | set(self.a2)

    def to_json(self) -> str:
        doc = {
            "sync_length": self.sync_length,
            "base_threshold": self.base_threshold,
            "a1": {w: {"m": m_, "n": n_} for w, (m_, n_) in self.a1.items()},
            "a2": dict(self.a2),
            "b": {w: {"k": s.k, "t": s.t, "r": s.r} for w, s in self.b.items()},
            "base_counts": {f"{w}|{k}|{n}": c for (w, k, n), c in self.base_counts.items()},
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, morphism: Morphism) -> "SeedTables":
        doc = json.loads(text)
        counts = {}
        for key, c in doc["base_counts"].items():
            w, k, n = key.split("|")
            counts[(w, k, int(n))] = c
        return cls(
            sync_length=doc["sync_length"],
            base_threshold=doc["base_threshold"],
            a1={w: (v["m"], v["n"]) for w, v in doc["a1"].items()},
            a2=dict(doc["a2"]),
            b={w: SpecialStats(v["k"], v["t"], v["r"]) for w, v in doc["b"].items()},
            base_counts=counts,
            morphism=morphism,
        )


def default_threshold(m: Morphism) -> int:
    return m.l * (synchronization_length(m) + 2)


def classified_census(m: Morphism, n: int) -> Counter:
    """(terminal, kind) -> number of factors of length n, by direct enumeration.

    Kinds are the word classes plus ``any`` (every factor) and ``special``.
    Below the synchronization length every factor is its own terminal.
    """
    out: Counter = Counter()
    for u in factors(m, n):
        a = terminal(m, u)
        out[(a, classify(m, u).value)] += 1
        out[(a, "any")] += 1
    for v in factors(m, n):
        if is_special(m, v):
            out[(terminal(m, v), "special")] += 1
    return out


def build_seed_tables(m: Morphism, base_threshold: int | None = None) -> SeedTables:
    sync = synchronization_length(m)
    top = default_threshold(m) if base_threshold is None else base_threshold
    if top < sync - 1:
        raise ValueError(f"base threshold must be at least {sync - 1}")

    seeds: set[str] = set()
    specials: set[str] = set()
    # Seeds are reached from factors of length sync .. l*sync; longer factors
    # only reach terminals that shorter ones already reach.
    for n in range(sync, m.l * sync + 1):
        for u in factors(m, n):
            a = terminal(m, u)
            seeds.add(a)
            if is_special(m, u):
                specials.add(a)

    a1, a2 = {}, {}
    for a in sorted(seeds):
        ps = pattern_sets(m, a)
        if ps.n_pairs:
            a1[a] = (ps.m, ps.n)
        else:
            a2[a] = ps.m
    b = {v: special_stats(m, v) for v in sorted(specials)}

    counts: dict[tuple[str, str, int], int] = {}
    for n in range(1, top + 1):
        for (a, kind), c in sorted(classified_census(m, n).items()):
            if kind == "neutral":
                continue
            if (kind == "special" and a in b) or (kind != "special" and a in seeds):
                counts[(a, kind, n)] = c
    return SeedTables(sync, top, a1, a2, b, counts, m)

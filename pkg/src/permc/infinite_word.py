"""Suffix order, factors, occurrences and synchronization on fixed points.

Positions are 1-based in every public function, matching omega_1 omega_2 ...
Bulk work goes through :class:`FixedPoint`, a per-morphism cache of prefixes
and suffix-rank arrays.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    LengthCapExceeded,
    LookaheadCapExceeded,
    NotCircular,
    StabilizationCapExceeded,
)
from .morphism import Morphism, Prefix, apply, depth_for, max_prefix


# Overrides the per-morphism default lookahead when set (CLI --lookahead-cap).
LOOKAHEAD_CAP: int | None = None


class Order(enum.Enum):
    LESS = "<"
    GREATER = ">"

    def flip(self) -> "Order":
        return Order.GREATER if self is Order.LESS else Order.LESS


@dataclass(frozen=True)
class Occurrence:
    position: int
    length: int


def suffix_ranks(symbols: np.ndarray) -> np.ndarray:
    """Rank of every suffix of ``symbols`` by prefix doubling.

    A suffix that is a proper prefix of another ranks lower, so ranks are only
    meaningful for pairs whose first difference lies inside the array.
    """
    n = len(symbols)
    rank = symbols.astype(np.int64)
    if n <= 1:
        return np.zeros(n, dtype=np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r1, r2 = rank[order], second[order]
        step = np.empty(n, dtype=np.int64)
        step[0] = 0
        step[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.cumsum(step)
        if rank[order[-1]] == n - 1 or k >= n:
            return rank
        k *= 2


class FixedPoint:
    """Lazily grown prefixes phi^d(0) of one morphism plus derived tables."""

    def __init__(self, morphism: Morphism, cap: int | None = None):
        self.morphism = morphism
        self.l = morphism.l
        self._cap = cap
        self._prefixes = ["0"]
        self._ranks: dict[int, np.ndarray] = {}
        self._levels: dict[tuple[int, int], dict[str, frozenset]] = {}
        self._phases: dict[tuple[int, int], dict[str, set[int]]] = {}

    @property
    def cap(self) -> int:
        # Read late so a cached instance honours a later PERMC_MAX_PREFIX.
        return max_prefix() if self._cap is None else self._cap

    def prefix(self, depth: int) -> str:
        if self.l ** depth > self.cap:
            raise LengthCapExceeded(
                f"prefix of depth {depth} has {self.l ** depth} symbols, cap is {self.cap}"
            )
        while len(self._prefixes) <= depth:
            self._prefixes.append(apply(self.morphism, self._prefixes[-1]))
        return self._prefixes[depth]

    def prefix_at_least(self, min_len: int) -> str:
        return self.prefix(depth_for(self.morphism, min_len))

    def ranks(self, depth: int) -> np.ndarray:
        if depth not in self._ranks:
            sym = np.frombuffer(self.prefix(depth).encode(), dtype=np.uint8) - ord("0")
            self._ranks[depth] = suffix_ranks(sym)
        return self._ranks[depth]

    def level_patterns(self, n: int, depth: int) -> dict[str, frozenset]:
        """Factor -> set of patterns over windows of phi^depth(0).

        Suffix order comes from the next, l times longer prefix, so every
        comparison inside a window is settled well before the data runs out.
        """
        key = (n, depth)
        if key in self._levels:
            return self._levels[key]
        text = self.prefix(depth)
        count = len(text) - n + 1
        out: dict[str, set] = {}
        if count > 0:
            ranks = self.ranks(depth + 1)[: len(text)]
            windows = np.lib.stride_tricks.sliding_window_view(ranks, n)
            sym = np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")
            dtype = np.uint8 if n < 256 else np.uint16
            step = max(1, (1 << 22) // n)
            seen = set()
            for lo in range(0, count, step):
                block = windows[lo : lo + step]
                pats = block.argsort(axis=1).argsort(axis=1).astype(dtype) + 1
                codes = np.lib.stride_tricks.sliding_window_view(sym, n)[lo : lo + step]
                both = np.ascontiguousarray(np.concatenate([codes.astype(dtype), pats], axis=1))
                rows = both.view(np.dtype((np.void, both.shape[1] * both.itemsize))).ravel()
                for raw in set(rows.tolist()) - seen:
                    seen.add(raw)
                    row = np.frombuffer(raw, dtype=dtype)
                    word = "".join("1" if c else "0" for c in row[:n])
                    out.setdefault(word, set()).add(tuple(row[n:].tolist()))
        frozen = {w: frozenset(p) for w, p in out.items()}
        self._levels[key] = frozen
        return frozen

    def start_depth(self, n: int) -> int:
        return max(depth_for(self.morphism, 8 * n), 2)

    def stable_patterns(self, n: int) -> tuple[dict[str, frozenset], int]:
        """Pattern map for length ``n`` once two consecutive depths agree."""
        d = self.start_depth(n)
        prev = self.level_patterns(n, d)
        while True:
            if self.l ** (d + 2) > self.cap:
                raise StabilizationCapExceeded(
                    f"patterns of length {n} not stable below depth {d + 1}"
                )
            cur = self.level_patterns(n, d + 1)
            if cur == prev:
                return cur, d
            prev, d = cur, d + 1

    def phases(self, n: int, depth: int) -> dict[str, set[int]]:
        key = (n, depth)
        if key not in self._phases:
            text = self.prefix(depth)
            out: dict[str, set[int]] = {}
            for i in range(len(text) - n + 1):
                out.setdefault(text[i : i + n], set()).add(i % self.l)
            self._phases[key] = out
        return self._phases[key]

    def stable_phases(self, n: int) -> dict[str, set[int]]:
        d = self.start_depth(n)
        prev = self.phases(n, d)
        while True:
            if self.l ** (d + 1) > self.cap:
                raise LengthCapExceeded(f"factors of length {n} not stable below depth {d + 1}")
            cur = self.phases(n, d + 1)
            if cur == prev:
                return cur
            prev, d = cur, d + 1


@lru_cache(maxsize=None)
def fixed_point(m: Morphism) -> FixedPoint:
    return FixedPoint(m)


def compare_suffixes(p: Prefix, i: int, j: int, cap: int | None = None) -> Order:
    """Order of R(i) and R(j), read off the first differing symbol."""
    if i == j:
        raise ValueError("positions must differ")
    if i < 1 or j < 1:
        raise ValueError("positions are 1-based")
    fp = fixed_point(p.morphism)
    if cap is None:
        cap = LOOKAHEAD_CAP or 64 * fp.l * synchronization_length(p.morphism)
    text = p.symbols
    for k in range(cap):
        need = max(i, j) + k
        if need > len(text):
            text = fp.prefix_at_least(max(need, 2 * len(text)))
        a, b = text[i - 1 + k], text[j - 1 + k]
        if a != b:
            return Order.LESS if a < b else Order.GREATER
    raise LookaheadCapExceeded(f"R({i}) and R({j}) agree on {cap} symbols")


def factors(m: Morphism, n: int) -> set[str]:
    if n < 1:
        raise ValueError("factor length must be positive")
    return set(fixed_point(m).stable_phases(n))


def occurrences(p: Prefix, u: str, max_count: int | None = None) -> list[Occurrence]:
    if not u:
        raise ValueError("word must be nonempty")
    out = []
    k = p.symbols.find(u)
    while k >= 0 and (max_count is None or len(out) < max_count):
        out.append(Occurrence(k + 1, len(u)))
        k = p.symbols.find(u, k + 1)
    return out


@lru_cache(maxsize=None)
def synchronization_length(m: Morphism, bound: int | None = None) -> int:
    """Least L such that every factor of length L occurs at a single phase mod l."""
    fp = fixed_point(m)
    bound = 8 * m.l if bound is None else bound
    for size in range(1, bound + 1):
        if all(len(ph) == 1 for ph in fp.stable_phases(size).values()):
            return size
    raise NotCircular(f"{m}: factors up to length {bound} still occur at several phases")


def dump_factors(m: Morphism, n: int) -> str:
    return "".join(w + "\n" for w in sorted(factors(m, n)))

"""Recurrence evaluation of the chain counts and of lambda(n).

Counts at lengths up to ``tables.base_threshold`` come from the brute-force
base table; longer lengths are reduced through the block recurrences, which
shrink n by a factor of l at each step.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass

from .ancestry import SeedTables
from .errors import ArithmeticOverflow, NegativeResult, UnknownSeed
from .oracle import oracle_lambda

INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class CountQuery:
    seed: str
    kind: str
    n: int


class Engine:
    """Memoized counts over one set of seed tables.

    With ``use_oracle`` (the default) lambda at lengths up to the base
    threshold is taken from brute force; :meth:`theorem` never is.
    """

    def __init__(self, tables: SeedTables, use_oracle: bool = True):
        self.tables = tables
        self.l = tables.l
        self.use_oracle = use_oracle
        self._memo: dict[tuple[str, str, int], int] = {}

    def _check(self, q: CountQuery) -> None:
        t = self.tables
        if q.kind == "special":
            if q.seed not in t.b:
                raise UnknownSeed(f"{q.seed!r} is not a special seed")
        elif q.kind in ("bad", "narrow", "wide", "any"):
            if q.seed not in t.a1 and q.seed not in t.a2:
                raise UnknownSeed(f"{q.seed!r} is not a seed")
        else:
            raise ValueError(f"unknown kind {q.kind!r}")
        if q.n < 1:
            raise ValueError("n must be positive")

    def count(self, q: CountQuery) -> int:
        self._check(q)
        return self._count(q.seed, q.kind, q.n)

    def _count(self, seed: str, kind: str, n: int) -> int:
        key = (seed, kind, n)
        if key in self._memo:
            return self._memo[key]
        # Resolve the dependency tree bottom-up so huge n never hits the
        # interpreter recursion limit.
        stack = [key]
        while stack:
            top = stack[-1]
            if top in self._memo:
                stack.pop()
                continue
            deps = [d for d in self._deps(*top) if d not in self._memo]
            if deps:
                stack.extend(deps)
                continue
            value = self._evaluate(*top)
            if value > INT64_MAX:
                raise ArithmeticOverflow(f"C{top} = {value} exceeds 64 bits")
            self._memo[top] = value
            stack.pop()
        return self._memo[key]

    def _deps(self, seed: str, kind: str, n: int) -> list[tuple[str, str, int]]:
        if n <= self.tables.base_threshold:
            return []
        x, r = divmod(n, self.l)
        if kind == "special":
            return [(seed, kind, x + 1 if r else x)]
        if kind == "bad":
            return [(seed, "bad", x + 1)] if r == 1 else []
        if r == 0:
            lens = (x + 1, x)
        else:
            lens = (x + 2, x + 1)
        kinds = {"narrow": ("narrow", "bad"), "wide": ("wide", "bad"), "any": ("any",)}[kind]
        return [(seed, k, m) for k in kinds for m in lens]

    def _evaluate(self, seed: str, kind: str, n: int) -> int:
        t = self.tables
        if n <= t.base_threshold:
            return t.base_counts.get((seed, kind, n), 0)
        l = self.l
        x, r = divmod(n, l)
        c = lambda k, m: self._memo[(seed, k, m)]  # noqa: E731
        if kind == "special":
            if self._is_anchor(seed, n):
                return 1
            return c("special", x + 1 if r else x)
        if kind == "bad":
            return l * c("bad", x + 1) if r == 1 else 0
        if kind == "narrow":
            if r == 0:
                return (l - 1) * c("narrow", x + 1) + (l - 1) * c("bad", x + 1) + c("narrow", x)
            return (
                (r - 1) * c("narrow", x + 2)
                + (r - 1) * c("bad", x + 2)
                + (l - r + 1) * c("narrow", x + 1)
            )
        if kind == "wide":
            if r == 0:
                return (l - 1) * c("wide", x + 1) + c("wide", x) + c("bad", x)
            if r == 1:
                return l * c("wide", x + 1)
            return (
                (r - 1) * c("wide", x + 2)
                + (l - r + 1) * c("wide", x + 1)
                + (l - r + 1) * c("bad", x + 1)
            )
        if r == 0:
            return (l - 1) * c("any", x + 1) + c("any", x)
        return (r - 1) * c("any", x + 2) + (l - r + 1) * c("any", x + 1)

    def _is_anchor(self, b: str, n: int) -> bool:
        size = len(b) * self.l
        while size < n:
            size *= self.l
        return size == n

    def sum_f(self, n: int) -> int:
        total = 0
        for a, (m_a, n_a) in self.tables.a1.items():
            nar = self._count(a, "narrow", n)
            full = self._count(a, "bad", n) + self._count(a, "wide", n)
            total += nar * (m_a + n_a) + full * (m_a + 2 * n_a)
        for a, m_a in self.tables.a2.items():
            total += self._count(a, "any", n) * m_a
        return total

    def delta(self, n: int, b: str) -> int:
        size = self.l * len(b)
        while size + 1 <= n:
            if size + 1 == n:
                return 0
            size *= self.l
        return 1

    def sum_g(self, n: int) -> int:
        total = 0
        for b, s in self.tables.b.items():
            if self.delta(n, b):
                total += self._count(b, "special", n - 1) * (s.k + s.t + s.r)
            else:
                total += s.k + s.r
        return total

    def theorem(self, n: int) -> int:
        """sum_f(n) - sum_g(n), with no brute-force shortcut."""
        if n < 2:
            raise ValueError("lambda is defined here for n >= 2")
        value = self.sum_f(n) - self.sum_g(n)
        if value < 0:
            raise NegativeResult(f"lambda({n}) = {value}")
        return value

    def lambda_(self, n: int) -> int:
        if self.use_oracle and n <= self.tables.base_threshold:
            if n < 2:
                raise ValueError("lambda is defined here for n >= 2")
            return oracle_lambda(self.tables.morphism, n)
        return self.theorem(n)

    def lambda_range(self, lo: int, hi: int) -> list[tuple[int, int]]:
        if not 2 <= lo <= hi:
            raise ValueError("need 2 <= lo <= hi")
        return [(n, self.lambda_(n)) for n in range(lo, hi + 1)]


_engines: "weakref.WeakKeyDictionary[SeedTables, Engine]" = weakref.WeakKeyDictionary()


def engine(tables: SeedTables) -> Engine:
    """The shared engine (and memo table) of ``tables``."""
    if tables not in _engines:
        _engines[tables] = Engine(tables)
    return _engines[tables]


def count(tables: SeedTables, q: CountQuery) -> int:
    return engine(tables).count(q)


def sum_f(tables: SeedTables, n: int) -> int:
    return engine(tables).sum_f(n)


def sum_g(tables: SeedTables, n: int) -> int:
    return engine(tables).sum_g(n)


def delta(tables: SeedTables, n: int, b: str) -> int:
    return engine(tables).delta(n, b)


def lambda_(tables: SeedTables, n: int) -> int:
    return engine(tables).lambda_(n)


def lambda_range(tables: SeedTables, lo: int, hi: int) -> list[tuple[int, int]]:
    return engine(tables).lambda_range(lo, hi)

"""Brute-force ground truth for lambda(n), f(u), g(v) and the chain counts."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .ancestry import SeedTables, classified_census
from .errors import ConsistencyError, TooShort
from .infinite_word import fixed_point, synchronization_length
from .morphism import Morphism, in_q


@dataclass(frozen=True)
class OracleReport:
    n: int
    lambda_: int
    per_factor_f: dict[str, int] = field(repr=False)
    per_special_g: dict[str, int] = field(repr=False)
    stabilized_at_depth: int
    verified_class: bool = True

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "lambda": self.lambda_,
                "per_factor_f": self.per_factor_f,
                "per_special_g": self.per_special_g,
                "stabilized_at_depth": self.stabilized_at_depth,
                "verified_class": self.verified_class,
            },
            sort_keys=True,
        )


def lambda_bruteforce(m: Morphism, n: int) -> OracleReport:
    """Count the distinct patterns of every window of a stabilized prefix.

    Morphisms outside the class are accepted; their reports carry
    ``verified_class=False``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    fp = fixed_point(m)
    patterns, depth = fp.stable_patterns(n)
    shorter, _ = fp.stable_patterns(n - 1)
    f = {u: len(p) for u, p in patterns.items()}
    g = {}
    for v in shorter:
        a, b = patterns.get(v + "0"), patterns.get(v + "1")
        if a is not None and b is not None:
            g[v] = len(a & b)
    lam = len(frozenset().union(*patterns.values()))
    if lam != sum(f.values()) - sum(g.values()):
        raise ConsistencyError(
            f"n={n}: {lam} distinct patterns but sum f - sum g = "
            f"{sum(f.values()) - sum(g.values())}"
        )
    return OracleReport(n, lam, f, g, depth, in_q(m))


def oracle_lambda(m: Morphism, n: int) -> int:
    return lambda_bruteforce(m, n).lambda_


def classified_counts_bruteforce(
    m: Morphism, tables: SeedTables | None, n: int
) -> dict[tuple[str, str], int]:
    """(seed, kind) -> number of factors of length n with that terminal and class.

    Kinds: ``bad``, ``narrow``, ``wide``, ``neutral``, ``any`` and ``special``.
    When ``tables`` is given, seeds outside its tables are dropped.
    """
    if n < synchronization_length(m):
        raise TooShort(f"n={n} is below the synchronization length")
    census: Counter = classified_census(m, n)
    if tables is None:
        return dict(census)
    keep = tables.seeds()
    return {
        (a, k): c
        for (a, k), c in census.items()
        if (a in tables.b if k == "special" else a in keep)
    }

"""Factor complexity of infinite permutations generated by fixed points of
binary uniform marked morphisms.

Typical use::

    from permc import parse_morphism, build_seed_tables, Engine

    tables = build_seed_tables(parse_morphism("01/10"))
    Engine(tables).lambda_(1024)
"""
from .ancestry import SeedTables, build_seed_tables, classify, interpret
from .engine import CountQuery, Engine
from .morphism import Morphism, THUE_MORSE, classify_q, parse_morphism
from .oracle import lambda_bruteforce, oracle_lambda

__all__ = [
    "CountQuery",
    "Engine",
    "Morphism",
    "SeedTables",
    "THUE_MORSE",
    "build_seed_tables",
    "classify",
    "classify_q",
    "interpret",
    "lambda_bruteforce",
    "oracle_lambda",
    "parse_morphism",
]

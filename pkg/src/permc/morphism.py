"""Binary uniform marked morphisms and their fixed points."""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Union

from .errors import LengthCapExceeded, MalformedSpec, NoFixedPoint, NotMarked

DEFAULT_MAX_PREFIX = 1 << 20

_BITS = re.compile(r"[01]+")


def max_prefix() -> int:
    """Prefix length cap, overridable through ``PERMC_MAX_PREFIX``."""
    raw = os.environ.get("PERMC_MAX_PREFIX")
    return int(raw) if raw else DEFAULT_MAX_PREFIX


@dataclass(frozen=True)
class Morphism:
    block0: str
    block1: str

    def __post_init__(self):
        b0, b1 = self.block0, self.block1
        if not (_BITS.fullmatch(b0) and _BITS.fullmatch(b1)):
            raise MalformedSpec(f"blocks must be binary strings: {b0!r}, {b1!r}")
        if len(b0) != len(b1):
            raise MalformedSpec(f"blocks have unequal lengths {len(b0)} and {len(b1)}")
        if len(b0) < 2:
            raise MalformedSpec("blocks must have length at least 2")
        if b0[0] == b1[0] or b0[-1] == b1[-1]:
            raise NotMarked(f"{b0}/{b1}: first and last symbols of the blocks must differ")
        if b0[0] != "0":
            raise NoFixedPoint(f"{b0}/{b1}: the image of 0 must start with 0")

    @property
    def l(self) -> int:
        return len(self.block0)

    def image(self, symbol: str) -> str:
        return self.block0 if symbol == "0" else self.block1

    def __str__(self) -> str:
        return f"{self.block0}/{self.block1}"


THUE_MORSE = Morphism("01", "10")


def parse_morphism(spec: str) -> Morphism:
    """Parse ``<block0>/<block1>``, e.g. ``01/10``."""
    parts = spec.strip().split("/")
    if len(parts) != 2:
        raise MalformedSpec(f"expected '<block0>/<block1>', got {spec!r}")
    return Morphism(parts[0].strip(), parts[1].strip())


@dataclass(frozen=True)
class FormA:
    n: int
    m: int


@dataclass(frozen=True)
class FormB:
    n: int


@dataclass(frozen=True)
class NotInQ:
    reason: str


QMembership = Union[FormA, FormB, NotInQ]


def _count(word: str, factor: str) -> int:
    return sum(1 for i in range(len(word) - len(factor) + 1) if word.startswith(factor, i))


def _leading_run(word: str, start: int, symbol: str) -> int:
    k = start
    while k < len(word) and word[k] == symbol:
        k += 1
    return k - start


def _form_a_block(block: str, head: str, name: str) -> Union[int, str]:
    """Match ``h t^k h x t`` where ``t`` is the other symbol; return k or a reason."""
    tail = "1" if head == "0" else "0"
    k = _leading_run(block, 1, tail)
    if k == 0 or 1 + k >= len(block) or block[1 + k] != head:
        return f"{name} is not of the form {head}{tail}^k{head}x{tail}"
    if block[-1] != tail or len(block) < k + 3:
        return f"{name} does not end with {tail} after {head}{tail}^{k}{head}"
    if _count(block, tail * k) != 1:
        return f"{tail}^{k} occurs {_count(block, tail * k)} times in {name}"
    if k > 1 and block.endswith(tail * (k - 1)):
        return f"{name} ends with {tail}^{k - 1}"
    return k


def classify_q(m: Morphism) -> QMembership:
    b0, b1, l = m.block0, m.block1, m.l
    if b0 == "0" + "1" * (l - 1) and b1 == "1" + "0" * (l - 1):
        return FormB(l - 1)
    n = _form_a_block(b0, "0", "phi(0)")
    if isinstance(n, str):
        return NotInQ(n)
    k = _form_a_block(b1, "1", "phi(1)")
    if isinstance(k, str):
        return NotInQ(k)
    return FormA(n, k)


def in_q(m: Morphism) -> bool:
    return not isinstance(classify_q(m), NotInQ)


def apply(m: Morphism, word: str) -> str:
    return "".join(m.block0 if c == "0" else m.block1 for c in word)


@dataclass(frozen=True)
class Prefix:
    """The prefix phi^depth(0) of the fixed point (1-based in the public API)."""

    symbols: str
    depth: int
    morphism: Morphism

    def __len__(self) -> int:
        return len(self.symbols)

    def at(self, i: int) -> str:
        return self.symbols[i - 1]


def depth_for(m: Morphism, min_len: int) -> int:
    d, size = 0, 1
    while size < min_len:
        d += 1
        size *= m.l
    return d


def fixed_point_prefix(m: Morphism, min_len: int, cap: int | None = None) -> Prefix:
    """Smallest phi^d(0) with at least ``min_len`` symbols."""
    cap = max_prefix() if cap is None else cap
    if min_len > cap:
        raise LengthCapExceeded(f"requested {min_len} symbols, cap is {cap}")
    d = depth_for(m, min_len)
    s = "0"
    for _ in range(d):
        s = apply(m, s)
    return Prefix(s, d, m)

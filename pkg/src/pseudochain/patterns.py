"""Counting mirror-symmetric merger patterns of the 2J chain levels.

Levels carry their unperturbed odd labels -(2J-1), ..., 2J-1.  A complete
merger pattern pairs every level with exactly one partner; the pairing must
be invariant under (a, b) -> (-b, -a) and no two arcs may interleave.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

Pair = tuple[int, int]


@dataclass(frozen=True)
class MergerPattern:
    pairs: tuple[Pair, ...]
    complete: bool = True
    degenerate: bool = False

    def shorthand(self) -> str:
        """Ordered notation, e.g. ``{[-3,-1],[1,3]}``."""
        return "{" + ",".join(f"[{a},{b}]" for a, b in sorted(self.pairs)) + "}"

    @classmethod
    def parse(cls, text: str) -> "MergerPattern":
        pairs = tuple(
            (int(a), int(b)) for a, b in re.findall(r"\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]", text)
        )
        return cls(pairs)

    def __str__(self) -> str:
        return self.shorthand()


@dataclass(frozen=True)
class PatternCountTable:
    """Rows K = 0..max_k of P^(4K), P^(4K+2) and the binomial deltas |R|, |R - S|."""

    max_k: int
    p4k: tuple[int, ...]
    p4k2: tuple[int, ...]
    r: tuple[Fraction, ...]
    r_minus_s: tuple[Fraction, ...]


@dataclass(frozen=True)
class BinomialDeltas:
    r_signed: tuple[Fraction, ...]
    s_signed: tuple[Fraction, ...]
    r_minus_s_signed: tuple[Fraction, ...]

    @property
    def r_abs(self) -> tuple[Fraction, ...]:
        return tuple(abs(x) for x in self.r_signed)

    @property
    def r_minus_s_abs(self) -> tuple[Fraction, ...]:
        return tuple(abs(x) for x in self.r_minus_s_signed)


def pattern_counts(max_n: int) -> dict[int, int]:
    """P^(N) for even N = 0..max_n from the two coupled recurrences.

    N = 4K:    P^(4K)   - P^(4K-2) = sum_{i<K} P^(2K-2-2i) P^(4i)
    N = 4L+2:  P^(4L+2) - P^(4L)   = sum_{i<L} P^(2L-2-2i) P^(4i+2)
    seeded with P^(0) = 1.
    """
    P = {0: 1}
    for N in range(2, max_n + 1, 2):
        if N % 4 == 0:
            K = N // 4
            extra = sum(P[2 * K - 2 - 2 * i] * P[4 * i] for i in range(K))
        else:
            L = (N - 2) // 4
            extra = sum(P[2 * L - 2 - 2 * i] * P[4 * i + 2] for i in range(L))
        P[N] = P[N - 2] + extra
    return P


def binomial_deltas(table: PatternCountTable) -> BinomialDeltas:
    """R = (P^(4K) - C(2K,K)) / 2 and S = (P^(4K+2) - C(2K+1,K)) / 4, signed."""
    r = tuple(Fraction(p - comb(2 * K, K), 2) for K, p in enumerate(table.p4k))
    s = tuple(Fraction(p - comb(2 * K + 1, K), 4) for K, p in enumerate(table.p4k2))
    return BinomialDeltas(r, s, tuple(a - b for a, b in zip(r, s)))


def enumerate_counts(max_k: int) -> PatternCountTable:
    if max_k < 0:
        raise ValueError("max_k must be >= 0")
    P = pattern_counts(4 * max_k + 2)
    p4k = tuple(P[4 * K] for K in range(max_k + 1))
    p4k2 = tuple(P[4 * K + 2] for K in range(max_k + 1))
    partial = PatternCountTable(max_k, p4k, p4k2, (), ())
    deltas = binomial_deltas(partial)
    return PatternCountTable(max_k, p4k, p4k2, deltas.r_abs, deltas.r_minus_s_abs)


def noncrossing_matchings(points: Sequence[int]) -> Iterator[list[Pair]]:
    """All non-crossing perfect matchings of ordered points (first point paired first)."""
    if not points:
        yield []
        return
    first = points[0]
    for i in range(1, len(points), 2):
        for inner in noncrossing_matchings(points[1:i]):
            for outer in noncrossing_matchings(points[i + 1:]):
                yield [(first, points[i])] + inner + outer


def level_labels(J: int) -> list[int]:
    return list(range(-(2 * J - 1), 2 * J, 2))


def _mirror(pair: Pair) -> Pair:
    a, b = pair
    return (-b, -a)


def symmetric_patterns(J: int) -> Iterator[MergerPattern]:
    for m in noncrossing_matchings(level_labels(J)):
        arcs = set(m)
        if {_mirror(p) for p in arcs} == arcs:
            yield MergerPattern(tuple(sorted(arcs)))


def brute_force_count(J: int) -> int:
    if not 1 <= J <= 10:
        raise ValueError("brute force is limited to 1 <= J <= 10")
    return sum(1 for _ in symmetric_patterns(J))


def validate_pattern(p: MergerPattern, J: int | None = None) -> bool:
    """Mirror-closed, non-crossing, odd in-range labels used at most once.

    ``J`` defaults to the smallest chain that holds every label.  Partial
    patterns are accepted; completeness is a separate flag.
    """
    pairs = [tuple(pr) for pr in p.pairs]
    labels = [x for pr in pairs for x in pr]
    if not labels:
        return True
    if J is None:
        J = (max(abs(x) for x in labels) + 1) // 2
    limit = 2 * J - 1
    if any(x % 2 == 0 or abs(x) > limit for x in labels):
        return False
    if len(set(labels)) != len(labels) or any(a >= b for a, b in pairs):
        return False
    arcs = set(pairs)
    if {_mirror(pr) for pr in arcs} != arcs:
        return False
    for (a, b), (c, d) in ((x, y) for x in pairs for y in pairs if x != y):
        if a < c < b < d:
            return False
    return True

"""Exact integer polynomial arithmetic for Sturm counting.

Polynomials are lists of Python ints in ascending order with no trailing
zeros; the zero polynomial is ``[]``.  Every scaling applied here is by a
positive integer so signs of values are preserved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def primitive(p: list[int]) -> list[int]:
    p = trim(list(p))
    if not p:
        return p
    c = 0
    for a in p:
        c = gcd(c, a)
        if c == 1:
            return p
    return [a // c for a in p]


def from_rationals(coeffs: Sequence[Fraction]) -> list[int]:
    """Positive multiple of a rational polynomial with integer coefficients."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return primitive([c.numerator * (den // c.denominator) for c in coeffs])


def derivative(p: Sequence[int]) -> list[int]:
    return trim([j * p[j] for j in range(1, len(p))])


def pdivmod(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Pseudo-division: m * a = q * b + r with m = |lc(b)|^k > 0, deg r < deg b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(list(a))
    db = len(b) - 1
    lb = b[-1]
    mag, sgn = abs(lb), (1 if lb > 0 else -1)
    q = [0] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lead = r[-1]
        q = [mag * c for c in q]
        q[shift] += sgn * lead
        r = [mag * c for c in r]
        for j, bj in enumerate(b):
            r[shift + j] -= sgn * lead * bj
        trim(r)
    return trim(q), r


def sturm_chain(p: Sequence[int]) -> list[list[int]]:
    """Primitive Sturm sequence p, p', -rem, ... ; the last entry is gcd(p, p') up to scale."""
    p0 = primitive(p)
    if not p0:
        return []
    chain = [p0]
    p1 = primitive(derivative(p0))
    while p1:
        chain.append(p1)
        _, r = pdivmod(chain[-2], chain[-1])
        p1 = primitive([-c for c in r])
    return chain


def sign_at(p: Sequence[int], x: Fraction) -> int:
    """Exact sign of p(x) for rational x."""
    if not p:
        return 0
    n, d = x.numerator, x.denominator
    m = len(p) - 1
    v = p[m]
    dpow = 1
    for j in range(m - 1, -1, -1):
        dpow *= d
        v = v * n + p[j] * dpow
    return (v > 0) - (v < 0)


def sign_at_pos_inf(p: Sequence[int]) -> int:
    return (p[-1] > 0) - (p[-1] < 0) if p else 0


def sign_at_neg_inf(p: Sequence[int]) -> int:
    s = sign_at_pos_inf(p)
    return s if (len(p) - 1) % 2 == 0 else -s


def variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def squarefree_split(p: Sequence[int]) -> tuple[list[int], list[int]]:
    """Return (squarefree part, gcd(p, p')) as primitive integer polynomials."""
    chain = sturm_chain(p)
    g = chain[-1]
    if len(g) <= 1:
        return chain[0], [1]
    q, r = pdivmod(chain[0], g)
    assert not r, "gcd does not divide the polynomial exactly"
    return primitive(q), g


def count_distinct_ge(p: Sequence[int], lower: Fraction | None) -> int:
    """Number of distinct real roots of p in [lower, +inf); lower=None means all reals."""
    sf, _ = squarefree_split(p)
    if len(sf) <= 1:
        return 0
    chain = sturm_chain(sf)
    v_hi = variations([sign_at_pos_inf(c) for c in chain])
    if lower is None:
        v_lo = variations([sign_at_neg_inf(c) for c in chain])
        return v_lo - v_hi
    v_lo = variations([sign_at(c, lower) for c in chain])
    on_boundary = 1 if sign_at(sf, lower) == 0 else 0
    return v_lo - v_hi + on_boundary


def count_with_multiplicity_ge(p: Sequence[int], lower: Fraction | None) -> int:
    """Real roots in [lower, +inf) counted with multiplicity.

    Uses the chain g_0 = p, g_{k+1} = gcd(g_k, g_k'): a root of multiplicity m
    is a root of g_0 .. g_{m-1}, so summing distinct counts gives the total.
    """
    total = 0
    g = primitive(p)
    while len(g) > 1:
        total += count_distinct_ge(g, lower)
        _, g = squarefree_split(g)
    return total

"""Characteristic polynomials of the chain in the even variable s = E^2.

The determinant recurrence is run in exact rational arithmetic on the
(float) diagonal and bond weights, so the E -> -E symmetry holds exactly and
coincident levels (t = 0) stay exactly coincident.  The float coefficients
handed to the root finder are correctly rounded from the exact ones; the
Sturm predicates use the exact coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _intpoly
from .errors import IllConditioned, NoConvergence
from .model import ChainModel, bond_weights, diagonal

S_LOWER = -1e-10          # s >= S_LOWER counts as a real, non-negative level square
IMAG_RTOL = 1e-9          # |Im s| <= IMAG_RTOL * (1 + |s|) counts as real
ABERTH_STEP_TOL = 1e-11
ABERTH_MAX_ITER = 500
ABERTH_PHASE = 0.4


@dataclass(frozen=True)
class EvenCharPoly:
    """q(s) = sum_j coeffs[j] s^j with det(H - E) = q(E^2)."""

    coeffs: tuple[float, ...]
    source_t: float = math.nan
    exact: tuple[Fraction, ...] | None = field(default=None, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def exact_coeffs(self) -> tuple[Fraction, ...]:
        if self.exact is not None:
            return self.exact
        return tuple(Fraction(c) for c in self.coeffs)

    def __call__(self, s):
        return np.polynomial.polynomial.polyval(s, self.coeffs)

    def sign_at_zero(self) -> int:
        c0 = self.exact_coeffs()[0]
        return (c0 > 0) - (c0 < 0)


@dataclass(frozen=True)
class RootSet:
    """Roots of q(s) and the energies +-sqrt(s).

    ``energies[i]`` is the principal square root of ``s_roots[i]`` and
    ``energies[J + i]`` its negative.
    """

    s_roots: tuple[complex, ...]
    energies: tuple[complex, ...]
    all_real: bool
    iterations: int = 0


def full_char_poly_exact(diag: Sequence[float], weights: Sequence[float]) -> list[Fraction]:
    """Exact coefficients (ascending in E) of det(H - E) for the chain.

    p_k(E) = (d_k - E) p_{k-1}(E) + w_k p_{k-2}(E), with w_k the signed weight of
    the bond joining sites k-1 and k.
    """
    d = [Fraction(x) for x in diag]
    w = [Fraction(x) for x in weights]
    if len(w) != len(d) - 1:
        raise ValueError("need exactly len(diag) - 1 bond weights")
    prev: list[Fraction] = [Fraction(1)]
    cur: list[Fraction] = [d[0], Fraction(-1)]
    for k in range(1, len(d)):
        nxt = [Fraction(0)] * (len(cur) + 1)
        for j, c in enumerate(cur):
            nxt[j] += d[k] * c
            nxt[j + 1] -= c
        wk = w[k - 1]
        if wk:
            for j, c in enumerate(prev):
                nxt[j] += wk * c
        prev, cur = cur, nxt
    return cur


def full_char_poly(model: ChainModel, t: float) -> np.ndarray:
    """Float coefficients of det(H - E), ascending in E (odd ones vanish)."""
    return np.array([float(c) for c in full_char_poly_exact(diagonal(model.J), bond_weights(model, t))])


def even_poly_from_weights(diag: Sequence[float], weights: Sequence[float], t: float = math.nan) -> EvenCharPoly:
    full = full_char_poly_exact(diag, weights)
    odd = [c for c in full[1::2] if c != 0]
    if odd:
        # Happens only when the weights are not mirror-symmetric.
        raise ValueError("spectrum is not symmetric under E -> -E for these weights")
    exact = tuple(full[0::2])
    return EvenCharPoly(tuple(float(c) for c in exact), t, exact)


def char_poly(model: ChainModel, t: float) -> EvenCharPoly:
    return even_poly_from_weights(diagonal(model.J), bond_weights(model, t), t)


def vieta_sum(q: EvenCharPoly) -> float:
    c = q.exact_coeffs()
    return float(-c[-2] / c[-1])


def sum_rule_check(q: EvenCharPoly, model: ChainModel, t: float) -> float:
    """|sum of roots (Vieta) - trace(H^2)/2|; should sit far below 1e-9 * sum d_k^2."""
    d = diagonal(model.J)
    half_trace = 0.5 * (sum(x * x for x in d) - 2.0 * sum(bond_weights(model, t)))
    return abs(vieta_sum(q) - half_trace)


def _lower_fraction(lower: float | None) -> Fraction | None:
    if lower is None or lower == -math.inf:
        return None
    return Fraction(lower)


def count_real_roots_ge(q: EvenCharPoly, lower: float | None = S_LOWER, *, multiplicity: bool = False) -> int:
    """Real roots of q in [lower, +inf) by exact Sturm sign counting.

    Multiple roots are first removed by gcd with the derivative, so the plain
    count is of distinct roots; ``multiplicity=True`` adds them back.
    ``lower=None`` (or -inf) counts the whole real line.
    """
    p = _intpoly.from_rationals(q.exact_coeffs())
    if not p:
        raise IllConditioned("characteristic polynomial is identically zero")
    lo = _lower_fraction(lower)
    if multiplicity:
        return _intpoly.count_with_multiplicity_ge(p, lo)
    return _intpoly.count_distinct_ge(p, lo)


def root_multiplicities(q: EvenCharPoly, at: float = 0.0) -> int:
    """Multiplicity of ``at`` as a root of q (0 if not a root)."""
    p = _intpoly.from_rationals(q.exact_coeffs())
    x = Fraction(at)
    m = 0
    while len(p) > 1 and _intpoly.sign_at(p, x) == 0:
        m += 1
        p = _intpoly.derivative(p)
    return m


def is_quasi_hermitian(q: EvenCharPoly, lower: float = S_LOWER) -> bool:
    """All J level squares real and >= lower, i.e. the whole spectrum is real."""
    return count_real_roots_ge(q, lower, multiplicity=True) == q.degree


def _normalise(c: np.ndarray) -> tuple[np.ndarray, float]:
    """Monic polynomial in u = s / rho with rho = 1 + max|c_j / c_J|^(1/(J-j)).

    All normalised coefficients have modulus <= 1, so evaluation near the
    roots cannot overflow even when the raw coefficients span 1e270.
    """
    J = len(c) - 1
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(c[:-1] / c[-1]))
    powers = J - np.arange(J)
    log_rho = math.log1p(math.exp(float(np.max(logs / powers))))
    u = np.empty(J + 1)
    u[-1] = 1.0
    u[:-1] = np.sign(c[:-1] / c[-1]) * np.exp(logs - powers * log_rho)
    return u, math.exp(log_rho)


def _horner(c: np.ndarray, z: np.ndarray):
    p = np.full_like(z, c[-1])
    dp = np.zeros_like(z)
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def aberth(coeffs: Sequence[float], max_iter: int = ABERTH_MAX_ITER, tol: float = ABERTH_STEP_TOL):
    """Simultaneous Aberth-Ehrlich iteration on a real polynomial (ascending coeffs).

    Starts from J points on the circle of radius rho (see ``_normalise``) at
    angles 2 pi k / J + 0.4.  A root is converged once its last correction is
    below ``tol * max(1, |s|)``, or once q is at the rounding level of its
    evaluation.  Returns (roots, iterations).
    """
    c = np.asarray(coeffs, dtype=float)
    J = len(c) - 1
    if J < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if c[-1] == 0:
        raise ValueError("leading coefficient vanishes")
    if J == 1:
        return np.array([complex(-c[0] / c[1])]), 1
    u, rho = _normalise(c)
    k = np.arange(J)
    z = np.exp(1j * (2.0 * np.pi * k / J + ABERTH_PHASE))
    absu = np.abs(u)
    done = np.zeros(J, dtype=bool)
    eps = np.finfo(float).eps
    for it in range(1, max_iter + 1):
        p, dp = _horner(u, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = np.where(diff == 0, 0.0, 1.0 / diff)
        np.fill_diagonal(inv, 0.0)
        denom = dp - p * inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where((p == 0) | (denom == 0) | done, 0.0, p / denom)
        z = z - step
        p_new, _ = _horner(u, z)
        noise = np.abs(p_new) <= 8 * eps * np.polynomial.polynomial.polyval(np.abs(z), absu)
        small_step = rho * np.abs(step) <= tol * np.maximum(1.0, rho * np.abs(z))
        done |= small_step | noise
        if done.all():
            return rho * z, it
    p, _ = _horner(u, z)
    residual = np.abs(p) / np.polynomial.polynomial.polyval(np.abs(z), absu)
    raise NoConvergence(rho * z, float(np.max(residual)), max_iter)


def _is_real_s(s: complex, lower: float = S_LOWER) -> bool:
    tol = IMAG_RTOL * (1.0 + abs(s))
    return abs(s.imag) <= tol and s.real >= min(lower, -tol)


def all_roots(q: EvenCharPoly) -> RootSet:
    """All J level squares; exact zeros (vanishing low coefficients) are split off first."""
    exact = q.exact_coeffs()
    k = 0
    while k < q.degree and exact[k] == 0:
        k += 1
    roots, iters = (aberth(q.coeffs[k:]) if q.degree - k >= 1 else (np.empty(0, dtype=complex), 0))
    roots = np.concatenate([np.zeros(k, dtype=complex), roots])
    cleaned = []
    for s in roots:
        s = complex(s)
        if abs(s.imag) <= IMAG_RTOL * (1.0 + abs(s)):
            s = complex(s.real, 0.0)
        cleaned.append(s)
    cleaned.sort(key=lambda s: (s.real, s.imag))
    plus = [cmath.sqrt(s) for s in cleaned]
    energies = tuple(plus) + tuple(-e for e in plus)
    all_real = all(_is_real_s(s) for s in cleaned)
    return RootSet(tuple(cleaned), energies, all_real, iters)

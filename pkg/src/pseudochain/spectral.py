"""Spectra along t, the four-state closed form, and critical-t location.

Time runs leftwards by convention: scans and merger classification default to
decreasing t, and "before"/"after" an event refer to scan order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DegenerateEvent, NoConvergence, NoRootInRange, PredicateNotBracketed, PseudoChainError
from .model import ChainModel, bond_weights_from_couplings, xi
from .patterns import MergerPattern
from .polynomial import (
    S_LOWER,
    EvenCharPoly,
    RootSet,
    _is_real_s,
    all_roots,
    char_poly,
    count_real_roots_ge,
    even_poly_from_weights,
    is_quasi_hermitian,
    root_multiplicities,
)

BISECT_XTOL = 1e-12
XI_GRID_CELLS = 10_000
QH_GRID_CELLS = 2_000
MERGER_STEPS = 4_000
DOMAIN_TOL = 1e-12


class ThresholdKind(str, Enum):
    QH_LOSS = "QH_LOSS"
    XI_ROOT = "XI_ROOT"
    ZERO_CROSSING = "ZERO_CROSSING"


@dataclass(frozen=True)
class ThresholdReport:
    kind: ThresholdKind
    t: float
    bracket: tuple[float, float]
    residual: float
    coupling_index: int | None = None


@dataclass(frozen=True)
class Domain4Point:
    alpha: float
    beta: float
    inside: bool


@dataclass
class SpectrumSample:
    t: float
    roots: RootSet | None
    labels: tuple[int, ...] | None = None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.roots is None

    def energies_by_label(self) -> list[tuple[int, complex]]:
        """Energies keyed by signed label, ordered from -(2J-1) to 2J-1.

        Label +m gets the principal root sqrt(s_m), label -m its negative.
        """
        if self.roots is None:
            return []
        J = len(self.roots.s_roots)
        labels = self.labels or tuple(range(1, 2 * J, 2))
        out = []
        for m, e in zip(labels, self.roots.energies[:J]):
            out.append((m, e))
            out.append((-m, -e))
        out.sort(key=lambda item: item[0])
        return out


@dataclass(frozen=True)
class MergerEvent:
    t: float
    bracket: tuple[float, float]
    kind: str  # "collision", "zero", "revival" or "degenerate"
    pairs: tuple[tuple[int, int], ...] = ()


@dataclass
class MergerResult:
    pattern: MergerPattern
    events: list[MergerEvent] = field(default_factory=list)


class NotQuasiHermitian(PseudoChainError):
    """The spectrum is not entirely real where it is required to be."""


def bisect_predicate(pred: Callable[[float], bool], t_true: float, t_false: float,
                     xtol: float = BISECT_XTOL) -> tuple[float, float]:
    """Shrink [t_true, t_false] (either orientation) keeping pred(t_true) true.

    Returns the final (t_true, t_false) pair, |t_true - t_false| <= xtol unless
    the floats are exhausted first.
    """
    if not pred(t_true) or pred(t_false):
        raise PredicateNotBracketed(f"predicate is not true at {t_true} and false at {t_false}")
    while abs(t_false - t_true) > xtol:
        mid = 0.5 * (t_true + t_false)
        if mid == t_true or mid == t_false:
            break
        if pred(mid):
            t_true = mid
        else:
            t_false = mid
    return t_true, t_false


def _sorted_pair(a: float, b: float) -> tuple[float, float]:
    return (a, b) if a <= b else (b, a)


def spectrum_at(model: ChainModel, t: float) -> SpectrumSample:
    return SpectrumSample(t, all_roots(char_poly(model, t)))


def closed_form_4(alpha: float, beta: float) -> tuple[complex, complex]:
    """(s_+, s_-) for the four-state chain; complex when the radicand is negative."""
    rad = 3 * beta * alpha + alpha ** 2 + 9 * beta - 9 * alpha
    root = 2 * (math.sqrt(rad) if rad >= 0 else cmath.sqrt(rad))
    base = 3 * beta + 2 * alpha
    return base + root, base - root


def four_state_poly(alpha: float, beta: float) -> EvenCharPoly:
    """q(s) of the N = 4 chain built directly from (alpha, beta), no t involved."""
    weights = bond_weights_from_couplings([3.0 * (1.0 - beta), 4.0 * (1.0 - alpha)])
    return even_poly_from_weights([-3, -1, 1, 3], weights)


def domain4_contains(alpha: float, beta: float, tol: float = DOMAIN_TOL) -> Domain4Point:
    beta_min = (9 * alpha - alpha ** 2) / (9 + 3 * alpha)
    alpha_min = beta - beta ** 2 / 4
    inside = beta - beta_min >= -tol and alpha - alpha_min >= -tol
    return Domain4Point(alpha, beta, inside)


def xi_root(model: ChainModel, n: int, search_max: float = 2.0, cells: int = XI_GRID_CELLS,
            xtol: float = BISECT_XTOL) -> ThresholdReport:
    """Smallest positive root of xi_n(t) = 1 inside (0, search_max]."""
    if search_max <= 0:
        raise ValueError("search_max must be positive")

    def f(t):
        return xi(model, n, t) - 1.0

    prev_t, prev_f = 0.0, f(0.0)
    for i in range(1, cells + 1):
        t = search_max * i / cells
        ft = f(t)
        if ft == 0.0:
            return ThresholdReport(ThresholdKind.XI_ROOT, t, (t, t), 0.0, n)
        if (ft > 0) != (prev_f > 0):
            below = prev_f > 0
            lo, hi = bisect_predicate(lambda s: (f(s) > 0) == below, prev_t, t, xtol)
            root = 0.5 * (lo + hi)
            return ThresholdReport(ThresholdKind.XI_ROOT, root, _sorted_pair(lo, hi), abs(f(root)), n)
        prev_t, prev_f = t, ft
    raise NoRootInRange(f"xi_{n}(t) = 1 has no root in (0, {search_max}]")


def _real_predicate(model: ChainModel) -> Callable[[float], bool]:
    return lambda t: is_quasi_hermitian(char_poly(model, t))


def qh_threshold(model: ChainModel, t_high: float, t_low: float, cells: int = QH_GRID_CELLS,
                 xtol: float = BISECT_XTOL) -> ThresholdReport:
    """First loss of spectral reality when moving from t_high towards t_low.

    The reported t is the real-spectrum end of the final bracket.
    """
    real = _real_predicate(model)
    if not real(t_high) or real(t_low):
        raise PredicateNotBracketed(
            f"spectrum must be real at t={t_high} and complex at t={t_low}"
        )
    prev = t_high
    for i in range(1, cells + 1):
        t = t_high + (t_low - t_high) * i / cells
        if not real(t):
            good, bad = bisect_predicate(real, prev, t, xtol)
            return ThresholdReport(ThresholdKind.QH_LOSS, good, _sorted_pair(good, bad), abs(good - bad))
        prev = t
    raise AssertionError("unreachable: endpoint is complex")


def zero_crossing(model: ChainModel, t_before: float, t_after: float,
                  xtol: float = BISECT_XTOL) -> ThresholdReport:
    """Locate where a level square crosses s = 0 (sign change of q(0; t))."""
    s0 = char_poly(model, t_before).sign_at_zero()
    s1 = char_poly(model, t_after).sign_at_zero()
    if s0 == 0 or s1 == 0 or s0 == s1:
        raise PredicateNotBracketed("q(0; t) does not change sign across the bracket")
    lo, hi = bisect_predicate(lambda t: char_poly(model, t).sign_at_zero() == s0, t_before, t_after, xtol)
    t = 0.5 * (lo + hi)
    return ThresholdReport(ThresholdKind.ZERO_CROSSING, t, _sorted_pair(lo, hi), abs(char_poly(model, t).coeffs[0]))


def _assign(prev: Sequence[complex], prev_labels: Sequence[int], cur: Sequence[complex]) -> tuple[int, ...]:
    cost = np.abs(np.subtract.outer(np.asarray(prev), np.asarray(cur)))
    rows, cols = linear_sum_assignment(cost)
    labels = [0] * len(cur)
    for r, c in zip(rows, cols):
        labels[c] = prev_labels[r]
    return tuple(labels)


def initial_labels(J: int) -> tuple[int, ...]:
    return tuple(range(1, 2 * J, 2))


def scan(model: ChainModel, t_start: float, t_end: float, steps: int) -> list[SpectrumSample]:
    """Spectra on a uniform grid with level identities carried along.

    The first sample labels its level squares 1, 3, ..., 2J-1 in ascending
    order; later samples inherit labels by minimal total displacement.
    Failed samples are kept (``roots=None``) and skipped for tracking.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    ts = np.linspace(t_start, t_end, steps)
    samples: list[SpectrumSample] = []
    ref: SpectrumSample | None = None
    for t in ts:
        t = float(t)
        try:
            sample = spectrum_at(model, t)
        except NoConvergence as exc:
            samples.append(SpectrumSample(t, None, None, str(exc)))
            continue
        if ref is None:
            sample.labels = initial_labels(model.J)
        else:
            sample.labels = _assign(ref.roots.s_roots, ref.labels, sample.roots.s_roots)
        samples.append(sample)
        ref = sample
    return samples


@dataclass
class _State:
    t: float
    q: EvenCharPoly
    roots: RootSet
    labels: tuple[int, ...]
    alive: int
    z: int
    zeff: int

    def root_of(self, label: int) -> complex:
        return self.roots.s_roots[self.labels.index(label)]

    def alive_labels(self) -> list[int]:
        return [m for m, s in zip(self.labels, self.roots.s_roots) if _is_real_s(s)]


class _MergerWalker:
    def __init__(self, model: ChainModel, xtol: float, strict: bool):
        self.model = model
        self.xtol = xtol
        self.strict = strict

    def state(self, t: float, ref: _State | None) -> _State:
        q = char_poly(self.model, t)
        roots = all_roots(q)
        labels = initial_labels(self.model.J) if ref is None else _assign(ref.roots.s_roots, ref.labels, roots.s_roots)
        alive = count_real_roots_ge(q, S_LOWER, multiplicity=True)
        z = q.sign_at_zero()
        zeff = z if z != 0 or ref is None else ref.zeff
        return _State(t, q, roots, labels, alive, z, zeff)

    def degenerate(self, t: float, bracket: tuple[float, float], detail: str) -> MergerEvent:
        if self.strict:
            raise DegenerateEvent(t, bracket, detail)
        return MergerEvent(t, bracket, "degenerate")

    def resolve(self, a: _State, b: _State) -> list[MergerEvent]:
        drop = a.alive - b.alive
        crossed = a.zeff != 0 and b.z != 0 and b.z != a.zeff
        if drop == 0 and not crossed:
            return []
        if drop == 1 and crossed:
            return [self.refine_zero(a, b)]
        if drop == 2 and not crossed:
            return [self.refine_collision(a, b)]
        if (drop == -1 and crossed) or (drop == -2 and not crossed):
            return [MergerEvent(0.5 * (a.t + b.t), _sorted_pair(a.t, b.t), "revival")]
        if abs(b.t - a.t) <= self.xtol:
            return [self.degenerate(0.5 * (a.t + b.t), _sorted_pair(a.t, b.t),
                                    f"real-level count drops by {drop} in one bracket")]
        mid = self.state(0.5 * (a.t + b.t), a)
        b = self.state(b.t, mid)
        return self.resolve(a, mid) + self.resolve(mid, b)

    def refine_zero(self, a: _State, b: _State) -> MergerEvent:
        model = self.model

        def not_crossed(t):
            sgn = char_poly(model, t).sign_at_zero()
            return sgn == 0 or sgn == a.zeff

        pre_t, post_t = bisect_predicate(not_crossed, a.t, b.t, self.xtol)
        pre = self.state(pre_t, a)
        candidates = a.alive_labels() or list(a.labels)
        m = min(candidates, key=lambda lab: abs(pre.root_of(lab)))
        return MergerEvent(0.5 * (pre_t + post_t), _sorted_pair(pre_t, post_t), "zero", ((-m, m),))

    def refine_collision(self, a: _State, b: _State) -> MergerEvent:
        model = self.model
        target = a.alive

        def still_real(t):
            return count_real_roots_ge(char_poly(model, t), S_LOWER, multiplicity=True) >= target

        pre_t, post_t = bisect_predicate(still_real, a.t, b.t, self.xtol)
        pre = self.state(pre_t, a)
        candidates = a.alive_labels()
        if len(candidates) < 2:
            candidates = list(a.labels)
        m1, m2 = min(combinations(sorted(candidates), 2),
                     key=lambda pr: abs(pre.root_of(pr[0]) - pre.root_of(pr[1])))
        return MergerEvent(0.5 * (pre_t + post_t), _sorted_pair(pre_t, post_t), "collision",
                           ((-m2, -m1), (m1, m2)))

    def endpoint(self, last: _State) -> list[MergerEvent]:
        """A level square sitting exactly on s = 0 at the end of the range."""
        if last.z != 0:
            return []
        mult = root_multiplicities(last.q, 0.0)
        if mult >= 2:
            return [self.degenerate(last.t, (last.t, last.t),
                                    f"{mult}-fold level square at s = 0")]
        m = min(last.alive_labels() or list(last.labels), key=lambda lab: abs(last.root_of(lab)))
        return [MergerEvent(last.t, (last.t, last.t), "zero", ((-m, m),))]


def classify_mergers(model: ChainModel, t_start: float, t_end: float, steps: int = MERGER_STEPS,
                     xtol: float = BISECT_XTOL, strict: bool = False) -> MergerResult:
    """Walk from t_start to t_end recording which unperturbed levels merge.

    Two tracked real level squares colliding and leaving the axis give the
    pair [m1, m2] plus its mirror [-m2, -m1]; a level square crossing s = 0
    gives [-m, m].  Brackets holding more than one event are split until the
    events separate; if they never do the event is reported as degenerate
    (or :class:`DegenerateEvent` is raised with ``strict=True``).
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    walker = _MergerWalker(model, xtol, strict)
    first = walker.state(float(t_start), None)
    if first.alive != model.J:
        raise NotQuasiHermitian(f"spectrum is not real at t_start={t_start}")
    events: list[MergerEvent] = []
    prev = first
    for t in np.linspace(t_start, t_end, steps)[1:]:
        cur = walker.state(float(t), prev)
        events.extend(walker.resolve(prev, cur))
        prev = cur
    events.extend(walker.endpoint(prev))

    pairs: list[tuple[int, int]] = []
    for ev in events:
        for pr in ev.pairs:
            if pr not in pairs:
                pairs.append(pr)
    degenerate = any(ev.kind == "degenerate" for ev in events)
    complete = prev.alive == 0 and len(pairs) == model.J and not degenerate
    pattern = MergerPattern(tuple(sorted(pairs)), complete=complete, degenerate=degenerate)
    return MergerResult(pattern, events)

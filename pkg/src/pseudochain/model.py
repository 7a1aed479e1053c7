"""Chain Hamiltonians H^(2J)(t) with antisymmetric nearest-neighbour couplings.

The N = 2J state chain has the equidistant diagonal -(N-1), ..., N-1 and
couplings placed symmetrically about the centre.  Coupling ``n`` (1 = outermost,
J = central) is parametrised through

    xi_n(t) = t + t^2 + ... + t^(J-1) + G_n t^J,
    g_n^2   = n (N - n) (1 - xi_n(t)).

Every numerical routine consumes the signed squared coupling ``w_n`` so that the
transition to imaginary matrix elements (xi_n > 1) stays smooth.  The explicit
complex matrix is only built by :func:`materialize`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateBond

DEGENERATE_BOND_RTOL = 1e-12


@dataclass(frozen=True)
class ChainModel:
    """One member of the chain family: half-dimension ``J`` and coefficients ``G``.

    ``G[0]`` belongs to the outermost coupling and ``G[J-1]`` to the central one.
    For N = 4 the four-state constants map as ``G = (B, A)``; for N = 6 as
    ``G = (C, B, A)``.
    """

    J: int
    G: tuple[float, ...]

    def __post_init__(self):
        if not isinstance(self.J, (int, np.integer)) or self.J < 1:
            raise ValueError(f"J must be a positive integer, got {self.J!r}")
        G = tuple(float(g) for g in self.G)
        if len(G) != self.J:
            raise ValueError(f"expected {self.J} coefficients G, got {len(G)}")
        object.__setattr__(self, "J", int(self.J))
        object.__setattr__(self, "G", G)

    @classmethod
    def uniform(cls, J: int, value: float = 1.0) -> "ChainModel":
        return cls(J, (value,) * J)

    @property
    def N(self) -> int:
        return 2 * self.J

    def g_max(self, n: int) -> int:
        """Maximal squared coupling n (N - n) of coupling ``n``."""
        _check_index(self, n)
        return n * (self.N - n)

    def bond_coupling(self, bond: int) -> int:
        """Coupling index carried by bond ``bond`` (1-based, joins sites bond, bond+1)."""
        if not 1 <= bond < self.N:
            raise ValueError(f"bond index {bond} outside 1..{self.N - 1}")
        return min(bond, self.N - bond)


@dataclass(frozen=True)
class CouplingState:
    n: int
    xi: float
    w_signed: float

    @property
    def hermitian(self) -> bool:
        """True when the literal matrix entry is imaginary (bond already Hermitian)."""
        return self.w_signed < 0


@dataclass(frozen=True)
class ParitySignature:
    signs: tuple[int, ...]

    def matrix(self) -> np.ndarray:
        return np.diag(np.asarray(self.signs, dtype=float))

    def verify(self, H: np.ndarray, atol: float = 1e-12) -> bool:
        P = self.matrix()
        return bool(np.allclose(P @ H @ P, H.conj().T, rtol=0.0, atol=atol))


def _check_index(model: ChainModel, n: int) -> None:
    if not 1 <= n <= model.J:
        raise ValueError(f"coupling index {n} outside 1..{model.J}")


def diagonal(J: int) -> list[int]:
    """Unperturbed levels -(N-1), -(N-3), ..., N-1 for N = 2J."""
    if J < 1:
        raise ValueError(f"J must be positive, got {J}")
    N = 2 * J
    return [2 * k - N - 1 for k in range(1, N + 1)]


def xi(model: ChainModel, n: int, t: float) -> float:
    _check_index(model, n)
    # Horner on t * (1 + t (1 + ... t (1 + G_n t)))
    acc = model.G[n - 1]
    for _ in range(model.J - 1):
        acc = 1.0 + t * acc
    return t * acc


def coupling_state(model: ChainModel, n: int, t: float) -> CouplingState:
    x = xi(model, n, t)
    return CouplingState(n=n, xi=x, w_signed=model.g_max(n) * (1.0 - x))


def coupling_weights(model: ChainModel, t: float) -> list[float]:
    """Signed squared couplings w_1..w_J (index 0 = outermost)."""
    return [coupling_state(model, n, t).w_signed for n in range(1, model.J + 1)]


def bond_weights(model: ChainModel, t: float) -> list[float]:
    """Signed weights of the N - 1 bonds, left to right."""
    w = coupling_weights(model, t)
    return [w[model.bond_coupling(k) - 1] for k in range(1, model.N)]


def bond_weights_from_couplings(couplings: Sequence[float]) -> list[float]:
    """Mirror J coupling weights (outermost first) onto the N - 1 bonds."""
    J = len(couplings)
    N = 2 * J
    return [float(couplings[min(k, N - k) - 1]) for k in range(1, N)]


def matrix_from_weights(diag: Sequence[float], weights: Sequence[float]) -> np.ndarray:
    N = len(diag)
    H = np.zeros((N, N), dtype=complex)
    H[np.arange(N), np.arange(N)] = diag
    for k, w in enumerate(weights):
        g = cmath.sqrt(complex(w, 0.0))
        H[k, k + 1] = g
        H[k + 1, k] = -g
    return H


def materialize(model: ChainModel, t: float) -> np.ndarray:
    """Explicit N x N complex matrix; principal square root for negative radicands."""
    return matrix_from_weights(diagonal(model.J), bond_weights(model, t))


def find_parity_signature(model: ChainModel, t: float) -> ParitySignature:
    """Diagonal sign matrix P with P H P = H^dagger, normalised to P[0] = +1.

    A real antisymmetric bond (w > 0) needs opposite signs on its two sites,
    an imaginary (already Hermitian) bond needs equal ones.  On a chain such a
    signature always exists unless some bond is switched off.
    """
    signs = [1]
    for k in range(1, model.N):
        n = model.bond_coupling(k)
        w = coupling_state(model, n, t).w_signed
        if abs(w) < DEGENERATE_BOND_RTOL * model.g_max(n):
            raise DegenerateBond(k, n, w)
        signs.append(-signs[-1] if w > 0 else signs[-1])
    return ParitySignature(tuple(signs))

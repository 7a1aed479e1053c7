"""Exception types shared across the package."""

from __future__ import annotations


class PseudoChainError(Exception):
    """Base class for all package errors."""


class DegenerateBond(PseudoChainError):
    """A coupling weight vanishes, so the parity signature is ambiguous."""

    def __init__(self, bond: int, coupling: int, weight: float):
        self.bond = bond
        self.coupling = coupling
        self.weight = weight
        super().__init__(
            f"bond {bond} (coupling n={coupling}) has weight {weight!r}; "
            "signature is ambiguous on the switch-off boundary"
        )


class IllConditioned(PseudoChainError):
    """The Sturm chain cannot be evaluated unambiguously."""


class NoConvergence(PseudoChainError):
    """Simultaneous root iteration hit its cap before converging."""

    def __init__(self, best, residual: float, iterations: int):
        self.best = best
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"root iteration did not converge after {iterations} steps "
            f"(max scaled residual {residual:.3e})"
        )


class NoRootInRange(PseudoChainError):
    """No sign change of the target function inside the search range."""


class PredicateNotBracketed(PseudoChainError):
    """The reality predicate does not change across the given bracket."""


class DegenerateEvent(PseudoChainError):
    """Several level mergers collapse into one refined bracket."""

    def __init__(self, t: float, bracket: tuple[float, float], detail: str = ""):
        self.t = t
        self.bracket = bracket
        super().__init__(f"multiple merger near t={t:.12g}" + (f": {detail}" if detail else ""))

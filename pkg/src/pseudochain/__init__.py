"""Spectra, thresholds and merger patterns of pseudo-Hermitian chain Hamiltonians."""

__version__ = "0.1.0"

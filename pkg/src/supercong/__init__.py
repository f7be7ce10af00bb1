"""Exact p-adic verification of supercongruences over prime sweeps."""

from .padic import PAdic, congruent_mod

__version__ = "0.1.0"
__all__ = ["PAdic", "congruent_mod", "__version__"]

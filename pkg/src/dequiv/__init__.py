"""Exact-arithmetic workbench for derived-equivalence invariants of
canonical (bound quiver) algebras and poset incidence algebras."""

from .exactla import KERNEL_BACKEND

__version__ = "0.1.0"

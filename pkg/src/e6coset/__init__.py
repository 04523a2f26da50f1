"""Exact-arithmetic vertex operator engine for the E6 weight lattice.

The package verifies, in rational arithmetic with no tolerances, the
structure of the lattice vertex algebra built on the E6 weight lattice: the
sign cocycle and root system, vertex operator mode actions (including
fractional modes across the three cosets), the conformal vectors of the full
algebra, of its F4 subalgebra and of their difference (the c = 4/5 coset
Virasoro), the eight joint highest weight vectors of the branching
decomposition, and the q-series character identities behind the branching
rules.
"""

from .fock import FockMonomial, State
from .lattice import F4Weight, LatticePoint

__all__ = ["FockMonomial", "State", "F4Weight", "LatticePoint"]
__version__ = "0.1.0"

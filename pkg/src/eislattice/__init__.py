"""Exact computations with Eisenstein Hermitian lattices, braid monodromy and Kodaira combinatorics."""

from .lattice import HermitianLattice, LatticeVector, psi, phi, standard_lattice
from .ring import OMEGA, THETA, Eis

__version__ = "0.1.0"

__all__ = ["Eis", "OMEGA", "THETA", "HermitianLattice", "LatticeVector", "psi", "phi", "standard_lattice"]

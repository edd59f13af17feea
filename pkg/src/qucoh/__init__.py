"""Quantum uncertainty relations built on coherence measures, for qubits.

Modules:

* :mod:`qucoh.numlin` - entropies, eigendecomposition, Bloch-sphere helpers
* :mod:`qucoh.coherence` - relative entropy, l1 and formation coherence
* :mod:`qucoh.bounds` - analytic lower bounds as functions of (c_max, purity)
* :mod:`qucoh.tightsolver` - exact numerical lower bounds
* :mod:`qucoh.harness` - random sampling and Monte Carlo verification
* :mod:`qucoh.scan`, :mod:`qucoh.statefile`, :mod:`qucoh.cli` - I/O and CLI
"""
from .bounds import BoundKind, BoundValue, evaluate_all, purity_to_p
from .coherence import (
    MeasureKind,
    cf_oracle,
    coherence_formation_qubit,
    coherence_l1,
    coherence_relative_entropy,
    dephase,
)
from .errors import DomainError, InvalidInputError, QucohError, UnsupportedDimensionError
from .numlin import (
    basis_pair_geometry,
    binary_entropy,
    bloch_from_state,
    hermitian_eigen,
    overlap,
    state_from_bloch,
    von_neumann_entropy,
)
from .tightsolver import SolverOptions, TightBound, tight_bound_1d, tight_bound_2d_crosscheck

__version__ = "0.1.0"

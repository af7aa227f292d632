"""Exact free-field (Heisenberg and lattice) vertex algebra arithmetic."""
from .fock import LatticeSpec, StateVector, parse_state, rank1_lattice, rank2_lattice
from .scalar import Scalar, param, parse_scalar
from .suites import SuiteReport, run_suite
from .vertexops import general_mode

__version__ = "0.1.0"

__all__ = [
    "LatticeSpec",
    "Scalar",
    "StateVector",
    "SuiteReport",
    "general_mode",
    "param",
    "parse_scalar",
    "parse_state",
    "rank1_lattice",
    "rank2_lattice",
    "run_suite",
]

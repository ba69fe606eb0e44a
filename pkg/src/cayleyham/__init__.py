"""Hamiltonian cycles in Cayley graphs of the imprimitive reflection groups
G(de,e,n) with their standard generating reflections."""

from .group_core import (
    EdgeLabel,
    Element,
    GroupParams,
    OrderCapError,
    ParameterError,
    R,
    S,
    T,
    T_INV,
    UnavailableGeneratorError,
    check_relations,
    identity,
    multiply,
    parameter_grid,
    rank,
    unrank,
)
from .constructions import HamCycle, build_hamiltonian, construct
from .verifier import CycleReport, brute_force_cycle, cross_check, verify_hamiltonian

__all__ = [
    "EdgeLabel",
    "Element",
    "GroupParams",
    "OrderCapError",
    "ParameterError",
    "R",
    "S",
    "T",
    "T_INV",
    "UnavailableGeneratorError",
    "check_relations",
    "identity",
    "multiply",
    "parameter_grid",
    "rank",
    "unrank",
    "HamCycle",
    "build_hamiltonian",
    "construct",
    "CycleReport",
    "brute_force_cycle",
    "cross_check",
    "verify_hamiltonian",
]

__version__ = "0.1.0"

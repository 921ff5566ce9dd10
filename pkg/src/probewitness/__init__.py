"""Thermodynamic witnesses of quantum non-demolition probing.

A system ``S`` probed by an apparatus ``A`` through a weak non-demolition
coupling, with both sharing one heat bath, ends up in a reweighted thermal
state. This package builds the model Hamiltonians, eliminates the coupling
to second order, and evaluates the formal factors, generalized and effective
temperatures, energy and temperature shifts and fidelities that witness the
probe, together with brute-force references for each.

Submodules: ``operators``, ``models``, ``fn_transform``, ``thermo``,
``dynamics``, ``oracle``, ``analysis``, ``config``, ``checks``, ``cli``.
"""
__version__ = "0.1.0"

from .analysis import analyze
from .config import Scenario, load_scenario, scenario_from_text, scenario_to_text
from .errors import ConfigError, DomainError, ProbeError, ResourceCapError
from .models import ApparatusSpec, CouplingSpec, Mode, SystemSpec, build_total_hamiltonian, self_energy
from .thermo import ThermalAnalysis

__all__ = [
    "analyze",
    "Scenario",
    "load_scenario",
    "scenario_from_text",
    "scenario_to_text",
    "ConfigError",
    "DomainError",
    "ProbeError",
    "ResourceCapError",
    "ApparatusSpec",
    "CouplingSpec",
    "Mode",
    "SystemSpec",
    "build_total_hamiltonian",
    "self_energy",
    "ThermalAnalysis",
]

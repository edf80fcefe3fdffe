"""Two-point resistance of infinite square and triangular resistor lattices with defects."""

from .errors import (
    AugmentationImpossible,
    ConvergenceFailure,
    DisconnectedNetwork,
    DomainError,
    InvalidEdit,
    LatticeError,
    NotAdjacent,
    ScenarioError,
    SingularB,
    WindowMissing,
    WindowTooSmall,
)
from .exact import ExactResistance
from .lattice import Bond, LatticeKind, Site
from .perfect import ResistanceProvider, asymptotic_r0, quadrature_oracle
from .woodbury import BondEdit, EditSet, WoodburyFactorization, build_factorization
from .topology import DefectReport, QueryCase, analyze, augment, classify_query
from .finite import FiniteNetwork, truncate_lattice
from .solver import PerturbedLattice, get_provider
from .currents import CurrentMap, bond_current, current_map

__version__ = "0.1.0"

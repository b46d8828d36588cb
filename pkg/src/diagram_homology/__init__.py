"""Exact equivariant homology, Euler classes and Lefschetz numbers for finite diagrams of spaces."""

from .chains import (
    CONSTANT,
    ISOTROPY,
    ChainComplex,
    CoefficientSystem,
    HomologyResult,
    build_chain_complex,
    chain_chi_hs,
    homology,
    induced_chain_map,
)
from .document import Document, DocumentError, document_to_json, load, loads
from .dspace import (
    DeltaComplex,
    EquivariantSelfMap,
    LabeledComplex,
    Simplex,
    euler_class,
    identity_map,
    orbit_point,
    subdivide,
    subdivide_map,
    total_space,
    validate_map,
    validate_space,
)
from .fincat import (
    FinCategory,
    FinFunctor,
    Morphism,
    NatTrans,
    colimit,
    compose_nat,
    enumerate_nat_trans,
    validate_category,
    validate_functor,
)
from .isotropy import Abelianization, IsotropyElement, IsotropyRing, MatrixOverI, hs_rank, hs_trace
from .lefschetz import LefschetzReport, invariant_orbit_report, lefschetz_number, ordinary_lefschetz, theorem_check
from .linalg import IntMatrix, smith_diagonal
from .orbits import OMorphism, Orbit, OrbitCategory, UDVector, build_orbit_category, free_orbit, validate_orbit
from .validation import ValidationError, ValidationReport

__version__ = "0.1.0"

"""Exact rational toolkit for free commutative differential graded algebras.

Sullivan models, degree-wise cohomology and Betti numbers, and Betti-level
obstructions to Sasakian structures.
"""

__version__ = "0.1.0"

from .cdga import CDGA, DifferentialError, apply_d, check_d_squared, is_minimal, sullivan_filtration, tensor
from .cohomology import (
    CohomologyTable,
    InvariantError,
    class_is_zero,
    cohomology_table,
    extract_ring,
    is_cocycle,
)
from .dsl import ParseError, parse, parse_element, render_cdga
from .elimination import BACKEND
from .graded import Element, Generator, GradedAlgebra, basis, multiply, normalize
from .linalg import RationalMatrix, SubspaceBasis, image_basis, kernel_basis, quotient_dim, rank, rref
from .obstructions import (
    BettiVector,
    c_splitting_betti,
    fatness_weight_certificate,
    gysin_betti,
    hard_lefschetz_check,
    sasaki_parity_test,
)
from .ring import BasisElement, FiniteRing
from .spaces import catalog, cpn, k_contact_pipeline, kodaira_thurston, lookup, product, sphere, torus, weinstein_example
from .sullivan import adjoin, minimal_model, sphere_bundle_model, verify_lemma_rel3

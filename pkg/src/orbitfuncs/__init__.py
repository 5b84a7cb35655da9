"""Weyl group orbit functions of the compact simple Lie groups.

Four families of special functions attached to a root system: the
invariant C sums, the alternating S sums, and — when the system has roots
of two lengths (B, C, F4, G2) — the hybrid families that alternate only
over reflections in long (or only in short) roots.  The package builds the
root systems and Weyl groups exactly, evaluates the functions numerically,
folds points into the fundamental simplex, and verifies the symbolic ring
identities and orthogonality relations behind them.
"""

from .errors import (EnumerationCapError, ExactDivisionError,
                     FactorizationError, IdentityViolationError,
                     InvalidAlgebraError, NotARootError,
                     TwoLengthsRequiredError)
from .root_system import (AlgebraType, FundamentalDomain, Root, RootSystem,
                          Subsystem, build_root_system, classify_root,
                          fundamental_domain, pairing, subsystem)
from .weyl_group import (Factorization, Orbit, SignHomomorphism, WeylElement,
                         dominant_representative, enumerate_group, factorize,
                         identity, orbit, reflection_in_root, sign,
                         sign_homomorphism, signed_orbit, simple_reflection,
                         subgroup, verify_normality)
from .exp_ring import (FAMILIES, ExpPolynomial, alternating_sum, character,
                       decompose_into_C, denominator, divide_exact,
                       family_shift, inner_constant_term, orbit_sum,
                       project_skew, transversal_split)
from .orbit_functions import (FoldResult, GridTable, OrbitFunction,
                              boundary_profile, conjugation_parity, evaluate,
                              evaluate_grid, fold_to_F, grid_points)
from .verify import (OrthogonalityReport, QuadratureSpec, SuiteConfig,
                     SuiteReport, check_orthogonality, exact_pairing,
                     integrate_over_F, orthogonality_constant, run_suite)

__version__ = "0.1.0"

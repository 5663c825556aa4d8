"""Exact-arithmetic engine for normalized generalized contact Lie algebras.

The package builds the semigroup-algebra model of a contact bracket
over exact rationals: six groups of derivation pairs, a finitely
generated exponent group, the full bracket calculus, bounded
locally-finite analysis, certificate-based isomorphism construction
with machine verification, and an independent polynomial model of the
classical odd-dimensional contact algebra for cross-validation.
"""

from .algebra import BasisKey, ContactAlgebra, Element, level, support
from .analysis import (
    OrbitReport,
    ad_orbit,
    bf_bn_report,
    classify_locfin,
    diagonal_family,
    eigen_check,
    in_center_B,
    nilpotency_bound,
    pi_map,
)
from .classical_oracle import (
    Poly,
    VectorField,
    classical_bracket,
    compare_with_normalized,
    contact_form_multiplier,
    dk_map,
    verify_dk_homomorphism,
    vf_bracket,
)
from .errors import (
    AlreadyNormalizedError,
    ArityError,
    CertificateError,
    ConfigMismatchError,
    ContactLieError,
    EmptyLayoutError,
    GammaMismatchError,
    IndexRangeError,
    LayoutMismatchError,
    NotA1Error,
    NotInGammaError,
    RootNotRationalError,
)
from .indexing import (
    Layout,
    bar,
    build_scheme,
    derivation_kind,
    pair_kinds,
    sigma_vector,
    theta_alpha,
    theta_weight,
    vec_add,
    vec_neg,
    vec_scale,
    vec_sub,
    vec_unit,
    vec_zero,
)
from .isomorphism import (
    AutomorphismG,
    Character,
    ThetaMap,
    build_theta,
    compare_invariants,
    extend_character,
    invariant_summary,
    normalize_sigma0,
    tau_apply,
    tau_matrix,
    theta_with_character,
    validate_automorphism,
    verify_homomorphism,
)
from .lattice import AlgebraConfig, GroupLattice, standard_config, validate_config
from .report import Report

__all__ = [name for name in dir() if not name.startswith("_")]

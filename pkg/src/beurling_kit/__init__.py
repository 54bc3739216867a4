"""Weighted Fourier-algebra computations over finite groups.

Exact finite-dimensional models of the group von Neumann algebra: weight
inverses and their 2-cocycles, the twisted predual product, Gelfand
spectra certified by a quadratic-system probe, and the classification of
partial weight inverses by finite subgroups.
"""

from .algebra import (
    AFunction,
    AlgElement,
    NotInAlgebraError,
    ag_norm,
    antipode,
    coproduct,
    duality_pair,
    embed,
    fundamental_w,
    haar_trace,
    hadamard,
    identity_element,
    lam,
    module_action,
    project,
    subgroup_projection,
)
from .catalog import catalog_weights, resolve_weight
from .classify import (
    GroupLikeProjection,
    PartialWeightDecomposition,
    decompose,
    grouplike_projection_check,
    hadamard_inequalities,
    predual_weight_check,
    subgroup_from_projection,
    synthesize,
    verify_partial,
)
from .groups import (
    FiniteGroup,
    GroupTableError,
    Subgroup,
    enumerate_subgroups,
    group_check,
    load_cayley,
    make_group,
)
from .linalg import Tolerance, hermitian_eig, pinv, polar_complete, psd_leq
from .spectrum import (
    SpectrumPoint,
    SpectrumReport,
    antipode_invariant,
    candidates,
    completeness_probe,
    grouplike_solve,
    verify_point,
)
from .twisted import TwistedAlgebra, cocycle_symmetry_check, lambda_omega, omega_product, weighted_norm
from .weights import (
    DualWeightFunction,
    WeightInverse,
    build_cocycle,
    central_weight,
    extend_from_subgroup,
    loewner_power,
    polar_weight,
    verify_weight_inverse,
    weight_equivalence,
    weight_from_dual_function,
    weight_inverse,
)

__version__ = "0.1.0"

"""cliffspin: a Clifford algebra engine Cl(p,q) with spacetime-algebra
spinor calculus, covariant identity verification, and cross-validated
formulations of the Dirac equation on plane waves."""

__version__ = "0.1.0"

from .classify import (
    IdealDescriptor,
    MatrixAlgebraDescriptor,
    classify,
    center_dim,
    division_ring_of,
    find_primitive_idempotent,
    ideal_basis,
    ideal_dim_over_K,
    idempotent_factor_count,
    is_primitive,
    is_simple,
    orthogonal_idempotent_expansion,
    radon_hurwitz,
)
from .dirac import (
    ConstantPotential,
    PlaneWaveDHSF,
    asf_residual,
    both_gauge,
    dhe_residual,
    left_gauge,
    matrix_column_at,
    matrix_dirac_residual,
    planewave_solution,
    right_gauge,
    spin_dirac_apply,
    spin_dirac_apply_fd,
    zero_potential,
)
from .groups import (
    Rotor,
    SpinorialFrame,
    VectorFrame,
    adjoint,
    fiducial_frame,
    fiducial_spinorial_frame,
    frame_right_action,
    is_clifford_group,
    is_pin,
    is_spin,
    is_spin_e,
    lorentz_matrix_of,
    random_rotor,
    rotor_between,
    spinorial_frame_of,
    twisted_adjoint,
    vector_frame_of,
)
from .matrixrep import (
    GammaRep,
    build_r41,
    cds_equivalent,
    column_of,
    complex_idempotent_f,
    dhs_matrix,
    embed_j,
    matrix_of,
    s_of_rotor,
    standard_gammas,
)
from .multivector import (
    Multivector,
    NonInvertibleError,
    Signature,
    SignatureMismatchError,
    conjugation,
    exp_bivector,
    geometric_product,
    grade_involution,
    grade_part,
    hodge_dual,
    inverse,
    left_contraction,
    norm_N,
    reversion,
    right_contraction,
    scalar_product,
    wedge,
)
from .serialization import (
    format_multivector,
    from_json,
    from_json_dict,
    parse_multivector,
    to_json,
    to_json_dict,
)
from .spinors import (
    ASRep,
    BilinearCovariants,
    CanonicalFactors,
    DHSRep,
    SingularSpinorError,
    as_from_dhs,
    bilinear_covariants,
    canonical_decompose,
    canonical_reconstruct,
    change_frame,
    dhs_from_as,
    fierz_residuals,
    fierz_variant_report,
    mother_spinor_assemble,
    mother_spinor_expand,
    random_regular_spinor,
    recover_from_covariants,
)

"""Exact lattice-theoretic, modular-group and Picard-Fuchs computations for
the degree-12 K3 mirror family: discriminant kernels, Fourier-Mukai partner
counts, monodromy generators and their glue-extension dichotomy, and the
period equation with its mirror map."""

from .discriminant import (
    DiscriminantGroup,
    GlueData,
    construct_mirror_embedding,
    cyclic_disc_isometry_count,
    discriminant_group,
    glue_extends,
    in_kernel_star,
    induced_disc_action,
)
from .lattices import (
    IntLattice,
    Isometry,
    bilinear,
    direct_sum,
    hyperbolic_extension,
    is_isometry,
    make_standard,
    orientation_sign_positive,
    signature,
)
from .modular import (
    FracLinear,
    F_map,
    R_map,
    SOMatrix,
    compose,
    fm_partner_count,
    fricke,
    gamma0_plus_generators,
    monodromy_generators,
    monodromy_index,
    translation,
    verify_degree12,
)
from .mukai import (
    Iota2,
    MukaiVector,
    NSContext,
    ReflectCurve,
    Shift,
    Switch,
    Tensor,
    Twist,
    apply_action,
    mirror_period,
    mirror_period_ambient,
    mukai_pairing,
    normalize_mukai_vector,
    rank_one_context,
    reflect_curve,
    ring_mul,
)
from .picard_fuchs import (
    MirrorMap,
    MonodromyResult,
    ToleranceNotMet,
    apply_operator,
    frobenius_basis,
    mirror_map,
    numeric_monodromy,
    pf_operator,
    pi_series,
    pi_series_by_recurrence,
    schwarzian_check,
    standard_form_check,
)
from .series import LogSeries, RationalSeries

__version__ = "0.1.0"

"""Exact computer algebra for affine supervarieties.

Decides smoothness of closed points, computes super dimensions and local
Hilbert tables, inverts supermatrices and takes Berezinians, and builds
the classical supergroup presentations, all over the exact field Q(i).
"""

from .errors import (
    BadDims,
    BadForm,
    DimensionMismatch,
    DuplicateVariable,
    IndexOutOfRange,
    KernelError,
    MissingPoint,
    MixedParityGenerator,
    MixedTables,
    NotInvertible,
    OrderTooSmall,
    ParityViolation,
    ParseError,
    PointNotOnVariety,
    TooManyOddVariables,
    UndecidableUnits,
    UnknownVariable,
)
from .scalars import QI
from .superpoly import (
    ClosedPoint,
    Presentation,
    SuperMonomial,
    SuperPolynomial,
    VarTable,
    poly_to_string,
    reduce_even,
    term,
)
from .supercalc import (
    NumericBlockMatrix,
    SuperRank,
    jacobian_at,
    partial_even,
    partial_odd,
    super_rank,
)
from .localgeom import (
    SmoothnessVerdict,
    SuperDim,
    TruncatedLocalRing,
    VerdictKind,
    default_truncation_order,
    free_model_hilbert,
    hilbert_function,
    local_membership,
    minimal_generator_count,
    point_on_variety,
    smooth_test,
    tangent_dim,
    truncated_quotient,
)
from .supermatrix import (
    SuperMatrix,
    berezinian,
    inverse,
    invert_even_unit,
    is_invertible,
    matmul,
)
from .supergroups import (
    ActionPresentation,
    FormFlavor,
    GroupPresentation,
    berezinian_scaling_action,
    form_stabilizer_presentation,
    generic_berezinian,
    gl_presentation,
    lie_superdim,
    sl_presentation,
    stabilizer_ideal,
    standard_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]

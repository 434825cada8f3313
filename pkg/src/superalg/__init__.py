"""superalg: exact Grassmann-algebra machinery for super-representation checks."""

from ._backend import BACKEND
from .scalars import (
    CF64,
    CRATIONAL,
    F64,
    RATIONAL,
    RINGS,
    ComplexRational,
    one_or_i,
    one_or_minus_i,
)
from .grassmann import EVEN, ODD, GrassmannElement, epsilon_sign, indices_of, mask_of
from .supermatrix import SuperMatrix, berezinian, grassmann_det, pi_berezinian
from .berezin import (
    FiberSplit,
    OddSubstitution,
    berezin_integral,
    change_of_variables_residual,
    fiber_jacobian_piber,
    substitute_odd,
)
from .liealg import (
    LieElement,
    MatrixRep,
    SeriesSpec,
    SuperLieAlgebra,
    ad_matrix,
    bch_truncated,
    bracket,
    delta_function,
    invariant_vf_blocks,
    s_matrix,
    separate_even_odd,
    separation_terms,
    series_of_ad,
)
from .hilbert import (
    FnElement,
    FnSpace,
    LinearOp,
    ProtoSuperHilbert,
    check_graded_skew,
    check_graded_symmetric,
    check_shs_equivalence,
    extend_form_to_A,
)

__all__ = [
    "BACKEND",
    "FnElement",
    "FnSpace",
    "LieElement",
    "LinearOp",
    "MatrixRep",
    "ProtoSuperHilbert",
    "SeriesSpec",
    "SuperLieAlgebra",
    "ad_matrix",
    "bch_truncated",
    "bracket",
    "check_graded_skew",
    "check_graded_symmetric",
    "check_shs_equivalence",
    "delta_function",
    "extend_form_to_A",
    "invariant_vf_blocks",
    "s_matrix",
    "separate_even_odd",
    "separation_terms",
    "series_of_ad",
    "CF64",
    "CRATIONAL",
    "F64",
    "RATIONAL",
    "RINGS",
    "ComplexRational",
    "EVEN",
    "ODD",
    "GrassmannElement",
    "SuperMatrix",
    "FiberSplit",
    "OddSubstitution",
    "berezin_integral",
    "berezinian",
    "change_of_variables_residual",
    "epsilon_sign",
    "fiber_jacobian_piber",
    "grassmann_det",
    "indices_of",
    "mask_of",
    "one_or_i",
    "one_or_minus_i",
    "pi_berezinian",
    "substitute_odd",
]

__version__ = "0.1.0"

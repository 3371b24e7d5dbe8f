"""Extension operators, projections and cosine families for diffusions with a membrane.

The package works on functions sampled on a symmetric uniform grid:

* :mod:`snapout.function_space` -- sampled function types and structural operators
* :mod:`snapout.kernels` -- exact exponential-kernel quadrature
* :mod:`snapout.extensions` -- extension operators and subspace membership
* :mod:`snapout.projections` -- complementary projections
* :mod:`snapout.evolution` -- cosine families, heat semigroups, interface residuals
* :mod:`snapout.scaling` -- ladders in the permeability scale
"""

from .errors import (
    DegenerateMembrane,
    GridMismatch,
    GridTooCoarse,
    JumpAtZero,
    NonPositiveGamma,
    NonPositiveLambda,
    NonPositiveTime,
    OppositeValuesViolated,
    ResolutionGuard,
    SnapoutError,
)
from .evolution import (
    EvolutionKind,
    cosine_basic,
    cosine_evolve,
    cosine_pair,
    generator_residual,
    semigroup_evolve,
    transmission_residual,
)
from .extensions import (
    MembershipReport,
    SubspaceKind,
    extend_perp,
    extend_skew,
    extend_snapping,
    extend_weks,
    membership,
)
from .function_space import (
    EPS_ALG,
    FunctionPair,
    Grid,
    LineFunction,
    MembraneParams,
    SharpFunction,
    eps_disc,
    flip_J,
    flip_J_inv,
    flip_Jpair,
    matrix_apply,
    parity_parts,
    reflect,
    restrict,
    sup_norm,
)
from .kernels import (
    dirac_limit_residual,
    exp_convolve,
    improper_left,
    improper_right,
    laplace_at,
)
from .projections import (
    ProjectionInputs,
    project_C,
    project_C_skew,
    project_D,
    project_D_weks,
    projection_inputs,
)
from .scaling import (
    LadderReport,
    converge_cosine,
    converge_perp,
    converge_projection,
    converge_semigroup,
)

__version__ = "0.1.0"

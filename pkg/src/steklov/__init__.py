"""Forward and inverse Steklov spectra of warped-product cylinders.

The forward path goes profile -> reduced potential -> characteristic and
Weyl functions -> 2x2 boundary blocks -> spectrum; the inverse path
recovers endpoint data of the warping function from a spectrum and probes
equivalence up to the reflection x -> 1 - x.
"""

from .asymptotics import (
    BranchPrediction,
    ExpansionCoefficients,
    decay_order_fit,
    riccati_coefficients,
    vp_prediction,
    wt_expansion,
)
from .dn_map import (
    DNBlock,
    SpectrumEntry,
    SteklovSpectrum,
    block_eigenvalues,
    counting_function,
    dn_block,
    steklov_spectrum,
)
from .errors import (
    AtCharacteristicRoot,
    BadDimension,
    BranchAmbiguity,
    ConfigError,
    DegenerateFitWarning,
    EvaluationError,
    ExpressionSyntaxError,
    FrequencyOnDirichletSpectrum,
    IllConditionedFit,
    IntegrationFailure,
    LengthMismatch,
    NonPositiveProfile,
    OrderTooHigh,
    OutOfDomain,
    RootSearchFailure,
    SteklovError,
    UsageError,
)
from .expressions import parse_expression
from .config import RunConfig, load_config, profile_from_config
from .inverse import (
    BoundaryData,
    BranchSplit,
    CompareReport,
    ProbeReport,
    TraceDetSignature,
    isospectral_compare,
    recover_boundary,
    split_branches,
    trace_det_signature,
    uniqueness_probe,
)
from .sturm_liouville import (
    FundamentalValues,
    ScaledValue,
    dirichlet_alphas,
    fundamental_at,
    hadamard_truncated,
    weyl_functions,
)
from .transversal import (
    TransversalSpectrum,
    kappa,
    multiplicity,
    transversal_spectrum,
    weyl_coefficient,
)
from .warping import (
    Potential,
    WarpingProfile,
    admissibility_check,
    build_potential,
    cb_membership,
    eval_profile,
    involute,
    make_profile,
)

__version__ = "0.1.0"

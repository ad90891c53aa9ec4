"""Spectral analysis for dense complex matrices under induced operator norms.

Computes spectra, resolvent norms, pseudospectra, numerical ranges, and
Riesz spectral projections, and certifies or refutes the norm equality
||(z - a)^{-1}|| = 1 / d(z, sigma(a)) by sampled deviation with certified
witnesses.  A two-dimensional nilpotent model algebra with exact closed
forms rides along as the oracle for everything else.
"""

from .calculus import (
    Circle,
    Contour,
    DiagonalizabilityReport,
    IsolatedPointReport,
    SpectralDecomposition,
    decomposed_funcalc,
    decomposed_resolvent,
    default_contour,
    diagonalizability_report,
    funcalc,
    riesz_projection,
    spectral_decomposition,
    verify_isolated_point,
)
from .elements import (
    AlgebraElement,
    MatrixElement,
    NilpotentAlgebraElement,
    NormKind,
    unit_like,
    zero_like,
)
from .errors import (
    ClusterNotIsolated,
    G1LabError,
    GridTooLarge,
    InvalidContour,
    NoConvergence,
    NormOverflow,
    SingularMatrix,
    SpectrumHit,
)
from .g1 import (
    G1Report,
    HermitianIdempotentTest,
    ScalarTestReport,
    certify_g1,
    deviations,
    g1_deviation,
    hermitian_idempotent_test,
    scalar_test,
)
from .numrange import (
    HullMode,
    NecessaryReport,
    NumericalRangeHull,
    check_g1_necessary,
    field_of_values,
    is_hermitian,
    numerical_radius,
    numerical_range,
    numerical_range_disks,
)
from .pseudospec import (
    GridSpec,
    InclusionReport,
    PseudospectrumField,
    default_grid,
    field_from_csv,
    field_from_json,
    field_to_csv,
    field_to_json,
    level_set_membership,
    resolvent_field,
    verify_inclusions,
)
from .spectral import (
    RadiusEstimate,
    Spectrum,
    default_cluster_tol,
    distance_to_spectrum,
    resolvent,
    resolvent_norm,
    spectral_radius_limit,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Hausdorff-convergent spectra and spectral-radius certificates for the
double-layer (Neumann-Poincare) operator on dilation-invariant Lipschitz
graphs in the plane.

The pipeline: a periodic generator describes the graph (`profiles`), the
Bloch fiber kernels are evaluated and discretized by the midpoint-rule
Nystrom method (`kernels`, `nystrom`), eigenvalue clouds approximate the
essential spectrum (`spectra`), and explicit constants plus an adaptive
resolvent walk certify that the essential spectral radius is below a
target, typically 1/2 (`bounds`, `certify`).  `numrange` produces
certified discs inside the (much larger) numerical range.
"""

from .profiles import (
    Side,
    NormTable,
    PeriodicProfile,
    Aggregates,
    DilationGraph,
    StripViolation,
    ProfileFormatError,
    strip_norms,
    aggregate_norms,
    pair_kappa,
    validate_strip,
    max_admissible_width,
    sin2_profile,
    cone_profile,
    flat_profile,
    parse_profile,
    format_profile,
    load_profile,
)
from .kernels import EPS_SING, Kernel2x2, pq, pq_off, kernel_one_sided, kernel_two_sided
from .bounds import (
    StripValidationError,
    tail_b,
    tail_b_star,
    tail_c,
    tail_c_star,
    OneSidedStripBounds,
    TwoSidedStripBounds,
    strip_kernel_bounds_one_sided,
    strip_kernel_bounds_two_sided,
    c1_constant,
    c3_constant,
    CertificateConstants,
    certificate_constants,
)
from .linalg import (
    EigenSolverError,
    inf_norm,
    eigenvalues,
    resolvent_lower_norm,
    hermitian_top_eigenpair,
)
from .nystrom import (
    QuadratureGrid,
    NystromMatrix,
    KernelTable,
    assemble,
    assemble_derivative_bound,
    dump_matrix_csv,
)
from .spectra import (
    SpectrumCloud,
    spectrum_approx,
    radius,
    synthesize,
    union_clouds,
    hausdorff,
    cone_exact_spectrum,
    cone_exact_radius,
    cloud_to_csv,
)
from .certify import (
    WalkTrace,
    PerT,
    Certificate,
    SynthesisCertificate,
    CornerParams,
    resolvent_walk,
    certify,
    certify_synthesized,
    generic_compact_criterion,
    CERTIFIED,
    INCONCLUSIVE,
)
from .numrange import (
    NumRangePolygon,
    InscribedDisc,
    HalfGraphNumRange,
    restricted_matrix,
    johnson_polygon,
    inscribed_radius,
    c7_constant,
    graph_inscribed_disc,
    polygon_to_csv,
)

__version__ = "0.1.0"

"""Rational circle homeomorphisms, Blaschke quotients and starlike circle embeddings."""
from .blaschke import (
    BlaschkeProduct,
    HomotopyPath,
    RationalCircleMap,
    eval_blaschke,
    eval_quotient,
    homotopy_samples,
    scale_zeros,
)
from .fourier import (
    FourierSpectrum,
    SampledCircleMap,
    harmonic_extension,
    sample_map,
    spectrum,
    support_profile,
    wirtinger,
)
from .geometry import (
    EmbeddingReport,
    StarlikeProfile,
    antipodal_balance_point,
    argument_monotone,
    embedding_report,
    factorization_identity_residual,
    nevanlinna_residual,
    random_starlike_embedding,
    starlike_about,
)
from .poisson import (
    CriterionReport,
    Verdict,
    criterion_check,
    degree2_real_characterization,
    necessity_aligned_zeros,
    poisson_kernel,
    semigroup_residual,
    sufficient_first_kind,
    sufficient_second_kind,
)

__version__ = "0.1.0"

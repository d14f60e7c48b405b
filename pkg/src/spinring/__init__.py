"""spinring: transverse-field Ising rings, their Svetlichny nonlocality and
tripartite entanglement, and an emulation of a photonic noise model."""

__version__ = "0.1.0"

from .errors import ConfigError, DomainError
from .linalg import (
    DEFAULT_TOLS,
    EigenResult,
    Tolerances,
    dagger,
    hermitian_eig,
    outer,
    partial_trace,
    partial_transpose,
    pauli,
    require_density,
    require_state,
    tensor,
)
from .ising import (
    GroundState,
    RingSpec,
    a0_of_beta,
    analytic_ground_state_n3,
    beta_of_a0,
    build_hamiltonian,
    ground_state,
)
from .correlations import (
    DEFAULT_ANGLES,
    S3_MAX,
    MeasurementSetting,
    SvetlichnyAngles,
    derivative_s3,
    expectation,
    measurement_observable,
    mermin_correlator_E,
    optimize_svetlichny_angles,
    svetlichny_from_mermin,
    svetlichny_s3,
    witness_pauli_decomposition_check,
    witness_w2,
)
from .entanglement import (
    ALL_CUTS,
    BipartitionLabel,
    a0_from_s3,
    concurrence,
    infer_beta_from_measured_s3,
    n3_from_s3,
    negativity,
    tau3_from_s3,
    three_tangle_pure,
    tripartite_negativity,
)
from .photonics import (
    DEFAULT_NOISE,
    DEFAULT_SOURCE,
    SVETLICHNY_SETTINGS,
    CountRecord,
    NoiseModel,
    SourceParams,
    a0_of_alpha,
    alpha_of_a0,
    derive_seed,
    estimate_with_errors,
    experimental_state,
    measurement_probabilities,
    outcome_signs,
    p_of_beta,
    rsnr_of_p,
    simulate_counts,
    werner,
)

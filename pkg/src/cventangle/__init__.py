"""Continuous-variable entanglement detection and estimation.

Evaluates a two-parameter family of entanglement witnesses and the SWAP
witness, computes the Gaussian realignment criterion through symplectic
spectra, classifies a family of 2+2-mode bound entangled Gaussian states, and
derives lower bounds on entanglement measures - cross-validated against a
truncated Fock-space brute-force oracle.
"""

from .bounds import (
    BoundReport,
    binary_entropy,
    bound_report,
    concurrence_lower_bound,
    cren_lower_bound,
    eof_lower_bound,
    tangle_lower_bound,
)
from .errors import (
    ConvergenceError,
    CVEntangleError,
    InvalidArgumentError,
    NumericDomainError,
    SingularInputError,
    SingularLimitError,
    SpectralDomainError,
    TruncationError,
)
from .fock import (
    FockDensityMatrix,
    coherent_mixture_fock,
    covariance_from_fock,
    load_fock,
    negativity_fock,
    photon_added_sts_fock,
    realignment_trace_norm_fock,
    save_fock,
    squeezed_thermal_fock,
    tmsv_fock,
    witness_fock,
)
from .realignment import (
    RealignmentResult,
    TwoTwoClassification,
    classify_two_two,
    realigned_gram_covariance,
    realignment_norm,
    realignment_norm_two_mode,
    realignment_norm_two_two,
)
from .states import (
    CoherentMixture,
    PhotonAddedSqueezedThermal,
    TwoModeStandardForm,
    TwoTwoFamilyParams,
    WignerSpec,
    family_threshold,
    parse_state_descriptor,
    photon_added_sts_wigner,
    squeezed_thermal_params,
    standard_two_mode,
    state_descriptor,
    tmsv_params,
    two_two_family,
)
from .symplectic import (
    CovarianceMatrix,
    WilliamsonSpectrum,
    is_physical,
    is_ppt,
    partial_transpose,
    symplectic_eigenvalues,
    symplectic_form,
)
from .witness import (
    OptimalWitness,
    QuadratureConfig,
    WitnessParams,
    detects_entanglement,
    optimal_witness,
    swap_expectation,
    swap_expectation_coherent_mixture,
    witness_expectation_gaussian,
    witness_expectation_wigner,
    witness_photon_added_closed,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CVEntangleError",
    "CoherentMixture",
    "ConvergenceError",
    "CovarianceMatrix",
    "FockDensityMatrix",
    "InvalidArgumentError",
    "NumericDomainError",
    "OptimalWitness",
    "PhotonAddedSqueezedThermal",
    "QuadratureConfig",
    "RealignmentResult",
    "SingularInputError",
    "SingularLimitError",
    "SpectralDomainError",
    "TruncationError",
    "TwoModeStandardForm",
    "TwoTwoClassification",
    "TwoTwoFamilyParams",
    "WignerSpec",
    "WilliamsonSpectrum",
    "WitnessParams",
    "binary_entropy",
    "bound_report",
    "classify_two_two",
    "coherent_mixture_fock",
    "concurrence_lower_bound",
    "covariance_from_fock",
    "cren_lower_bound",
    "detects_entanglement",
    "eof_lower_bound",
    "family_threshold",
    "is_physical",
    "is_ppt",
    "load_fock",
    "negativity_fock",
    "optimal_witness",
    "parse_state_descriptor",
    "partial_transpose",
    "photon_added_sts_fock",
    "photon_added_sts_wigner",
    "realigned_gram_covariance",
    "realignment_norm",
    "realignment_norm_two_mode",
    "realignment_norm_two_two",
    "realignment_trace_norm_fock",
    "save_fock",
    "squeezed_thermal_fock",
    "squeezed_thermal_params",
    "standard_two_mode",
    "state_descriptor",
    "swap_expectation",
    "swap_expectation_coherent_mixture",
    "symplectic_eigenvalues",
    "symplectic_form",
    "tangle_lower_bound",
    "tmsv_fock",
    "tmsv_params",
    "two_two_family",
    "witness_expectation_gaussian",
    "witness_expectation_wigner",
    "witness_fock",
    "witness_photon_added_closed",
]

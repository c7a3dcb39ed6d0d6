"""Scattering half of the package: inverted-oscillator far fields,
chain quantization, the one-channel determinant, and the Kronig-Penney
band machinery with its transfer-matrix cross-check."""

from .iho import (
    AsymptoticFit,
    IHOSolution,
    WPhaseReport,
    fit_asymptotic,
    integrate_iho,
    verify_w_phase,
    w_initial_conditions,
)
from .krein import (
    QuantizationProblem,
    analytic_phase,
    det_root_index,
    kkr_det,
    kkr_det_roots,
    krein_quantization,
    physical_t_matrix,
    quantization_residual,
)
from .kronig import (
    BandStructure,
    KronigPenneyParams,
    band_count_integrated_dos,
    band_deviation,
    free_band_energy,
    kp_band_energy,
    kp_bands,
    kp_det,
    lloyd_integrated_dos,
    tm_band_energy,
    transfer_matrix_half_trace,
)

__all__ = [
    "AsymptoticFit",
    "IHOSolution",
    "WPhaseReport",
    "fit_asymptotic",
    "integrate_iho",
    "verify_w_phase",
    "w_initial_conditions",
    "QuantizationProblem",
    "analytic_phase",
    "det_root_index",
    "kkr_det",
    "kkr_det_roots",
    "krein_quantization",
    "physical_t_matrix",
    "quantization_residual",
    "BandStructure",
    "KronigPenneyParams",
    "band_count_integrated_dos",
    "band_deviation",
    "free_band_energy",
    "kp_band_energy",
    "kp_bands",
    "kp_det",
    "lloyd_integrated_dos",
    "tm_band_energy",
    "transfer_matrix_half_trace",
]

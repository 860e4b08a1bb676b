"""Isospectral-twirled probes of quantum chaos over Haar, Clifford and
T-doped Clifford ensembles, with closed-form GDE/GUE/Toric spectral averages
and a dense Monte-Carlo oracle."""

from .spectral import (FormFactors, Spectrum, sff_explicit, sff_clifford_cb,
                       gde_averages, gue_averages, envelope_times)
from .hamiltonians import CBHamiltonian, ToricCode, cb_spectrum
from .probes import (EnsembleSpec, PROBE_KINDS, evaluate, closed_form,
                     tripartite_bound, reassembly_report)
from .twirl import (MomentCoeffs, XiMatrix, c_vector, q_vector_stabilizer,
                    haar_moment4, clifford_moment4, doped_moment4, xi_matrix,
                    xi_eigenvalues)

__all__ = [
    "FormFactors", "Spectrum", "sff_explicit", "sff_clifford_cb",
    "gde_averages", "gue_averages", "envelope_times",
    "CBHamiltonian", "ToricCode", "cb_spectrum",
    "EnsembleSpec", "PROBE_KINDS", "evaluate", "closed_form",
    "tripartite_bound", "reassembly_report",
    "MomentCoeffs", "XiMatrix", "c_vector", "q_vector_stabilizer",
    "haar_moment4", "clifford_moment4", "doped_moment4", "xi_matrix",
    "xi_eigenvalues",
]

__version__ = "0.1.0"

"""MUSIC direction-of-arrival estimation on uniform and non-uniform linear arrays."""
from .geometry import (ArrayGeometry, nonuniform_progressive, steering_derivative,
                       steering_vector, uniform_linear)
from .harness import (ExperimentConfig, GeometrySpec, TrialResults, emit_csv,
                      emit_spectrum, run_experiment)
from .perturbation import PerturbationReport, delta_theta, f1, f2, theoretical_rmse
from .rmse import rmse
from .signal import (SourceScenario, analytic_covariance, generate_snapshots,
                     sample_covariance)
from .subspace import (PeakDeficitError, SpectrumGrid, SubspaceDecomposition,
                       eigendecompose_hermitian, estimate_doa, music_spectrum,
                       noise_subspace, null_spectrum)

__version__ = "0.1.0"

"""Matrix factor model estimation by random projection and iterative least squares.

The package fits the two-directional low-rank decomposition
``X_t = R F_t C' + E_t`` of a matrix-valued time series.  Factors are first
estimated by projecting each observation with a pair of diversified weight
matrices; loadings then come from closed-form constrained least squares, and
the two steps alternate until the common components stabilize.  One-step
variants, an eigen-analysis baseline, the simulation data generator,
subspace-distance metrics and a replication harness round out the library.
"""

from .baselines import alpha_pca_fit, varimax_criterion, varimax_rotate
from .errors import (
    BadConfigError,
    BadDimsError,
    DegenerateDenominatorError,
    DegenerateWeightsError,
    DimMismatchError,
    DuplicateCellError,
    EmptyInputError,
    MatfacError,
    MissingCellError,
    NonFiniteError,
    NonSquareError,
    NonSymmetricError,
    PanelIoError,
    PanelParseError,
    RankDeficientError,
)
from .leastsq import common_components, update_col_loading, update_row_loading
from .linalg import (
    gram_schmidt,
    kron,
    psd_pinv,
    spd_inv_sqrt,
    spd_sqrt,
    spectral_norm,
    sym_eig,
    unvec,
    vec,
)
from .metrics import (
    loading_variation,
    replication_summary,
    rolling_stats,
    space_distance,
    vec_factor_distance,
)
from .model import (
    FitResult,
    LoadingPair,
    ProjectionPair,
    SimulationTruth,
    validate_panel,
)
from .panel_io import PanelFileHeader, read_panel_csv, write_panel_csv
from .projection import estimate_factors, factor_space_errors, with_transforms
from .replication import run_grid, run_replication
from .rolling import rolling_validate
from .rpils import RpilsConfig, one_step_fit, rpils_fit
from .simulate import SimConfig, error_covariances, scenario_grid, simulate_panel
from .weights import gaussian_weights, hadamard_weights, make_projection_pair

__version__ = "0.1.0"

__all__ = [
    "alpha_pca_fit",
    "common_components",
    "error_covariances",
    "estimate_factors",
    "factor_space_errors",
    "gaussian_weights",
    "gram_schmidt",
    "hadamard_weights",
    "kron",
    "loading_variation",
    "make_projection_pair",
    "one_step_fit",
    "psd_pinv",
    "read_panel_csv",
    "replication_summary",
    "rolling_stats",
    "rolling_validate",
    "rpils_fit",
    "run_grid",
    "run_replication",
    "scenario_grid",
    "simulate_panel",
    "space_distance",
    "spd_inv_sqrt",
    "spd_sqrt",
    "spectral_norm",
    "sym_eig",
    "unvec",
    "update_col_loading",
    "update_row_loading",
    "validate_panel",
    "varimax_criterion",
    "varimax_rotate",
    "vec",
    "vec_factor_distance",
    "with_transforms",
    "write_panel_csv",
    "FitResult",
    "LoadingPair",
    "PanelFileHeader",
    "ProjectionPair",
    "RpilsConfig",
    "SimConfig",
    "SimulationTruth",
    "MatfacError",
    "BadConfigError",
    "BadDimsError",
    "DegenerateDenominatorError",
    "DegenerateWeightsError",
    "DimMismatchError",
    "DuplicateCellError",
    "EmptyInputError",
    "MissingCellError",
    "NonFiniteError",
    "NonSquareError",
    "NonSymmetricError",
    "PanelIoError",
    "PanelParseError",
    "RankDeficientError",
]

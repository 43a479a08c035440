"""Global quantum discord and von Neumann entropy of N two-level atoms in a Fock-state cavity."""

__version__ = "0.1.0"

from .model import (  # noqa: E402
    DensityMatrix,
    InitialStateParams,
    InvalidStateError,
    NumericalError,
    SectorBasis,
    StateKind,
    SystemConfig,
    build_basis,
    initial_state,
)
from .hamiltonian import (  # noqa: E402
    HamiltonianMatrix,
    Spectrum,
    ValidationReport,
    build_hamiltonian,
    eigendecompose,
    validate_against_appendix,
)
from .dynamics import (  # noqa: E402
    EvolutionKernel,
    TimeSeries,
    check_master_equation,
    evolve,
    purity,
    reduce_to_qubit,
    time_grid,
    trace_out_field,
)
from .correlations import (  # noqa: E402
    GqdResult,
    MeasurementFrame,
    OptimizerOptions,
    gqd_objective,
    gqd_relative_entropy_form,
    measured_diagonals,
    minimize_gqd,
    rotation_matrix,
    von_neumann_entropy,
)
from .analysis import (  # noqa: E402
    FitResult,
    PeakSet,
    find_peaks,
    max_quantifier,
    polyfit,
    revival_rate,
    revival_shift,
    slope_gqd_vs_vne,
)
from .experiment import (  # noqa: E402
    ConfigError,
    ExperimentConfig,
    Trajectory,
    get_preset,
    list_presets,
    load_config,
    run_experiment,
    simulate,
)

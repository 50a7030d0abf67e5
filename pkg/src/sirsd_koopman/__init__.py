"""Normalized SIRSD epidemic simulation with Koopman surrogate models.

The package simulates the four-compartment dynamics with a
positivity-preserving scheme, lifts trajectories through observable
dictionaries, fits linear operators by least squares, and validates
free-run predictions against the ground truth for four disease presets.
"""

from .edmd import (
    DEFAULT_SVD_TOL,
    ErrorStats,
    KoopmanModel,
    SnapshotMatrices,
    build_snapshots,
    clamp_nonnegative,
    fit_edmd,
    free_run,
    model_json_text,
    predict,
    pseudoinverse,
    reconstruction_error,
    spectrum,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    SimplexError,
    SirsdError,
    SpectrumError,
    UnknownPresetError,
)
from .model import (
    EpidemicParams,
    DerivVec,
    StateVec,
    jacobian,
    validate_state,
    vector_field,
)
from .nsfd import (
    NsfdConfig,
    Trajectory,
    denominator_phi,
    nsfd_step,
    simulate_nsfd,
    simulate_reference,
)
from .observables import (
    Dictionary,
    LiftedVec,
    dictionary_d1,
    dictionary_d2,
    lift,
    lift_trajectory,
)
from .scenarios import (
    PRESET_NAMES,
    RunReport,
    ScenarioPreset,
    apply_overrides,
    preset,
    run_all,
    run_long_measles,
    run_pipeline,
)

__version__ = "0.1.0"

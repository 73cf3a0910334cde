"""beamctl: precise array response control.

Force a beampattern's level at chosen directions to exact prescribed values,
one direction per step, while keeping the weight vector a gain-optimal
beamformer against a virtual interference covariance.  Ships the optimal
engine, a deliberately suboptimal control baseline, and the classic
steering-vector-update baseline for comparison, plus an experiment runner,
CLI and HTTP session service.
"""

from .arrays import ArrayModel, ElementSpec, load_array_config, make_ula
from .control import (
    BetaSelection,
    CircleR2,
    ControlStepResult,
    GammaSelection,
    VcmState,
    XiQuartet,
    beta_circle,
    beta_to_gamma,
    compute_xi,
    gamma_circle,
    gamma_to_beta,
    oparc_step,
    oparc_step_variant2,
    parc_step,
    predict_beta_sign,
    reconstruct_vcm,
    select_beta,
    select_gamma,
    terminal_weight,
)
from .a2rc import A2rcState, a2rc_step, check_corollary1, implicit_inrs_update, reconstruct_implicit_vcm
from .experiments import (
    ControlSession,
    ExperimentConfig,
    SessionRecord,
    load_experiment_config,
    run_experiment,
    run_sweep,
)
from .metrics import (
    GridSpec,
    PatternGrid,
    StepMetrics,
    array_gain,
    metric_d,
    metric_j,
    normalized_response,
    sample_pattern,
)

__version__ = "0.1.0"

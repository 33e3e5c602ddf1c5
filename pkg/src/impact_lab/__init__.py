"""Hybrid mechanics lab for a bouncing disk with symmetry-breaking,
controlled impacts."""

__version__ = "0.1.0"

from .cycles import CycleReport, limit_cycle_study, section_distance
from .executor import (
    Apex,
    ControlSchedule,
    FixedTime,
    HybridTrajectory,
    ImpactEvent,
    Termination,
    rolling_impact,
    run_schedule,
    run_surface,
    trajectory_to_csv,
)
from .flight import (
    DEFAULT_T_MIN,
    FlightArc,
    propagate,
    time_to_impact,
    time_to_impact_oracle,
)
from .impacts import (
    ImpactError,
    ImpactOutcome,
    NoElasticSolutionError,
    NotImpactingError,
    impact_equation_solve,
    rolling_reset,
    rolling_reset_flat,
    slippery_reset,
)
from .model import (
    BallParams,
    BallState,
    EnergyBreakdown,
    Parabola,
    Plane,
    Surface,
    TableConfig,
    energy,
    guard_rate,
    guard_value,
    local_contact_frame,
    momenta,
    rotate_frame,
    uniform_disk,
)
from .shooting import (
    ErrorWeights,
    ShootingResult,
    SolverConfig,
    SplitMix64,
    TargetSpec,
    derive_seed,
    error_function,
    refine,
    search,
    simulate_controls,
    solve,
)
from .svgplot import render_polar_svg, render_trajectory_svg
from .sweep import SweepCell, SweepGrid, run_sweep, sweep_to_csv
from .symmetry import (
    SymmetryReport,
    audit_trajectory,
    mechanical_connection,
    momentum_map,
    report_to_csv,
)

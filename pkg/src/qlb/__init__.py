"""Quantum lattice Boltzmann scheme for the 1+1D nonlinear Dirac equation."""
from . import kernels
from .kernels import available_backends, use_backend
from .lattice import (
    Grid,
    InitialData,
    ModelParams,
    SpinorField,
    charge,
    g_bilinear,
    l2_distance_pc,
    read_snapshot,
    sample_initial,
    shift_field,
    write_snapshot,
)
from .stepper import (
    ForcingLevel,
    InvariantViolation,
    NodeSystem,
    StepReport,
    Trajectory,
    build_node_system,
    evolve,
    run_trajectory,
    solve_node,
    step_forced,
    step_homogeneous,
)
from .functionals import (
    FunctionalTrace,
    SolutionPair,
    TriangleDomain,
    bony_lemma_check,
    glimm_trace,
    pointwise_bound_check,
    triangle_balance,
)
from .harness import (
    ConvergenceTable,
    SmoothPair,
    StudyConfig,
    characteristic_residual,
    consistency_study,
    discrete_residual,
    self_convergence_study,
    shift_stability_study,
)

__version__ = "0.1.0"

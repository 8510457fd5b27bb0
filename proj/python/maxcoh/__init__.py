"""Maximal-coherence frequency conversion: closed forms, oracles and grids."""

from ._core import (
    AtomicParams,
    ConfigError,
    ConvergenceError,
    Convention,
    DomainError,
    DressedState,
    Error,
    ExactSolution,
    ExperimentConfig,
    PropagationCoefficients,
    ReducedProblem,
    ReducedQuadrature,
    Regime,
    RegimeBoundary,
    RegimeMismatch,
    SingularConfiguration,
    closed_form,
    complete_K,
    dressed_state,
    efficiency_curve,
    exact_roots,
    expansion_defect,
    figure_atoms,
    figure_preset,
    grid_simulate,
    incomplete_F,
    incomplete_Pi,
    jacobi_sn_cn,
    kr_preset,
    plateau_distance,
    plateau_value,
    preset_names,
    roots,
    run_cli,
    selftest,
    solve,
    solve_cubic,
)

__all__ = [name for name in dir() if not name.startswith("_")]

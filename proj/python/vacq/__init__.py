"""Matrix-analytic solver and analysis toolkit for multi-phase
working-vacation queues.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from vacq._core import (
    BlockSet,
    CrossoverResult,
    CubicKind,
    IllConditionedError,
    NegativeMassError,
    NonConvergenceError,
    PointStatus,
    RankDeficiencyError,
    RateGapAnalysis,
    RateMatrixSolution,
    SimulationEstimate,
    StabilityProfile,
    StateLabel,
    StationarySolution,
    SweepPoint,
    TruncatedSolveResult,
    UnstableError,
    VacationModel,
    analyze_rate_gap_4ph,
    build_blocks,
    critical_arrival_rate,
    expected_customers_block_indexed,
    expected_customers_exact,
    find_crossover_k1,
    make_grid,
    mean_rate_gap_4ph,
    mm1_expected_customers,
    simulate,
    solve_boundary,
    solve_rate_matrix,
    spectral_radius,
    stability_polynomial_5ph,
    stability_profile,
    sweep_rho,
    sweep_surface,
    transient_states,
    truncated_direct_solve,
)

__all__ = [
    "BlockSet",
    "CrossoverResult",
    "CubicKind",
    "IllConditionedError",
    "NegativeMassError",
    "NonConvergenceError",
    "PointStatus",
    "RankDeficiencyError",
    "RateGapAnalysis",
    "RateMatrixSolution",
    "SimulationEstimate",
    "StabilityProfile",
    "StateLabel",
    "StationarySolution",
    "SweepPoint",
    "TruncatedSolveResult",
    "UnstableError",
    "VacationModel",
    "analyze_rate_gap_4ph",
    "build_blocks",
    "critical_arrival_rate",
    "expected_customers_block_indexed",
    "expected_customers_exact",
    "find_crossover_k1",
    "make_grid",
    "mean_rate_gap_4ph",
    "mm1_expected_customers",
    "simulate",
    "solve_boundary",
    "solve_rate_matrix",
    "spectral_radius",
    "stability_polynomial_5ph",
    "stability_profile",
    "sweep_rho",
    "sweep_surface",
    "transient_states",
    "truncated_direct_solve",
]

__version__ = "0.1.0"

def solve(model):
    """End-to-end stationary solve: blocks -> rate matrix -> boundary."""
    blocks = build_blocks(model)
    return solve_boundary(blocks, solve_rate_matrix(blocks))

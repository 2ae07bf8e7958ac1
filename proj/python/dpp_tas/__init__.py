"""Double porosity/permeability finite element solvers with block preconditioners."""

from ._dpp_tas import (
    CellKind,
    Formulation,
    Parameters,
    assemble,
    convergence_slope,
    describe_options,
    doa,
    doe,
    dof_count,
    dos,
    emit_plots,
    eta,
    mesh_info,
    method_options,
    parallel_efficiency,
    run_case,
    run_experiment,
    solve,
)

__all__ = [
    "CellKind",
    "Formulation",
    "Parameters",
    "assemble",
    "convergence_slope",
    "describe_options",
    "doa",
    "doe",
    "dof_count",
    "dos",
    "emit_plots",
    "eta",
    "mesh_info",
    "method_options",
    "parallel_efficiency",
    "run_case",
    "run_experiment",
    "solve",
]

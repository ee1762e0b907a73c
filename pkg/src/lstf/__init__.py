"""Locally suppressed transverse-field (LSTF) diabatic annealing toolkit."""

from .benchmark import (
    GraphFamily,
    HeuristicReport,
    classify,
    draw_fields,
    generate_graph_family,
    run_campaign,
    run_heuristic,
)
from .closed_dynamics import (
    AnnealResult,
    AnnealRun,
    energy_residual,
    evolve_schrodinger,
    evolve_von_neumann,
    success_probability,
    time_to_solution,
)
from .instances import reference_instance
from .open_dynamics import (
    BathSpec,
    CouplingSpec,
    build_lindblads,
    eigenstate_populations,
    evolve_ame,
    frustration_sweep,
    spectral_density,
)
from .problems import (
    IsingProblem,
    TwoQubitFrustratedInstance,
    build_two_qubit,
    classical_energies,
    ground_energy,
)
from .schedules import SchedulePlan, aqa_plan, breakpoints, lstf_plan
from .semiclassical import (
    MinimaLine,
    PotentialGrid,
    find_local_minima,
    line_profile,
    minima_line,
    minima_trace,
    potential,
    potential_grid,
    tracenorm_distance,
)
from .spectrum import (
    SpectrumTrace,
    eigensystem,
    find_s_plus,
    hamiltonian_at,
    max_slope_location,
    trace_spectrum,
)

__version__ = "0.1.0"

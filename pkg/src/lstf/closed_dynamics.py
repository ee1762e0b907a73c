"""Closed-system anneal dynamics.

Integrates i d|psi>/dt = 2*pi*H(t/t_an)|psi> (H in GHz, t in ns) with an
adaptive embedded Runge-Kutta pair, stepping each schedule segment
separately so the integrator never straddles the kink at s_x.  The von
Neumann variant evolves the density matrix of the same Hamiltonian and
must agree with the pure-state solver for pure initial conditions.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .problems import ground_energy, ground_state_indices
from .schedules import breakpoints, coupler_coeff, driver_coeff, problem_coeff
from .spectrum import DEGENERACY_REL_TOL, eigensystem, hamiltonian_at
from .units import TWO_PI


class IntegrationError(RuntimeError):
    """Adaptive integrator failed to reach the requested tolerance."""


@dataclass(frozen=True)
class AnnealRun:
    """One anneal: problem, plan, duration t_an in ns, solver tolerances.

    The default tolerance 1e-10 keeps the norm drift of the longest
    acceptance runs below 1e-8.
    """

    problem: object
    plan: object
    t_an: float
    rtol: float = 1e-10
    atol: float = 1e-10

    def __post_init__(self):
        if not (np.isfinite(self.t_an) and self.t_an > 0):
            raise ValueError(f"t_an must be positive and finite, got {self.t_an}")


@dataclass(frozen=True)
class AnnealResult:
    """Final state (vector or density matrix) and derived figures of merit."""

    state: np.ndarray
    success_probability: float
    energy_residual: float
    tts: float
    tts_raw: float
    s_report: np.ndarray = None
    populations: np.ndarray = None


def hamiltonian_apply(problem, plan):
    """Matrix-free application psi -> H(s) psi (works on (D,) and (D, m))."""
    n = problem.n_qubits
    plan.validate_for(n)
    dim = problem.dim
    field = problem.field_diagonal()
    coupler = problem.coupler_diagonal().sum(axis=0)
    h_x = problem.h_x_array()
    flips = [np.arange(dim) ^ (1 << (n - 1 - i)) for i in range(n)]

    def apply(s, psi):
        b = np.array([problem_coeff(plan, i, s) for i in range(n)])
        diag = b @ field + coupler_coeff(plan, None, s) * coupler
        out = diag[:, None] * psi if psi.ndim == 2 else diag * psi
        for i in range(n):
            g = driver_coeff(plan, i, s) * h_x[i]
            if g != 0.0:
                out += g * psi[flips[i]]
        return out

    return apply


def initial_state(problem, plan):
    """Ground state of H(0); raises if it is degenerate."""
    w, V = eigensystem(hamiltonian_at(problem, plan, 0.0))
    if w[1] - w[0] < DEGENERACY_REL_TOL * problem.energy_scale:
        raise ValueError("initial Hamiltonian has a degenerate ground state")
    return V[:, 0]


def _integrate(run, y0, rhs):
    t_nodes = [b * run.t_an for b in breakpoints(run.plan)]
    y = y0
    for t0, t1 in zip(t_nodes[:-1], t_nodes[1:]):
        sol = solve_ivp(
            rhs,
            (t0, t1),
            y,
            method="DOP853",
            rtol=run.rtol,
            atol=run.atol,
        )
        if not sol.success:
            raise IntegrationError(
                f"integrator failed on [{t0}, {t1}] ns: {sol.message} "
                f"(nfev={sol.nfev}, last t={sol.t[-1]})"
            )
        y = sol.y[:, -1]
    return y


def evolve_schrodinger(run):
    """Evolve the pure state across the anneal; returns an AnnealResult."""
    apply_h = hamiltonian_apply(run.problem, run.plan)
    t_an = run.t_an

    def rhs(t, y):
        return -1j * TWO_PI * apply_h(min(t / t_an, 1.0), y)

    psi0 = initial_state(run.problem, run.plan).astype(complex)
    psi = _integrate(run, psi0, rhs)
    return _result_from_state(run, psi)


def evolve_von_neumann(run):
    """Evolve rho = |psi><psi| under the von Neumann equation."""
    problem = run.problem
    dim = problem.dim
    apply_h = hamiltonian_apply(problem, run.plan)
    t_an = run.t_an

    def rhs(t, y):
        rho = y.reshape(dim, dim)
        s = min(t / t_an, 1.0)
        h_rho = apply_h(s, rho)
        rho_h = apply_h(s, rho.conj().T).conj().T
        return (-1j * TWO_PI * (h_rho - rho_h)).ravel()

    psi0 = initial_state(problem, run.plan).astype(complex)
    rho0 = np.outer(psi0, psi0.conj())
    rho = _integrate(run, rho0.ravel(), rhs).reshape(dim, dim)
    return _result_from_state(run, rho)


def _result_from_state(run, state):
    p = success_probability(state, run.problem)
    return AnnealResult(
        state=state,
        success_probability=p,
        energy_residual=energy_residual(state, run.problem),
        tts=time_to_solution(p, run.t_an),
        tts_raw=time_to_solution(p, run.t_an, floor=False),
    )


def _state_of(result):
    return result.state if hasattr(result, "state") else np.asarray(result)


def success_probability(result, problem):
    """Population of the classical ground manifold in the final state."""
    state = _state_of(result)
    ground = ground_state_indices(problem)
    if state.ndim == 1:
        return float(np.sum(np.abs(state[ground]) ** 2))
    return float(np.sum(np.real(np.diagonal(state)[ground])))


def energy_residual(result, problem):
    """<H_P(1)> - E_0 in GHz for the final state."""
    state = _state_of(result)
    diag = problem.problem_diagonal()
    if state.ndim == 1:
        energy = float(diag @ (np.abs(state) ** 2))
    else:
        energy = float(np.real(diag @ np.diagonal(state)))
    return energy - ground_energy(problem)


def time_to_solution(p_success, t_an, p_d=0.99, floor=True):
    """TTS = t_an * ln(1 - p_d)/ln(1 - p_success), in ns.

    Returns +inf for p_success = 0.  With floor=True (the default) the
    value is never below one repetition, i.e. t_an itself; floor=False
    gives the raw formula value.
    """
    if not -1e-9 <= p_success <= 1 + 1e-9:
        raise ValueError(f"success probability outside [0, 1]: {p_success}")
    p = min(max(p_success, 0.0), 1.0)
    if p == 0.0:
        return np.inf
    if p == 1.0:
        raw = 0.0
    else:
        # log1p keeps sub-epsilon p finite in the log; the division may
        # still overflow to +inf, which is the honest float answer
        with np.errstate(over="ignore"):
            raw = float(t_an * np.log(1.0 - p_d) / np.log1p(-p))
    return max(raw, t_an) if floor else raw

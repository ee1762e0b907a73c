"""Adiabatic master equation with independent Ohmic baths.

The dissipator is built from the instantaneous eigensystem at every
right-hand-side evaluation (Schrodinger picture, fixed computational
basis), so exact level crossings are traversed without frame
discontinuities.  Bohr frequencies within 1e-9 * R of each other are
binned before the bath rate gamma(omega) is applied.  The Lamb-shift
term is omitted throughout; outputs that echo their configuration
record lamb_shift = omitted.

Rates: gamma(omega) = 2*pi*eta_g2 * omega * exp(-|omega|/omega_c)
/ (1 - exp(-beta*omega)) with omega in angular rad/ns, which satisfies
the KMS condition gamma(-omega) = exp(-beta*omega) * gamma(omega).
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .closed_dynamics import (
    AnnealResult,
    IntegrationError,
    energy_residual,
    initial_state,
    success_probability,
    time_to_solution,
)
from .problems import build_two_qubit, spin_table
from .schedules import breakpoints, lstf_plan
from .spectrum import hamiltonian_at, trace_spectrum
from .units import TWO_PI, inverse_temperature

logger = logging.getLogger(__name__)


class PositivityError(IntegrationError):
    """Density matrix developed a negative eigenvalue beyond tolerance."""


POSITIVITY_TOL = 1e-6
BOHR_BIN_REL_TOL = 1e-9


@dataclass(frozen=True)
class BathSpec:
    """Ohmic bath: dimensionless coupling eta*g^2, cutoff (rad/ns), T (mK)."""

    eta_g2: float = 1e-4
    omega_c: float = 4.0 * TWO_PI
    temperature_mk: float = 16.0

    def __post_init__(self):
        if self.eta_g2 < 0 or self.omega_c <= 0 or self.temperature_mk <= 0:
            raise ValueError("bath parameters must be positive (eta_g2 >= 0)")

    @property
    def beta(self):
        """Inverse temperature in ns/rad."""
        return inverse_temperature(self.temperature_mk)


@dataclass(frozen=True)
class CouplingSpec:
    """Per-qubit system-bath coupling operators sigma^x_i or sigma^z_i."""

    axis: str = "x"
    qubits: tuple = None

    def __post_init__(self):
        if self.axis not in ("x", "z"):
            raise ValueError(f"coupling axis must be 'x' or 'z', got {self.axis!r}")

    def qubit_list(self, n_qubits):
        if self.qubits is None:
            return tuple(range(n_qubits))
        return tuple(self.qubits)


def spectral_density(bath, omega):
    """Ohmic rate gamma(omega) in 1/ns, omega in rad/ns (angular)."""
    w = np.asarray(omega, dtype=float)
    beta = bath.beta
    pref = TWO_PI * bath.eta_g2
    wa = np.abs(w)
    cutoff = np.exp(-wa / bath.omega_c)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        pos = pref * wa * cutoff / -np.expm1(-beta * wa)
    out = np.where(w >= 0, pos, np.exp(-beta * wa) * pos)
    out = np.where(wa < 1e-14, pref / beta, out)
    return float(out) if out.ndim == 0 else out


def _bin_bohr(w, tol):
    """Group all Bohr frequencies w[b]-w[a] into bins of width tol.

    Returns (bin values, index matrix) with bohr[b, a] = w[b] - w[a] and
    index[b, a] giving the bin each pair belongs to.
    """
    bohr = w[:, None] - w[None, :]
    flat = np.sort(bohr.ravel())
    edges = np.flatnonzero(np.diff(flat) > tol)
    starts = np.concatenate(([0], edges + 1))
    ends = np.concatenate((edges + 1, [flat.size]))
    values = np.array([flat[a:b].mean() for a, b in zip(starts, ends)])
    # map each pair to its bin by the segment its value falls into
    cut = flat[starts]
    index = np.searchsorted(cut, bohr + tol / 2.0, side="right") - 1
    return values, index


def _coupling_matrix(V, axis, qubit, n_qubits):
    """M[b, a] = <E_b| A |E_a> for A = sigma^axis on one qubit."""
    dim = V.shape[0]
    if axis == "x":
        av = V[np.arange(dim) ^ (1 << (n_qubits - 1 - qubit)), :]
    else:
        av = spin_table(n_qubits)[:, qubit][:, None] * V
    return V.conj().T @ av


@dataclass(frozen=True)
class LindbladSet:
    """Instantaneous Lindblad scaffold L = <E_b|A|E_a> |E_a><E_b|.

    elements maps (axis, qubit) to the matrix M with M[b, a] =
    <E_b|A|E_a>; bohr[b, a] = E_b - E_a in GHz, binned into omegas via
    bin_index.
    """

    energies: np.ndarray
    omegas: np.ndarray
    bin_index: np.ndarray
    elements: dict

    def transition_element(self, axis, qubit, b, a):
        return self.elements[(axis, qubit)][b, a]


def build_lindblads(eigsys, coupling, energy_scale=1.0):
    """Lindblad matrix-element table from a gauge-fixed eigensystem."""
    w, V = eigsys
    n = int(round(np.log2(V.shape[0])))
    tol = BOHR_BIN_REL_TOL * energy_scale
    omegas, index = _bin_bohr(w, tol)
    bohr = w[:, None] - w[None, :]
    off = ~np.eye(w.size, dtype=bool)
    if np.any(np.abs(bohr[off]) < tol):
        warnings.warn(
            "degenerate eigenvalue pair: Lindblad elements are gauge-dependent",
            stacklevel=2,
        )
    elements = {
        (coupling.axis, q): _coupling_matrix(V, coupling.axis, q, n)
        for q in coupling.qubit_list(n)
    }
    return LindbladSet(energies=w, omegas=omegas, bin_index=index, elements=elements)


def _dissipator_factory(problem, coupling, bath):
    """Returns f(H, rho) -> dissipator contribution in the fixed basis."""
    n = problem.n_qubits
    tol = BOHR_BIN_REL_TOL * problem.energy_scale
    qubits = coupling.qubit_list(n)
    axis = coupling.axis

    def dissipator(H, rho):
        w, V = np.linalg.eigh(H)
        rho_e = V.conj().T @ rho @ V
        omegas, index = _bin_bohr(w, tol)
        rates = spectral_density(bath, TWO_PI * omegas)
        out = np.zeros_like(rho_e)
        for q in qubits:
            m = _coupling_matrix(V, axis, q, n)
            # L for bin k has [a, b] element M[b, a] where w[b]-w[a] is in bin k
            k_of_ab = index.T
            for k, rate in enumerate(rates):
                if rate == 0.0:
                    continue
                L = np.where(k_of_ab == k, m.T, 0.0)
                if not L.any():
                    continue
                ld = L.conj().T
                ldl = ld @ L
                out += rate * (L @ rho_e @ ld - 0.5 * (ldl @ rho_e + rho_e @ ldl))
        return V @ out @ V.conj().T

    return dissipator


def evolve_ame(run, bath, coupling, s_report=None, freeze_s=None):
    """Dissipative anneal; returns an AnnealResult over the density matrix.

    With freeze_s set, the Hamiltonian is pinned at H(freeze_s) (and the
    initial state is its ground state) while t still runs over
    [0, t_an]; this exposes the thermal fixed point for testing.
    s_report asks for instantaneous-eigenbasis populations at those s
    values.
    """
    problem, plan, t_an = run.problem, run.plan, run.t_an
    dim = problem.dim
    dissipator = _dissipator_factory(problem, coupling, bath)

    def h_at(t):
        s = freeze_s if freeze_s is not None else min(t / t_an, 1.0)
        return hamiltonian_at(problem, plan, s)

    def rhs(t, y):
        rho = y.reshape(dim, dim)
        H = h_at(t)
        drho = -1j * TWO_PI * (H @ rho - rho @ H) + dissipator(H, rho)
        return drho.ravel()

    if freeze_s is None:
        psi0 = initial_state(problem, plan).astype(complex)
    else:
        w0, V0 = np.linalg.eigh(h_at(0.0))
        psi0 = V0[:, 0].astype(complex)
    y = np.outer(psi0, psi0.conj()).ravel()

    report_t = None if s_report is None else np.asarray(s_report) * t_an
    collected = []
    t_nodes = [b * t_an for b in breakpoints(plan)]
    for t0, t1 in zip(t_nodes[:-1], t_nodes[1:]):
        t_eval = None
        if report_t is not None:
            inside = report_t[(report_t >= t0) & (report_t < t1)]
            t_eval = np.unique(np.concatenate((inside, [t1])))
        sol = solve_ivp(
            rhs, (t0, t1), y, method="DOP853", rtol=run.rtol, atol=run.atol,
            t_eval=t_eval,
        )
        if not sol.success:
            raise IntegrationError(f"AME integration failed on [{t0}, {t1}]: {sol.message}")
        if report_t is not None:
            for tk, yk in zip(sol.t[:-1], sol.y.T[:-1]):
                collected.append((tk, yk.reshape(dim, dim)))
        y = sol.y[:, -1]
    rho = y.reshape(dim, dim)
    if report_t is not None and report_t[-1] >= t_nodes[-1]:
        collected.append((t_nodes[-1], rho))

    _check_positivity(rho)
    populations = None
    s_out = None
    if report_t is not None:
        s_out = np.array([t / t_an for t, _ in collected])
        populations = np.stack([
            _eigen_populations(h_at(t), r) for t, r in collected
        ])

    p = success_probability(rho, problem)
    return AnnealResult(
        state=rho,
        success_probability=p,
        energy_residual=energy_residual(rho, problem),
        tts=time_to_solution(p, t_an),
        tts_raw=time_to_solution(p, t_an, floor=False),
        s_report=s_out,
        populations=populations,
    )


def _check_positivity(rho):
    lo = float(np.linalg.eigvalsh(rho).min())
    if lo < -POSITIVITY_TOL:
        raise PositivityError(f"density matrix eigenvalue {lo} below -{POSITIVITY_TOL}")
    if lo < 0:
        logger.warning("clipped negative density-matrix eigenvalue %.3e", lo)


def _eigen_populations(H, rho):
    w, V = np.linalg.eigh(H)
    pops = np.real(np.diagonal(V.conj().T @ rho @ V)).copy()
    neg = pops < 0
    if np.any(pops[neg] < -POSITIVITY_TOL):
        raise PositivityError(f"population {pops.min()} below -{POSITIVITY_TOL}")
    if np.any(neg):
        logger.warning("clipped negative populations (min %.3e)", pops.min())
        pops[neg] = 0.0
    return pops


def eigenstate_populations(run, bath, coupling, s_report=None):
    """(s values, populations table) of instantaneous eigenstates."""
    if s_report is None:
        s_report = np.linspace(0.0, 1.0, 101)
    result = evolve_ame(run, bath, coupling, s_report=s_report)
    return result.s_report, result.populations


@dataclass(frozen=True)
class FrustrationRow:
    f: float
    s_plus: float
    intervals: tuple
    probabilities: tuple


def frustration_sweep(f_list, bath, t_an_list, s_x=0.2, energy_scale=1.0,
                      coupling=None, rtol=1e-8, atol=1e-8):
    """Fig-10-style sweep: first-excited interval and AME success vs f.

    For each frustration value the target schedule's second crossing
    s_plus is located, the interval t_an*(s_plus - s_x) tabulated, and
    the X-coupled AME ground-state probability solved per t_an.
    """
    from .closed_dynamics import AnnealRun

    if coupling is None:
        coupling = CouplingSpec(axis="x")
    rows = []
    for f in f_list:
        problem = build_two_qubit(f, energy_scale)
        plan = lstf_plan(1, s_x=s_x)
        trace = trace_spectrum(problem, plan, grid_resolution=401)
        late = [s for s in trace.s_plus_list if s > s_x + 1e-3]
        s_plus = late[0] if late else np.nan
        probs = []
        for t_an in t_an_list:
            run = AnnealRun(problem, plan, t_an, rtol=rtol, atol=atol)
            probs.append(evolve_ame(run, bath, coupling).success_probability)
        rows.append(FrustrationRow(
            f=float(f),
            s_plus=float(s_plus),
            intervals=tuple(t * (s_plus - s_x) for t in t_an_list),
            probabilities=tuple(probs),
        ))
    return rows


@dataclass(frozen=True)
class EnergyScaleRow:
    energy_scale: float
    probabilities_open: tuple
    probabilities_closed: tuple


def energy_scale_sweep(r_list, bath, t_an_list, f=0.8, s_x=0.2,
                       coupling=None, rtol=1e-8, atol=1e-8):
    """X-coupled AME success vs t_an per energy scale, with closed reference."""
    from .closed_dynamics import AnnealRun, evolve_schrodinger

    if coupling is None:
        coupling = CouplingSpec(axis="x")
    rows = []
    for R in r_list:
        problem = build_two_qubit(f, R)
        plan = lstf_plan(1, s_x=s_x)
        open_p, closed_p = [], []
        for t_an in t_an_list:
            run = AnnealRun(problem, plan, t_an, rtol=rtol, atol=atol)
            open_p.append(evolve_ame(run, bath, coupling).success_probability)
            closed_p.append(evolve_schrodinger(run).success_probability)
        rows.append(EnergyScaleRow(
            energy_scale=float(R),
            probabilities_open=tuple(open_p),
            probabilities_closed=tuple(closed_p),
        ))
    return rows


def x_magnetization_report(problem, plan, s_grid=None):
    """(s values, m^x table) of the energy-ordered ground state.

    m^x is reported in the driver gauge (driver ground state fully
    polarized at +1); rows at degenerate samples are NaN.
    """
    from .spectrum import _eval_grid

    if s_grid is None:
        s_grid = np.linspace(0.0, 1.0, 201)
    s_grid = np.asarray(s_grid, dtype=float)
    _, _, m_x = _eval_grid(problem, plan, s_grid)
    return s_grid, m_x

"""Instantaneous spectra of the annealing Hamiltonian.

Assembles H(s) = sum_i a_i(s) h^x_i sigma^x_i + sum_i b_i(s) h^z_i sigma^z_i
+ sum_(ij) b_ij(s) J^zz_ij sigma^z_i sigma^z_j in the computational basis,
diagonalizes it on an s-grid, and locates the minimum-gap point s_star and
the ground-state Z-magnetization zero crossings s_plus.

Magnetization sign convention: m^x is reported in the driver gauge, i.e.
as the expectation of -sigma^x, so that the s=0 driver ground state has
m^x_i = +1 for every driven qubit.  m^z is the plain sigma^z expectation.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .problems import spin_table
from .schedules import coupler_coeff, driver_coeff, problem_coeff

DENSE_CAP = 12
DEGENERACY_REL_TOL = 1e-9


def hamiltonian_at(problem, plan, s):
    """Dense H(s) in GHz, (2^n, 2^n) complex Hermitian."""
    n = problem.n_qubits
    if n > DENSE_CAP:
        raise ValueError(f"dense assembly capped at {DENSE_CAP} qubits, got {n}")
    plan.validate_for(n)
    dim = problem.dim
    b = np.array([problem_coeff(plan, i, s) for i in range(n)])
    diag = b @ problem.field_diagonal()
    diag = diag + coupler_coeff(plan, None, s) * problem.coupler_diagonal().sum(axis=0)
    H = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim)
    H[idx, idx] = diag
    for i in range(n):
        g = driver_coeff(plan, i, s) * problem.h_x[i]
        if g != 0.0:
            H[idx, idx ^ (1 << (n - 1 - i))] += g
    return H


def eigensystem(H):
    """Ascending eigenvalues and gauge-fixed orthonormal eigenvectors.

    The gauge fix makes each eigenvector's largest-magnitude component
    real and positive.  Raises on non-Hermitian input.
    """
    H = np.asarray(H)
    scale = max(np.max(np.abs(H)), 1e-300)
    if np.max(np.abs(H - H.conj().T)) > 1e-10 * scale:
        raise ValueError("eigensystem requires a Hermitian matrix")
    w, V = np.linalg.eigh(H)
    lead = V[np.argmax(np.abs(V), axis=0), np.arange(V.shape[1])]
    V = V * np.conj(lead / np.abs(lead))[None, :]
    return w, V


def magnetizations(problem, psi):
    """Ground-state (m^z_i, m^x_i) for a state vector psi.

    m^x uses the driver gauge (expectation of -sigma^x).
    """
    n = problem.n_qubits
    prob = np.abs(psi) ** 2
    m_z = spin_table(n).T @ prob
    m_x = np.empty(n)
    idx = np.arange(psi.size)
    for i in range(n):
        flip = psi[idx ^ (1 << (n - 1 - i))]
        m_x[i] = -np.real(np.vdot(psi, flip))
    return m_z, m_x


@dataclass(frozen=True)
class SpectrumTrace:
    """Eigensystem summary of one (problem, plan) pair over an s-grid.

    energies[k] holds the ascending eigenvalues at s_grid[k]; gaps are
    E_n - E_0 for n >= 1.  m_z and m_x rows are NaN where the ground
    state is degenerate (gap below 1e-9 * R), since eigenvector mixing is
    gauge-arbitrary there.  s_plus_list holds the zero crossings of
    m^z of watch_qubit, refined by bisection.
    """

    problem: object
    plan: object
    s_grid: np.ndarray
    energies: np.ndarray
    gaps: np.ndarray
    m_z: np.ndarray
    m_x: np.ndarray
    s_star: float
    gap_at_s_star: float
    s_plus_list: tuple
    watch_qubit: int


def _eval_grid(problem, plan, s_values):
    dim = problem.dim
    n = problem.n_qubits
    n_s = len(s_values)
    energies = np.empty((n_s, dim))
    m_z = np.full((n_s, n), np.nan)
    m_x = np.full((n_s, n), np.nan)
    deg_tol = DEGENERACY_REL_TOL * problem.energy_scale
    for k, s in enumerate(s_values):
        w, V = eigensystem(hamiltonian_at(problem, plan, s))
        energies[k] = w
        if w[1] - w[0] > deg_tol:
            m_z[k], m_x[k] = magnetizations(problem, V[:, 0])
    return energies, m_z, m_x


def _gap1(problem, plan, s):
    w = np.linalg.eigvalsh(hamiltonian_at(problem, plan, s))
    return w[1] - w[0]


def _golden_min(f, a, b, xatol=1e-7):
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > xatol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def trace_spectrum(problem, plan, grid_resolution=1001, watch_qubit=None):
    """Spectrum trace over [0, 1] with refinement near gap minima.

    The base uniform grid is augmented with the plan breakpoints and
    with extra samples around each local minimum of dE_1; s_star is
    then refined by golden section to |ds| <= 1e-6.
    """
    if grid_resolution < 101:
        raise ValueError("grid_resolution must be at least 101")
    if watch_qubit is None:
        watch_qubit = plan.target_k if plan.is_lstf else problem.n_qubits - 1

    from .schedules import breakpoints as plan_breakpoints

    s = np.union1d(np.linspace(0.0, 1.0, grid_resolution), plan_breakpoints(plan))
    energies, _, _ = _eval_grid(problem, plan, s)
    gap1 = energies[:, 1] - energies[:, 0]

    # local minima of the first gap, endpoints included as candidates
    interior = np.flatnonzero(
        (gap1[1:-1] <= gap1[:-2]) & (gap1[1:-1] <= gap1[2:])
    ) + 1
    candidates = []
    extra = []
    for i in interior:
        a, b = s[i - 1], s[i + 1]
        s_min = _golden_min(lambda x: _gap1(problem, plan, x), a, b, xatol=1e-7)
        candidates.append((_gap1(problem, plan, s_min), s_min))
        extra.append(np.linspace(a, b, 25))
    if gap1[0] < gap1[1]:
        candidates.append((gap1[0], s[0]))
    if gap1[-1] < gap1[-2]:
        candidates.append((gap1[-1], s[-1]))
    if not candidates:
        candidates.append((gap1.min(), s[np.argmin(gap1)]))
    gap_star, s_star = min(candidates)

    if extra:
        s = np.union1d(s, np.concatenate(extra))
        s = np.union1d(s, [s_star])
    energies, m_z, m_x = _eval_grid(problem, plan, s)
    gaps = energies[:, 1:] - energies[:, :1]

    s_plus = _zero_crossings(problem, plan, s, m_z[:, watch_qubit], watch_qubit)
    return SpectrumTrace(
        problem=problem,
        plan=plan,
        s_grid=s,
        energies=energies,
        gaps=gaps,
        m_z=m_z,
        m_x=m_x,
        s_star=float(s_star),
        gap_at_s_star=float(gap_star),
        s_plus_list=tuple(s_plus),
        watch_qubit=watch_qubit,
    )


def _mz_at(problem, plan, s, k):
    w, V = eigensystem(hamiltonian_at(problem, plan, s))
    m_z, _ = magnetizations(problem, V[:, 0])
    return m_z[k]


def _zero_crossings(problem, plan, s_grid, mz_column, k):
    valid = np.flatnonzero(~np.isnan(mz_column))
    # The driver ground state has m^z = 0 on every qubit, so leading samples
    # sit at float noise around zero; trim them rather than report a phantom
    # crossing at s = 0.
    while valid.size and abs(mz_column[valid[0]]) < 1e-9:
        valid = valid[1:]
    crossings = []
    for a_idx, b_idx in zip(valid[:-1], valid[1:]):
        ma, mb = mz_column[a_idx], mz_column[b_idx]
        if ma == 0.0:
            crossings.append(float(s_grid[a_idx]))
            continue
        if ma * mb < 0.0:
            root = brentq(
                lambda x: _mz_at(problem, plan, x, k),
                s_grid[a_idx],
                s_grid[b_idx],
                xtol=1e-6,
            )
            crossings.append(float(root))
    if valid.size and mz_column[valid[-1]] == 0.0:
        crossings.append(float(s_grid[valid[-1]]))
    return sorted(crossings)


def find_s_plus(trace, k):
    """All sign-change locations of m^z_k(s), bisected to 1e-6."""
    if k == trace.watch_qubit:
        return list(trace.s_plus_list)
    return _zero_crossings(trace.problem, trace.plan, trace.s_grid, trace.m_z[:, k], k)


def max_slope_location(trace, k):
    """argmax_s |dm^z_k/ds| by centered differences; None if flat."""
    m = trace.m_z[:, k]
    s = trace.s_grid
    valid = ~np.isnan(m)
    mv, sv = m[valid], s[valid]
    if mv.size < 3 or np.ptp(mv) < 1e-9:
        return None
    slope = (mv[2:] - mv[:-2]) / (sv[2:] - sv[:-2])
    return float(sv[1:-1][np.argmax(np.abs(slope))])

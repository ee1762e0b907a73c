"""Spin-coherent analysis of the two-qubit cluster.

The product coherent state |theta_1, theta_2> with
|theta> = cos(theta/2)|0> + sin(theta/2)|1> gives the closed-form
semiclassical potential

    V(s, t1, t2) = a_1 h^x_1 sin t1 + a_2 h^x_2 sin t2
                 - b_1 h^z_1 cos t1 - b_2 h^z_2 cos t2
                 + b_12 J cos t1 cos t2

since <theta|z|theta> = -cos(theta) when spin down (|0>) carries z = -1
(the Y magnetization is excluded by construction).  The tracenorm
distance D = sqrt(1 - |<theta|E_0>|^2) measures how well the best
product state describes the true ground state.  Angles live on
[0, 2*pi) with periodic wraparound; reported minima unwrap theta_2 so
the two wells read as theta_2 = pi and theta_2 = 2*pi, matching the
double-well orientation of the potential landscape.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .schedules import coupler_coeff, driver_coeff, problem_coeff
from .spectrum import DEGENERACY_REL_TOL, eigensystem, hamiltonian_at


class DegenerateGroundStateError(ValueError):
    """Ground state degenerate; coherent-state overlap is gauge-arbitrary."""


def _require_two_qubit(problem):
    if problem.n_qubits != 2:
        raise ValueError(
            f"semiclassical analysis is defined for two qubits, got {problem.n_qubits}"
        )


def potential(problem, plan, s, theta1, theta2):
    """Semiclassical potential <theta|H(s)|theta> in GHz, closed form."""
    _require_two_qubit(problem)
    t1 = np.asarray(theta1, dtype=float)
    t2 = np.asarray(theta2, dtype=float)
    a1 = driver_coeff(plan, 0, s) * problem.h_x[0]
    a2 = driver_coeff(plan, 1, s) * problem.h_x[1]
    b1 = problem_coeff(plan, 0, s) * problem.h_z[0]
    b2 = problem_coeff(plan, 1, s) * problem.h_z[1]
    jz = coupler_coeff(plan, None, s) * problem.j_zz[0]
    out = (
        a1 * np.sin(t1)
        + a2 * np.sin(t2)
        - b1 * np.cos(t1)
        - b2 * np.cos(t2)
        + jz * np.cos(t1) * np.cos(t2)
    )
    return float(out) if out.ndim == 0 else out


def coherent_state(theta1, theta2):
    """4-component product coherent state, qubit 0 most significant."""
    c1, s1 = np.cos(theta1 / 2.0), np.sin(theta1 / 2.0)
    c2, s2 = np.cos(theta2 / 2.0), np.sin(theta2 / 2.0)
    return np.array([c1 * c2, c1 * s2, s1 * c2, s1 * s2])


def _ground_state(problem, plan, s):
    w, V = eigensystem(hamiltonian_at(problem, plan, s))
    if w[1] - w[0] < DEGENERACY_REL_TOL * problem.energy_scale:
        raise DegenerateGroundStateError(
            f"ground state degenerate at s={s}; tracenorm distance undefined"
        )
    return V[:, 0]


def _distance_from_ground(ground, theta1, theta2):
    t1 = np.asarray(theta1, dtype=float)
    t2 = np.asarray(theta2, dtype=float)
    c1, s1 = np.cos(t1 / 2.0), np.sin(t1 / 2.0)
    c2, s2 = np.cos(t2 / 2.0), np.sin(t2 / 2.0)
    overlap = (
        c1 * c2 * ground[0]
        + c1 * s2 * ground[1]
        + s1 * c2 * ground[2]
        + s1 * s2 * ground[3]
    )
    fid = np.clip(np.abs(overlap) ** 2, 0.0, 1.0)
    return np.sqrt(1.0 - fid)


def tracenorm_distance(problem, plan, s, theta1, theta2):
    """D = sqrt(1 - |<theta_1,theta_2|E_0(s)>|^2), dimensionless."""
    _require_two_qubit(problem)
    ground = _ground_state(problem, plan, s)
    out = _distance_from_ground(ground, theta1, theta2)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PotentialGrid:
    """V and D sampled on a periodic [0, 2*pi)^2 angle grid at fixed s."""

    problem: object
    plan: object
    s: float
    theta1: np.ndarray
    theta2: np.ndarray
    V: np.ndarray
    D: np.ndarray


def potential_grid(problem, plan, s, resolution=512, with_distance=True):
    """Evaluate V (and optionally D) on a uniform periodic angle grid."""
    _require_two_qubit(problem)
    theta = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
    t1 = theta[:, None]
    t2 = theta[None, :]
    V = potential(problem, plan, s, t1, t2)
    D = None
    if with_distance:
        ground = _ground_state(problem, plan, s)
        D = _distance_from_ground(ground, t1, t2)
    return PotentialGrid(
        problem=problem, plan=plan, s=float(s), theta1=theta, theta2=theta, V=V, D=D
    )


def _vector_golden(f, a, b, xatol=1e-10):
    """Golden-section minimum of f on [a, b], elementwise over arrays."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a = np.asarray(a, dtype=float).copy()
    b = np.asarray(b, dtype=float).copy()
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while np.max(b - a) > xatol:
        take1 = f1 <= f2
        b = np.where(take1, x2, b)
        a = np.where(take1, a, x1)
        x1 = b - invphi * (b - a)
        x2 = a + invphi * (b - a)
        f1, f2 = f(x1), f(x2)
    return 0.5 * (a + b)


def find_local_minima(grid, s=None):
    """Local minima of V by the minimum-energy-locus method.

    For each theta_2 the potential is minimized over theta_1 (the locus);
    the numerical derivative of the locus energy with respect to theta_2
    is then scanned for increasing zero crossings, and each candidate is
    polished by local descent.  Returns a list of (theta_1, theta_2, V)
    sorted by theta_2, with theta_2 unwrapped into (0.5, 2*pi + 0.5).
    """
    problem, plan = grid.problem, grid.plan
    if s is None:
        s = grid.s
    theta2 = grid.theta2
    n2 = theta2.size
    dt1 = grid.theta1[1] - grid.theta1[0]

    # polish the per-column argmin over theta_1 so the locus is smooth
    i_star = np.argmin(grid.V, axis=0)
    t1_lo = grid.theta1[i_star] - dt1
    t1_hi = grid.theta1[i_star] + dt1
    t1_star = _vector_golden(
        lambda t1: potential(problem, plan, s, t1, theta2), t1_lo, t1_hi
    )
    locus_v = potential(problem, plan, s, t1_star, theta2)

    dv = (np.roll(locus_v, -1) - np.roll(locus_v, 1)) / (2.0 * (theta2[1] - theta2[0]))
    rising = (dv < 0.0) & (np.roll(dv, -1) >= 0.0)

    minima = []
    for j in np.flatnonzero(rising):
        start = np.array([t1_star[j], theta2[j]])
        res = minimize(
            lambda t: potential(problem, plan, s, t[0], t[1]),
            start,
            method="Nelder-Mead",
            options={
                "xatol": 1e-10,
                "fatol": 1e-9 * problem.energy_scale,
                "maxiter": 4000,
            },
        )
        t1_min = res.x[0] % (2.0 * np.pi)
        t2_min = res.x[1] % (2.0 * np.pi)
        if t2_min < 0.5:
            t2_min += 2.0 * np.pi
        minima.append((t1_min, t2_min, float(res.fun)))

    # merge duplicates that polished into the same well
    minima.sort(key=lambda m: m[1])
    merged = []
    for m in minima:
        if merged and abs(m[1] - merged[-1][1]) < 4.0 * (theta2[1] - theta2[0]):
            if m[2] < merged[-1][2]:
                merged[-1] = m
        else:
            merged.append(m)
    return merged


@dataclass(frozen=True)
class MinimaLine:
    """The straight line through both local minima in the angle plane.

    theta2_on_line evaluates theta_2'(theta_1) along the line; the
    endpoints are (theta1_a, theta2_a) and (theta1_b, theta2_b).
    """

    theta1_a: float
    theta2_a: float
    theta1_b: float
    theta2_b: float

    def __post_init__(self):
        if abs(self.theta1_a - self.theta1_b) < 1e-9:
            raise ValueError("minima share theta_1; the line is vertical")

    @property
    def slope(self):
        return (self.theta2_a - self.theta2_b) / (self.theta1_a - self.theta1_b)

    def theta2_on_line(self, theta1):
        return self.slope * (np.asarray(theta1) - self.theta1_a) + self.theta2_a

    def theta1_at(self, theta2p):
        return (np.asarray(theta2p) - self.theta2_a) / self.slope + self.theta1_a


def minima_line(minima):
    """Build the connecting line from the two minima of find_local_minima."""
    if len(minima) != 2:
        raise ValueError(f"need exactly two minima, got {len(minima)}")
    (t1a, t2a, _), (t1b, t2b, _) = minima
    return MinimaLine(theta1_a=t1a, theta2_a=t2a, theta1_b=t1b, theta2_b=t2b)


@dataclass(frozen=True)
class LineProfile:
    """V and D sampled along the minima-connecting line."""

    theta2: np.ndarray
    theta1: np.ndarray
    V: np.ndarray
    D: np.ndarray
    barrier_height: float
    d_min_theta2: float
    d_min: float


def line_profile(problem, plan, s, line, n_samples=512):
    """Sample V and D along the line, parametrized by theta_2'.

    barrier_height is max(V on line) minus the lower endpoint V; the
    global minimum of D along the line is polished by golden section.
    """
    _require_two_qubit(problem)
    t2 = np.linspace(line.theta2_a, line.theta2_b, n_samples)
    t1 = line.theta1_at(t2)
    v = potential(problem, plan, s, t1, t2)
    ground = _ground_state(problem, plan, s)
    d = _distance_from_ground(ground, t1, t2)

    barrier = float(np.max(v) - min(v[0], v[-1]))

    j = int(np.argmin(d))
    lo = t2[max(j - 1, 0)]
    hi = t2[min(j + 1, n_samples - 1)]
    if lo > hi:
        lo, hi = hi, lo
    t2_best = _vector_golden(
        lambda t: _distance_from_ground(ground, line.theta1_at(t), t),
        np.array([lo]),
        np.array([hi]),
    )[0]
    d_best = float(_distance_from_ground(ground, line.theta1_at(t2_best), t2_best))
    return LineProfile(
        theta2=t2,
        theta1=t1,
        V=v,
        D=d,
        barrier_height=barrier,
        d_min_theta2=float(t2_best),
        d_min=d_best,
    )


def branch_energies(problem, plan, s, resolution=256):
    """Well energies at s split by theta_2 side; NaN where a well is absent.

    Branches are split at theta_2 = 3*pi/2.  The high-theta_2 well
    (theta_2 near 2*pi, target spin aligned with its field) exists from
    the start; the low-theta_2 well (near pi, spin against the field)
    is born later and eventually becomes the global minimum.
    """
    grid = potential_grid(problem, plan, s, resolution=resolution, with_distance=False)
    minima = find_local_minima(grid)
    split = 1.5 * np.pi
    e1 = min((m[2] for m in minima if m[1] < split), default=np.nan)
    e2 = min((m[2] for m in minima if m[1] >= split), default=np.nan)
    return e1, e2


def minima_trace(problem, plan, s_list, resolution=256):
    """Per-s energies of the two potential branches (NaN where absent)."""
    rows = []
    for s in s_list:
        e1, e2 = branch_energies(problem, plan, s, resolution=resolution)
        rows.append((float(s), e1, e2))
    return rows

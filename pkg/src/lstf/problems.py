"""Ising problem instances and brute-force classical oracles.

Conventions
-----------
|0> = |down> with z eigenvalue -1 and |1> = |up> with +1, so the classical
spin of a bit is z_i = 2*bit - 1 (spin down carries the conventional -1).
Qubit 0 is the most significant bit of a computational basis index: the
bit of qubit i in basis state c is (c >> (n-1-i)) & 1.  The classical
energy of a configuration is

    E = sum_i h_z[i] * z_i + sum_(i,j) j_zz[ij] * z_i * z_j

with all energies in linear-frequency GHz.
"""

import warnings
from dataclasses import dataclass

import numpy as np

# Exhaustive enumeration oracle; above this the types are still valid but
# the classical oracles refuse to run.
ENUMERATION_CAP = 24


def spin_table(n_qubits):
    """(2^n, n) array of classical spins z_i = +-1 for every basis state."""
    configs = np.arange(1 << n_qubits)
    bits = (configs[:, None] >> np.arange(n_qubits - 1, -1, -1)[None, :]) & 1
    return 2 * bits - 1


@dataclass(frozen=True)
class IsingProblem:
    """An Ising problem with per-qubit transverse fields.

    Parameters
    ----------
    n_qubits : int
    edges : tuple of (i, j)
        Unordered coupler pairs; stored with i < j.
    h_z : tuple of float
        Longitudinal fields, GHz.
    j_zz : tuple of float
        Coupler strengths aligned with ``edges``, GHz.
    h_x : tuple of float
        Transverse fields, GHz, all nonnegative (stoquastic gauge).
    energy_scale : float
        Overall scale R, GHz; max |h_z| may not exceed it.
    """

    n_qubits: int
    edges: tuple
    h_z: tuple
    j_zz: tuple
    h_x: tuple
    energy_scale: float = 1.0

    def __post_init__(self):
        n = self.n_qubits
        if n < 1:
            raise ValueError(f"n_qubits must be positive, got {n}")
        if self.energy_scale <= 0:
            raise ValueError(f"energy_scale must be positive, got {self.energy_scale}")
        norm_edges = []
        for e in self.edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise ValueError(f"self-loop on vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for {n} qubits")
            norm_edges.append((min(i, j), max(i, j)))
        if len(set(norm_edges)) != len(norm_edges):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(norm_edges))
        object.__setattr__(self, "h_z", tuple(float(x) for x in self.h_z))
        object.__setattr__(self, "j_zz", tuple(float(x) for x in self.j_zz))
        object.__setattr__(self, "h_x", tuple(float(x) for x in self.h_x))
        if len(self.h_z) != n or len(self.h_x) != n:
            raise ValueError("h_z and h_x must have one entry per qubit")
        if len(self.j_zz) != len(self.edges):
            raise ValueError("j_zz must have one entry per edge")
        if any(x < 0 for x in self.h_x):
            raise ValueError("transverse fields must be nonnegative")
        R = self.energy_scale
        hmax = max(abs(x) for x in self.h_z) if self.h_z else 0.0
        if hmax > R * (1 + 1e-9):
            raise ValueError(f"max |h_z| = {hmax} exceeds energy scale {R}")
        if 0.0 < hmax < R * (1 - 1e-9):
            warnings.warn(
                f"largest |h_z| = {hmax} is below the energy scale {R}; "
                "fields are conventionally normalized so max |h_z| = R",
                stacklevel=3,
            )

    @property
    def dim(self):
        return 1 << self.n_qubits

    def h_z_array(self):
        return np.asarray(self.h_z)

    def h_x_array(self):
        return np.asarray(self.h_x)

    def j_zz_array(self):
        return np.asarray(self.j_zz)

    def field_diagonal(self):
        """(n, 2^n) per-qubit diagonals of h_z[i] * sigma^z_i."""
        return self.h_z_array()[:, None] * spin_table(self.n_qubits).T

    def coupler_diagonal(self):
        """(n_edges, 2^n) per-edge diagonals of j_zz[e] * sigma^z_i sigma^z_j."""
        z = spin_table(self.n_qubits)
        rows = [jz * z[:, i] * z[:, j] for jz, (i, j) in zip(self.j_zz, self.edges)]
        if not rows:
            return np.zeros((0, self.dim))
        return np.asarray(rows)

    def problem_diagonal(self):
        """Diagonal of the full problem Hamiltonian H_P (fields + couplers)."""
        return self.field_diagonal().sum(axis=0) + self.coupler_diagonal().sum(axis=0)


@dataclass(frozen=True)
class TwoQubitFrustratedInstance:
    """The canonical two-qubit frustrated cluster.

    Qubit 1 carries the strong field h_z = +-R (sign matched to the
    coupler so that its preferred orientation frustrates qubit 2), and
    qubit 2 carries the weak field R*f with 0 < f < 1.
    """

    f: float
    energy_scale: float = 1.0
    j_sign: int = 1
    h_x2: float = None

    def __post_init__(self):
        if not 0.0 < self.f < 1.0:
            raise ValueError(f"frustration f must lie in (0, 1), got {self.f}")
        if self.energy_scale <= 0:
            raise ValueError("energy scale must be positive")
        if self.j_sign not in (1, -1):
            raise ValueError(f"j_sign must be +1 or -1, got {self.j_sign}")
        if self.h_x2 is None:
            object.__setattr__(self, "h_x2", float(self.energy_scale))
        if self.h_x2 < 0:
            raise ValueError("h_x2 must be nonnegative")

    def problem(self):
        R = self.energy_scale
        return IsingProblem(
            n_qubits=2,
            edges=((0, 1),),
            h_z=(self.j_sign * R, R * self.f),
            j_zz=(self.j_sign * R,),
            h_x=(R, self.h_x2),
            energy_scale=R,
        )


def build_two_qubit(f, energy_scale=1.0, j_sign=1, h_x2=None):
    """Build the two-qubit frustrated cluster as an IsingProblem."""
    return TwoQubitFrustratedInstance(f, energy_scale, j_sign, h_x2).problem()


@dataclass(frozen=True)
class SpinConfiguration:
    """A classical spin configuration with its exact energy."""

    bits: tuple
    energy: float

    @property
    def index(self):
        """Basis-state index (qubit 0 = most significant bit)."""
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out


def _config_energies(problem):
    if problem.n_qubits > ENUMERATION_CAP:
        raise ValueError(
            f"exhaustive enumeration capped at {ENUMERATION_CAP} qubits, "
            f"got {problem.n_qubits}"
        )
    return problem.problem_diagonal()


def classical_energies(problem):
    """All 2^n configurations with exact energies, sorted ascending.

    Ties are ordered by bit-pattern value.
    """
    energies = _config_energies(problem)
    order = np.lexsort((np.arange(energies.size), energies))
    n = problem.n_qubits
    out = []
    for c in order:
        bits = tuple((int(c) >> (n - 1 - i)) & 1 for i in range(n))
        out.append(SpinConfiguration(bits=bits, energy=float(energies[c])))
    return out


def ground_energy(problem):
    """Lowest classical energy, GHz."""
    return float(_config_energies(problem).min())


def ground_state_indices(problem, rel_tol=1e-12):
    """Basis indices of the degenerate classical ground manifold."""
    energies = _config_energies(problem)
    e0 = energies.min()
    tol = rel_tol * max(1.0, abs(e0))
    return [int(c) for c in np.flatnonzero(energies <= e0 + tol)]

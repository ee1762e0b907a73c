import warnings

import numpy as np
import pytest

from lstf.closed_dynamics import AnnealRun, IntegrationError, evolve_schrodinger
from lstf.open_dynamics import (
    BathSpec,
    CouplingSpec,
    PositivityError,
    build_lindblads,
    eigenstate_populations,
    evolve_ame,
    frustration_sweep,
    spectral_density,
    x_magnetization_report,
)
from lstf.problems import IsingProblem
from lstf.schedules import aqa_plan, lstf_plan
from lstf.spectrum import eigensystem, hamiltonian_at
from lstf.units import TWO_PI


def _trace_distance(a, b):
    return 0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum()


# frustrated triangle plus a pendant target qubit; transverse fields are
# slightly detuned so the early-time driver spectrum is non-degenerate
FOUR_QUBIT = IsingProblem(
    4,
    ((0, 1), (0, 2), (1, 2), (2, 3)),
    (1.0, -0.21, 0.13, -0.55),
    (0.5, 0.5, 0.5, 0.5),
    (1.1, 0.9, 1.0, 1.0),
)


def test_bath_validation():
    b = BathSpec()
    assert b.omega_c == pytest.approx(8 * np.pi)
    assert b.temperature_mk == 16.0
    with pytest.raises(ValueError):
        BathSpec(eta_g2=-1e-4)
    with pytest.raises(ValueError):
        BathSpec(omega_c=0.0)
    with pytest.raises(ValueError):
        BathSpec(temperature_mk=0.0)
    with pytest.raises(ValueError):
        CouplingSpec(axis="y")
    assert CouplingSpec("z", qubits=(1,)).qubit_list(4) == (1,)
    assert CouplingSpec("x").qubit_list(3) == (0, 1, 2)


def test_rate_at_zero_frequency():
    bath = BathSpec()
    assert spectral_density(bath, 0.0) == pytest.approx(
        TWO_PI * bath.eta_g2 / bath.beta
    )
    assert spectral_density(bath, 0.0) == pytest.approx(1.3159503e-3, rel=1e-6)


def test_detailed_balance():
    bath = BathSpec()
    omega = np.logspace(-3, np.log10(300.0), 50)
    fwd = spectral_density(bath, omega)
    bwd = spectral_density(bath, -omega)
    np.testing.assert_allclose(bwd, np.exp(-bath.beta * omega) * fwd, rtol=1e-10)
    assert np.all(fwd > 0)
    # continuity into the zero-frequency bin
    assert spectral_density(bath, 1e-10) == pytest.approx(
        spectral_density(bath, 0.0), rel=1e-9
    )


def test_rate_cutoff_suppression():
    bath = BathSpec()
    assert spectral_density(bath, 40.0 * bath.omega_c) < spectral_density(bath, 1.0)


def test_bohr_binning_and_degeneracy_warning(frustrated):
    eigsys = eigensystem(hamiltonian_at(frustrated, aqa_plan(), 1.0))
    with pytest.warns(UserWarning, match="gauge-dependent"):
        ls = build_lindblads(eigsys, CouplingSpec("z"), frustrated.energy_scale)
    np.testing.assert_allclose(
        ls.omegas, [-4.0, -3.6, -0.4, 0.0, 0.4, 3.6, 4.0], atol=1e-12
    )
    assert ls.bin_index.shape == (4, 4)
    # every pair maps into the bin holding its own Bohr frequency
    bohr = ls.energies[:, None] - ls.energies[None, :]
    np.testing.assert_allclose(ls.omegas[ls.bin_index], bohr, atol=1e-9)


def test_transition_elements_two_qubit(frustrated):
    # target drive suppressed: the target's flip element stays at 1 until
    # s_x, then decays; the fully driven qubit never connects the lowest pair
    plan = lstf_plan(1)
    expected = {0.0: 1.0, 0.1: 1.0, 0.15: 1.0,
                0.25: 0.997804565204, 0.5: 0.905589421224, 0.9: 0.731863050710}
    for s, x1 in expected.items():
        eigsys = eigensystem(hamiltonian_at(frustrated, plan, s))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            ls = build_lindblads(eigsys, CouplingSpec("x"), 1.0)
        assert abs(ls.transition_element("x", 1, 1, 0)) == pytest.approx(x1, abs=1e-9)
        assert abs(ls.transition_element("x", 0, 1, 0)) == pytest.approx(0.0, abs=1e-12)


def test_transition_elements_four_qubit():
    plan = lstf_plan(3)
    for s in (0.05, 0.10, 0.15):
        eigsys = eigensystem(hamiltonian_at(FOUR_QUBIT, plan, s))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            ls = build_lindblads(eigsys, CouplingSpec("x"), 1.0)
        assert abs(ls.transition_element("x", 3, 1, 0)) == pytest.approx(1.0, abs=1e-9)
        for q in (0, 1, 2):
            assert abs(ls.transition_element("x", q, 1, 0)) < 1e-12


def test_zero_coupling_matches_closed(frustrated):
    run = AnnealRun(frustrated, aqa_plan(), 10.0, rtol=1e-8, atol=1e-10)
    rho = evolve_ame(run, BathSpec(eta_g2=0.0), CouplingSpec("x")).state
    psi = evolve_schrodinger(AnnealRun(frustrated, aqa_plan(), 10.0)).state
    assert _trace_distance(rho, np.outer(psi, psi.conj())) <= 1e-6


def test_trace_preserved_and_x_damps_success(frustrated):
    run = AnnealRun(frustrated, lstf_plan(1), 10.0, rtol=1e-8, atol=1e-10)
    r = evolve_ame(run, BathSpec(), CouplingSpec("x"))
    assert abs(np.trace(r.state).real - 1.0) <= 1e-7
    np.testing.assert_allclose(r.state, r.state.conj().T, atol=1e-9)
    closed = evolve_schrodinger(AnnealRun(frustrated, lstf_plan(1), 10.0))
    assert r.success_probability < closed.success_probability
    assert r.success_probability == pytest.approx(0.988642804, abs=1e-6)


def test_gibbs_fixed_point(frustrated):
    bath = BathSpec(eta_g2=1e-2)
    run = AnnealRun(frustrated, aqa_plan(), 120.0, rtol=1e-8, atol=1e-10)
    r = evolve_ame(run, bath, CouplingSpec("x"), freeze_s=0.6)
    w, V = np.linalg.eigh(hamiltonian_at(frustrated, aqa_plan(), 0.6))
    pops = np.real(np.diag(V.conj().T @ r.state @ V))
    gibbs = np.exp(-bath.beta * TWO_PI * (w - w[0]))
    gibbs /= gibbs.sum()
    np.testing.assert_allclose(pops, gibbs, rtol=2e-2)


def test_population_report(frustrated):
    run = AnnealRun(frustrated, aqa_plan(), 5.0, rtol=1e-8, atol=1e-8)
    s, pops = eigenstate_populations(run, BathSpec(), CouplingSpec("x"),
                                     s_report=np.linspace(0.0, 1.0, 11))
    assert s.shape == (11,)
    assert pops.shape == (11, 4)
    assert pops[0, 0] == pytest.approx(1.0, abs=1e-8)
    np.testing.assert_allclose(pops.sum(axis=1), 1.0, atol=1e-7)
    assert np.all(pops >= 0.0)


def test_frustration_sweep_shape():
    bath = BathSpec()
    rows = frustration_sweep([0.8], bath, [2.0], rtol=1e-7, atol=1e-7)
    assert len(rows) == 1
    row = rows[0]
    assert row.f == 0.8
    assert row.s_plus == pytest.approx(0.7517, abs=2e-3)
    assert row.intervals[0] == pytest.approx(2.0 * (row.s_plus - 0.2))
    assert 0.0 < row.probabilities[0] <= 1.0


def test_x_magnetization_driver_gauge(frustrated):
    s, m_x = x_magnetization_report(frustrated, aqa_plan(),
                                    s_grid=np.linspace(0.0, 1.0, 21))
    assert m_x.shape == (21, 2)
    np.testing.assert_allclose(m_x[0], [1.0, 1.0], atol=1e-9)
    assert np.all(np.abs(m_x[~np.isnan(m_x[:, 0])]) <= 1.0 + 1e-9)


def test_positivity_error_hierarchy():
    assert issubclass(PositivityError, IntegrationError)

"""Reconstruct the bundled 7-qubit instance's edge list from its statistics.

The published fields are known exactly; the 10-edge graph is not.  This
script screens all connected 10-edge graphs on 7 labeled vertices
against the instance's quoted behavior, in stages of increasing cost:

  A  enumerate connected 10-edge subsets of K7 (352716 -> ~hundreds of
     thousands)
  B  classical screen: unique ground state with qubits 0, 2, 5 (0-based)
     aligned against their fields
  C  batched split-step linear anneal at t_an = 100 ns; keep graphs with
     ground population in a loose window around 0.00935
  D  split-step screen of the target-0 run over the post-flip window
  E1 float64 split-step refinement, exact TTS band plus calibrated guard
  E2 ground-crossing counts per target sector (target 0: 2, target 4: 1,
     target 6: 3)
  E3 full adaptive-integrator verification of every band, crossing
     structure, and the small-gap classification

Thirteen graphs survive E3; a final ranking by the implied raw
time-to-solution pair (quoted as 46.7 ns and 49 us) separates them
cleanly and fixes the bundled edge list.  The target-0 and target-4
counts in E2 are not load-bearing: relaxing E2 to the target-6 count
alone admits 95 more graphs, and every one of them has a target-0 loss
of at most 2.1e-5, well below the timing-band floor of 3.1e-5, so the
E3 output is identical either way.

Stages A-D are float32 screens tuned to be generous; E re-verifies every
survivor with the package integrator, so false positives in the screens
cost time, not correctness.  Run time is a few hours on one core.

Usage: python3 find_reference_instance.py [--workdir DIR] [--through STAGE]
"""

import argparse
import itertools
import os
import time

import numpy as np

from lstf.closed_dynamics import AnnealRun, evolve_schrodinger
from lstf.instances import REFERENCE_H_Z
from lstf.problems import IsingProblem, spin_table
from lstf.schedules import aqa_plan, lstf_plan
from lstf.spectrum import hamiltonian_at, trace_spectrum

N = 7
DIM = 128
T_AN = 100.0
EDGES = list(itertools.combinations(range(N), 2))
Z = spin_table(N)                      # (128, 7)
FIELD = Z @ np.asarray(REFERENCE_H_Z)  # (128,)
PAIR = np.stack([Z[:, i] * Z[:, j] for i, j in EDGES], axis=1)  # (128, 21)

# +-5% TTS bands mapped back to probabilities at t_an = 100 ns
AQA_P_BAND = (0.0089114, 0.0098441)        # 49 us raw TTS
K0_LOSS_BAND = (3.102e-5, 8.338e-5)        # 1 - p for 46.7 ns raw TTS
SG_THRESHOLD = 1.0 / (2.0 * np.pi)
ALIGNED = (0, 2, 5)                        # bits fixed to 1 in the ground state


def classical_diagonals(combos):
    """(B, 128) problem diagonals for a batch of 10-edge index rows."""
    return (FIELD[:, None] - 0.5 * PAIR[:, combos].sum(axis=2)).T


def problem_for(combo):
    edges = tuple(EDGES[c] for c in combo)
    return IsingProblem(N, edges, tuple(REFERENCE_H_Z), (-0.5,) * len(edges),
                        (1.0,) * N)


def connected(edge_idx):
    adj = [0] * N
    for e in edge_idx:
        i, j = EDGES[e]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    seen, frontier = 1, adj[0]
    while frontier & ~seen:
        new = frontier & ~seen
        seen |= new
        frontier = 0
        while new:
            low = new & -new
            frontier |= adj[low.bit_length() - 1]
            new ^= low
    return seen == (1 << N) - 1


def stage_ab(workdir):
    """Connected enumeration plus the classical ground-state screen."""
    t0 = time.time()
    combos = np.array(
        [c for c in itertools.combinations(range(len(EDGES)), 10) if connected(c)],
        dtype=np.int8,
    )
    print(f"A: {len(combos)} connected graphs ({time.time() - t0:.0f}s)", flush=True)

    bits = (np.arange(DIM)[:, None] >> np.arange(N - 1, -1, -1)[None, :]) & 1
    keep = []
    for start in range(0, len(combos), 20000):
        batch = combos[start:start + 20000]
        E = classical_diagonals(batch).T        # (128, B)
        order = np.argsort(E, axis=0)
        g, g1 = order[0], order[1]
        cols = np.arange(batch.shape[0])
        unique = (E[g1, cols] - E[g, cols]) > 1e-9
        aligned = np.all(bits[g][:, ALIGNED] == 1, axis=1)
        keep.extend((start + np.where(unique & aligned)[0]).tolist())
    combos = combos[keep]
    np.save(os.path.join(workdir, "stageB.npy"), combos)
    print(f"B: {len(combos)} classical survivors ({time.time() - t0:.0f}s)", flush=True)
    return combos


def x_half_layers(psi, n, theta):
    """Apply exp(-i theta sigma^x) on every qubit of a (B, D) batch."""
    c = psi.dtype.type(np.cos(theta))
    js = psi.dtype.type(1j * np.sin(theta))
    B, D = psi.shape
    for i in range(n):
        blk = 1 << (n - 1 - i)
        v = psi.reshape(B, D // (2 * blk), 2, blk)
        a0 = v[:, :, 0, :].copy()
        a1 = v[:, :, 1, :].copy()
        v[:, :, 0, :] = c * a0 - js * a1
        v[:, :, 1, :] = c * a1 - js * a0


def split_step_anneal(diags, t_an, n_steps, n_qubits, dtype=np.complex64):
    """Strang-split linear anneal of a batch of diagonal problems.

    X half-layers of adjacent steps are fused into one layer, and the
    diagonal phases advance geometrically; periodic renormalization
    absorbs float32 drift.
    """
    B, D = diags.shape
    dt = t_an / n_steps
    parity = (-1.0) ** np.bitwise_count(np.arange(D))
    psi = np.repeat((parity / np.sqrt(D)).astype(dtype)[None, :], B, axis=0)
    s_mid = (np.arange(n_steps) + 0.5) / n_steps
    u = (-2j * np.pi * dt) * diags.astype(np.complex128)
    ratio = np.exp(u / n_steps).astype(dtype)
    cur = np.exp(u * s_mid[0]).astype(dtype)
    theta = np.pi * dt * (1.0 - s_mid)
    x_half_layers(psi, n_qubits, theta[0])
    for m in range(n_steps):
        psi *= cur
        if m + 1 < n_steps:
            cur *= ratio
            x_half_layers(psi, n_qubits, theta[m] + theta[m + 1])
        else:
            x_half_layers(psi, n_qubits, theta[m])
        if (m & 511) == 511:
            np.divide(cur, np.abs(cur), out=cur)
            np.divide(psi, np.linalg.norm(psi, axis=1, keepdims=True), out=psi)
    return psi / np.linalg.norm(psi, axis=1, keepdims=True)


def ground_population(combos, psi):
    diag = classical_diagonals(combos)
    return np.abs(psi[np.arange(len(combos)), diag.argmin(axis=1)]) ** 2


def stage_c(workdir, combos):
    """Loose linear-anneal window around the quoted success probability."""
    t0 = time.time()
    keep = []
    for start in range(0, len(combos), 4096):
        batch = combos[start:start + 4096]
        psi = split_step_anneal(classical_diagonals(batch), T_AN, 5000, N)
        p = ground_population(batch, psi)
        keep.extend((start + np.where((p > 0.003) & (p < 0.025))[0]).tolist())
        print(f"  C: {min(start + 4096, len(combos))}/{len(combos)} "
              f"kept={len(keep)} ({time.time() - t0:.0f}s)", flush=True)
    combos = combos[keep]
    np.save(os.path.join(workdir, "stageC.npy"), combos)
    print(f"C: {len(combos)} survivors", flush=True)
    return combos


def stage_d(workdir, combos):
    """Screen the target-0 protocol inside the conserved low sector.

    With qubit 0's drive off, its Z is conserved and the post-flip
    window acts like a 6-qubit linear anneal over the sector holding the
    classical ground; demand near-unit sector fidelity.
    """
    t0 = time.time()
    sector = np.flatnonzero((np.arange(DIM) >> (N - 1)) & 1)
    keep = []
    for start in range(0, len(combos), 4096):
        batch = combos[start:start + 4096]
        diags = classical_diagonals(batch)[:, sector]
        psi = split_step_anneal(diags, 0.8 * T_AN, 4000, N - 1)
        ground = diags.argmin(axis=1)
        p = np.abs(psi[np.arange(len(batch)), ground]) ** 2
        keep.extend((start + np.where(p > 0.995)[0]).tolist())
    combos = combos[keep]
    np.save(os.path.join(workdir, "stageD.npy"), combos)
    print(f"D: {len(combos)} survivors ({time.time() - t0:.0f}s)", flush=True)
    return combos


def package_success(problem, plan, rtol):
    run = AnnealRun(problem, plan, T_AN, rtol=rtol, atol=rtol)
    return evolve_schrodinger(run).success_probability


def stage_e1(workdir, combos):
    """float64 split-step refinement against the exact band plus a guard."""
    probe = combos[np.linspace(0, len(combos) - 1, 3).astype(int)]
    psi = split_step_anneal(classical_diagonals(probe), T_AN, 20000, N,
                            dtype=np.complex128)
    errs = [
        abs(package_success(problem_for(row), aqa_plan(), 1e-9) - p)
        for row, p in zip(probe, ground_population(probe, psi))
    ]
    guard = max(3 * max(errs), 5e-5)
    print(f"  E1 guard = {guard:.2e}", flush=True)

    t0 = time.time()
    keep = []
    for start in range(0, len(combos), 2048):
        batch = combos[start:start + 2048]
        psi = split_step_anneal(classical_diagonals(batch), T_AN, 20000, N,
                                dtype=np.complex128)
        p = ground_population(batch, psi)
        sel = (p > AQA_P_BAND[0] - guard) & (p < AQA_P_BAND[1] + guard)
        keep.extend((start + np.where(sel)[0]).tolist())
        print(f"  E1: {min(start + 2048, len(combos))}/{len(combos)} "
              f"kept={len(keep)} ({time.time() - t0:.0f}s)", flush=True)
    combos = combos[keep]
    np.save(os.path.join(workdir, "stageE1.npy"), combos)
    print(f"E1: {len(combos)} survivors", flush=True)
    return combos


def sector_crossings(problem, k, n_grid=161):
    """Sign flips of the ground-energy difference between target sectors."""
    plan = lstf_plan(k)
    bit = 1 << (N - 1 - k)
    hi = np.flatnonzero(np.arange(DIM) & bit)
    lo = np.flatnonzero(~np.arange(DIM) & bit)
    diff = np.empty(n_grid)
    for m, s in enumerate(np.linspace(0.0, 1.0, n_grid)):
        H = hamiltonian_at(problem, plan, s)
        diff[m] = (np.linalg.eigvalsh(H[np.ix_(hi, hi)])[0]
                   - np.linalg.eigvalsh(H[np.ix_(lo, lo)])[0])
    sign = np.sign(diff)
    sign[np.abs(diff) < 1e-13] = 0.0
    sign = sign[sign != 0.0]
    return int(np.sum(sign[1:] * sign[:-1] < 0))


def stage_e2(workdir, combos):
    t0 = time.time()
    keep = []
    for i, combo in enumerate(combos):
        problem = problem_for(combo)
        if (sector_crossings(problem, 4) == 1
                and sector_crossings(problem, 6) == 3
                and sector_crossings(problem, 0) == 2):
            keep.append(i)
        if i % 25 == 24:
            print(f"  E2: {i + 1}/{len(combos)} kept={len(keep)} "
                  f"({time.time() - t0:.0f}s)", flush=True)
    combos = combos[keep]
    np.save(os.path.join(workdir, "stageE2.npy"), combos)
    print(f"E2: {len(combos)} survivors", flush=True)
    return combos


def stage_e3(workdir, combos):
    finals = []
    t0 = time.time()
    for combo in combos:
        problem = problem_for(combo)
        p_aqa = package_success(problem, aqa_plan(), 1e-8)
        if not AQA_P_BAND[0] <= p_aqa <= AQA_P_BAND[1]:
            continue
        p0 = package_success(problem, lstf_plan(0), 1e-8)
        if not K0_LOSS_BAND[0] <= 1.0 - p0 <= K0_LOSS_BAND[1]:
            continue
        p_k = [p0] + [package_success(problem, lstf_plan(k), 1e-8)
                      for k in range(1, N)]
        if [k for k in range(N) if p_k[k] > 0.99] != [0, 2, 5]:
            continue
        trace = trace_spectrum(problem, aqa_plan(), grid_resolution=601)
        if trace.gap_at_s_star > SG_THRESHOLD:
            continue
        finals.append((combo, p_aqa, p0))
        print(f"  E3 PASS {[EDGES[c] for c in combo]} aqa={p_aqa:.7f} "
              f"p0={p0:.7f} gap={trace.gap_at_s_star:.6f} "
              f"({time.time() - t0:.0f}s)", flush=True)
    if finals:
        np.save(os.path.join(workdir, "finals.npy"),
                np.array([c for c, _, _ in finals]))
    print(f"E3: {len(finals)} final candidates", flush=True)
    return finals


def stage_rank(finals):
    """Order survivors by the implied headline timings.

    Every E3 survivor sits inside the +-5% bands; the deciding signal
    is how close the implied raw times-to-solution land to the quoted
    46.7 ns / 49 us pair.  The winner reproduces both to ~0.15%; the
    runner-up is off by 2.4% on the fast one.
    """
    ln_pd = np.log(0.01)
    scored = []
    for combo, p_aqa, p0 in finals:
        tts_dqa = T_AN * ln_pd / np.log1p(-p0)
        tts_aqa = T_AN * ln_pd / np.log1p(-p_aqa)
        dev = max(abs(tts_dqa - 46.7) / 46.7, abs(tts_aqa - 49e3) / 49e3)
        scored.append((dev, tts_dqa, tts_aqa, combo))
    scored.sort(key=lambda row: row[0])
    for dev, tts_dqa, tts_aqa, combo in scored:
        print(f"rank dev={dev:.4f} tts_dqa={tts_dqa:.2f} ns "
              f"tts_aqa={tts_aqa / 1e3:.2f} us "
              f"edges={tuple(EDGES[c] for c in combo)}", flush=True)
    best = tuple(EDGES[c] for c in scored[0][3])
    print("WINNER edges =", best, flush=True)
    return best


STAGES = ("ab", "c", "d", "e1", "e2", "e3")


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--workdir", default="search_work")
    parser.add_argument("--through", default="e3", choices=STAGES,
                        help="run up to and including this stage")
    args = parser.parse_args()
    os.makedirs(args.workdir, exist_ok=True)
    last = STAGES.index(args.through)

    combos = stage_ab(args.workdir)
    for idx, (name, fn) in enumerate(
        (("c", stage_c), ("d", stage_d), ("e1", stage_e1),
         ("e2", stage_e2), ("e3", stage_e3)), start=1
    ):
        if idx > last:
            break
        checkpoint = os.path.join(args.workdir, f"stage{name.upper()}.npy")
        if os.path.exists(checkpoint) and name != "e3":
            combos = np.load(checkpoint)
            print(f"{name}: loaded checkpoint ({len(combos)})", flush=True)
        else:
            combos = fn(args.workdir, combos)
    if args.through == "e3" and combos:
        stage_rank(combos)


if __name__ == "__main__":
    main()

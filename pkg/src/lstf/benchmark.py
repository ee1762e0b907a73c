"""Randomized graph benchmarks and the per-qubit heuristic.

Instance generation: connected non-isomorphic 7-vertex graphs are drawn
by randomly thinning the complete graph; longitudinal fields are iid
standard normals rescaled so the largest magnitude is exactly R;
couplers are uniformly -R/2 and transverse fields R.  The heuristic runs
one linear anneal plus one target-qubit run per nonzero field and keeps
the lowest-energy outcome.  All randomness flows from named Philox
streams so campaigns are reproducible byte for byte.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .closed_dynamics import AnnealRun, evolve_schrodinger
from .problems import IsingProblem
from .schedules import aqa_plan, lstf_plan
from .spectrum import trace_spectrum
from .units import TWO_PI

SG_GAP_THRESHOLD = 1.0 / TWO_PI


class FamilyExhaustedError(RuntimeError):
    """Could not accumulate enough non-isomorphic graphs."""


def canonical_form(edges, n_vertices):
    """Lexicographically minimal edge tuple over all vertex relabelings.

    Brute force over all n! permutations; the independent oracle behind
    isomorphism rejection.
    """
    best = None
    for perm in itertools.permutations(range(n_vertices)):
        relabeled = tuple(sorted(
            (min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in edges
        ))
        if best is None or relabeled < best:
            best = relabeled
    return best


@dataclass(frozen=True)
class GraphFamily:
    """A set of connected, pairwise non-isomorphic graphs of one size."""

    n_vertices: int
    edge_count: int
    graphs: tuple
    seed: object


def _rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _thin_complete_graph(rng, n_vertices, edge_count):
    edges = list(itertools.combinations(range(n_vertices), 2))
    while len(edges) > edge_count:
        order = rng.permutation(len(edges))
        for pick in order:
            trial = edges[:pick] + edges[pick + 1:]
            g = nx.Graph(trial)
            g.add_nodes_from(range(n_vertices))
            if nx.is_connected(g):
                edges = trial
                break
        else:
            return None
    return tuple(edges)


def generate_graph_family(edge_count, seed, n_vertices=7, family_size=10,
                          max_tries=4000):
    """Thin the complete graph repeatedly until 10 distinct graphs remain.

    Removals that disconnect are rejected; isomorphic duplicates are
    discarded (networkx matcher, cross-checked against the exhaustive
    permutation canonical form).  Deterministic for a given seed.
    """
    max_edges = n_vertices * (n_vertices - 1) // 2
    if not n_vertices - 1 <= edge_count <= max_edges:
        raise ValueError(
            f"edge_count must lie in [{n_vertices - 1}, {max_edges}], got {edge_count}"
        )
    rng = _rng_from(seed)
    accepted = []
    accepted_nx = []
    for _ in range(max_tries):
        edges = _thin_complete_graph(rng, n_vertices, edge_count)
        if edges is None:
            continue
        g = nx.Graph(edges)
        g.add_nodes_from(range(n_vertices))
        if any(nx.is_isomorphic(g, h) for h in accepted_nx):
            continue
        accepted.append(edges)
        accepted_nx.append(g)
        if len(accepted) == family_size:
            break
    else:
        raise FamilyExhaustedError(
            f"found only {len(accepted)} non-isomorphic graphs with "
            f"{edge_count} edges in {max_tries} draws"
        )
    forms = {canonical_form(e, n_vertices) for e in accepted}
    if len(forms) != len(accepted):
        raise RuntimeError("isomorphism rejection disagreed with the brute-force oracle")
    return GraphFamily(
        n_vertices=n_vertices, edge_count=edge_count, graphs=tuple(accepted), seed=seed
    )


def draw_fields(seed, n_qubits=7, energy_scale=1.0):
    """iid standard-normal fields rescaled so max |h_z| = R exactly."""
    rng = _rng_from(seed)
    h = rng.standard_normal(n_qubits)
    return h * (energy_scale / np.max(np.abs(h)))


def build_random_problem(edges, h_z, energy_scale=1.0):
    """Problem with the drawn fields, J = -R/2 couplers, h_x = R."""
    n = int(max(max(e) for e in edges)) + 1
    return IsingProblem(
        n_qubits=n,
        edges=tuple(edges),
        h_z=tuple(float(x) for x in h_z),
        j_zz=(-0.5 * energy_scale,) * len(edges),
        h_x=(energy_scale,) * n,
        energy_scale=energy_scale,
    )


def classify(problem, grid_resolution=1001):
    """SG (small gap) iff the linear-anneal minimum gap is <= 1/(2*pi) GHz."""
    trace = trace_spectrum(problem, aqa_plan(), grid_resolution=grid_resolution)
    return "SG" if trace.gap_at_s_star <= SG_GAP_THRESHOLD else "LG"


@dataclass(frozen=True)
class HeuristicReport:
    """Linear baseline plus one target-qubit run per nonzero field."""

    aqa: object
    lstf: tuple
    best_k: object
    best: object

    @property
    def speedup(self):
        """Raw-TTS ratio of the linear baseline to the best outcome."""
        if self.best.tts_raw == 0.0:
            return np.inf
        return self.aqa.tts_raw / self.best.tts_raw


def run_heuristic(problem, t_an=100.0, s_x=0.2, rtol=1e-8, atol=1e-8):
    """AQA baseline, then one LSTF run per qubit with a nonzero field."""
    if t_an <= 0:
        raise ValueError("t_an must be positive")
    aqa = evolve_schrodinger(AnnealRun(problem, aqa_plan(), t_an, rtol, atol))
    best, best_k = aqa, None
    per_qubit = []
    for k in range(problem.n_qubits):
        if problem.h_z[k] == 0.0:
            continue
        res = evolve_schrodinger(
            AnnealRun(problem, lstf_plan(k, s_x=s_x), t_an, rtol, atol)
        )
        per_qubit.append((k, res))
        if res.energy_residual < best.energy_residual:
            best, best_k = res, k
    return HeuristicReport(aqa=aqa, lstf=tuple(per_qubit), best_k=best_k, best=best)


@dataclass(frozen=True)
class SampleRecord:
    group: int
    index: int
    edge_count: int
    graph_index: int
    edges: tuple
    h_z: tuple
    classification: str
    dqa_win: bool
    best_k: object
    aqa: dict
    lstf: tuple

    def to_json_dict(self):
        return {
            "group": self.group,
            "index": self.index,
            "edge_count": self.edge_count,
            "graph_index": self.graph_index,
            "edges": [list(e) for e in self.edges],
            "h_z": list(self.h_z),
            "classification": self.classification,
            "dqa_win": self.dqa_win,
            "best_k": self.best_k,
            "aqa": self.aqa,
            "lstf": [dict(d) for d in self.lstf],
        }


def _protocol_summary(result, k=None):
    out = {
        "success": result.success_probability,
        "energy_residual": result.energy_residual,
        "tts": None if np.isinf(result.tts) else result.tts,
        "tts_raw": None if np.isinf(result.tts_raw) else result.tts_raw,
    }
    if k is not None:
        out["target"] = k
    return out


def _run_sample(args):
    (seed, group_idx, index, edge_count, graphs, t_an, s_x, rtol, grid_resolution) = args
    ss = np.random.SeedSequence((seed, group_idx, index))
    rng = np.random.Generator(np.random.Philox(ss))
    graph_index = int(rng.integers(len(graphs)))
    h_z = draw_fields(rng)
    problem = build_random_problem(graphs[graph_index], h_z)
    label = classify(problem, grid_resolution=grid_resolution)
    report = run_heuristic(problem, t_an=t_an, s_x=s_x, rtol=rtol, atol=rtol)
    aqa_res = report.aqa.energy_residual
    lstf_res = [r.energy_residual for _, r in report.lstf]
    win = bool(lstf_res and min(lstf_res) < aqa_res)
    return SampleRecord(
        group=group_idx,
        index=index,
        edge_count=edge_count,
        graph_index=graph_index,
        edges=tuple(problem.edges),
        h_z=tuple(h_z),
        classification=label,
        dqa_win=win,
        best_k=report.best_k,
        aqa=_protocol_summary(report.aqa),
        lstf=tuple(_protocol_summary(r, k) for k, r in report.lstf),
    )


@dataclass(frozen=True)
class GroupSummary:
    edge_counts: tuple
    n_samples: int
    dqa_win_rate: float
    sg_fraction: float
    sg_dqa_win_rate: float


@dataclass(frozen=True)
class CampaignResult:
    summaries: tuple
    records: tuple
    metadata: dict


def run_campaign(edge_groups=((6, 8), (10, 12), (14, 16)), samples_per_group=100,
                 seed=7, t_an=100.0, s_x=0.2, workers=1, rtol=1e-8,
                 grid_resolution=1001):
    """Win statistics over random instances, grouped by connectivity.

    Samples alternate between the two edge counts of each group (even
    split); each sample picks one of the family's ten graphs uniformly
    and draws fresh fields.  Deterministic for fixed seed, independent
    of worker count.
    """
    families = {}
    for group in edge_groups:
        for count in group:
            if count not in families:
                families[count] = generate_graph_family(count, seed=(seed, 91, count))

    jobs = []
    for g_idx, group in enumerate(edge_groups):
        for i in range(samples_per_group):
            count = group[i % len(group)]
            jobs.append((
                seed, g_idx, i, count, families[count].graphs,
                t_an, s_x, rtol, grid_resolution,
            ))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_sample, jobs, chunksize=4))
    else:
        records = [_run_sample(j) for j in jobs]

    summaries = []
    for g_idx, group in enumerate(edge_groups):
        sub = [r for r in records if r.group == g_idx]
        wins = [r.dqa_win for r in sub]
        sg = [r for r in sub if r.classification == "SG"]
        sg_wins = [r.dqa_win for r in sg]
        summaries.append(GroupSummary(
            edge_counts=tuple(group),
            n_samples=len(sub),
            dqa_win_rate=100.0 * np.mean(wins) if wins else np.nan,
            sg_fraction=100.0 * len(sg) / len(sub) if sub else np.nan,
            sg_dqa_win_rate=100.0 * np.mean(sg_wins) if sg_wins else np.nan,
        ))
    metadata = {
        "seed": seed,
        "t_an": t_an,
        "s_x": s_x,
        "rtol": rtol,
        "samples_per_group": samples_per_group,
        "edge_split": "even across the two counts in each group",
    }
    return CampaignResult(
        summaries=tuple(summaries), records=tuple(records), metadata=metadata
    )

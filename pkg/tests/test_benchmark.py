import json

import networkx as nx
import numpy as np
import pytest

from lstf.benchmark import (
    SG_GAP_THRESHOLD,
    FamilyExhaustedError,
    build_random_problem,
    canonical_form,
    classify,
    draw_fields,
    generate_graph_family,
    run_campaign,
    run_heuristic,
)
from lstf.problems import IsingProblem
from lstf.units import TWO_PI


def test_sg_threshold_value():
    assert SG_GAP_THRESHOLD == pytest.approx(1.0 / TWO_PI)


def test_canonical_form_relabel_invariant(rng):
    edges = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4))
    base = canonical_form(edges, 5)
    for _ in range(5):
        perm = rng.permutation(5)
        relabeled = tuple(
            (min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in edges
        )
        assert canonical_form(relabeled, 5) == base
    # a genuinely different graph gets a different form
    other = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2))
    path = ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3))
    assert canonical_form(other, 5) == base or not nx.is_isomorphic(
        nx.Graph(other), nx.Graph(edges)
    )
    assert canonical_form(path, 5) != base or nx.is_isomorphic(
        nx.Graph(path), nx.Graph(edges)
    )


def test_graph_family_properties():
    fam = generate_graph_family(10, seed=3)
    assert fam.edge_count == 10
    assert len(fam.graphs) == 10
    forms = set()
    for edges in fam.graphs:
        assert len(edges) == 10
        g = nx.Graph(edges)
        g.add_nodes_from(range(7))
        assert nx.is_connected(g)
        forms.add(canonical_form(edges, 7))
    assert len(forms) == 10
    again = generate_graph_family(10, seed=3)
    assert again.graphs == fam.graphs
    other = generate_graph_family(10, seed=4)
    assert other.graphs != fam.graphs


def test_graph_family_validation():
    with pytest.raises(ValueError):
        generate_graph_family(5, seed=0)
    with pytest.raises(ValueError):
        generate_graph_family(22, seed=0)
    with pytest.raises(FamilyExhaustedError):
        generate_graph_family(6, seed=0, max_tries=1, family_size=2)


def test_draw_fields_normalization():
    h = draw_fields(42)
    assert h.shape == (7,)
    assert np.max(np.abs(h)) == pytest.approx(1.0, abs=1e-15)
    assert np.max(np.abs(draw_fields(42, energy_scale=2.5))) == pytest.approx(2.5)
    np.testing.assert_array_equal(h, draw_fields(42))
    assert not np.array_equal(h, draw_fields(43))


def test_build_random_problem():
    edges = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6))
    p = build_random_problem(edges, draw_fields(1), energy_scale=1.0)
    assert p.n_qubits == 7
    assert p.j_zz == (-0.5,) * 6
    assert p.h_x == (1.0,) * 7


def test_classify_two_qubit(frustrated, suppressed):
    assert classify(frustrated, grid_resolution=301) == "LG"
    assert classify(suppressed, grid_resolution=301) == "SG"


def test_heuristic_two_qubit(frustrated):
    report = run_heuristic(frustrated, t_an=10.0)
    assert report.best_k == 1
    assert [k for k, _ in report.lstf] == [0, 1]
    assert report.best.success_probability == pytest.approx(
        0.99991989910628731, rel=1e-9
    )
    assert report.speedup == pytest.approx(2.6365886310364219, rel=1e-9)
    assert report.best.energy_residual < report.aqa.energy_residual
    with pytest.raises(ValueError):
        run_heuristic(frustrated, t_an=0.0)


def test_heuristic_skips_zero_fields():
    p = IsingProblem(2, ((0, 1),), (1.0, 0.0), (-0.5,), (1.0, 1.0))
    report = run_heuristic(p, t_an=2.0)
    assert [k for k, _ in report.lstf] == [0]


@pytest.mark.slow
def test_tiny_campaign_deterministic():
    kw = dict(edge_groups=((6, 8),), samples_per_group=2, seed=5, t_an=5.0,
              rtol=1e-7, grid_resolution=301)
    a = run_campaign(**kw)
    b = run_campaign(**kw)
    assert len(a.records) == 2
    ja = [json.dumps(r.to_json_dict(), sort_keys=True) for r in a.records]
    jb = [json.dumps(r.to_json_dict(), sort_keys=True) for r in b.records]
    assert ja == jb
    s = a.summaries[0]
    assert s.edge_counts == (6, 8)
    assert s.n_samples == 2
    edge_counts = sorted(r.edge_count for r in a.records)
    assert edge_counts == [6, 8]
    for r in a.records:
        assert r.classification in ("SG", "LG")
        assert len(r.h_z) == 7
        assert max(abs(h) for h in r.h_z) == pytest.approx(1.0)

import json
import math

import numpy as np
import pytest

import girglab as gl


def test_geometry():
    assert gl.torus_abs(0.1, 0.9) == pytest.approx(0.2)
    assert gl.mcd_distance([0.1, 0.9], [0.2, 0.3]) == pytest.approx(0.1)
    assert gl.linf_distance([0.1, 0.9], [0.2, 0.3]) == pytest.approx(0.4)
    assert gl.volume_min(0.25, 2) == pytest.approx(0.75)
    assert gl.sample_weight(0.125, 2.5) == pytest.approx(4.0)


def test_sampling_matches_naive():
    p = gl.ModelParams(n=400, d=2, seed=3)
    g = gl.sample_graph(p, gamma=1.0)
    h = gl.sample_graph_naive(p)
    assert np.array_equal(g.edges(), h.edges())
    assert g.positions().shape == (400, 2)
    assert g.weights().min() >= 1.0


def test_invalid_params():
    with pytest.raises(ValueError):
        gl.ModelParams(tau=1.5)


def test_small_graph_oracles():
    k4 = gl.Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert gl.spectral_gap(k4) == pytest.approx(4 / 3)
    lo, hi = gl.cheeger_bounds(4 / 3)
    assert hi == pytest.approx(math.sqrt(8 / 3))
    path = gl.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert gl.expansion_ratio(path, [0, 1]) == 0.5
    assert gl.brute_force_min_expansion(path, 2) == ([0, 1], 0.5)
    assert gl.stationary_distribution(gl.Graph(3, [(0, 1), (1, 2)])) == [0.25, 0.5, 0.25]
    assert gl.si_spread_rounds(gl.Graph(3, [(0, 1), (1, 2)]), 0, 1.0, 1.0, 0) == 2
    assert gl.push_rumor_rounds(gl.Graph(2, [(0, 1)]), 0, 1.0, 0) == 1


def test_strips_and_bounds():
    assert gl.strip_width(1000, 1.0)[0] == 20
    with pytest.raises(ValueError):
        gl.strip_width(1000, 2.0)
    assert gl.cover_bound(10, 3, 1, 5, 2) == pytest.approx(0.192)


def test_induce_and_processes():
    g = gl.sample_graph(gl.ModelParams(n=3000, seed=1), gamma=1.0)
    band = gl.induce(g, "weight_band", 1.2)
    assert 0 < band.num_vertices < g.num_vertices
    giant = gl.largest_component(g)
    assert gl.component_count(giant) == 1
    assert gl.mixing_time(giant, 0.05) > 0
    assert gl.spectral_gap(giant) > 0


def test_roundtrip(tmp_path):
    g = gl.sample_graph(gl.ModelParams(n=200, seed=2))
    gl.save_graph(g, str(tmp_path / "e"), str(tmp_path / "v"))
    h = gl.load_graph(str(tmp_path / "e"), str(tmp_path / "v"))
    assert np.array_equal(g.edges(), h.edges())
    assert np.array_equal(g.positions(), h.positions())
    (tmp_path / "bad").write_text("girg-edges v1 n=3 m=2\n0 1\n0 1\n")
    with pytest.raises(ValueError):
        gl.load_graph(str(tmp_path / "bad"))


def test_run_experiment(tmp_path):
    cfg = {
        "model": {"n": 500},
        "seeds": [1],
        "analyses": ["generate", "spectral"],
        "analysis": {"target": "giant"},
        "output": {"dir": str(tmp_path)},
    }
    out = gl.run_experiment(json.dumps(cfg))
    assert out["exit_status"] == 0
    text = open(out["results"]).read()
    assert text.startswith("experiment,seed,metric,key,value\n")
    assert "lambda2" in text
    with pytest.raises(ValueError):
        gl.run_experiment(json.dumps({"analyses": ["nope"]}))

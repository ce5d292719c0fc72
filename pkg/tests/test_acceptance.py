"""Acceptance gate: one test per criterion, each recorded as a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section of the terminal summary.
"""

import json
import time

import numpy as np
import pytest

from lnpe.cli import main
from lnpe.datasets import generate
from lnpe.io import read_csv, split_columns
from lnpe.metrics import trustworthiness
from lnpe.neighbors import knn_graph, weak_component_count
from lnpe.pipeline import lle, lnpe
from lnpe.propagation import PropagationConfig, run_propagation
from lnpe.weights import solve_local_weights
from oracles import (
    dense_lle,
    dense_lnpe_objective,
    exact_hop_support,
    kkt_weights,
    match_up_to_sign,
)

SETTINGS = {
    # name: (n, sigma, k)
    "s-curve": (1000, 1e-3, 7),
    "swiss-roll": (1000, 1e-4, 7),
    "sphere": (300, 1e-2, 5),
    "helix": (500, 1e-2, 5),
}

# first verified run of LNPE (t=2) on Swiss roll n=1000, seed 0, k=7,
# sigma=1e-4, k_eval=12
SWISS_TRUST_BASELINE = 0.9935400747155714


def test_c1_lle_reduction_oracle(criterion):
    start = time.perf_counter()
    data = generate("swiss-roll", 300, 0).points
    ref_m, ref_y, _ = dense_lle(data, 7, 1e-4, 2)
    res = lnpe(data, k=7, d=2, t=0, sigma=1e-4)
    elapsed = time.perf_counter() - start
    m_err = np.abs(res.objective - ref_m).max()
    y_err = match_up_to_sign(res.coords, ref_y)
    ok = m_err <= 1e-9 and y_err <= 1e-7 and elapsed < 10
    criterion("C1 LLE reduction", ok, f"M err {m_err:.2e} (<=1e-9), Y err {y_err:.2e} (<=1e-7), {elapsed:.2f}s (<10s)")
    assert ok


def test_c2_weight_solver_oracle(criterion):
    worst, worst_sum = 0.0, 0.0
    for inst in range(50):
        data = np.random.default_rng(1000 + inst).normal(size=(10, 3))
        g = knn_graph(data, 4)
        for sigma in (0.0, 1e-3):
            w = solve_local_weights(data, data, g, sigma)
            worst_sum = max(worst_sum, np.abs(w.column_sums() - 1).max())
            for i in range(10):
                ref = kkt_weights(data[i], data[g.indices[i]], sigma)
                worst = max(worst, np.abs(w.values[i] - ref).max())
    ok = worst <= 1e-8 and worst_sum <= 1e-10
    criterion("C2 weight solver vs KKT", ok, f"max err {worst:.2e} (<=1e-8), max |sum-1| {worst_sum:.2e} (<=1e-10)")
    assert ok


def test_c3_objective_invariants(criterion):
    start = time.perf_counter()
    worst = {"asym": 0.0, "min_eig": np.inf, "null": 0.0}
    for name, (n, sigma, k) in SETTINGS.items():
        data = generate(name, n, 0).points
        g = knn_graph(data, k)
        for t in (0, 1, 2):
            m, _ = run_propagation(data, g, PropagationConfig(t=t, k=k, sigma=sigma))
            worst["asym"] = max(worst["asym"], np.abs(m - m.T).max())
            worst["min_eig"] = min(worst["min_eig"], np.linalg.eigvalsh(m)[0])
            worst["null"] = max(worst["null"], np.abs(m @ np.ones(n)).max())
    elapsed = time.perf_counter() - start
    ok = (worst["asym"] <= 1e-10 and worst["min_eig"] >= -1e-8
          and worst["null"] <= 1e-8 and elapsed < 300)
    criterion(
        "C3 objective invariants",
        ok,
        f"asym {worst['asym']:.1e}, min eig {worst['min_eig']:.1e}, |M1|inf {worst['null']:.1e}, {elapsed:.1f}s",
    )
    assert ok


def test_c4_dense_equivalence_and_reachability(criterion):
    toy = np.array([[0.0, 0.0], [1.0, 0.1], [2.0, -0.1], [3.0, 0.2], [1.5, 1.0], [0.5, 0.8]])
    g = knn_graph(toy, 2)
    m, trace = run_propagation(toy, g, PropagationConfig(t=2, k=2, sigma=1e-3))
    ref_m, _, _, _ = dense_lnpe_objective(toy, 2, 1e-3, 2)
    err = np.abs(m - ref_m).max()
    patterns = all(
        np.array_equal(rec.product.toarray() != 0, exact_hop_support(g.indices, e))
        for e, rec in enumerate(trace, start=1)
    )
    ok = err <= 1e-9 and patterns
    criterion("C4 dense oracle + hop reachability", ok, f"M err {err:.2e} (<=1e-9), patterns exact: {patterns}")
    assert ok


def test_c5_topology_direction(criterion):
    data = generate("swiss-roll", 1000, 0).points
    t_lnpe = trustworthiness(data, lnpe(data, k=7, d=2, t=2, sigma=1e-4).coords, 12)
    t_lle = trustworthiness(data, lle(data, k=7, d=2, sigma=1e-4).coords, 12)
    ok = t_lnpe >= t_lle - 1e-6 and t_lnpe >= 0.80
    criterion("C5 LNPE vs LLE trustworthiness", ok, f"LNPE {t_lnpe:.4f} vs LLE {t_lle:.4f}, floor 0.80")
    assert ok
    assert t_lnpe == pytest.approx(SWISS_TRUST_BASELINE, abs=1e-6)


def _cli(argv):
    return main([str(a) for a in argv])


def test_c6_robustness_sweep(criterion, tmp_path, capsys):
    details, ok = [], True
    for name in ("sphere", "helix"):
        n, sigma, _ = SETTINGS[name]
        high = tmp_path / f"{name}.csv"
        ok &= _cli(["generate", "--dataset", name, "--n", n, "--output", high]) == 0
        header, table = read_csv(high)
        x, _ = split_columns(header, table, "x")
        scores = {}
        for k in (5, 9):
            out = tmp_path / f"{name}-{k}.csv"
            code = _cli(["embed", "--dataset", name, "--n", n, "--k", k,
                         "--sigma", sigma, "--output", out])
            connected = weak_component_count(knn_graph(x, k)) == 1
            ok &= code == 0 and connected
            y, _ = split_columns(*read_csv(out), "y")
            scores[k] = trustworthiness(x, y, 12)
        diff = abs(scores[5] - scores[9])
        ok &= diff <= 0.15
        details.append(f"{name}: T(5)={scores[5]:.4f} T(9)={scores[9]:.4f} |diff|={diff:.4f}")
    capsys.readouterr()
    criterion("C6 robustness k=5..9", ok, "; ".join(details) + " (<=0.15)")
    assert ok


def test_c7_determinism(criterion, tmp_path, capsys):
    names = ("x.csv", "y.csv", "y.svg", "t.csv", "m.json")
    snapshots = []
    for _ in range(2):
        d = tmp_path
        codes = [
            _cli(["generate", "--dataset", "swiss-roll", "--output", d / "x.csv", "--serial"]),
            _cli(["embed", "--input", d / "x.csv", "--k", 7, "--sigma", 1e-4, "--output", d / "y.csv",
                  "--svg", d / "y.svg", "--trace", d / "t.csv", "--serial"]),
            _cli(["evaluate", "--input", d / "x.csv", "--embedding", d / "y.csv", "--k", 7,
                  "--sigma", 1e-4, "--output", d / "m.json", "--serial"]),
        ]
        assert codes == [0, 0, 0]
        snapshots.append({name: (d / name).read_bytes() for name in names})
        for name in names:
            (d / name).unlink()
    capsys.readouterr()
    same = [name for name in names if snapshots[0][name] == snapshots[1][name]]
    ok = len(same) == len(names)
    criterion("C7 serial determinism", ok, f"{len(same)}/{len(names)} artifacts bitwise identical")
    json.loads(snapshots[0]["m.json"])
    assert ok


def test_c8_scale_translation_invariance(criterion):
    rng = np.random.default_rng(2024)
    details, ok = [], True
    for name in ("swiss-roll", "s-curve", "sphere"):
        n, sigma, k = SETTINGS[name]
        data = generate(name, n, 0).points
        moved = 3.7 * data + rng.normal(scale=10.0, size=3)
        a = lnpe(data, k=k, d=2, t=2, sigma=sigma)
        b = lnpe(moved, k=k, d=2, t=2, sigma=sigma)
        same_graph = np.array_equal(a.graph.indices, b.graph.indices)
        w_err = max(np.abs(p.weights.values - q.weights.values).max() for p, q in zip(a.trace, b.trace))
        y_err = match_up_to_sign(a.coords, b.coords)
        ok &= same_graph and w_err <= 1e-9 and y_err <= 1e-6
        details.append(f"{name}: W {w_err:.1e} Y {y_err:.1e}")
    criterion("C8 scale/translation invariance", ok, "; ".join(details) + " (<=1e-9, <=1e-6)")
    assert ok

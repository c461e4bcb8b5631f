"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of
the pytest run (see ``conftest.pytest_terminal_summary``)."""

import itertools
import random
import time

import numpy as np
import pytest

from plcsnet.cli import main
from plcsnet.export import read_graphml, read_matrix_csv
from plcsnet.netgraph import Preference, WeightedGraph, cliques, is_connected, mst, npt
from plcsnet.plcs import plcs_pair, student_t_two_sided
from plcsnet.synth import SynthKind, SynthSpec, base_range, generate_pair, robustness_experiment
from plcsnet.ud import ud, ud_from_pearson

from oracles import (
    maximal_cliques_by_subsets,
    min_spanning_weight,
    npt_by_retraversal,
    t_two_sided_by_quadrature,
)

pytestmark = pytest.mark.acceptance


def test_gamma_recovery(acceptance_line):
    t0 = time.perf_counter()
    errors = {}
    for target in (-0.76, 0.0, 1.0, 4.8):
        a, b = generate_pair(SynthSpec(SynthKind.PowerLawGap, gamma_target=target, length=200))
        errors[target] = abs(plcs_pair(a, b).gamma - target)
    elapsed = time.perf_counter() - t0
    acceptance_line("gamma-recovery", f"max |err| {max(errors.values()):.2e}, {elapsed:.3f} s")
    assert all(err <= 0.05 for err in errors.values()), errors
    assert elapsed < 1.0


def test_exact_linear_case(acceptance_line):
    a, b = generate_pair(SynthSpec(SynthKind.LinearOffset, c=5.0))
    fit = plcs_pair(a, b)
    am = ud(a, b, "am")
    acceptance_line("exact-linear", f"gamma={fit.gamma!r} beta={fit.beta!r} AM-UD={am!r}")
    assert fit.gamma == 0.0 and fit.beta == 0.0 and am == 0.0


def test_ud_constants(acceptance_line):
    rng = np.random.default_rng(2012)
    a, b = rng.standard_normal((2, 10_000))
    noise_ud = ud(a, b, "am")
    worst = 0.0
    for _ in range(1000):
        x, y = rng.normal(size=(2, int(rng.integers(3, 60))))
        worst = max(worst, abs(ud(x, y, "ms") - 2 * ud(x, y, "am")))
    acceptance_line("ud-constants", f"noise AM-UD={noise_ud:.4f}, max |MS-2AM|={worst:.1e}")
    assert ud_from_pearson(1.0, "am") == 0.0
    assert ud_from_pearson(-1.0, "am") == 1.0
    assert abs(noise_ud - 0.7071) <= 0.02
    assert worst <= 1e-12


def test_student_t_oracle(acceptance_line):
    beta = student_t_two_sided(2.306, 8)
    oracle = t_two_sided_by_quadrature(2.306, 8)
    grid = np.linspace(0.0, 8.0, 50)
    vals = [student_t_two_sided(t, 8) for t in grid]
    monotone = all(p > q for p, q in zip(vals, vals[1:]))
    acceptance_line("student-t", f"beta={beta:.6f} oracle={oracle:.6f}, monotone={monotone}")
    assert abs(beta - 0.05) <= 0.001
    assert abs(beta - oracle) <= 0.001
    assert student_t_two_sided(0.0, 8) == 1.0
    assert monotone


def _random_connected(rng, n):
    nodes = [f"v{i}" for i in range(n)]
    keys = set()
    for i in range(1, n):
        keys.add((nodes[rng.randrange(i)], nodes[i]))
    for u, v in itertools.combinations(nodes, 2):
        if rng.random() < 0.5:
            keys.add((u, v))
    weights = rng.sample(range(10_000), len(keys))
    return WeightedGraph(nodes, [(u, v, w / 100) for (u, v), w in zip(sorted(keys), weights)])


def test_npt_oracle_equivalence(acceptance_line):
    rng = random.Random(4)
    checked = 0
    for _ in range(200):
        g = _random_connected(rng, rng.randint(2, 6))
        tuples = [(e.u, e.v, e.weight) for e in g.edges]
        for pref in (Preference.ConvergentPreferential, Preference.StrengthPreferential):
            net = npt(g, pref)
            kept, bridge = npt_by_retraversal(g.nodes, tuples, pref.larger_preferred)
            assert net.graph.edge_keys() == kept
            assert net.bridge.key == bridge
            assert is_connected(net.graph)
            assert not is_connected(net.graph.without(net.bridge))
            checked += 1
    acceptance_line("npt-oracle", f"{checked} networks identical to retraversal oracle")


def test_mst_optimality(acceptance_line):
    rng = random.Random(6)
    worst = 0.0
    for _ in range(100):
        n = rng.randint(2, 6)
        nodes = [f"v{i}" for i in range(n)]
        g = WeightedGraph(nodes, [(u, v, rng.random()) for u, v in itertools.combinations(nodes, 2)])
        best = min_spanning_weight(g.nodes, [(e.u, e.v, e.weight) for e in g.edges])
        worst = max(worst, abs(mst(g).total_weight() - best))
    acceptance_line("mst-optimality", f"max |weight - exhaustive min| = {worst:.1e}")
    assert worst <= 1e-12


def test_clique_oracle(acceptance_line):
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 8)
        nodes = [f"v{i}" for i in range(n)]
        p = rng.uniform(0.2, 0.9)
        g = WeightedGraph(nodes, [(u, v, 1.0) for u, v in itertools.combinations(nodes, 2) if rng.random() < p])
        assert cliques(g, 3) == maximal_cliques_by_subsets(g.nodes, [(e.u, e.v, 1.0) for e in g.edges], 3)
    acceptance_line("clique-oracle", "100 graphs match subset enumeration")


def _snapshot(d):
    return {p.name: p.read_bytes() for p in sorted(d.iterdir())}


def test_pipeline_shape(acceptance_line, tmp_path):
    runs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        assert main(["analyze", "--input", "@sample", "--window", "2002:2011", "--out", str(out),
                     "--formats", "matrix-csv,pairs-json,loglog-csv"]) == 0
        assert main(["npt", "--input", "@sample", "--window", "2002:2011", "--out", str(out),
                     "--preference", "cp,sp,s,ud"]) == 0
        runs.append(_snapshot(out))
    out = tmp_path / "run0"
    iu = np.triu_indices(19, 1)
    counts = {}
    for channel in ("gamma", "beta", "ud"):
        ents, vals, mask = read_matrix_csv(out / f"{channel}-2002_2011.csv")
        assert len(ents) == 19 and not mask.any()
        np.testing.assert_array_equal(vals, vals.T)
        counts[channel] = len(set(vals[iu].tolist()))
    edges = {}
    for code in ("cp", "sp", "s", "ud"):
        g = read_graphml(out / f"{code}-2002_2011.graphml")
        assert len(g.nodes) == 19 and is_connected(g)
        edges[code] = len(g.edges)
    acceptance_line("pipeline-shape", f"unique values {counts}, npt edges {edges}, identical runs={runs[0] == runs[1]}")
    assert all(c == 171 for c in counts.values())
    assert all(18 <= e <= 171 for e in edges.values())
    assert runs[0] == runs[1]


def test_robustness_trend(acceptance_line):
    t0 = time.perf_counter()
    base = SynthSpec(SynthKind.NoisyLinear, length=30, seed=0)
    span = base_range(base)
    fractions = [0.0, 0.01, 0.02, 0.05, 0.1, 0.2]
    rows = robustness_experiment([f * span for f in fractions], 100, base)
    elapsed = time.perf_counter() - t0
    uds = [r.mean_ud for r in rows]
    at5 = rows[fractions.index(0.05)]
    acceptance_line(
        "robustness-trend",
        f"AM-UD means {[round(u, 4) for u in uds]}, mean|gamma|@5% = {at5.mean_abs_gamma:.4f}, {elapsed:.2f} s",
    )
    assert all(x < y for x, y in zip(uds, uds[1:]))
    assert at5.mean_abs_gamma < 0.2
    assert elapsed < 60

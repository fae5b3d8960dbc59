import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclespec import mc
from cyclespec.errors import DomainError
from cyclespec.formulas import expected_k_cycles, prob_full_cycle
from cyclespec.mc import (
    AliasTable,
    SimConfig,
    cycle_lengths,
    cycle_observables,
    magnetization_estimator,
    magnetization_from_joint,
    replica_keys,
    run_simulation,
    simulate_replica,
    simulate_states,
    uniforms,
)
from cyclespec.spectra import WeightedGraph, build_graph

import oracles


def test_cycle_observables_examples():
    obs = cycle_observables([1, 0, 2, 4, 5, 3])
    assert obs.counts == (1, 1, 1, 0, 0, 0)
    assert obs.origin_length == 2 and obs.total_cycles == 3
    ident = cycle_observables(range(5))
    assert ident.counts == (5, 0, 0, 0, 0) and ident.origin_length == 1
    full = cycle_observables([1, 2, 3, 0])
    assert full.counts == (0, 0, 0, 1) and full.origin_length == 4
    with pytest.raises(DomainError):
        cycle_observables([0, 0, 1])


@settings(max_examples=50, deadline=None)
@given(st.permutations(list(range(7))))
def test_observables_agree_with_oracle(perm):
    obs = cycle_observables(perm)
    lengths = cycle_lengths(np.array([perm]))[0]
    ctype = oracles.cycle_type(perm)
    assert sum(k * c for k, c in enumerate(obs.counts, 1)) == 7
    assert obs.total_cycles == len(ctype)
    assert obs.counts == tuple(ctype.count(k) for k in range(1, 8))
    assert lengths[0] == obs.origin_length
    assert sorted(lengths) == sorted(x for k in ctype for x in [k] * k)


def test_uniforms_in_open_interval_and_deterministic():
    keys = replica_keys(7, np.arange(1000))
    u = uniforms(keys, np.zeros(1000, dtype=np.uint64))
    assert np.all((u > 0) & (u < 1))
    assert np.array_equal(u, uniforms(replica_keys(7, np.arange(1000)), np.zeros(1000, np.uint64)))
    assert not np.array_equal(u, uniforms(replica_keys(8, np.arange(1000)), np.zeros(1000, np.uint64)))
    assert abs(u.mean() - 0.5) < 0.05


def test_alias_table_is_exact():
    w = np.array([0.5, 2.0, 1.0, 0.25, 1.25])
    table = AliasTable.build(w)
    grid = (np.arange(100000) + 0.5) / 100000
    freq = np.bincount(table.sample(grid), minlength=len(w)) / len(grid)
    assert np.allclose(freq, w / w.sum(), atol=1e-4)


def test_alias_table_uniform_weights():
    table = AliasTable.build([1.0] * 4)
    assert np.array_equal(table.sample(np.array([0.1, 0.3, 0.6, 0.9])), [0, 1, 2, 3])


def test_config_validation():
    g = build_graph("complete", n=3)
    with pytest.raises(DomainError):
        SimConfig(g, (0.5,), 0, 1)
    with pytest.raises(DomainError):
        SimConfig(g, (0.5,), 10, 1, ("s_9",))
    with pytest.raises(DomainError):
        SimConfig(WeightedGraph(3, {}), (0.5,), 10, 1)
    with pytest.raises(DomainError):
        SimConfig(g, (1.0, 0.5), 10, 1)
    cfg = SimConfig(g, (0.5,), 10, 1)
    assert cfg.observables[:3] == ("s_1", "s_2", "s_3")
    assert cfg.echo()["master_seed"] == 1


def test_vectorised_matches_scalar_reference():
    g = WeightedGraph(5, {(0, 1): 1.0, (1, 2): 0.3, (2, 3): 2.0, (3, 4): 0.7, (0, 4): 1.1})
    times = [0.1, 0.8, 2.0]
    states = simulate_states(g, times, 40, master_seed=11)
    for r in range(40):
        ref = simulate_replica(g, times, 11, r)
        for c in range(len(times)):
            assert list(states[c][r]) == ref[c]


def test_states_are_permutations():
    states = simulate_states(build_graph("hypercube", d=3), [0.5, 3.0], 200, master_seed=2)
    for s in states:
        assert np.array_equal(np.sort(s, axis=1), np.tile(np.arange(8), (200, 1)))


def test_time_zero_is_identity():
    states = simulate_states(build_graph("complete", n=4), [0.0], 50, master_seed=0)
    assert np.array_equal(states[0], np.tile(np.arange(4), (50, 1)))


def test_reports_are_bit_identical_across_threads_and_chunks(monkeypatch):
    g = build_graph("path", n=5)
    cfg = SimConfig(g, (0.2, 1.0), 3000, 99)
    base = run_simulation(cfg, threads=1).to_json()
    assert run_simulation(cfg, threads=4).to_json() == base
    monkeypatch.setattr(mc, "CHUNK", 257)
    assert run_simulation(cfg, threads=1).to_json() == base
    assert run_simulation(cfg, threads=3).to_json() == base
    monkeypatch.setenv("CYCLESPEC_THREADS", "5")
    assert run_simulation(cfg).to_json() == base


def test_replica_prefix_is_stable():
    g = build_graph("cycle", n=4)
    small = simulate_states(g, [1.0], 10, master_seed=5)[0]
    large = simulate_states(g, [1.0], 100, master_seed=5)[0]
    assert np.array_equal(small, large[:10])
    shifted = simulate_states(g, [1.0], 10, master_seed=5, first_replica=10)[0]
    assert np.array_equal(shifted, large[10:20])


def test_conservation_and_moments():
    g = build_graph("complete", n=5)
    report = run_simulation(SimConfig(g, (0.3, 1.5), 2000, 4))
    for t in (0.3, 1.5):
        total = sum(k * report[(f"s_{k}", t)].mean for k in range(1, 6))
        assert total == pytest.approx(5.0, abs=1e-12)
        assert report[("full_cycle", t)].mean == report[("s_5", t)].mean


def test_coagulation_fragmentation_changes_cycle_count_by_one():
    g = build_graph("complete", n=6)
    for r in range(30):
        states = simulate_replica(g, np.linspace(0, 2, 400), 3, r)
        counts = [cycle_observables(s).total_cycles for s in states]
        for a, b in zip(states, states[1:]):
            moved = sum(x != y for x, y in zip(a, b))
            if moved == 2:
                assert abs(cycle_observables(a).total_cycles - cycle_observables(b).total_cycles) == 1
        assert all(1 <= c <= 6 for c in counts)


def _grid_z_scores(graph, report, times):
    zs = []
    for t in times:
        expect, p = oracles.exact_cycle_stats(graph.weights, graph.n, t)
        for k in range(1, graph.n + 1):
            zs.append(report[(f"s_{k}", t)].z(expect[k - 1]))
            assert expected_k_cycles(graph, k, t) == pytest.approx(expect[k - 1], abs=1e-9)
        zs.append(report[("full_cycle", t)].z(p))
    return zs


def test_estimates_agree_with_exact():
    graphs = [
        build_graph("complete", n=4),
        build_graph("path", n=4),
        WeightedGraph(4, {(0, 1): 0.4, (1, 2): 1.7, (2, 3): 0.9, (0, 2): 0.6}),
    ]
    times = (0.25, 1.0, 3.0)
    zs = []
    for graph in graphs:
        report = run_simulation(SimConfig(graph, times, 40000, 123))
        zs += _grid_z_scores(graph, report, times)
    assert len(zs) >= 40
    assert sum(abs(z) < 4 for z in zs) >= 0.95 * len(zs)
    # roughly standard normal overall
    assert np.mean(np.square(zs)) < 2.5


def test_full_cycle_small_time_ratio():
    tri = build_graph("cycle", n=3)
    t = 0.05
    report = run_simulation(SimConfig(tri, (t,), 200000, 17, ("full_cycle",)))
    est = report[("full_cycle", t)]
    assert abs(est.z(prob_full_cycle(tri, t))) < 4.5


def test_report_serialisation():
    g = build_graph("complete", n=3)
    report = run_simulation(SimConfig(g, (0.5,), 100, 8, ("s_1", "full_cycle")))
    data = json.loads(report.to_json())
    assert data["seed"] == 8 and data["config"]["replicas"] == 100
    assert [row["observable"] for row in data["estimates"]] == ["s_1", "full_cycle"]
    lines = report.to_csv().splitlines()
    assert lines[0] == "observable,t,mean,stderr,replicas"
    assert len(lines) == 3 and lines[1].startswith("s_1,0.5,")


def test_estimate_z_edge_cases():
    e = mc.Estimate(0.5, 0.0, 10)
    assert e.z(0.5) == 0.0 and e.z(0.1) == math.inf
    assert mc.Estimate(0.5, 0.1, 10).z(0.3) == pytest.approx(2.0)


def test_magnetization_at_time_zero():
    g = build_graph("path", n=6)
    est = magnetization_estimator(SimConfig(g, (0.0,), 500, 1), threshold_n=2)[0]
    assert est.ratio == 0.0 and est.unweighted == 0.0
    assert est.log2_denominator == pytest.approx(6.0)


def test_magnetization_from_joint_by_hand():
    # two replicas: 3 cycles with origin length 1, 1 cycle with origin length 3
    joint = np.zeros((4, 4), dtype=np.int64)
    joint[3, 1] = 1
    joint[1, 3] = 1
    est = magnetization_from_joint(joint, threshold_n=1, t=1.0)
    # E[1{long} 2^C] = 2/2 = 1, E[2^C] = (8 + 2)/2 = 5
    assert est.ratio == pytest.approx(0.5 * 1 / 5)
    assert est.log2_denominator == pytest.approx(math.log2(5))
    assert est.unweighted == 0.5
    assert not est.indeterminate


def test_magnetization_handles_huge_weights():
    joint = np.zeros((1001, 1001), dtype=np.int64)
    joint[1000, 1] = 3
    joint[999, 1000] = 1
    est = magnetization_from_joint(joint, threshold_n=500, t=0.0)
    assert est.ratio == pytest.approx(0.5 * 0.5 / (3 + 0.5))
    assert est.log2_denominator == pytest.approx(1000 + math.log2(3.5 / 4))


def test_magnetization_exact_small_case():
    g = build_graph("complete", n=4)
    t = 0.6
    Q, states = oracles.group_generator(g.weights, 4)
    from scipy.linalg import expm
    dist = expm(Q * t)[states.index((0, 1, 2, 3))]
    num = sum(p * 2 ** len(oracles.cycle_type(s)) for p, s in zip(dist, states)
              if cycle_observables(s).origin_length > 2)
    den = sum(p * 2 ** len(oracles.cycle_type(s)) for p, s in zip(dist, states))
    est = magnetization_estimator(SimConfig(g, (t,), 100000, 21), threshold_n=2)[0]
    assert abs(est.ratio - 0.5 * num / den) < 4.5 * est.ratio_stderr


def test_magnetization_seed_stability_on_torus():
    g = build_graph("torus", side=3, dim=3)
    times = (0.5, 2.0)
    a = magnetization_estimator(SimConfig(g, times, 10**4, 1), threshold_n=13)
    b = magnetization_estimator(SimConfig(g, times, 10**4, 2), threshold_n=13)
    for x, y in zip(a, b):
        assert np.isfinite(x.ratio) and x.ratio_stderr > 0
        spread = math.hypot(x.ratio_stderr, y.ratio_stderr)
        assert abs(x.ratio - y.ratio) < 3 * spread
    with pytest.raises(DomainError):
        magnetization_estimator(SimConfig(g, (1.0,), 10, 1), threshold_n=27)

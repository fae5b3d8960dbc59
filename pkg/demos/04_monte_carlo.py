"""Simulating the interchange process and comparing with the exact formulas."""
from cyclespec import SimConfig, build_graph, expected_k_cycles, prob_full_cycle, run_simulation
from cyclespec import magnetization_estimator

g = build_graph("complete", n=4)
times = (0.5, 1.0, 2.0)
report = run_simulation(SimConfig(g, times, 100_000, master_seed=1))

for t in times:
    for k in range(1, g.n + 1):
        est = report[(f"s_{k}", t)]
        exact = expected_k_cycles(g, k, t)
        print(f"t={t} s_{k}: {est.mean:.4f} +- {est.stderr:.4f}  exact {exact:.4f}  z={est.z(exact):+.2f}")
    est = report[("full_cycle", t)]
    print(f"t={t} full cycle: z={est.z(prob_full_cycle(g, t)):+.2f}")

# the same seed gives the same numbers regardless of thread count
again = run_simulation(SimConfig(g, times, 100_000, master_seed=1), threads=4)
print("bit-identical across threads:", again.to_csv() == report.to_csv())

# weighted long-cycle ratio on a small 3-d torus
torus = build_graph("torus", side=3, dim=3)
for est in magnetization_estimator(SimConfig(torus, (0.5, 1.0, 2.0), 20_000, 3), threshold_n=13):
    print(f"t={est.t}: ratio {est.ratio:.4f} +- {est.ratio_stderr:.4f}, "
          f"unweighted {est.unweighted:.4f}")

"""``cyclespec`` command line.

stdout carries data, stderr carries the resolved configuration and logs.
Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 capability cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

import numpy as np

from . import characters as ch
from . import formulas as fm
from . import mc
from . import spectra as sp
from . import symfun as sf
from . import verification
from .errors import CapabilityError, DomainError
from .partitions import enumerate_partitions

log = logging.getLogger("cyclespec")


class UsageError(Exception):
    pass


def parse_builder(spec: str) -> sp.WeightedGraph:
    """``complete:N[:w]``, ``hypercube:D``, ``torus:SIDE:DIM``, ``path:N``, ``cycle:N``."""
    kind, *args = spec.split(":")
    try:
        if kind == "complete" and len(args) in (1, 2):
            w = float(args[1]) if len(args) == 2 else 1.0
            return sp.build_graph("complete", n=int(args[0]), w=w)
        if kind == "hypercube" and len(args) == 1:
            return sp.build_graph("hypercube", d=int(args[0]))
        if kind == "torus" and len(args) == 2:
            return sp.build_graph("torus", side=int(args[0]), dim=int(args[1]))
        if kind in ("path", "cycle") and len(args) == 1:
            return sp.build_graph(kind, n=int(args[0]))
    except ValueError as exc:
        raise UsageError(f"bad builder spec {spec!r}: {exc}") from None
    raise UsageError(f"bad builder spec {spec!r}")


def parse_grid(spec: str) -> fm.TimeGrid:
    """``a,b,c`` or ``lin:start:stop:count`` or ``log:start:stop:count``."""
    try:
        if spec.startswith(("lin:", "log:")):
            kind, start, stop, count = spec.split(":")
            fn = np.linspace if kind == "lin" else np.geomspace
            return fm.TimeGrid(tuple(fn(float(start), float(stop), int(count))))
        return fm.TimeGrid(tuple(float(x) for x in spec.split(",")))
    except (ValueError, DomainError) as exc:
        raise UsageError(f"bad time grid {spec!r}: {exc}") from None


def _graph(args) -> sp.WeightedGraph:
    if args.graph and args.builder:
        raise UsageError("give either --graph or --builder, not both")
    if args.graph:
        return sp.read_graph(args.graph)
    if args.builder:
        return parse_builder(args.builder)
    raise UsageError("a graph is required (--graph FILE or --builder SPEC)")


def _frac_rows(coeffs, n):
    order = {rho: i for i, rho in enumerate(enumerate_partitions(n))}
    return [
        (list(rho), Fraction(c).numerator, Fraction(c).denominator)
        for rho, c in sorted(coeffs.items(), key=lambda kv: order[kv[0]])
        if c
    ]


def _emit_table(rows, fmt):
    if fmt == "json":
        return json.dumps([{"partition": p, "num": a, "den": b} for p, a, b in rows])
    return "partition,num,den\n" + "".join(
        f"\"{json.dumps(p)}\",{a},{b}\n" for p, a, b in rows)


def cmd_decompose(args, out):
    n, k = args.n, args.k
    closed = {rho: Fraction(c) for rho, c in ch.a_rho_closed_form(n, k).items()}
    brute = {rho: c * k for rho, c in ch.decompose(ch.alpha_k(n, k)).items()}
    ok = closed == brute
    if args.format == "json":
        out.write(json.dumps({
            "n": n, "k": k,
            "closed_form": json.loads(_emit_table(_frac_rows(closed, n), "json")),
            "brute_force": json.loads(_emit_table(_frac_rows(brute, n), "json")),
            "verdict": "PASS" if ok else "FAIL",
        }) + "\n")
    else:
        out.write("source,partition,num,den\n")
        for name, table in (("closed", closed), ("brute", brute)):
            for p, a, b in _frac_rows(table, n):
                out.write(f"{name},\"{json.dumps(p)}\",{a},{b}\n")
        out.write(f"verdict,,{'PASS' if ok else 'FAIL'},\n")
    return 0 if ok else 1


def cmd_coeffs(args, out):
    if args.via == "pieri":
        coeffs = sf.derive_a_rho_via_pieri(args.n, args.k).coeffs
    else:
        coeffs = ch.a_rho_closed_form(args.n, args.k)
    out.write(_emit_table(_frac_rows(coeffs, args.n), args.format) + ("\n" if args.format == "json" else ""))
    return 0


def _profile(out, fmt, times, columns: dict):
    if fmt == "json":
        data = {"times": [float(t) for t in times]}
        data.update({k: [float(v) for v in vs] for k, vs in columns.items()})
        out.write(json.dumps(data) + "\n")
    else:
        out.write(",".join(["t", *columns]) + "\n")
        for i, t in enumerate(times):
            out.write(",".join([repr(float(t))] + [repr(float(vs[i])) for vs in columns.values()]) + "\n")


def cmd_prob(args, out):
    g = _graph(args)
    grid = parse_grid(args.t_grid)
    vals = fm.prob_full_cycle(g, grid.as_array())
    _profile(out, args.format, grid, {"value": vals})
    return 0


def cmd_expect(args, out):
    g = _graph(args)
    grid = parse_grid(args.t_grid)
    if not 1 <= args.k <= g.n:
        raise UsageError(f"--k must lie in [1, {g.n}]")
    vals = fm.expected_k_cycles(g, args.k, grid.as_array())
    lam1 = float(sp.laplacian_eigenvalues(g)[1]) if g.n > 1 else 0.0
    bound = fm.chuk_bound(g.n, args.k, grid.as_array(), lam1)
    _profile(out, args.format, grid, {"value": vals, "bound": bound})
    return 0


def _exact_values(g, obs, t):
    if obs == "full_cycle":
        return fm.prob_full_cycle(g, t)
    if obs.startswith("s_"):
        try:
            return fm.expected_k_cycles(g, int(obs[2:]), t)
        except CapabilityError:
            return None
    return None


def cmd_simulate(args, out):
    g = _graph(args)
    grid = parse_grid(args.checkpoints)
    obs = tuple(args.observables.split(",")) if args.observables else ()
    cfg = mc.SimConfig(g, grid, args.replicas, args.seed, obs)
    rep = mc.run_simulation(cfg, threads=args.threads)
    rows = []
    for (o, t), e in rep.estimates.items():
        exact = _exact_values(g, o, t)
        z = e.z(exact) if exact is not None else None
        rows.append((o, t, e, exact, z))
    if args.format == "json":
        out.write(json.dumps({
            "config": cfg.echo(),
            "estimates": [
                {"observable": o, "t": t, "mean": e.mean, "stderr": e.stderr,
                 "replicas": e.replicas, "exact": exact, "z": z}
                for o, t, e, exact, z in rows
            ],
        }) + "\n")
    else:
        out.write("observable,t,mean,stderr,replicas,exact,z\n")
        for o, t, e, exact, z in rows:
            out.write(f"{o},{t!r},{e.mean!r},{e.stderr!r},{e.replicas},"
                      f"{'' if exact is None else repr(exact)},{'' if z is None else repr(z)}\n")
    return 0


def cmd_matrix_tree(args, out):
    g = _graph(args)
    res = fm.matrix_tree_check(g)
    if args.format == "json":
        out.write(json.dumps({"spectral": res.spectral_value, "tree_sum": res.tree_sum,
                              "tree_count": res.tree_count}) + "\n")
    elif args.format == "csv":
        out.write("spectral,tree_sum,tree_count\n")
        out.write(f"{res.spectral_value!r},{'' if res.tree_sum is None else repr(res.tree_sum)},"
                  f"{'' if res.tree_count is None else res.tree_count}\n")
    else:
        tree = "skipped" if res.tree_sum is None else f"{res.tree_sum:.12g}"
        out.write(f"spectral={res.spectral_value:.12g} tree_sum={tree}\n")
    return 0


def cmd_hypercube(args, out):
    grid = parse_grid(args.t_grid)
    _profile(out, args.format, grid, {"value": fm.hypercube_prob_profile(args.d, grid.as_array())})
    return 0


def cmd_torus(args, out):
    sides = [int(s) for s in args.sides.split(",")]
    rows = fm.torus_equilibration(sides, args.dim, args.threshold)
    if args.format == "json":
        out.write(json.dumps([{"side": m, "n": m**args.dim, "T": T, "T_over_side2": T / m**2}
                              for m, T in rows]) + "\n")
    else:
        out.write("side,n,T,T_over_side2\n")
        for m, T in rows:
            out.write(f"{m},{m**args.dim},{T!r},{T / m**2!r}\n")
    return 0


def cmd_isospectral(args, out):
    pair = sp.isospectral_pair_search(4, args.seed, args.attempts)
    if pair is None:
        data = {"found": False, "seed": args.seed, "attempts": args.attempts}
    else:
        e1 = fm.expected_k_cycles(pair.first, 3, 1.0)
        e2 = fm.expected_k_cycles(pair.second, 3, 1.0)
        data = {
            "found": True, "seed": args.seed, "attempts": pair.attempts,
            "first": [[i, j, w] for i, j, w in pair.first.edges],
            "second": [[i, j, w] for i, j, w in pair.second.edges],
            "laplacian_gap": pair.spectrum_gap, "irrep_22_gap": pair.irrep_gap,
            "E_s3_t1": [e1, e2],
        }
    if args.format == "csv":
        out.write("key,value\n" + "".join(f"{k},\"{json.dumps(v)}\"\n" for k, v in data.items()))
    else:
        out.write(json.dumps(data) + "\n")
    return 0


def cmd_verify(args, out):
    results = verification.run_all(args.n_max)
    if args.format == "json":
        out.write(json.dumps([{"check": r.name, "passed": r.passed, "detail": r.detail}
                              for r in results]) + "\n")
    elif args.format == "csv":
        out.write("check,passed,detail\n" + "".join(
            f"{r.name},{r.passed},{r.detail}\n" for r in results))
    else:
        for r in results:
            out.write(r.line() + "\n")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclespec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, formats=("json", "csv"), default="json"):
        sp_ = sub.add_parser(name)
        sp_.set_defaults(fn=fn)
        sp_.add_argument("--format", choices=formats, default=default)
        return sp_

    def graph_args(sp_):
        sp_.add_argument("--graph", help="edge-list file: 'i j w' per line")
        sp_.add_argument("--builder", help="complete:N[:w] | hypercube:D | torus:SIDE:DIM | path:N | cycle:N")

    s = add("decompose", cmd_decompose)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)

    s = add("coeffs", cmd_coeffs)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--via", choices=("pieri", "closed"), default="closed")

    s = add("prob-n-cycle", cmd_prob, default="csv")
    graph_args(s)
    s.add_argument("--t-grid", required=True)

    s = add("expect", cmd_expect, default="csv")
    graph_args(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t-grid", required=True)

    s = add("simulate", cmd_simulate)
    graph_args(s)
    s.add_argument("--replicas", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--checkpoints", required=True)
    s.add_argument("--observables", help="comma list, e.g. s_1,s_2,full_cycle")
    s.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: CYCLESPEC_THREADS or 1)")

    s = add("matrix-tree", cmd_matrix_tree, formats=("text", "json", "csv"), default="text")
    graph_args(s)

    s = add("hypercube", cmd_hypercube, default="csv")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--t-grid", required=True)

    s = add("torus-equilibration", cmd_torus, default="csv")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--sides", default="5,7,9,11")
    s.add_argument("--threshold", type=float, default=0.5)

    s = add("isospectral", cmd_isospectral)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--attempts", type=int, default=10**6)

    s = add("verify", cmd_verify, formats=("text", "json", "csv"), default="text")
    s.add_argument("--n-max", type=int, default=7)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    resolved = {k: v for k, v in vars(args).items() if k != "fn"}
    log.info("config %s", json.dumps(resolved, sort_keys=True))
    try:
        return args.fn(args, sys.stdout)
    except (UsageError, DomainError, OSError) as exc:
        log.error("usage error: %s", exc)
        return 2
    except CapabilityError as exc:
        log.error("capability limit: %s", exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())

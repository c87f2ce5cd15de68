"""Smoke test for the bipartition_py extension.

Build first:  cargo build --release -p bipartition-py --features extension-module
Then run:     python3 python/smoke_test.py [path/to/libbipartition_py.so]
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import bipartition_py

        return bipartition_py
    except ImportError:
        pass
    path = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "target" / "release" / "libbipartition_py.so"
    loader = importlib.machinery.ExtensionFileLoader("bipartition_py", str(path))
    spec = importlib.util.spec_from_file_location("bipartition_py", path, loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def complete(bp, n):
    return bp.Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def main():
    bp = load()
    print("bipartition_py", bp.__version__)

    # K_n: tau = n - 1, inertia (1, 0, n - 1)
    for n in range(2, 7):
        g = complete(bp, n)
        r = bp.tau(g)
        assert r["value"] == n - 1 and r["status"] == "exact", r
        assert bp.inertia(g) == (1, 0, n - 1)
        assert bp.eigenvalue_bound(g) == n - 1

    # C_4 is K_{2,2}: one part, and it is not a star
    c4 = bp.Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert bp.tau(c4)["value"] == 1
    assert bp.tau_prime(c4)["value"] == 1
    # a path has no K_{2,2} parts at all
    assert bp.tau_prime(bp.Graph(3, [(0, 1), (1, 2)]))["value"] == "infinity"

    g = bp.Graph.gnp(9, 0.5, 42)
    assert bp.Graph.gnp(9, 0.5, 42).edges() == g.edges()
    assert bp.Graph.from_edge_list(g.to_edge_list()).edges() == g.edges()
    alpha, witness, exact = bp.independence_number(g)
    assert exact and len(witness) == alpha
    assert all(not g.has_edge(u, v) for u in witness for v in witness)
    lower = bp.eigenvalue_bound(g)
    tau = bp.tau(g)["value"]
    star_bound, biclique_bound = bp.upper_bounds(g)
    assert lower <= tau <= min(star_bound, biclique_bound), (lower, tau, star_bound, biclique_bound)

    # coverage on K_4 with two pairs: covering {0,1} first removes {0,1}x{2,3}
    k4 = complete(bp, 4)
    best, trace = bp.coverage_max(k4, [[0, 1], [2, 3]])
    assert best == 4 and trace["total"] == 4
    bound = bp.uncovered_bound(k4, [[0, 1], [2, 3]])
    assert best + bound["value"] <= k4.m

    try:
        bp.tau(bp.Graph(65))
    except OverflowError:
        pass
    else:
        raise AssertionError("65 vertices should be refused")

    config = {"n": 6, "p": 0.5, "trials": 3, "seed": 5, "checks": ["bounds", "coverage"]}
    reports = bp.run_experiment(json.dumps(config))
    assert [r["check"] for r in reports] == ["bounds", "coverage"]
    assert all(r["passed"] for r in reports)
    print("ok")


if __name__ == "__main__":
    main()

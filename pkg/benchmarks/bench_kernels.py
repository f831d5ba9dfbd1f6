"""Time the hot kernels compiled (numba) and interpreted (COMMTOPO_DISABLE_JIT=1).

Each mode runs in its own interpreter because the switch is read at import
time.  The compiled timings exclude the first call, which pays for
compilation (or for loading the on-disk cache).

    python benchmarks/bench_kernels.py [--n 2000] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from commtopo import _jit, _kernels
from commtopo.detect import edge_betweenness, label_propagation, louvain
from commtopo.generators import GeneratorSpec, generate
from commtopo.metrics import score_partition

n, repeat = int(sys.argv[1]), int(sys.argv[2])
g = generate(GeneratorSpec("ba", n, m_attach=3, seed=1))
part = louvain(g, seed=0)
cases = {
    "edge_betweenness (BA n/4)": (lambda h=generate(GeneratorSpec("ba", n // 4, m_attach=3, seed=1)):
                                  edge_betweenness(h)),
    "internal_structure": lambda: _kernels.internal_structure(g.indptr, g.indices, part.assignment),
    "label_propagation": lambda: label_propagation(g, seed=0),
    "louvain": lambda: louvain(g, seed=0),
    "score_partition": lambda: score_partition(g, part),
}
out = {"jit": _jit.HAS_JIT, "m": g.m, "times": {}}
for name, fn in cases.items():
    fn()  # warm-up / compile
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["times"][name] = best
print(json.dumps(out))
"""


def run(n, repeat, disable):
    env = dict(os.environ)
    env.pop("COMMTOPO_DISABLE_JIT", None)
    if disable:
        env["COMMTOPO_DISABLE_JIT"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(n), str(repeat)],
                         capture_output=True, text=True, env=env, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    fast = run(a.n, a.repeat, disable=False)
    slow = run(a.n, a.repeat, disable=True)
    if not fast["jit"]:
        print("numba unavailable: both runs are interpreted", file=sys.stderr)
    print(f"BA graph n={a.n}, m={fast['m']}, best of {a.repeat}")
    print(f"{'kernel':32s} {'numba [s]':>10s} {'python [s]':>11s} {'speedup':>8s}")
    for name, t_fast in fast["times"].items():
        t_slow = slow["times"][name]
        print(f"{name:32s} {t_fast:10.4f} {t_slow:11.4f} {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()

"""The compiled kernels and their interpreted fallback must agree exactly."""
import json
import os
import subprocess
import sys

import pytest

from commtopo import _jit

PROBE = r"""
import json
import numpy as np
from commtopo import _jit
from commtopo.detect import edge_betweenness, label_propagation, louvain, modularity
from commtopo.generators import GeneratorSpec, generate
from commtopo.metrics import score_partition

out = {"jit": _jit.HAS_JIT}
for spec in [GeneratorSpec("er", 150, p=0.04, seed=1), GeneratorSpec("ba", 150, m_attach=2, seed=2),
             GeneratorSpec("ws", 150, k=6, p=0.1, seed=3)]:
    g = generate(spec)
    lv = louvain(g, seed=5)
    lp = label_propagation(g, seed=5)
    out[spec.model] = {
        "eb": edge_betweenness(g).tolist(),
        "louvain": lv.assignment.tolist(),
        "q": modularity(g, lv),
        "lpa": lp.assignment.tolist(),
        "metrics": [r.as_dict() for r in score_partition(g, lv, min_size=1)],
    }
print(json.dumps(out))
"""


def run_probe(disable):
    env = dict(os.environ)
    env.pop("COMMTOPO_DISABLE_JIT", None)
    if disable:
        env["COMMTOPO_DISABLE_JIT"] = "1"
    res = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True,
                         env=env, check=True)
    return json.loads(res.stdout)


@pytest.mark.skipif(not _jit.HAS_JIT, reason="numba not available")
def test_fallback_matches_compiled_kernels():
    fast, slow = run_probe(False), run_probe(True)
    assert fast.pop("jit") is True and slow.pop("jit") is False
    assert fast == slow


def test_jit_decorator_passthrough_when_disabled(monkeypatch):
    monkeypatch.setattr(_jit, "HAS_JIT", False)

    def f(x):
        return x + 1

    assert _jit.jit(f) is f
    assert _jit.jit()(f) is f

import json
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

SCRIPT = """
import json
from isinghom import _accel
from isinghom.homogenize import phi_profile
from isinghom.lattice import random_mixture
prof = phi_profile(random_mixture(4, 0.5, 3), 2, 4)
print(json.dumps({"numba": _accel.USE_NUMBA, "values": [s.value for s in prof.samples]}))
"""


def run_with(flag):
    env = dict(os.environ)
    env.pop("ISINGHOM_DISABLE_NUMBA", None)
    if flag is not None:
        env["ISINGHOM_DISABLE_NUMBA"] = flag
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_fallback_flag_selects_scipy_and_agrees():
    slow = run_with("1")
    fast = run_with(None)
    assert slow["numba"] is False
    assert fast["values"] == slow["values"]


def test_benchmark_runs_under_fallback():
    env = dict(os.environ, ISINGHOM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, str(ROOT / "benchmarks" / "bench_dijkstra.py"), "--T", "4", "--k", "2",
                          "--repeat", "1"], env=env, capture_output=True, text=True, check=True)
    assert "backend=scipy" in out.stdout

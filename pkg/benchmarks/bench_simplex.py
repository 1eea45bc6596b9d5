"""Compare the compiled simplex pivot kernel against the pure-Python
fallback on basis-pursuit LPs of growing size.

The fallback is forced in a subprocess via CSTHRESH_PURE_PYTHON=1 so both
kernels run the identical solver driver.  Usage: python bench_simplex.py
"""

import json
import os
import subprocess
import sys
import time

_WORKLOAD = """
import json, sys, time
import numpy as np
from csthresh.lp import KERNEL_NAME, LinearProgram, solve_lp

results = {"kernel": KERNEL_NAME, "cases": []}
for n, m, k in [(60, 30, 6), (120, 60, 12), (200, 100, 20)]:
    rng = np.random.default_rng(1)
    A = rng.standard_normal((m, n))
    x0 = np.zeros(n)
    x0[:k] = rng.standard_normal(k)
    b = A @ x0
    prog = LinearProgram(np.ones(2 * n), np.hstack([A, -A]), b)
    t0 = time.perf_counter()
    reps = 3
    for _ in range(reps):
        sol = solve_lp(prog)
    dt = (time.perf_counter() - t0) / reps
    results["cases"].append({"n": n, "m": m, "seconds": dt,
                             "objective": sol.objective_value})
print(json.dumps(results))
"""


def run(pure_python: bool) -> dict:
    env = dict(os.environ)
    if pure_python:
        env["CSTHRESH_PURE_PYTHON"] = "1"
    else:
        env.pop("CSTHRESH_PURE_PYTHON", None)
    proc = subprocess.run([sys.executable, "-c", _WORKLOAD], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    compiled = run(pure_python=False)
    fallback = run(pure_python=True)
    print(f"kernels: {compiled['kernel']} vs {fallback['kernel']}")
    print(f"{'n':>6} {'m':>6} {compiled['kernel']:>12} "
          f"{fallback['kernel']:>12} {'speedup':>9}")
    for c, f in zip(compiled["cases"], fallback["cases"]):
        assert abs(c["objective"] - f["objective"]) < 1e-7, \
            "kernels disagree on the optimum"
        print(f"{c['n']:>6} {c['m']:>6} {c['seconds']:>11.4f}s "
              f"{f['seconds']:>11.4f}s {f['seconds'] / c['seconds']:>8.2f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled kernels with the pure-Python fallback.

Each workload runs in a fresh interpreter so the backend is chosen at import:
``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from fractions import Fraction
from qav.exactalg import kernels as K
from qav.exactalg import QS, PolyU, RatFun, q, series_expand, INF_PT

def scalars():
    for k in range(1, 1500):
        a = (q + QS(Fraction(1, k))) / (q - QS(k))
        b = QS.qpow(Fraction(k % 5, 2)) - QS(k)
        (a * b + a / b - QS(k)).inv()

def ratfuns():
    u = RatFun.u()
    for j in range(20):
        f = RatFun.const(1)
        for k in range(1, 5):
            f = f * (u - k - j) / (u - RatFun.const(q * k)) + RatFun.const(Fraction(1, k))
        series_expand(f, INF_PT, 8)

def rll():
    from qav.rmatrix import build_type
    from qav.repmod import vector_module, rll_violation
    for fam, n in (("B", 1), ("C", 2)):
        assert rll_violation(vector_module(build_type(fam, n), "qaffine", 5)) is None

def currents():
    from qav.rmatrix import build_type
    from qav.repmod import vector_module
    from qav.drinfeld import ModuleContext, check_qaff_relations
    ctx = ModuleContext(vector_module(build_type("C", 2), "qaffine", 5), 6)
    check_qaff_relations(ctx.t, ctx.currents("qaffine"))

out = {"backend": K.BACKEND}
for name, fn in (("scalars", scalars), ("ratfuns", ratfuns), ("rll", rll), ("currents", currents)):
    best = None
    for _ in range(int(sys.argv[1])):
        t0 = time.perf_counter(); fn(); dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    out[name] = best
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("QAV_PURE_PYTHON", None)
    if pure:
        env["QAV_PURE_PYTHON"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeat", type=int, default=3, help="runs per workload; the best time is kept")
    args = p.parse_args(argv)
    compiled, pure = run(False, args.repeat), run(True, args.repeat)
    if compiled["backend"] != "cython":
        print("compiled kernels are not built; both columns use the pure-Python backend")
    print(f"{'workload':10} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for name in ("scalars", "ratfuns", "rll", "currents"):
        a, b = compiled[name], pure[name]
        print(f"{name:10} {a:11.3f} {b:10.3f} {b / a:7.2f}x")


if __name__ == "__main__":
    main()

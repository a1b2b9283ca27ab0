"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times the scalar state evaluation, one Gauss-Legendre panel of the F(m)
quadrature, and a cold evaluation of the whole F(m) table, for each
backend available. Also reports the largest disagreement between the two.
"""
import argparse
import importlib
import os
import subprocess
import sys
import timeit

import numpy as np


def _load(name):
    try:
        return importlib.import_module(name)
    except ImportError:
        return None


def _panel_args():
    x, w = np.polynomial.legendre.leggauss(24)
    from bigravity.radial_map import singular_data

    m0, d1, d2 = singular_data()
    return np.ascontiguousarray(x), np.ascontiguousarray(w), m0, d1, d2


def bench_kernels(mod, repeat):
    x, w, m0, d1, d2 = _panel_args()
    ms = np.linspace(-10.0, 10.0, 1000)
    ms = ms[np.abs(ms + 2.0) > 1e-3]

    def states():
        for m in ms:
            mod.state(m, m - 1.0)

    def panels():
        for a in np.linspace(-6.0, 3.0, 37):
            mod.piece_sum(a, a + 0.25, x, w, m0, d1, d2)

    t_state = min(timeit.repeat(states, number=1, repeat=repeat)) / len(ms)
    t_panel = min(timeit.repeat(panels, number=1, repeat=repeat)) / 37
    return t_state, t_panel


def cold_table_time(pure):
    """Fresh interpreter: time critical_constants() including all quadrature."""
    env = dict(os.environ)
    if pure:
        env["BIGRAVITY_PURE_PYTHON"] = "1"
    code = (
        "import time; t=time.perf_counter();"
        "from bigravity.radial_map import critical_constants, branch_image, Branch;"
        "critical_constants(); [branch_image(b) for b in list(Branch)[:5]];"
        "print(time.perf_counter()-t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip())


def max_disagreement(fast, slow):
    x, w, m0, d1, d2 = _panel_args()
    worst = 0.0
    for m in np.linspace(-10.0, 10.0, 401):
        if abs(m + 2.0) < 1e-3:
            continue
        a = fast.state(m, m - 1.0)
        b = slow.state(m, m - 1.0)
        worst = max(worst, max(abs(p - q) / max(1.0, abs(q)) for p, q in zip(a, b)))
    for a in np.linspace(-6.0, 3.0, 37):
        p = fast.piece_sum(a, a + 0.25, x, w, m0, d1, d2)
        q = slow.piece_sum(a, a + 0.25, x, w, m0, d1, d2)
        worst = max(worst, abs(p - q) / max(1.0, abs(q)))
    return worst


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    pure = _load("bigravity._kernels_py")
    compiled = _load("bigravity._kernels")
    rows = [("python", pure)]
    if compiled is not None:
        rows.append(("cython", compiled))
    else:
        print("compiled kernels not built; timing the fallback only")

    results = {}
    for name, mod in rows:
        results[name] = bench_kernels(mod, args.repeat)
    print(f"{'backend':<8} {'state [us]':>12} {'GL panel [us]':>14} {'cold F table [ms]':>18}")
    for name, mod in rows:
        t_state, t_panel = results[name]
        cold = cold_table_time(pure=(name == "python"))
        print(f"{name:<8} {t_state * 1e6:12.2f} {t_panel * 1e6:14.2f} {cold * 1e3:18.1f}")
    if compiled is not None:
        s = results["python"][0] / results["cython"][0]
        p = results["python"][1] / results["cython"][1]
        print(f"speed-up: state x{s:.1f}, panel x{p:.1f}")
        print(f"max relative disagreement: {max_disagreement(compiled, pure):.2e}")


if __name__ == "__main__":
    main()

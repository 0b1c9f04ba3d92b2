"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--n 4096] [--repeat 200]

Both implementations are imported directly, so the result does not depend on
DNLS_LAB_PURE_PYTHON.  Also times a full integrator step under each backend
and checks that the two backends agree.
"""

import argparse
import importlib
import timeit

import numpy as np

from dnls_lab import _kernels_py as py

try:
    from dnls_lab import _kernels as cy
except ImportError:
    cy = None


def cases(n, rng):
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ux = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    r = rng.standard_normal(n)
    return {
        "seq_sum": (r,),
        "exclusive_prefix": (r,),
        "density_sums": (u, ux),
        "u_nonlinear": (u, ux),
        "cubic": (u,),
    }


def bench(mod, name, args, repeat):
    fn = getattr(mod, name)
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def step_time(mod, n, repeat):
    ev = importlib.import_module("dnls_lab.evolve")
    from dnls_lab.grid import GridSpec, Params
    from dnls_lab.soliton import varphi_profile

    saved = ev.kernels
    ev.kernels = mod
    try:
        st = ev.Stepper(GridSpec(n, 40.0), 1e-3)
        uh = np.fft.fft(varphi_profile(Params(1.0, 1.0), st.grid).values)
        return min(timeit.repeat(lambda: st.step_hat(uh), number=1, repeat=repeat)), st.step_hat(uh)
    finally:
        ev.kernels = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if cy is None:
        print("compiled extension not built; only the numpy fallback is available")
    print(f"{'kernel':<18}{'python [us]':>14}{'cython [us]':>14}{'speedup':>10}")
    for name, a in cases(args.n, rng).items():
        tp = bench(py, name, a, args.repeat) * 1e6
        if cy is None:
            print(f"{name:<18}{tp:>14.1f}")
            continue
        tc = bench(cy, name, a, args.repeat) * 1e6
        print(f"{name:<18}{tp:>14.1f}{tc:>14.1f}{tp / tc:>10.2f}")
    tp, up = step_time(py, args.n, max(5, args.repeat // 10))
    line = f"{'IF-RK4 step':<18}{tp * 1e6:>14.1f}"
    if cy is not None:
        tc, uc = step_time(cy, args.n, max(5, args.repeat // 10))
        line += f"{tc * 1e6:>14.1f}{tp / tc:>10.2f}"
        line += f"   max |diff| = {np.max(np.abs(up - uc)):.2e}"
    print(line)


if __name__ == "__main__":
    main()

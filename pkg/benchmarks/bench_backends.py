#!/usr/bin/env python3
"""Compare the compiled stepping kernel with the NumPy fallback.

Runs the same workloads through both backends in subprocesses (the choice
is made at import time) and prints a timing table.  Usage:

    python3 benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKER = textwrap.dedent("""
    import json, sys, time
    import pointwalk
    from pointwalk.exact import evolve_perturbed, evolve_taboo
    from pointwalk.kernels import LAZY_1D, LAZY_2D, LAZY_3D
    from pointwalk.montecarlo import sample

    repeat = int(sys.argv[1])

    workloads = {
        "evolve 1D n=4000": lambda: evolve_perturbed(LAZY_1D(), 4000),
        "evolve 2D n=250": lambda: evolve_perturbed(LAZY_2D(), 250),
        "evolve 3D n=40": lambda: evolve_perturbed(LAZY_3D(), 40),
        "taboo 2D n=150": lambda: evolve_taboo(LAZY_2D(), 150),
        "sample n=32 x 2e5": lambda: sample(LAZY_1D(), 32, 200_000, seed=1),
    }

    out = {"backend": pointwalk.BACKEND, "timings": {}}
    for name, fn in workloads.items():
        fn()  # warm up allocations
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out["timings"][name] = best
    print(json.dumps(out))
""")


def run_backend(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("PWL_PURE", None)
    if pure:
        env["PWL_PURE"] = "1"
    res = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)],
        check=True, env=env, capture_output=True, text=True,
    )
    return json.loads(res.stdout)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions per workload (best-of)")
    args = parser.parse_args()

    fast = run_backend(pure=False, repeat=args.repeat)
    slow = run_backend(pure=True, repeat=args.repeat)
    if fast["backend"] == slow["backend"]:
        print("note: compiled extension unavailable; comparing the "
              "fallback with itself", file=sys.stderr)

    width = max(len(k) for k in fast["timings"])
    print(f"{'workload':<{width}}  {fast['backend']:>10}  "
          f"{slow['backend']:>10}  {'speedup':>8}")
    for name, t_fast in fast["timings"].items():
        t_slow = slow["timings"][name]
        print(f"{name:<{width}}  {t_fast:>9.4f}s  {t_slow:>9.4f}s  "
              f"{t_slow / t_fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Time the jitted kernels against the pure-numpy fallback.

The execution path is fixed at import time from JSR_PURE_NUMPY, so each
(case, path) pair runs in a fresh child process.  Children warm the
kernels on a tiny input first (the jit cache persists on disk, so only
the very first run on a machine pays compile time), then time the real
workload and print a JSON row.  The parent checks both paths agree on
node counts and values before printing the table; disagreement is a bug,
not a benchmark result.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = ("sweep-2x2-d13", "sweep-3x4x4-d8", "refine-2x5x5")


def _build(case):
    import numpy as np

    from jsrkit import MatrixSet

    if case == "sweep-2x2-d13":
        rng = np.random.default_rng(11)
        gens = rng.uniform(-1.0, 1.0, (2, 2, 2)) + 0j
        return MatrixSet(np.ascontiguousarray(gens))
    rng = np.random.default_rng(7)
    g4 = rng.uniform(-1.0, 1.0, (3, 4, 4)) + 1j * rng.uniform(-1.0, 1.0, (3, 4, 4))
    m4 = MatrixSet(np.ascontiguousarray(g4))
    if case == "sweep-3x4x4-d8":
        return m4
    g5 = rng.uniform(-1.0, 1.0, (2, 5, 5)) + 1j * rng.uniform(-1.0, 1.0, (2, 5, 5))
    return MatrixSet(np.ascontiguousarray(g5))


def run_worker(case):
    from jsrkit import MatrixSet, refine, sandwich_profiles
    from jsrkit._kernels import USING_NUMBA

    import numpy as np

    warm = MatrixSet(np.ascontiguousarray(np.eye(2)[None, :, :] + 0j))
    sandwich_profiles(warm, 2)
    refine(warm, 0.5, 10)

    M = _build(case)
    t0 = time.perf_counter()
    if case == "sweep-2x2-d13":
        r, b = sandwich_profiles(M, 13)
        summary = {"lower": float(r[-1]), "upper": float(b[-1])}
    elif case == "sweep-3x4x4-d8":
        r, b = sandwich_profiles(M, 8)
        summary = {"lower": float(r[-1]), "upper": float(b[-1])}
    else:
        rep = refine(M, 0.005, 500_000)
        summary = {"lower": rep.lower, "upper": rep.upper,
                   "nodes": rep.nodes_explored}
    elapsed = time.perf_counter() - t0
    print(json.dumps({"case": case, "jitted": USING_NUMBA,
                      "seconds": elapsed, **summary}))


def run_child(case, pure, repeats):
    env = dict(os.environ, JSR_PURE_NUMPY="1" if pure else "0")
    best = None
    for _ in range(repeats):
        proc = subprocess.run(
            [sys.executable, __file__, "--worker", case],
            capture_output=True, text=True, env=env, check=True)
        row = json.loads(proc.stdout)
        if best is None or row["seconds"] < best["seconds"]:
            best = row
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3,
                    help="runs per (case, path); best time wins")
    ap.add_argument("--worker", choices=CASES, help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.worker:
        run_worker(args.worker)
        return 0

    rows = []
    mismatch = False
    for case in CASES:
        fast = run_child(case, pure=False, repeats=args.repeats)
        slow = run_child(case, pure=True, repeats=args.repeats)
        for key in ("lower", "upper", "nodes"):
            if key in fast and fast.get(key) != slow.get(key):
                print(f"MISMATCH {case}.{key}: jitted {fast.get(key)!r} "
                      f"vs numpy {slow.get(key)!r}", file=sys.stderr)
                mismatch = True
        rows.append((case, fast["seconds"], slow["seconds"]))

    width = max(len(c) for c in CASES)
    print(f"{'case':<{width}}  {'numba':>9}  {'numpy':>9}  speedup")
    for case, tf, ts in rows:
        print(f"{case:<{width}}  {tf:>8.3f}s  {ts:>8.3f}s  {ts / tf:>6.1f}x")
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())

"""Time the numba and numpy flavours of each hot kernel on the same inputs.

    python benchmarks/bench_kernels.py [--seed 0] [--repeat 5]

Prints one ``kernel=... backend=... seconds=...`` line per pair, plus the
speedup. Results are checked for equality before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from boolwidth import kernels


def _best(fn, args, repeat):
    fn(*args)  # warm-up (and JIT compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng: np.random.Generator):
    rows = rng.integers(0, 2**63, size=(400, 8), dtype=np.uint64)
    yield "gf2_rank", (rows,)
    # sparse generators give a large closure (about 2e4 sets)
    gens = np.array([sum(1 << int(b) for b in rng.choice(22, 3, replace=False)) for _ in range(22)], dtype=np.uint64)
    yield "closure_count", (gens, 1 << 24)
    ka, kb, kw, kin = 120, 120, 120, 200
    ta = rng.integers(-1, 10, size=(ka, kw), dtype=np.int64)
    tb = rng.integers(-1, 10, size=(kb, kw), dtype=np.int64)
    jw = rng.integers(0, kin, size=(ka, kb), dtype=np.int64)
    jabar = rng.integers(0, kw, size=(kb, kw), dtype=np.int64)
    jbbar = rng.integers(0, kw, size=(ka, kw), dtype=np.int64)
    yield "dp_join", (ta, tb, jw, jabar, jbbar, kin, False)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    for name, inputs in cases(rng):
        impls = kernels.implementations(name)
        results = {b: fn(*inputs) for b, fn in impls.items()}
        ref = results["numpy"]
        for b, r in results.items():
            if not np.array_equal(np.asarray(r), np.asarray(ref)):
                raise SystemExit(f"{name}: {b} disagrees with numpy")
        timing = {b: _best(fn, inputs, args.repeat) for b, fn in impls.items()}
        for b, t in timing.items():
            print(f"kernel={name} backend={b} seconds={t:.6f}")
        if "numba" in timing:
            print(f"kernel={name} speedup={timing['numpy'] / timing['numba']:.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Time the replicate kernels under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py --replicates 200000 --repeat 3

Both backends produce the same draws (integer outputs are identical), so the
table compares equal work. The first numba call per kernel includes JIT
compilation (or cache load) and is reported separately.
"""

import argparse
import json
import time

import numpy as np

from gbas import kernels
from gbas.distributions import derive_key

CASES = {
    "gbas_literal": lambda n: (0.2, 10, kernels.NO_BUDGET),
    "gbas_collapsed": lambda n: (0.2, 10),
    "gbas_collapsed_k50": lambda n: (0.2, 50),
    "dklr": lambda n: (0.3, 260, kernels.NO_BUDGET),
    "fixed_n": lambda n: (0.3, 100),
    "thinned_sum": lambda n: (0.3,),
}


def kernel_name(case):
    return case.replace("_k50", "")


def time_case(case, backend, n, repeat, parallel):
    key = derive_key(1234)
    idx = np.arange(n, dtype=np.int64)
    args = CASES[case](n)
    t0 = time.perf_counter()
    first = kernels.run(kernel_name(case), key, idx[:16], *args, backend=backend)
    warmup = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = kernels.run(kernel_name(case), key, idx, *args, backend=backend, parallel=parallel)
        best = min(best, time.perf_counter() - t0)
    del first
    return {"warmup_s": warmup, "best_s": best, "replicates_per_s": n / best, "out": out}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--replicates", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--parallel", type=int, default=1)
    ap.add_argument("--cases", nargs="*", default=list(CASES), choices=list(CASES))
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for case in args.cases:
        res = {b: time_case(case, b, args.replicates, args.repeat, args.parallel) for b in sorted(kernels.BACKENDS)}
        outs = [r.pop("out") for r in res.values()]
        first = outs[0] if isinstance(outs[0], tuple) else (outs[0],)
        same = True
        for other in outs[1:]:
            other = other if isinstance(other, tuple) else (other,)
            for x, y in zip(first, other):
                if np.issubdtype(x.dtype, np.integer):
                    same &= bool(np.array_equal(x, y))
                else:
                    same &= bool(np.allclose(x, y, rtol=1e-12, atol=0, equal_nan=True))
        row = {"kernel": case, "replicates": args.replicates, "agree": same}
        for b, r in res.items():
            row[b] = r
        if "numba" in res:
            row["speedup"] = res["numpy"]["best_s"] / res["numba"]["best_s"]
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':<20}{'numpy s':>10}{'numba s':>10}{'speedup':>9}{'numba jit s':>13}  agree")
    for r in rows:
        nb = r.get("numba", {})
        print(f"{r['kernel']:<20}{r['numpy']['best_s']:>10.3f}{nb.get('best_s', float('nan')):>10.3f}"
              f"{r.get('speedup', float('nan')):>9.1f}{nb.get('warmup_s', float('nan')):>13.2f}  {r['agree']}")


if __name__ == "__main__":
    main()

"""Compare the compiled GMP kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 5000] [--repeat 3]

Both implementations run the same workloads on the same inputs (terms of
M_n/n!, the slowest-growing denominators among the built-in examples) and the
outputs are checked for equality before any timing is reported.
"""

import argparse
import sys
import time

from holocert import catalog, kernels
from holocert.recurrence import SequenceCache


def best_of(repeat, fn):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads(impl, n):
    rec = catalog.motzkin_over_factorial()
    cache = SequenceCache(rec)
    polys, q = cache._polys, cache._q
    init_n = [v.numerator for v in rec.resolved().initials]
    init_d = [v.denominator for v in rec.resolved().initials]
    nums, dens = impl.extend_terms(polys, q, 0, init_n, init_d, n)
    nums, dens = init_n + nums, init_d + dens
    xs, ys = impl.ratio_pairs(nums, dens)
    pair = catalog.motzkin_scaled_bounds()
    lo = pair.valid_from
    hi = len(xs) - 1
    g = [pair.g.value_pair(k) for k in range(lo, hi + 1)]
    f = [pair.f.value_pair(k) for k in range(lo, hi + 1)]
    gn, gd = [p for p, _ in g], [q for _, q in g]
    fn, fd = [p for p, _ in f], [q for _, q in f]
    return {
        "extend_terms": lambda: impl.extend_terms(polys, q, 0, init_n, init_d, n),
        "ratio_pairs": lambda: impl.ratio_pairs(nums, dens),
        "scan_logmono3": lambda: impl.scan_logmono3(xs, ys, 2, len(xs) - 2),
        "scan_laguerre2": lambda: impl.scan_laguerre2(xs, ys, 0, len(xs) - 4),
        "scan_u_bounds": lambda: impl.scan_u_bounds(xs, ys, lo, hi, gn, gd, fn, fd),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5000, help="number of terms")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    fast = kernels.compiled_kernels
    if fast is None:
        print("compiled kernels are not available (extension not built); nothing to compare")
        return 1
    slow = kernels.python_kernels
    wf, ws = workloads(fast, args.n), workloads(slow, args.n)
    print(f"M_n/n!, {args.n} terms, best of {args.repeat}")
    print(f"{'kernel':<16}{'gmp [s]':>10}{'python [s]':>12}{'speedup':>9}")
    total_f = total_s = 0.0
    for name in wf:
        tf, of = best_of(args.repeat, wf[name])
        ts, os_ = best_of(args.repeat, ws[name])
        if of != os_:
            print(f"{name}: implementations disagree", file=sys.stderr)
            return 2
        total_f += tf
        total_s += ts
        print(f"{name:<16}{tf:>10.3f}{ts:>12.3f}{ts / tf:>8.1f}x")
    print(f"{'total':<16}{total_f:>10.3f}{total_s:>12.3f}{total_s / total_f:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Size/power study of the bootstrap symmetry test: empirical rejection rate
under a symmetric null (size) and under skewed alternatives (power)."""

import argparse
import time

from extrec import make_distribution, sample, symmetry_test


def rejection_rate(spec, runs, n, replicates, alpha, data_base, test_base):
    d = make_distribution(spec)
    rejections = 0
    for r in range(runs):
        xs = sample(d, n, data_base + r)
        rejections += symmetry_test(xs, replicates, alpha, test_base + 10_000 * r).rejected
    return rejections / runs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=500)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--replicates", type=int, default=999)
    ap.add_argument("--alpha", type=float, default=0.05)
    ap.add_argument("--null", default="normal")
    ap.add_argument("--alternatives", nargs="+",
                    default=["exponential:rate=1", "power:theta=2", "pareto:theta=2"])
    ap.add_argument("--seed", type=int, default=3_000_000)
    args = ap.parse_args()

    t0 = time.perf_counter()
    size = rejection_rate(args.null, args.runs, args.n, args.replicates, args.alpha,
                          args.seed, 13)
    print(f"size  {args.null:20s} {size:.3f}   (nominal {args.alpha})")
    for spec in args.alternatives:
        power = rejection_rate(spec, args.runs, args.n, args.replicates, args.alpha,
                               args.seed + 5_000_000, 13)
        print(f"power {spec:20s} {power:.3f}")
    print(f"({args.runs} runs each, n={args.n}, R={args.replicates}; "
          f"{time.perf_counter() - t0:.0f}s)")


if __name__ == "__main__":
    main()

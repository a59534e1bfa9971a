"""Compiled vs pure-Python DP kernels, then the solver ladder.

    python benchmarks/bench_kernels.py [--sizes 10 50 100 200] [--skip-ladder]
"""

import argparse

from anmdesign import bench, kernels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=list(bench.LADDER))
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-ladder", action="store_true")
    args = ap.parse_args()

    print(f"active backend: {kernels.BACKEND}")
    rows = bench.bench_kernels(repeat=args.repeat)
    times = {(r["kernel"], r["items"], r["cap"], r["backend"]): r["seconds"] for r in rows}
    print(f"{'kernel':<18} {'items':>5} {'cap':>7} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for kernel, m, cap in sorted({k[:3] for k in times}):
        py = times[(kernel, m, cap, "python")]
        cc = times.get((kernel, m, cap, "compiled"))
        speed = f"{py / cc:8.1f}x" if cc else "     n/a"
        cc_s = f"{cc:11.4f}" if cc else "        n/a"
        print(f"{kernel:<18} {m:>5} {cap:>7} {py:>10.4f} {cc_s} {speed}")

    if not args.skip_ladder:
        print()
        print(f"{'solver':<18} {'n':>4} {'status':<12} {'seconds':>8}")
        for r in bench.bench_ladder(args.sizes):
            print(f"{r['solver']:<18} {r['n']:>4} {r['status']:<12} {r['seconds']:>8.3f}")


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python counting kernels on Birkhoff dilates.

    python3 benchmarks/bench_kernels.py            # B_3 r<=8, B_4 r<=5
    python3 benchmarks/bench_kernels.py --n 4 --r 6
"""

import argparse
import time

from ehrhart_forge import kernels
from ehrhart_forge.ehrhart import count_points
from ehrhart_forge.families import birkhoff


def timed(P, r, backend):
    t0 = time.perf_counter()
    c = count_points(P, r, backend=backend, threads=1)
    return c, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, action="append")
    ap.add_argument("--r", type=int, default=None)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    cases = [(n, args.r) for n in args.n] if args.n else [(3, 8), (4, 5)]
    backends = kernels.available_backends()
    print("backends:", ", ".join(backends))
    print(f"{'case':>10} {'count':>10} " + " ".join(f"{b + ' s':>12}" for b in backends) + "  speedup")
    for n, r in cases:
        P = birkhoff(n)
        r = r if r is not None else 5
        times = {}
        counts = set()
        for b in backends:
            best = float("inf")
            for _ in range(args.repeat):
                c, dt = timed(P, r, b)
                best = min(best, dt)
                counts.add(c)
            times[b] = best
        assert len(counts) == 1, f"backends disagree: {counts}"
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        print(
            f"{f'B_{n} r={r}':>10} {counts.pop():>10} "
            + " ".join(f"{times[b]:>12.4f}" for b in backends)
            + f"  {speed:6.1f}x"
        )


if __name__ == "__main__":
    main()

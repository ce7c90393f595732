"""How often does the canonical splitting fail to give a graph?

Sweeps seeded instances of both modes and tabulates retries, doubling and
conditioning of the extracted extension per (n, m).

    python scripts/retry_statistics.py --count 2000 --max-dim 8
"""

import argparse
import collections

import numpy as np

from jextend import ToleranceConfig, extend
from jextend.oracle import gen_case_a, gen_case_b


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--max-dim", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0, help="engine retry seed")
    args = parser.parse_args()

    cfg = ToleranceConfig(seed=args.seed)
    rng = np.random.default_rng(12345)
    for mode, gen in (("skew", gen_case_a), ("isometric", gen_case_b)):
        table = collections.defaultdict(list)
        for k in range(args.count):
            n = int(rng.integers(1, args.max_dim + 1))
            m = int(rng.integers(0, n + 1))
            r = extend(gen(n, m, k, cfg))
            table[(n, m)].append((r.retries_used, r.doubled, r.sigma_min))

        print(f"\n== {mode} ==")
        print(f"{'n':>3} {'m':>3} {'count':>6} {'mean retries':>13} {'max':>4} {'doubled':>8} {'min sigma':>10}")
        for (n, m), rows in sorted(table.items()):
            retries = np.array([r[0] for r in rows])
            print(
                f"{n:>3} {m:>3} {len(rows):>6} {retries.mean():>13.2f} {retries.max():>4}"
                f" {sum(r[1] for r in rows):>8} {min(r[2] for r in rows):>10.2e}"
            )


if __name__ == "__main__":
    main()

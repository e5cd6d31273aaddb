"""Time the bitset kernels and two drivers with and without numba.

Each backend runs in its own interpreter because HEXMDS_NUMBA is read at
import time:

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from hexmds import _jit, solvers
from hexmds.cover import CoverTables, exact_mds
from hexmds.geom import cover_matrix
from hexmds.io import gen_clustered, gen_uniform

repeat = int(sys.argv[1])

def best(fn):
    fn()  # warm-up, includes compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times) * 1000.0

rng = np.random.default_rng(0)
tables = []
for _ in range(40):
    pts = rng.uniform(0, 3.2, (28, 2))
    tables.append(CoverTables(cover_matrix(pts, pts)))
dense = gen_uniform(22, 3.5, 3.5, 1).points
mixed = gen_clustered(60, 4, 0.6, 12, 12, 2).points

rows = {
    "bb_min_size x40": best(lambda: [t.min_size(28) for t in tables]),
    "first_cover x40": best(lambda: [t.first_cover(t.min_size(28)) for t in tables]),
    "exact_mds n=22": best(lambda: exact_mds(dense)),
    "three_factor n=60": best(lambda: solvers.three_factor(mixed)),
    "five_half n=60": best(lambda: solvers.five_half(mixed)),
}
print(json.dumps({"backend": _jit.backend(), "millis": rows}))
"""


def run(flag: str, repeat: int) -> dict:
    env = dict(os.environ, HEXMDS_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(out.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    fast, slow = run("1", args.repeat), run("0", args.repeat)
    print(f"{'case':<20} {fast['backend']:>12} {slow['backend']:>12} {'speedup':>8}")
    for case, ms in fast["millis"].items():
        ref = slow["millis"][case]
        print(f"{case:<20} {ms:>10.2f}ms {ref:>10.2f}ms {ref / ms:>7.1f}x")
    print(f"total wall time {time.perf_counter() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Random trace-zero integer matrices through the PID pipeline: sizes, scale d, a12 and timing."""
from __future__ import annotations

import argparse
import json
import random
import statistics
import time
from collections import Counter
from dataclasses import asdict, dataclass

from commutant.commute import decompose_pid, decompose_pid_gl
from commutant.exactring import ZZ, commutator
from commutant.samples import random_trace_zero


@dataclass
class IntegerRunConfig:
    n: int = 4
    samples: int = 100
    bound: int = 50
    gl: bool = False
    primes_bound: int = 100
    seed: int = 0


def run(cfg: IntegerRunConfig) -> dict:
    rng = random.Random(cfg.seed)
    solve = decompose_pid_gl if cfg.gl else decompose_pid
    times, heights, ds, a12s = [], [], Counter(), Counter()
    for _ in range(cfg.samples):
        A = random_trace_zero(ZZ, cfg.n, rng, bound=cfg.bound)
        t0 = time.perf_counter()
        cert = solve(A, primes_bound=cfg.primes_bound)
        times.append(time.perf_counter() - t0)
        assert commutator(cert.X, cert.Y) == A
        heights.append(len(str(max(abs(v) for v in cert.Y.vec() + cert.X.vec()))))
        ds[cert.d] += 1
        a12s[cert.a12] += 1
    return {
        "config": asdict(cfg),
        "median_seconds": round(statistics.median(times), 5),
        "max_seconds": round(max(times), 5),
        "median_entry_digits": statistics.median(heights),
        "max_entry_digits": max(heights),
        "scale_d": dict(ds.most_common(5)),
        "a12": dict(a12s.most_common(5)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--bound", type=int, default=50)
    ap.add_argument("--gl", action="store_true")
    ap.add_argument("--primes-bound", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(json.dumps(run(IntegerRunConfig(**vars(args))), indent=2))


if __name__ == "__main__":
    main()

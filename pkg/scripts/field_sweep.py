"""Exhaustive sweep of sl_n(F_p): decompose every matrix and tally the routes taken."""
from __future__ import annotations

import argparse
import itertools
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass

from commutant.commute import decompose_field, is_regular
from commutant.exactring import Matrix, Ring, commutator


@dataclass
class SweepConfig:
    p: int = 3
    n: int = 3


def sweep(cfg: SweepConfig) -> dict:
    R = Ring.fp(cfg.p)
    n = cfg.n
    tally = Counter()
    t0 = time.perf_counter()
    for e in itertools.product(range(cfg.p), repeat=n * n - 1):
        rows = [list(e[i * n:(i + 1) * n]) for i in range(n - 1)] + [list(e[(n - 1) * n:])]
        rows[-1].append(-sum(rows[i][i] for i in range(n - 1)))
        A = Matrix.of(R, rows)
        cert = decompose_field(A)
        assert commutator(cert.X, cert.Y) == A
        tally[cert.regularity or "zero"] += 1
        if cert.regularity == "sl":
            assert is_regular(cert.X, "sl")
    return {"config": asdict(cfg), "count": sum(tally.values()), "routes": dict(tally),
            "seconds": round(time.perf_counter() - t0, 2)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=SweepConfig.p)
    ap.add_argument("--n", type=int, default=SweepConfig.n)
    args = ap.parse_args()
    print(json.dumps(sweep(SweepConfig(args.p, args.n)), indent=2))


if __name__ == "__main__":
    main()

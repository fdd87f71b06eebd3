"""Group commutator witnesses in SL_2(Z/p^k): case counts, trace residues and timing."""
from __future__ import annotations

import argparse
import itertools
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass

from commutant.exactring import Matrix, Ring
from commutant.samples import random_scalar_sl2, random_sl2
from commutant.sl2grp import group_commutator_gl, group_commutator_sl


@dataclass
class ShalevConfig:
    p: int = 5
    k: int = 3
    samples: int = 500
    scalar_fraction: float = 0.3
    variant: str = "sl"
    seed: int = 0


def _inputs(cfg: ShalevConfig):
    R = Ring.zpk(cfg.p, cfg.k)
    if cfg.k == 1 and cfg.p <= 7:
        # small enough to enumerate
        for e in itertools.product(range(cfg.p), repeat=4):
            A = Matrix.of(R, [e[:2], e[2:]])
            if A.det() == 1:
                yield A
        return
    rng = random.Random(cfg.seed)
    for _ in range(cfg.samples):
        if cfg.k > 1 and rng.random() < cfg.scalar_fraction:
            yield random_scalar_sl2(R, rng.choice([1, -1]), rng)
        else:
            yield random_sl2(R, rng)


def run(cfg: ShalevConfig) -> dict:
    solve = group_commutator_sl if cfg.variant == "sl" else group_commutator_gl
    cases, traces = Counter(), Counter()
    fallbacks = 0
    t0 = time.perf_counter()
    for A in _inputs(cfg):
        w = solve(A)
        cases[w.case] += 1
        traces[w.s % cfg.p] += 1
        fallbacks += w.seed_used == "diagonal"
    return {"config": asdict(cfg), "cases": dict(cases),
            "trace_residues": dict(sorted(traces.items())),
            "fallbacks": fallbacks,
            "seconds": round(time.perf_counter() - t0, 2)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(ShalevConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    args = ap.parse_args()
    print(json.dumps(run(ShalevConfig(**vars(args))), indent=2))


if __name__ == "__main__":
    main()

"""Random test inputs shared by the self-test, the test suite and the scripts."""
from __future__ import annotations

import random

from .exactring import ZZ, Matrix, Ring


def random_matrix(ring: Ring, n: int, rng: random.Random, bound: int = 9, cols: int | None = None) -> Matrix:
    cols = n if cols is None else cols
    if ring.modulus:
        pick = lambda: rng.randrange(ring.modulus)
    else:
        pick = lambda: rng.randint(-bound, bound)
    return Matrix.of(ring, [[pick() for _ in range(cols)] for _ in range(n)])


def random_trace_zero(ring: Ring, n: int, rng: random.Random, bound: int = 9) -> Matrix:
    rows = [list(r) for r in random_matrix(ring, n, rng, bound).entries]
    rows[-1][-1] -= sum(rows[i][i] for i in range(n))
    return Matrix.of(ring, rows)


def random_unimodular(n: int, rng: random.Random, steps: int = 10) -> Matrix:
    """Product of up to ``steps`` random elementary integer matrices (and sign flips)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(rng.randint(0, steps)):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j or rng.random() < 0.1:
            rows[i] = [-v for v in rows[i]]
        else:
            c = rng.choice([-2, -1, 1, 2])
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return Matrix(ZZ, tuple(tuple(r) for r in rows))


def random_sl2(ring: Ring, rng: random.Random) -> Matrix:
    q, p = ring.modulus, ring.p
    while True:
        a, b, c, d = (rng.randrange(q) for _ in range(4))
        if a % p:
            d = (1 + b * c) * pow(a, -1, q) % q
            return Matrix.of(ring, [[a, b], [c, d]])
        if b % p:
            # a ≡ 0: solve for c instead
            c = (a * d - 1) * pow(b, -1, q) % q
            return Matrix.of(ring, [[a, b], [c, d]])


def random_scalar_sl2(ring: Ring, lam: int, rng: random.Random) -> Matrix:
    """Random element of SL_2 congruent to ``lam·1`` modulo p (needs k >= 2 to be nontrivial)."""
    p, q = ring.p, ring.modulus
    for _ in range(10_000):
        N = random_sl2(ring, rng)
        i = rng.randint(1, max(1, ring.k - 1))
        A = Matrix.scalar(ring, 2, lam) + N.scale(p**i)
        # correct the (1,1) entry to force det 1 when possible
        (a, b), (c, d) = A.entries
        if d % p:
            a = (1 + b * c) * pow(d, -1, q) % q
            A = Matrix.of(ring, [[a, b], [c, d]])
            if A.det() == 1:
                return A
    raise RuntimeError("no scalar-mod-p sample found")

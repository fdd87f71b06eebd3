"""Property suites behind ``commutant selftest``.

Each suite draws its cases from ``random.Random(f"{seed}:{suite}:{index}")``
so a failing case can be replayed on its own.  Library functions are looked
up through their modules at call time; patching a module attribute therefore
changes what the suites exercise.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import certificate, commute, exactring, latsolve, lrform, samples, sl2grp
from .errors import NoLaffeyReamsForm

SIZES = {"small": 0.2, "full": 1.0}


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed,
                "seconds": round(self.seconds, 3), "failures": self.failures[:5]}


def _ring_pool(rng):
    return rng.choice([exactring.ZZ, exactring.QQ, exactring.Ring.fp(rng.choice([2, 3, 5, 7])),
                       exactring.Ring.zpk(rng.choice([2, 3, 5]), rng.randint(1, 3))])


def case_matrix_algebra(rng):
    ring = _ring_pool(rng)
    n = rng.randint(1, 4)
    A, B, C = (samples.random_matrix(ring, n, rng) for _ in range(3))
    assert (A @ B) @ C == A @ (B @ C)
    assert A @ (B + C) == A @ B + A @ C
    assert A + B == B + A


def case_charpoly(rng):
    ring = rng.choice([exactring.ZZ, exactring.Ring.fp(rng.choice([2, 3, 5, 7]))])
    d = rng.randint(1, 8)
    coeffs = [ring(rng.randint(-9, 9)) for _ in range(d)] + [ring(1)]
    f = exactring.Polynomial.of(ring, coeffs)
    assert exactring.charpoly(exactring.companion(f)) == f
    M = samples.random_matrix(exactring.ZZ, rng.randint(1, 6), rng)
    chi = exactring.charpoly(M)
    assert M.trace() == -chi[M.rows - 1]
    assert M.det() == certificate._bareiss_det(M.tolist())


def case_normal_forms(rng):
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    M = samples.random_matrix(exactring.ZZ, m, rng, cols=n)
    s = latsolve.snf(M)
    assert s.U @ M @ s.V == s.D
    assert abs(s.U.det()) == 1 and abs(s.V.det()) == 1
    assert all(s.diagonal[i + 1] % s.diagonal[i] == 0 for i in range(len(s.diagonal) - 1))
    h = latsolve.hnf(M)
    assert h.U @ M == h.H and abs(h.U.det()) == 1
    if m >= n:
        prod = 1
        for dj in s.diagonal:
            prod *= dj
        expected = prod if s.rank == n else 0
        assert latsolve.maximal_minor_gcd(M) == expected == certificate.minor_gcd_oracle(M.tolist())


def case_lattice(rng):
    n = rng.randint(2, 5)
    r = rng.randint(1, n - 1)
    rows = samples.random_matrix(exactring.ZZ, r, rng, cols=n)
    if latsolve.rank(rows) < r:
        return
    sat = latsolve.saturate(rows)
    assert latsolve.snf(sat).diagonal == (1,) * r
    g = latsolve.complete_basis(sat)
    assert abs(g.det()) == 1


def case_lr_form(rng):
    n = rng.randint(2, 6)
    A = samples.random_matrix(exactring.ZZ, n, rng, bound=20)
    if A.is_scalar():
        return
    try:
        lr = lrform.lr_reduce_int(A)
    except NoLaffeyReamsForm:
        assert n == 2
        return
    assert lr.B == lr.g @ A @ lr.g.inverse() and abs(lr.g.det()) == 1
    assert lrform.is_lr_form(lr.B)[0]
    assert abs(lr.a12) == lrform.scalarity_modulus(A).mu
    assert exactring.charpoly(lr.B) == exactring.charpoly(A)


def case_x_identities(rng):
    ring = rng.choice([exactring.ZZ, exactring.Ring.fp(rng.choice([2, 3, 5, 7]))])
    n = rng.randint(3, 8)
    x = [ring(rng.randint(-5, 5)) for _ in range(n - 1)]
    a = ring(rng.randint(-5, 5))
    gen = commute.build_X(x, a, ring)
    X, P = gen.X, gen.P
    col = exactring.Matrix.column(ring, x)
    Xr, Pr, Pprev = X, P, exactring.Matrix.identity(ring, n - 1)
    for r in range(1, n):
        assert Xr.block(1, n, 1, n) == Pr and Xr.block(1, n, 0, 1) == Pprev @ col
        assert not any(Xr.entries[0])
        expected = ring((n - 1) * a) if r == n - 1 else ring(0)
        assert ring.is_zero(Xr.trace() - expected)
        Xr, Pprev, Pr = Xr @ X, Pr, Pr @ P
    if ring.is_field:
        if not ring.is_zero(a):
            assert commute.is_regular(X, "sl")
        if not ring.is_zero(a) or not ring.is_zero(x[-1]):
            assert commute.is_regular(X, "gl")


def case_field_decompose(rng):
    p = rng.choice([2, 3, 5, 7])
    ring = exactring.Ring.fp(p)
    A = samples.random_trace_zero(ring, rng.randint(3, 5), rng)
    cert = commute.decompose_field(A)
    assert exactring.commutator(cert.X, cert.Y) == A
    assert ring.is_zero(cert.X.trace()) and ring.is_zero(cert.Y.trace())
    if not A.is_scalar():
        assert commute.is_regular(cert.X_prime, "sl")


def case_pid_decompose(rng):
    n = rng.randint(3, 5)
    A = samples.random_trace_zero(exactring.ZZ, n, rng, bound=50)
    cert = commute.decompose_pid(A, primes_bound=30)
    assert exactring.commutator(cert.X, cert.Y) == A
    assert cert.X.trace() == 0 and cert.Y.trace() == 0
    assert certificate.minor_gcd_oracle(commute.vectorized_powers(cert.X).tolist()) == 1
    for p, ok in cert.checked_primes.items():
        if cert.a12 % p:
            assert ok


def case_group_commutator(rng):
    p, k = rng.choice([(5, 1), (5, 3), (7, 2), (11, 2), (13, 1)])
    ring = exactring.Ring.zpk(p, k)
    kind = rng.random()
    if k > 1 and kind < 0.3:
        A = samples.random_scalar_sl2(ring, rng.choice([1, -1]), rng)
    else:
        A = samples.random_sl2(ring, rng)
    w = sl2grp.group_commutator_sl(A)
    x, y = w.x, w.y
    assert x @ y @ x.inverse() @ y.inverse() == A
    assert x.det() == 1 and y.det() == 1
    assert w.s % p not in (2 % p, (-2) % p)
    assert exactring.charpoly(y) == exactring.charpoly(y @ A)


def case_certificates(rng):
    ring = _ring_pool(rng)
    M = samples.random_matrix(ring, rng.randint(1, 4), rng, cols=rng.randint(1, 4))
    assert certificate.matrix_from_json(certificate.matrix_to_json(M)) == M
    A = samples.random_trace_zero(exactring.ZZ, 3, rng, bound=20)
    doc = certificate.lie_certificate_json(commute.decompose_pid(A, primes_bound=20), "decompose")
    assert certificate.verify_certificate(doc).ok
    key = rng.choice(["X", "Y"])
    i, j = rng.randrange(3), rng.randrange(3)
    doc[key]["entries"][i][j] = str(int(doc[key]["entries"][i][j]) + rng.choice([-1, 1]))
    assert not certificate.verify_certificate(doc).ok


SUITES = {
    "matrix-algebra": ("case_matrix_algebra", 300),
    "charpoly": ("case_charpoly", 200),
    "normal-forms": ("case_normal_forms", 200),
    "lattice": ("case_lattice", 100),
    "lr-form": ("case_lr_form", 100),
    "x-identities": ("case_x_identities", 300),
    "field-decompose": ("case_field_decompose", 200),
    "pid-decompose": ("case_pid_decompose", 60),
    "group-commutator": ("case_group_commutator", 200),
    "certificates": ("case_certificates", 60),
}


def _count(base: int, budget) -> int:
    if budget in SIZES:
        return max(1, int(base * SIZES[budget]))
    return int(budget)


def run_suite(name: str, seed: int, count: int) -> SuiteResult:
    res = SuiteResult(name)
    fn = globals()[SUITES[name][0]]
    t0 = time.perf_counter()
    for i in range(count):
        rng = random.Random(f"{seed}:{name}:{i}")
        try:
            fn(rng)
            res.passed += 1
        except Exception as exc:  # noqa: BLE001 - any failure is a failed case
            res.failed += 1
            res.failures.append(f"case {i}: {type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t0
    return res


def run_selftest(seed: int = 0, budget="full", suites=None) -> dict:
    names = list(SUITES) if suites is None else list(suites)
    results = [run_suite(n, seed, _count(SUITES[n][1], budget)) for n in names]
    return {"tool": "commutant", "version": certificate.VERSION, "command": "selftest",
            "seed": seed, "budget": budget, "ok": all(r.failed == 0 for r in results),
            "suites": [r.to_json() for r in results]}

"""Writing trace-zero matrices as commutators ``[X, Y] = XY − YX``.

The ``X`` used for ``n >= 3`` is always a member of the family
``X(x, a) = [[0, 0], [x, P]]`` where ``P`` is the row-wise companion matrix
of ``t^(n-1) − a``.  Given ``A`` in Laffey–Reams form, :func:`xvector`
chooses ``x`` so that ``tr(X^r·A) = 0`` for ``r = 1..n−1``; ``Y`` is then
found by an exact linear solve.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import (
    CharacteristicMismatch,
    DimensionMismatch,
    DivisionFailure,
    InputError,
    InternalInvariantViolation,
    NotAField,
    SizeTooSmall,
    TraceNonZero,
)
from .exactring import ZZ, Matrix, Polynomial, Ring, commutator, companion, prime_factors, primes_up_to
from .latsolve import maximal_minor_gcd, rank, solve_linear
from .lrform import DEFAULT_BUDGET, LRForm, is_lr_form, lr_reduce_int, staircase_reduce_field

DEFAULT_PRIMES_BOUND = 100


@dataclass(frozen=True)
class XGenerator:
    n: int
    x: tuple
    a: object
    X: Matrix
    P: Matrix


@dataclass(frozen=True)
class Obstruction:
    """A 2×2 non-scalar matrix in characteristic 2 is never a commutator in sl_2."""

    A: Matrix
    reason: str = "in characteristic 2, [sl_2, sl_2] consists of the scalar matrices"


@dataclass(frozen=True)
class CommutatorCertificate:
    A: Matrix
    X: Matrix
    Y: Matrix
    g: Matrix
    d: object
    X_prime: Matrix
    Y_prime: Matrix
    traceless: bool = True
    gl_cert: int | None = None
    a12: object = None
    checked_primes: dict = field(default_factory=dict)
    regularity: str | None = None


def build_X(x, a, ring: Ring | None = None) -> XGenerator:
    if isinstance(x, Matrix):
        ring = ring or x.ring
        x = x.column_values()
    ring = ring or ZZ
    x = tuple(ring(v) for v in x)
    a = ring(a)
    n = len(x) + 1
    if n < 3:
        raise SizeTooSmall("X(x, a) is defined for n >= 3")
    P = companion(Polynomial.of(ring, [-a] + [0] * (n - 2) + [1]))
    zero = ring(0)
    rows = [(zero,) * n]
    for i in range(n - 1):
        rows.append((x[i],) + P.entries[i])
    return XGenerator(n, x, a, Matrix(ring, tuple(rows)), P)


def xvector(B) -> list:
    """``x`` with ``tr(X(x, a12)^r · B) = 0`` for ``r = 1..n−1`` and ``x[-1] = a11``."""
    if isinstance(B, LRForm):
        B = B.B
    ring = B.ring
    ok, a11, a12 = is_lr_form(B)
    n = B.rows
    if n < 3:
        raise SizeTooSmall("xvector needs n >= 3")
    if not ok:
        raise InputError("matrix is not in Laffey–Reams form")
    if ring.is_zero(a12):
        raise InputError("a12 = 0: scalar input has no x-vector")
    P = build_X([0] * (n - 1), a12, ring).P
    Q = B.block(1, n, 1, n)
    x = []
    Pr = P
    for _ in range(n - 1):
        t = (Pr @ Q).trace()
        try:
            m = ring.exact_div(t, a12)
        except InputError as exc:
            raise DivisionFailure(f"{a12} does not divide tr(P^r Q) = {t}") from exc
        x.append(ring.norm(-m))
        Pr = Pr @ P
    if x[-1] != a11 and not ring.is_zero(x[-1] - a11):
        raise DivisionFailure(f"last x-coordinate {x[-1]} differs from a11 = {a11}")
    X = build_X(x, a12, ring).X
    if not trace_criterion(X, B):
        raise InternalInvariantViolation("x-vector does not kill the traces")
    return x


def vectorized_powers(X: Matrix) -> Matrix:
    """The n²×n matrix whose columns are vec(1), vec(X), ..., vec(X^(n−1))."""
    n = X.rows
    cols = [M.vec() for M in X.powers(n)]
    return Matrix(X.ring, tuple(zip(*cols)))


def is_regular(X: Matrix, mode: str = "gl") -> bool:
    if not X.ring.is_field:
        raise NotAField(f"regularity is tested over fields, not {X.ring}")
    if mode not in ("gl", "sl"):
        raise InputError(f"mode must be 'gl' or 'sl', not {mode!r}")
    n = X.rows
    pw = X.powers(n)
    W = Matrix(X.ring, tuple(zip(*[M.vec() for M in pw])))
    if rank(W) < n:
        return False
    if mode == "gl":
        return True
    return any(not X.ring.is_zero(M.trace()) for M in pw)


def is_regular_mod(X: Matrix, p: int, mode: str = "gl") -> bool:
    return is_regular(X.change_ring(Ring.fp(p)), mode)


def regularity_certificate_allprimes(X: Matrix) -> int:
    """gcd of the maximal minors of :func:`vectorized_powers`; ``X mod p`` is regular iff ``p`` ∤ it."""
    return maximal_minor_gcd(vectorized_powers(X))


def sl_regularity_table(X: Matrix, primes) -> dict[int, bool]:
    return {p: is_regular_mod(X, p, "sl") for p in sorted(set(primes))}


def trace_criterion(X: Matrix, A: Matrix) -> bool:
    if X.shape != A.shape or not X.is_square:
        raise DimensionMismatch(f"{X.shape} vs {A.shape}")
    if X.ring != A.ring:
        raise DimensionMismatch(f"{X.ring} vs {A.ring}")
    n = X.rows
    Xr = X
    for _ in range(n - 1):
        if not X.ring.is_zero((Xr @ A).trace()):
            return False
        Xr = Xr @ X
    return True


def commutator_system(X: Matrix, traceless: bool) -> Matrix:
    """Coefficient matrix of ``Y ↦ vec(XY − YX)`` (plus a trace row) on row-major vec(Y)."""
    n = X.rows
    ring = X.ring
    nm = ring.norm
    e = X.entries
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] += e[i][k]
                row[i * n + k] -= e[k][j]
            rows.append(tuple(nm(v) for v in row))
    if traceless:
        rows.append(tuple(ring(int(k % (n + 1) == 0)) for k in range(n * n)))
    return Matrix(ring, tuple(rows))


def solve_commutator_Y(X: Matrix, A: Matrix, traceless: bool = True) -> Matrix | None:
    """Some ``Y`` with ``[X, Y] = A`` (and ``tr Y = 0`` if asked), or ``None``."""
    if X.shape != A.shape or not X.is_square:
        raise DimensionMismatch(f"{X.shape} vs {A.shape}")
    if X.ring != A.ring:
        raise DimensionMismatch(f"{X.ring} vs {A.ring}")
    ring = X.ring
    n = X.rows
    rhs = A.vec() + ([ring(0)] if traceless else [])
    z = solve_linear(commutator_system(X, traceless), rhs, ring)
    if z is None:
        return None
    return Matrix(ring, tuple(tuple(z[i * n:(i + 1) * n]) for i in range(n)))


def scalar_commutator(lam, n: int, ring: Ring) -> tuple[Matrix, Matrix]:
    """``(X, λY)`` with X the upper shift and ``[X, λY] = λ·1``; needs ``n = 0`` in the ring."""
    if n < 2:
        raise SizeTooSmall("scalar_commutator needs n >= 2")
    if not ring.is_zero(ring(n)):
        raise CharacteristicMismatch(f"n = {n} is not zero in {ring}")
    lam = ring(lam)
    X = Matrix(ring, tuple(tuple(ring(int(j == i + 1)) for j in range(n)) for i in range(n)))
    # y_{j+1, j} = j in 1-based indexing
    Y = Matrix(ring, tuple(tuple(ring(lam * (j + 1)) if i == j + 1 else ring(0)
                                 for j in range(n)) for i in range(n)))
    return X, Y


def decompose_2x2_field(A: Matrix):
    """``(X, Y)`` in sl_2 with ``[X, Y] = A``, or an :class:`Obstruction` in characteristic 2."""
    ring = A.ring
    if not ring.is_field:
        raise NotAField(f"{ring} is not a field")
    if A.shape != (2, 2):
        raise DimensionMismatch("decompose_2x2_field takes a 2×2 matrix")
    if not ring.is_zero(A.trace()):
        raise TraceNonZero(f"trace {A.trace()} is not zero")
    if ring.characteristic == 2:
        if A.is_scalar():
            return scalar_commutator(A[0, 0], 2, ring)
        return Obstruction(A)
    (a, b), (c, _) = A.entries
    half = ring.inv(ring(2))
    nm = ring.norm
    if not ring.is_zero(b):
        X = Matrix(ring, ((ring(0), ring(1)), (nm(-c * ring.inv(b)), ring(0))))
        Y = Matrix(ring, ((nm(-b * half), ring(0)), (a, nm(b * half))))
    else:
        X = Matrix(ring, ((ring(0), ring(0)), (ring(1), ring(0))))
        Y = Matrix(ring, ((nm(c * half), nm(-a)), (ring(0), nm(-c * half))))
    _check(A, X, Y, traceless=True)
    return X, Y


def _check(A, X, Y, traceless):
    ring = A.ring
    if commutator(X, Y) != A:
        raise InternalInvariantViolation("[X, Y] != A")
    if not ring.is_zero(X.trace()):
        raise InternalInvariantViolation("tr X != 0")
    if traceless and not ring.is_zero(Y.trace()):
        raise InternalInvariantViolation("tr Y != 0")


def _require_trace_zero(A: Matrix, min_n: int):
    A._require_square()
    if A.rows < min_n:
        raise SizeTooSmall(f"need n >= {min_n}, got {A.rows}")
    if not A.ring.is_zero(A.trace()):
        raise TraceNonZero(f"trace {A.trace()} is not zero")


def _zero_certificate(A: Matrix, traceless=True, gl_cert=None) -> CommutatorCertificate:
    Z = Matrix.zeros(A.ring, A.rows, A.cols)
    One = Matrix.identity(A.ring, A.rows)
    return CommutatorCertificate(A, Z, Z, One, A.ring(1), Z, Z, traceless, gl_cert)


def decompose_field(A: Matrix) -> CommutatorCertificate:
    ring = A.ring
    if not ring.is_field:
        raise NotAField(f"{ring} is not a field")
    _require_trace_zero(A, 3)
    n = A.rows
    if A.is_zero:
        return _zero_certificate(A)
    if A.is_scalar():
        # nλ = 0 with λ ≠ 0 forces char | n
        X, Y = scalar_commutator(A[0, 0], n, ring)
        _check(A, X, Y, traceless=True)
        if not is_regular(X, "gl"):
            raise InternalInvariantViolation("shift matrix is not gl-regular")
        return CommutatorCertificate(A, X, Y, Matrix.identity(ring, n), ring(1), X, Y,
                                     regularity="gl")
    lr = staircase_reduce_field(A)
    x = xvector(lr.B)
    Xp = build_X(x, 1, ring).X
    Yp = solve_commutator_Y(Xp, lr.B, traceless=True)
    if Yp is None:
        raise InternalInvariantViolation("no traceless Y for an sl-regular X")
    ginv = lr.g.inverse()
    X = ginv @ Xp @ lr.g
    Y = ginv @ Yp @ lr.g
    _check(A, X, Y, traceless=True)
    if not is_regular(Xp, "sl"):
        raise InternalInvariantViolation("X(x, 1) is not sl-regular")
    return CommutatorCertificate(A, X, Y, lr.g, ring(1), Xp, Yp, regularity="sl")


def _int_pipeline(A: Matrix, traceless: bool, primes_bound: int, budget: int, seed: int):
    n = A.rows
    lr = lr_reduce_int(A, budget=budget, seed=seed)
    d = gcd(lr.a11, lr.a12)
    Bp = lr.B.map(lambda v: v // d)
    x = xvector(Bp)
    b12 = Bp[0, 1]
    Xp = build_X(x, b12, ZZ).X
    Yp = solve_commutator_Y(Xp, Bp, traceless=traceless)
    if Yp is None:
        raise InternalInvariantViolation("integer system for Y has no solution")
    ginv = lr.g.inverse()
    X = ginv @ Xp @ lr.g
    Y = (ginv @ Yp @ lr.g).scale(d)
    _check(A, X, Y, traceless=traceless)
    gl_cert = regularity_certificate_allprimes(Xp)
    if gl_cert != 1:
        raise InternalInvariantViolation(f"gl certificate is {gl_cert}, expected 1")
    primes = set(primes_up_to(primes_bound)) | set(prime_factors(b12)) | set(prime_factors(x[-1]))
    table = sl_regularity_table(Xp, primes)
    for p, ok in table.items():
        if b12 % p and not ok:
            raise InternalInvariantViolation(f"X' mod {p} is not sl-regular although {p} ∤ a12")
    return CommutatorCertificate(A, X, Y, lr.g, d, Xp, Yp, traceless, gl_cert, b12, table,
                                 regularity="gl")


def decompose_pid(A: Matrix, primes_bound: int = DEFAULT_PRIMES_BOUND,
                  budget: int = DEFAULT_BUDGET, seed: int = 0) -> CommutatorCertificate:
    """X, Y in sl_n(ℤ) with [X, Y] = A; X regular mod every prime."""
    if A.ring.kind != "integers":
        raise InputError("decompose_pid expects an integer matrix")
    _require_trace_zero(A, 3)
    if A.is_zero:
        return _zero_certificate(A, gl_cert=0)
    return _int_pipeline(A, True, primes_bound, budget, seed)


def decompose_pid_gl(A: Matrix, primes_bound: int = DEFAULT_PRIMES_BOUND,
                     budget: int = DEFAULT_BUDGET, seed: int = 0) -> CommutatorCertificate:
    """X in sl_n(ℤ), Y in gl_n(ℤ) with [X, Y] = A; X regular mod every prime."""
    if A.ring.kind != "integers":
        raise InputError("decompose_pid_gl expects an integer matrix")
    _require_trace_zero(A, 2)
    if A.is_zero:
        return _zero_certificate(A, traceless=False, gl_cert=0)
    if A.rows == 2:
        return _gl2(A, primes_bound)
    return _int_pipeline(A, False, primes_bound, budget, seed)


def gl2_generator(A: Matrix) -> Matrix:
    """A trace-zero X, regular modulo every maximal ideal, with ``tr(X·A) = 0``."""
    ring = A.ring
    (_, b), (c, _) = A.entries
    if ring.kind == "integers":
        e = gcd(b, c)
        if e == 0:
            return Matrix.of(ring, [[0, 1], [1, 0]])
        return Matrix.of(ring, [[0, -b // e], [c // e, 0]])
    if ring.is_zero(b) and ring.is_zero(c):
        return Matrix.of(ring, [[0, 1], [1, 0]])
    return Matrix(ring, ((ring(0), ring.norm(-b)), (c, ring(0))))


def _gl2(A: Matrix, primes_bound: int) -> CommutatorCertificate:
    X = gl2_generator(A)
    Y = solve_commutator_Y(X, A, traceless=False)
    if Y is None:
        raise InternalInvariantViolation("2×2 system for Y has no solution")
    _check(A, X, Y, traceless=False)
    One = Matrix.identity(A.ring, 2)
    gl_cert = regularity_certificate_allprimes(X)
    table = sl_regularity_table(X, primes_up_to(primes_bound))
    return CommutatorCertificate(A, X, Y, One, 1, X, Y, False, gl_cert, None, table,
                                 regularity="gl")


def decompose_field_gl(A: Matrix) -> CommutatorCertificate:
    """gl-version over a field: any size n >= 2, no obstruction in characteristic 2."""
    _require_trace_zero(A, 2)
    if A.rows >= 3:
        return decompose_field(A)
    if A.is_zero:
        return _zero_certificate(A, traceless=False)
    X = gl2_generator(A)
    Y = solve_commutator_Y(X, A, traceless=False)
    if Y is None:
        raise InternalInvariantViolation("2×2 system for Y has no solution")
    _check(A, X, Y, traceless=False)
    One = Matrix.identity(A.ring, 2)
    return CommutatorCertificate(A, X, Y, One, A.ring(1), X, Y, False, regularity="gl")


def lift_trace_zero(A: Matrix) -> Matrix:
    """Integer lift of a trace-zero matrix over ℤ/p^k whose integer trace is exactly 0."""
    rows = [list(r) for r in A.entries]
    rows[-1][-1] -= sum(rows[i][i] for i in range(A.rows))
    return Matrix(ZZ, tuple(tuple(r) for r in rows))


def decompose_residue(A: Matrix, traceless: bool = True, budget: int = DEFAULT_BUDGET,
                      seed: int = 0) -> CommutatorCertificate:
    """Decompose over ℤ/p^k by lifting to ℤ and reducing the integer certificate."""
    ring = A.ring
    if ring.kind != "residue-ring":
        raise InputError("decompose_residue expects a matrix over ZZ/p^k")
    _require_trace_zero(A, 3 if traceless else 2)
    lifted = lift_trace_zero(A)
    if traceless:
        cert = decompose_pid(lifted, primes_bound=1, budget=budget, seed=seed)
    else:
        cert = decompose_pid_gl(lifted, primes_bound=1, budget=budget, seed=seed)
    red = [M.change_ring(ring) for M in (cert.X, cert.Y, cert.g, cert.X_prime, cert.Y_prime)]
    X, Y = red[0], red[1]
    _check(A, X, Y, traceless=traceless)
    p = ring.p
    table = {p: is_regular_mod(X, p, "sl")}
    if A.is_zero:
        regularity = None
    elif not is_regular_mod(X, p, "gl"):
        raise InternalInvariantViolation(f"X mod {p} is not gl-regular")
    else:
        regularity = "gl"
    return CommutatorCertificate(A, X, Y, red[2], ring(cert.d), red[3], red[4], traceless,
                                 None, None if cert.a12 is None else ring(cert.a12), table,
                                 regularity)

"""Group commutators ``(x, y) = x·y·x⁻¹·y⁻¹ = A`` in SL_2(ℤ/p^k).

The construction finds ``y ∈ SL_2`` such that ``y`` and ``A·y`` are both
regular with equal trace; two regular 2×2 matrices with the same
characteristic polynomial are conjugate, and any conjugator ``x`` with
``x·y·x⁻¹ = A·y`` gives ``(x, y) = A``.  For the SL_2 variant the trace
``s`` of ``y`` is steered away from ±2 mod p, which makes the determinant
on the centralizer of ``y`` surjective, so ``x`` can be corrected to
determinant 1.

All searches sweep residues in increasing order; nothing here is random.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadTrace,
    InputError,
    InternalInvariantViolation,
    NotAUnit,
    NotRegularModP,
    PrecisionExhausted,
    SingularSeed,
    UnsupportedPrime,
)
from .exactring import Matrix, Ring

SCALAR_PLUS = "scalar-lambda-plus"
SCALAR_MINUS = "scalar-lambda-minus"
SCALAR_EXACT = "scalar-exact"
NONSCALAR = "nonscalar"


@dataclass(frozen=True)
class GroupWitness:
    A: Matrix
    x: Matrix
    y: Matrix
    s: int
    case: str
    i: int | None
    det_x: int
    variant: str = "sl"
    seed_used: tuple | None = None

    @property
    def precision(self) -> int:
        return self.A.ring.k


@dataclass(frozen=True)
class ScalarSplit:
    lam: int
    i: int
    Aprime: Matrix
    aprime: int
    bprime: int
    h: Matrix  # h·A·h⁻¹ = lam·1 + p^i·[[0, 1], [aprime, bprime]]


def _ring_of(A: Matrix) -> Ring:
    ring = A.ring
    if ring.kind not in ("residue-ring", "prime-field"):
        raise InputError(f"expected a matrix over ZZ/p^k, got {ring}")
    if A.shape != (2, 2):
        raise InputError("expected a 2×2 matrix")
    return ring


def _mat(ring, a, b, c, d) -> Matrix:
    return Matrix(ring, ((ring(a), ring(b)), (ring(c), ring(d))))


def _scalar_mod_p(M: Matrix) -> bool:
    p = M.ring.p
    (a, b), (c, d) = M.entries
    return b % p == 0 and c % p == 0 and (a - d) % p == 0


def companion_conjugator(M: Matrix) -> tuple[Matrix, Matrix]:
    """``(g, C)`` with ``g = [v; v·M]`` and ``C = g·M·g⁻¹`` the companion of charpoly(M)."""
    ring = _ring_of(M)
    p = ring.p
    for v in ((1, 0), (0, 1), (1, 1)):
        w = (ring.norm(v[0] * M[0, 0] + v[1] * M[1, 0]), ring.norm(v[0] * M[0, 1] + v[1] * M[1, 1]))
        if (v[0] * w[1] - v[1] * w[0]) % p:
            g = _mat(ring, v[0], v[1], w[0], w[1])
            return g, g @ M @ g.inverse()
    raise NotRegularModP(f"{M} is scalar modulo {p}")


def scalar_split(A: Matrix) -> ScalarSplit:
    ring = _ring_of(A)
    p, q = ring.p, ring.modulus
    if not _scalar_mod_p(A):
        raise InputError("A is not scalar modulo p")
    lam = 1 if (A[0, 0] - 1) % p == 0 else -1
    if (A[0, 0] - lam) % p:
        raise InputError("a matrix in SL_2 that is scalar mod p must be ±1 mod p")
    D = A - Matrix.scalar(ring, 2, lam)
    i = min(ring.valuation(v) for v in D.vec())
    if i >= ring.k:
        raise PrecisionExhausted(f"A = {lam}·1 exactly; use the scalar-exact case")
    pi = p**i
    # canonical representatives of D are divisible by p^i; any lift of the quotient works
    Aprime = D.map(lambda v: v // pi)
    h, C = companion_conjugator(Aprime)
    return ScalarSplit(lam, i, Aprime, C[1, 0], C[1, 1], h)


def _poly_eval(F: dict, a: int, b: int) -> int:
    return sum(c * a**i * b**j for (i, j), c in F.items())


def _poly_partial(F: dict, var: int) -> dict:
    out = {}
    for (i, j), c in F.items():
        e = (i, j)[var]
        if e:
            key = (i - 1, j) if var == 0 else (i, j - 1)
            out[key] = out.get(key, 0) + c * e
    return out


def hensel_lift2(F: dict, seed: tuple[int, int], p: int, k: int) -> tuple[int, int]:
    """Lift a root of ``F`` mod p to a root mod p^k along a unit-gradient coordinate.

    ``F`` maps exponent pairs ``(i, j)`` to integer coefficients of ``α^i β^j``.
    """
    q = p**k
    a, b = seed
    if _poly_eval(F, a, b) % p:
        raise SingularSeed(f"{seed} is not a root mod {p}")
    dF = (_poly_partial(F, 0), _poly_partial(F, 1))
    var = next((v for v in (0, 1) if _poly_eval(dF[v], a, b) % p), None)
    if var is None:
        raise SingularSeed(f"gradient of F vanishes mod {p} at {seed}")
    pt = [a % q, b % q]
    for _ in range(k.bit_length() + 2):
        val = _poly_eval(F, *pt) % q
        if val == 0:
            return pt[0], pt[1]
        der = _poly_eval(dF[var], *pt) % q
        pt[var] = (pt[var] - val * pow(der, -1, q)) % q
    if _poly_eval(F, *pt) % q:
        raise InternalInvariantViolation("Newton iteration failed to converge")
    return pt[0], pt[1]


def norm_form(s: int, r: int) -> dict:
    """α² + s·αβ + β² − r."""
    return {(2, 0): 1, (1, 1): s, (0, 2): 1, (0, 0): -r}


def centralizer_unit_with_det(y: Matrix, r) -> Matrix:
    """``g = α·1 + β·y`` (so g commutes with y) with ``det g = r``; needs tr y ≢ ±2."""
    ring = _ring_of(y)
    p, q = ring.p, ring.modulus
    s = y.trace()
    if (s - 2) % p == 0 or (s + 2) % p == 0:
        raise BadTrace(f"tr y = {s} is ±2 modulo {p}")
    if not ring.is_unit(r):
        raise NotAUnit(f"{r} is not a unit modulo {p}")
    if y.det() != 1:
        raise InputError("y must lie in SL_2")
    F = norm_form(s, r)
    for beta in range(p):
        for alpha in range(p):
            if _poly_eval(F, alpha, beta) % p == 0:
                a, b = hensel_lift2(F, (alpha, beta), p, ring.k or 1)
                g = Matrix.scalar(ring, 2, a) + y.scale(b)
                if g.det() != ring(r):
                    raise InternalInvariantViolation("centralizer determinant mismatch")
                return g
    raise InternalInvariantViolation(f"norm form misses {r} modulo {p}")


def _conjugator_to(y: Matrix, target: Matrix) -> Matrix:
    """``x`` with ``x·y·x⁻¹ = target`` (both regular, same charpoly)."""
    gy, Cy = companion_conjugator(y)
    gt, Ct = companion_conjugator(target)
    if Cy != Ct:
        raise InternalInvariantViolation("y and A·y have different characteristic polynomials")
    return gt.inverse() @ gy


def _y_from(ring, y11, y22) -> Matrix:
    return _mat(ring, y11, 1, y11 * y22 - 1, y22)


def _nonscalar_y(A0: Matrix, want_semisimple: bool) -> Matrix:
    """A0 = [[0, 1], [−1, b]]: pick y22 with y22, y22 − 1 units and solve the trace equation."""
    ring = A0.ring
    p, q = ring.p, ring.modulus
    b = A0[1, 1]
    for y22 in range(2, p):
        # y22·(y11 + b) − 2 = y11 + y22
        y11 = (y22 + 2 - b * y22) * pow(y22 - 1, -1, q) % q
        s = (y11 + y22) % p
        if want_semisimple and s in (2 % p, (-2) % p):
            continue
        return _y_from(ring, y11, y22)
    raise InternalInvariantViolation(f"no admissible y22 modulo {p}")


def _scalar_plus_y(sp: ScalarSplit, ring, want_semisimple: bool):
    """Solve y11·y22 + b'·y22 + a' − 1 = 0 by a residue sweep and Hensel lifting."""
    p = ring.p
    F = {(1, 1): 1, (0, 1): sp.bprime, (0, 0): sp.aprime - 1}
    if not want_semisimple:
        return _y_from(ring, -sp.aprime - sp.bprime + 1, 1), None
    for y11 in range(p):
        for y22 in range(p):
            if _poly_eval(F, y11, y22) % p or (y11 + y22) % p in (2 % p, (-2) % p):
                continue
            if y22 % p == 0 and (y11 + sp.bprime) % p == 0:
                continue  # singular seed
            a, b = hensel_lift2(F, (y11, y22), p, ring.k)
            return _y_from(ring, a, b), (y11, y22)
    # Over F_5 with a' ≡ −1 every residue solution has s ≡ ±2.  A lower
    # triangular y = [[t, 0], [−b'/t, 1/t]] keeps tr(A'·y) = 0 and det y = 1,
    # and t = 2 gives s = t + 1/t ≢ ±2 for every p >= 5.
    q = ring.modulus
    t, tinv = 2, pow(2, -1, q)
    return _mat(ring, t, 0, -sp.bprime * tinv, tinv), "diagonal"


def _scalar_minus_y(sp: ScalarSplit, ring):
    # (λ − 1 + π^i·y22)·y11 + (λ − 1)·y22 + π^i·(b'·y22 + a' − 1) = 0 with λ = −1, y22 = 0
    q = ring.modulus
    pi = ring.p**sp.i
    coeff = (-2) % q
    y11 = -(pi * (sp.aprime - 1)) * pow(coeff, -1, q) % q
    return _y_from(ring, y11, 0)


def _witness(A: Matrix, variant: str) -> GroupWitness:
    ring = _ring_of(A)
    p = ring.p
    if p == 2 or (variant == "sl" and p == 3):
        raise UnsupportedPrime(f"p = {p} is not supported for the {variant} variant")
    if A.det() != 1:
        raise InputError(f"det A = {A.det()}, expected 1")
    semisimple = variant == "sl"
    one = Matrix.identity(ring, 2)
    i = None
    seed_used = None
    if A == one or A == -one:
        case = SCALAR_EXACT
        h = one
        y0 = _mat(ring, 0, 1, -1, 0)
    elif _scalar_mod_p(A):
        sp = scalar_split(A)
        h = sp.h
        i = sp.i
        if sp.lam == 1:
            case = SCALAR_PLUS
            y0, seed_used = _scalar_plus_y(sp, ring, semisimple)
        else:
            case = SCALAR_MINUS
            y0 = _scalar_minus_y(sp, ring)
    else:
        case = NONSCALAR
        h, A0 = companion_conjugator(A)
        y0 = _nonscalar_y(A0, semisimple)
    # work in the frame A0 = h·A·h⁻¹, then conjugate back
    hinv = h.inverse()
    y = hinv @ y0 @ h
    x = _conjugator_to(y, A @ y)
    if variant == "sl":
        g = centralizer_unit_with_det(y, ring.inv(x.det()))
        x = x @ g
    w = GroupWitness(A, x, y, y.trace(), case, i, x.det(), variant, seed_used)
    _verify(w)
    return w


def _verify(w: GroupWitness):
    x, y, A = w.x, w.y, w.A
    if x @ y @ x.inverse() @ y.inverse() != A:
        raise InternalInvariantViolation("(x, y) != A")
    if y.det() != 1:
        raise InternalInvariantViolation("det y != 1")
    if w.variant == "sl":
        p = A.ring.p
        if x.det() != 1:
            raise InternalInvariantViolation("det x != 1")
        if (w.s - 2) % p == 0 or (w.s + 2) % p == 0:
            raise InternalInvariantViolation("tr y is ±2 mod p")


def group_commutator_gl(A: Matrix) -> GroupWitness:
    """x ∈ GL_2, y ∈ SL_2 with (x, y) = A; needs p odd."""
    return _witness(A, "gl")


def group_commutator_sl(A: Matrix) -> GroupWitness:
    """x, y ∈ SL_2 with (x, y) = A and tr y ≢ ±2 mod p; needs p >= 5."""
    return _witness(A, "sl")

"""Conjugation into Laffey–Reams form.

A square matrix ``B`` is in Laffey–Reams form when ``B[i][j] = 0`` for
``j >= i + 2`` and ``B ≡ B[0][0]·1 (mod B[0][1])``.  Over a field we reach
``B[0][0] = 0, B[0][1] = 1`` with a Krylov flag; over ℤ the flag is kept
saturated so the conjugator is unimodular and ``B[0][1]`` is the scalarity
modulus of the input.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import InputError, NoLaffeyReamsForm, NotAField, ScalarInput, SearchExhausted
from .exactring import ZZ, Matrix, ext_gcd
from .latsolve import _rref, complete_basis, content

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class LRForm:
    B: Matrix
    g: Matrix
    a11: object
    a12: object


@dataclass(frozen=True)
class ScalarityData:
    mu: int
    c: int
    B0: Matrix | None


def scalarity_modulus(A: Matrix) -> ScalarityData:
    """Largest ``mu`` with ``A ≡ c·1 (mod mu)``; ``A = c·1 + mu·B0``."""
    A._require_square()
    n = A.rows
    e = A.entries
    mu = 0
    for i in range(n):
        for j in range(n):
            mu = gcd(mu, e[i][j] - e[0][0] if i == j else e[i][j])
    if mu == 0:
        return ScalarityData(0, e[0][0], None)
    c = e[0][0] % mu
    B0 = Matrix(ZZ, tuple(tuple((x - (c if i == j else 0)) // mu for j, x in enumerate(r))
                          for i, r in enumerate(e)))
    return ScalarityData(mu, c, B0)


def is_lr_form(A: Matrix) -> tuple[bool, object, object]:
    A._require_square()
    ring = A.ring
    n = A.rows
    e = A.entries
    a11 = e[0][0]
    a12 = e[0][1] if n > 1 else ring(0)
    for i in range(n):
        for j in range(i + 2, n):
            if not ring.is_zero(e[i][j]):
                return False, a11, a12
    for i in range(n):
        for j in range(n):
            target = ring.norm(e[i][j] - a11) if i == j else e[i][j]
            if not ring.divides(a12, target):
                return False, a11, a12
    return True, a11, a12


def _row_times(v, A: Matrix):
    nm = A.ring.norm
    return [nm(sum(x * A.entries[i][j] for i, x in enumerate(v))) for j in range(A.cols)]


def _in_span(rows, v, ring) -> bool:
    work = [list(r) for r in rows] + [list(v)]
    return len(_rref(work, ring)) == len(rows)


def staircase_reduce_field(A: Matrix) -> LRForm:
    """Conjugate a non-scalar ``A`` over a field to LR form with ``a11 = 0, a12 = 1``."""
    ring = A.ring
    if not ring.is_field:
        raise NotAField(f"{ring} is not a field")
    if A.is_scalar():
        raise ScalarInput("scalar matrices have no Laffey–Reams form")
    n = A.rows
    v = next(v for v in _field_candidates(ring, n)
             if not _in_span([v], _row_times(v, A), ring))
    flag = [v, _row_times(v, A)]
    while len(flag) < n:
        w = _row_times(flag[-1], A)
        if _in_span(flag, w, ring):
            w = next(e for e in _unit_vectors(ring, n) if not _in_span(flag, e, ring))
        flag.append(w)
    g = Matrix(ring, tuple(tuple(r) for r in flag))
    B = g @ A @ g.inverse()
    return LRForm(B, g, B[0, 0], B[0, 1])


def _unit_vectors(ring, n):
    for i in range(n):
        yield [ring(int(i == j)) for j in range(n)]


def _field_candidates(ring, n):
    yield from _unit_vectors(ring, n)
    values = range(ring.p) if ring.kind == "prime-field" else range(-2, 3)
    for v in itertools.product(values, repeat=n):
        if any(v):
            yield [ring(x) for x in v]
    if ring.kind != "prime-field":
        for N in itertools.count(3):
            yield from _integer_shell(n, N)


def _integer_shell(n, N):
    """All integer vectors of max-norm exactly ``N``; ``e_1`` first when ``N = 1``."""
    order = [0]
    for t in range(1, N + 1):
        order += [t, -t]
    for v in itertools.product(order, repeat=n):
        v = v[::-1]
        if max(map(abs, v)) == N:
            yield list(v)


def primitive_candidates(n: int, seed: int = 0):
    """Primitive vectors by increasing max-norm; random ones interleaved after norm 3."""
    rng = random.Random(seed)
    for N in (1, 2, 3):
        for v in _integer_shell(n, N):
            if content(v) == 1:
                yield v
    for N in itertools.count(4):
        bound = N
        for v in _integer_shell(n, N):
            if content(v) == 1:
                yield v
                bound += 1
                w = [rng.randint(-bound, bound) for _ in range(n)]
                if content(w) == 1:
                    yield w


def _minor_gcd2(u, w) -> int:
    g = 0
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(g, u[i] * w[j] - u[j] * w[i])
            if g == 1:
                return 1
    return g


def _unit_value_vector(a: int, b: int, c: int):
    """Primitive ``(v1, v2)`` with ``a·v1² + b·v1·v2 + c·v2² = ±1``, or ``None``."""
    disc = b * b - 4 * a * c
    if disc < 0:
        # 4a·Q = (2a·v1 + b·v2)² − disc·v2², so |Q| = 1 bounds both coordinates
        r1 = isqrt(4 * abs(c) // -disc)
        r2 = isqrt(4 * abs(a) // -disc)
        for v1 in range(-r1, r1 + 1):
            for v2 in range(-r2, r2 + 1):
                if abs(a * v1 * v1 + b * v1 * v2 + c * v2 * v2) == 1:
                    return [v1, v2]
        return None
    s = isqrt(disc)
    if s * s == disc:
        return _unit_value_split(a, b, c, s)
    return _unit_value_indefinite(a, b, c, disc, s)


def _unit_value_split(a, b, c, s):
    # move a rational zero of the form to the first basis vector: Q' = w2·(b'·w1 + c'·w2)
    if a == 0:
        r = (1, 0)
    else:
        num, den = -b + s, 2 * a
        g = gcd(num, den)
        r = (num // g, den // g)
    _, x, y = ext_gcd(r[0], r[1])
    M = ((r[0], -y), (r[1], x))  # det = r0·x + r1·y = 1
    def q(v1, v2):
        return a * v1 * v1 + b * v1 * v2 + c * v2 * v2
    c2 = q(M[0][1], M[1][1])
    b2 = q(M[0][0] + M[0][1], M[1][0] + M[1][1]) - c2  # Q'(1,1) = b' + c'
    for w2 in (1, -1):
        for target in (1, -1):
            rest = target - c2 * w2 * w2
            if b2 == 0:
                if rest != 0:
                    continue
                w1 = 0
            elif rest % (b2 * w2) == 0:
                w1 = rest // (b2 * w2)
            else:
                continue
            v = [M[0][0] * w1 + M[0][1] * w2, M[1][0] * w1 + M[1][1] * w2]
            if abs(q(*v)) == 1:
                return v
    return None


def _unit_value_indefinite(a, b, c, disc, s):
    """Walk the reduction cycle, tracking the basis change, looking for a = ±1."""
    M = ((1, 0), (0, 1))
    seen = set()
    while (a, b, c) not in seen:
        if abs(a) == 1:
            return [M[0][0], M[1][0]]
        reduced = 0 < b <= s and s - b < 2 * abs(a) <= s + b
        if reduced:
            seen.add((a, b, c))
        m = 2 * abs(c)
        if abs(c) > s:
            lo = -abs(c)
        else:
            lo = s - m
        r = lo + ((-b - lo) % m)
        if r == lo:
            r += m
        t = (r + b) // (2 * c)
        # (v1, v2) = (−w2, w1 + t·w2) turns (a, b, c) into (c, r, a − b·t + c·t²)
        a, b, c = c, r, a - b * t + c * t * t
        M = ((M[0][1], -M[0][0] + t * M[0][1]), (M[1][1], -M[1][0] + t * M[1][1]))
    return None


def _binary_form_candidates(B0: Matrix):
    """For n = 2 the only minor is the binary form det[v; v·B0], which must be ±1."""
    (b11, b12), (b21, b22) = B0.entries
    v = _unit_value_vector(b12, b22 - b11, -b21)
    return [] if v is None else [v]


def lr_reduce_int(A: Matrix, budget: int = DEFAULT_BUDGET, seed: int = 0) -> LRForm:
    """Unimodular ``g`` with ``B = g·A·g⁻¹`` in LR form, ``B[0][1] = mu(A)``."""
    if A.ring.kind != "integers":
        raise InputError("lr_reduce_int expects an integer matrix")
    sd = scalarity_modulus(A)
    if sd.mu == 0:
        raise ScalarInput("scalar matrices have no Laffey–Reams form")
    n = A.rows
    B0 = sd.B0
    candidates = _binary_form_candidates(B0) if n == 2 else primitive_candidates(n, seed)
    for tried, v in enumerate(candidates):
        if tried >= budget:
            raise SearchExhausted(f"no cyclic primitive vector within {budget} candidates")
        if _minor_gcd2(v, _row_times(v, B0)) == 1:
            break
    else:
        raise NoLaffeyReamsForm(f"{A} is not GL_2(ZZ)-conjugate to a Laffey–Reams form")
    # v·A = c·v + mu·(v·B0), so the first row of B is (c, mu, 0, ...)
    flag = [v, _row_times(v, B0)]
    while len(flag) < n:
        g = complete_basis(Matrix(ZZ, tuple(tuple(r) for r in flag)))
        ginv = g.inverse()
        u = _row_times(flag[-1], A)
        tail = _row_times(u, ginv)[len(flag):]
        if not any(tail):
            # flag span is A-invariant: restart Krylov from the first new basis vector
            j = next(j for j in range(n)
                     if any(_row_times([int(i == j) for i in range(n)], ginv)[len(flag):]))
            u = [int(i == j) for i in range(n)]
            tail = _row_times(u, ginv)[len(flag):]
        cnt = content(tail)
        w = [0] * len(flag) + [t // cnt for t in tail]
        flag.append(_row_times(w, g))
    g = Matrix(ZZ, tuple(tuple(r) for r in flag))
    B = g @ A @ g.inverse()
    return LRForm(B, g, B[0, 0], B[0, 1])

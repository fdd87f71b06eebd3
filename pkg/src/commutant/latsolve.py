"""Hermite/Smith normal forms and exact linear solving.

Integer routines work on plain ``list[list[int]]`` internally and wrap the
results as :class:`~commutant.exactring.Matrix` over ℤ.  Hermite forms are
row-style: ``U·M = H`` with positive pivots and entries above each pivot
reduced into ``[0, pivot)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DimensionMismatch, InputError, NotSaturated, RankDeficient
from .exactring import ZZ, Matrix, Ring, ext_gcd


@dataclass(frozen=True)
class HnfResult:
    H: Matrix
    U: Matrix
    rank: int
    pivots: tuple


@dataclass(frozen=True)
class SnfResult:
    D: Matrix
    U: Matrix
    V: Matrix
    diagonal: tuple
    rank: int


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _wrap(rows):
    return Matrix(ZZ, tuple(tuple(r) for r in rows))


def _int_rows(M: Matrix):
    if M.ring.kind != "integers":
        raise InputError(f"expected an integer matrix, got one over {M.ring}")
    return [list(r) for r in M.entries]


def _hnf_rows(a: list[list[int]]):
    """In-place row HNF of ``a``; returns ``(U, pivots)``."""
    m = len(a)
    n = len(a[0]) if m else 0
    U = _eye(m)
    r = 0
    pivots = []
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][j] == 0:
                continue
            x, y = a[r][j], a[i][j]
            g, s, t = ext_gcd(x, y)
            xg, yg = x // g, y // g
            for mat in (a, U):
                rr, ri = mat[r], mat[i]
                mat[r] = [s * p + t * q for p, q in zip(rr, ri)]
                mat[i] = [-yg * p + xg * q for p, q in zip(rr, ri)]
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            a[r] = [-v for v in a[r]]
            U[r] = [-v for v in U[r]]
        piv = a[r][j]
        for i in range(r):
            q = a[i][j] // piv
            if q:
                a[i] = [p - q * s for p, s in zip(a[i], a[r])]
                U[i] = [p - q * s for p, s in zip(U[i], U[r])]
        pivots.append(j)
        r += 1
    return U, pivots


def hnf(M: Matrix) -> HnfResult:
    a = _int_rows(M)
    U, pivots = _hnf_rows(a)
    return HnfResult(_wrap(a), _wrap(U), len(pivots), tuple(pivots))


def _snf_rows(a: list[list[int]]):
    """In-place SNF of ``a``; returns ``(U, V, diagonal)`` with ``U·M·V = D``."""
    m = len(a)
    n = len(a[0])
    U = _eye(m)
    V = _eye(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for mat in (a, V):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for mat in (a, V):
                        for row in mat:
                            row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(a[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        diag.append(a[t][t])
    return U, V, diag


def snf(M: Matrix) -> SnfResult:
    a = _int_rows(M)
    U, V, diag = _snf_rows(a)
    return SnfResult(_wrap(a), _wrap(U), _wrap(V), tuple(diag), len(diag))


def maximal_minor_gcd(M: Matrix) -> int:
    """gcd of all ``cols × cols`` minors of a tall integer matrix (0 if rank-deficient)."""
    res = hnf(M)
    if res.rank < M.cols:
        return 0
    out = 1
    for r, j in enumerate(res.pivots):
        out *= res.H[r, j]
    return out


# -- fields -----------------------------------------------------------------

def _rref(rows: list[list], ring: Ring):
    """In-place reduced row echelon form over a field; returns the pivot columns."""
    nm = ring.norm
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][j])
        rows[r] = [nm(x * inv) for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][j] != 0:
                f = rows[i][j]
                rows[i] = [nm(x - f * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return pivots


def rank(M: Matrix) -> int:
    """Rank over a field, or over ℚ for integer matrices."""
    ring = M.ring
    if ring.kind == "integers":
        return hnf(M).rank
    if not ring.is_field:
        raise InputError("rank is only defined here over fields and ZZ")
    return len(_rref([list(r) for r in M.entries], ring))


def _as_rhs(c, ring: Ring) -> list:
    if isinstance(c, Matrix):
        if c.cols != 1:
            raise DimensionMismatch("right-hand side must be a column")
        return [r[0] for r in c.entries]
    return [ring(x) for x in c]


def solve_linear(M: Matrix, c, ring: Ring | None = None):
    """One solution ``z`` of ``M·z = c`` as a list, or ``None`` when there is none."""
    ring = ring or M.ring
    if M.ring != ring:
        M = M.change_ring(ring)
    rhs = _as_rhs(c, ring)
    if len(rhs) != M.rows:
        raise DimensionMismatch(f"{M.rows} equations but {len(rhs)} right-hand values")
    n = M.cols
    if ring.is_field:
        rows = [list(r) + [b] for r, b in zip(M.entries, rhs)]
        pivots = _rref(rows, ring)
        if n in pivots:
            return None
        z = [ring(0)] * n
        for r, j in enumerate(pivots):
            z[j] = rows[r][n]
        return z
    if ring.kind == "integers":
        return _solve_int([list(r) for r in M.entries], list(rhs))
    # ℤ/p^k: [M | q·1] over ℤ, then reduce
    q = ring.modulus
    m = M.rows
    lifted = [list(r) + [q * int(i == j) for j in range(m)] for i, r in enumerate(M.entries)]
    z = _solve_int(lifted, list(rhs))
    if z is None:
        return None
    return [x % q for x in z[:n]]


def _solve_int(a: list[list[int]], rhs: list[int]):
    m, n = len(a), len(a[0])
    U, V, diag = _snf_rows(a)
    b = [sum(u * x for u, x in zip(row, rhs)) for row in U]
    w = [0] * n
    for i, d in enumerate(diag):
        if b[i] % d:
            return None
        w[i] = b[i] // d
    if any(b[i] for i in range(len(diag), m)):
        return None
    return [sum(v * x for v, x in zip(row, w)) for row in V]


def kernel_basis(M: Matrix, ring: Ring | None = None) -> list[list]:
    """Generators of ``{z : M·z = 0}`` (a basis over fields and ℤ)."""
    ring = ring or M.ring
    if M.ring != ring:
        M = M.change_ring(ring)
    n = M.cols
    if ring.is_field:
        rows = [list(r) for r in M.entries]
        pivots = _rref(rows, ring)
        out = []
        for f in (j for j in range(n) if j not in pivots):
            z = [ring(0)] * n
            z[f] = ring(1)
            for r, j in enumerate(pivots):
                z[j] = ring.norm(-rows[r][f])
            out.append(z)
        return out
    if ring.kind == "integers":
        res = snf(M)
        return [[res.V[i, j] for i in range(n)] for j in range(res.rank, n)]
    q = ring.modulus
    m = M.rows
    lifted = [list(r) + [q * int(i == j) for j in range(m)] for i, r in enumerate(M.entries)]
    res = snf(_wrap(lifted))
    gens = [[res.V[i, j] % q for i in range(n)] for j in range(res.rank, n + m)]
    gens = [g for g in gens if any(g)]
    if not gens:
        return []
    # tidy the generating set: HNF of the generators plus q·1 spans the same module
    H = hnf(_wrap(gens + [[q * int(i == j) for j in range(n)] for i in range(n)])).H
    out = []
    for row in H.entries:
        g = [x % q for x in row]
        if any(g) and g not in out:
            out.append(g)
    return out


def saturate(rows: Matrix) -> Matrix:
    """Basis (in Hermite form) of ``{v ∈ ℤⁿ : m·v ∈ rowspace(rows), m ≠ 0}``."""
    r = rows.rows
    res = snf(rows)
    if res.rank < r:
        raise RankDeficient(f"rank {res.rank} < {r} rows")
    Vinv = res.V.inverse()
    sat = hnf(Vinv.block(0, r, 0, rows.cols)).H
    return sat.block(0, r, 0, rows.cols)


def complete_basis(rows: Matrix) -> Matrix:
    """Unimodular ``g`` whose first rows are exactly ``rows``."""
    r, n = rows.shape
    res = snf(rows)
    if res.rank < r or any(d != 1 for d in res.diagonal):
        raise NotSaturated("rows do not span a saturated sublattice")
    # rows = U⁻¹·[1 0]·V⁻¹, so diag(U⁻¹, 1)·V⁻¹ starts with rows
    Uinv = res.U.inverse()
    left = [list(Uinv.entries[i]) + [0] * (n - r) for i in range(r)]
    left += [[0] * r + [int(i == j) for j in range(n - r)] for i in range(n - r)]
    g = _wrap(left) @ res.V.inverse()
    assert g.block(0, r, 0, n) == rows
    return g


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g

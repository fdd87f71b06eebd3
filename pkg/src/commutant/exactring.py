"""Exact coefficient rings and dense matrices over them.

Ring elements are plain Python values: ``int`` for the integers and for the
finite rings (canonical representative in ``[0, modulus)``), and
``fractions.Fraction`` for the rationals.  A :class:`Ring` normalizes values
and answers the few ring-theoretic questions the algorithms need.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    InputError,
    NonSquare,
    NotAField,
    NotAUnit,
    NotMonic,
)

INTEGERS = "integers"
RATIONALS = "rationals"
PRIME_FIELD = "prime-field"
RESIDUE_RING = "residue-ring"
KINDS = (INTEGERS, RATIONALS, PRIME_FIELD, RESIDUE_RING)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|`` in increasing order (empty for 0, ±1)."""
    n = abs(n)
    out = []
    d = 2
    while n > 1 and d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primes_up_to(bound: int) -> list[int]:
    return [q for q in range(2, bound + 1) if is_prime(q)]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``g = gcd(a, b) >= 0`` and ``u*a + v*b = g``."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_u, old_v


@dataclass(frozen=True)
class Ring:
    """One of ℤ, ℚ, 𝔽_p or ℤ/p^k."""

    kind: str
    p: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown ring kind {self.kind!r}")
        if self.kind in (PRIME_FIELD, RESIDUE_RING):
            if self.p is None or not is_prime(self.p):
                raise InputError(f"{self.p!r} is not a prime")
        if self.kind == PRIME_FIELD and self.k not in (None, 1):
            raise InputError("prime field has precision 1")
        if self.kind == RESIDUE_RING and (self.k is None or self.k < 1):
            raise InputError("residue ring needs precision k >= 1")
        if self.kind in (INTEGERS, RATIONALS) and (self.p, self.k) != (None, None):
            raise InputError(f"{self.kind} takes no p or k")

    @classmethod
    def fp(cls, p: int) -> "Ring":
        return cls(PRIME_FIELD, p)

    @classmethod
    def zpk(cls, p: int, k: int) -> "Ring":
        return cls(RESIDUE_RING, p, k)

    @property
    def modulus(self) -> int | None:
        if self.kind == PRIME_FIELD:
            return self.p
        if self.kind == RESIDUE_RING:
            return self.p**self.k
        return None

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    @property
    def residue_field(self) -> "Ring":
        """𝔽_p for the finite rings; raises for ℤ and ℚ."""
        if self.p is None:
            raise NotAField(f"{self} has no single residue field")
        return Ring.fp(self.p)

    def __str__(self):
        if self.kind == INTEGERS:
            return "ZZ"
        if self.kind == RATIONALS:
            return "QQ"
        if self.kind == PRIME_FIELD:
            return f"GF({self.p})"
        return f"ZZ/{self.p}^{self.k}"

    def __call__(self, x) -> int | Fraction:
        """Canonical representative of ``x`` (int, Fraction or numeric string)."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            elif self.kind == INTEGERS:
                raise InputError(f"{x} is not an integer")
            else:
                return self.norm(x.numerator * self.inv(x.denominator))
        if not isinstance(x, int):
            raise InputError(f"cannot coerce {x!r} into {self}")
        return self.norm(int(x))

    def norm(self, x):
        """Reduce an already-integral (or rational) value; no type checks."""
        m = self.modulus
        return x % m if m else x

    def is_zero(self, x) -> bool:
        m = self.modulus
        return (x % m == 0) if m else x == 0

    def is_unit(self, x) -> bool:
        if self.kind == INTEGERS:
            return x in (1, -1)
        if self.kind == RATIONALS:
            return x != 0
        return x % self.p != 0

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit(f"{x} is not a unit in {self}")
        if self.kind == INTEGERS:
            return x
        if self.kind == RATIONALS:
            return 1 / Fraction(x)
        g, u, _ = ext_gcd(x % self.modulus, self.modulus)
        return u % self.modulus

    def valuation(self, x) -> int:
        """p-adic valuation in a finite ring, capped at k (for zero)."""
        m = self.modulus
        if m is None:
            raise NotAField("valuation needs a finite ring")
        x %= m
        if x == 0:
            return self.k or 1
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def divides(self, a, b) -> bool:
        """Whether ``b`` lies in the ideal generated by ``a``."""
        if self.kind == INTEGERS:
            return b == 0 if a == 0 else b % a == 0
        if self.kind == RATIONALS:
            return a != 0 or b == 0
        return self.valuation(b) >= self.valuation(a)

    def exact_div(self, b, a):
        """Some ``q`` with ``a*q = b``; requires :meth:`divides`."""
        if not self.divides(a, b):
            raise InputError(f"{a} does not divide {b} in {self}")
        if self.kind == INTEGERS:
            return 0 if a == 0 else b // a
        if self.kind == RATIONALS:
            return Fraction(b) / a if a != 0 else Fraction(0)
        m = self.modulus
        va = self.valuation(a)
        if a % m == 0:
            return 0
        pv = self.p**va
        ua, ub = (a % m) // pv, (b % m) // pv
        return ub * pow(ua, -1, m) % m

    def fmt(self, x) -> str:
        return str(x)


RingDescriptor = Ring
ZZ = Ring(INTEGERS)
QQ = Ring(RATIONALS)


def unit_inverse(x, ring: Ring):
    return ring.inv(ring(x))


@dataclass(frozen=True)
class Polynomial:
    """Coefficients lowest degree first, no trailing zeros."""

    ring: Ring
    coeffs: tuple

    @classmethod
    def of(cls, ring: Ring, coeffs: Iterable) -> "Polynomial":
        cs = [ring(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        return cls(ring, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring(0)

    def __call__(self, t):
        acc = self.ring(0)
        for c in reversed(self.coeffs):
            acc = self.ring.norm(acc * t + c)
        return acc

    def __str__(self):
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class Matrix:
    """Dense matrix; ``entries`` is a tuple of row tuples of canonical values.

    The raw constructor trusts its input.  Use :meth:`of` to coerce.
    """

    ring: Ring
    entries: tuple

    @classmethod
    def of(cls, ring: Ring, data: Sequence[Sequence]) -> "Matrix":
        rows = tuple(tuple(ring(x) for x in row) for row in data)
        if not rows or not rows[0]:
            raise InputError("matrices must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise InputError("ragged matrix rows")
        return cls(ring, rows)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        one, zero = ring(1), ring(0)
        return cls(ring, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ring: Ring, m: int, n: int | None = None) -> "Matrix":
        zero = ring(0)
        return cls(ring, tuple((zero,) * (m if n is None else n) for _ in range(m)))

    @classmethod
    def scalar(cls, ring: Ring, n: int, c) -> "Matrix":
        return cls.identity(ring, n).scale(c)

    @classmethod
    def column(cls, ring: Ring, values: Sequence) -> "Matrix":
        return cls.of(ring, [[v] for v in values])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def column_values(self, j: int = 0) -> list:
        return [r[j] for r in self.entries]

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        nm = self.ring.norm
        return Matrix(self.ring, tuple(
            tuple(nm(a + b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        nm = self.ring.norm
        return Matrix(self.ring, tuple(
            tuple(nm(a - b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        nm = self.ring.norm
        cols = list(zip(*other.entries))
        return Matrix(self.ring, tuple(
            tuple(nm(sum(a * b for a, b in zip(row, col))) for col in cols)
            for row in self.entries))

    def scale(self, c) -> "Matrix":
        nm = self.ring.norm
        return Matrix(self.ring, tuple(tuple(nm(c * a) for a in r) for r in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, tuple(zip(*self.entries)))

    def map(self, f) -> "Matrix":
        return Matrix(self.ring, tuple(tuple(f(a) for a in r) for r in self.entries))

    def change_ring(self, ring: Ring) -> "Matrix":
        return Matrix.of(ring, self.entries)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.ring, tuple(r[c0:c1] for r in self.entries[r0:r1]))

    def _require_square(self):
        if not self.is_square:
            raise NonSquare(f"{self.shape} is not square")

    def trace(self):
        self._require_square()
        return self.ring.norm(sum(self.entries[i][i] for i in range(self.rows)))

    def __pow__(self, r: int) -> "Matrix":
        self._require_square()
        if r < 0:
            return self.inverse() ** (-r)
        out = Matrix.identity(self.ring, self.rows)
        base = self
        while r:
            if r & 1:
                out = out @ base
            base = base @ base
            r >>= 1
        return out

    def powers(self, count: int) -> list["Matrix"]:
        """``[1, M, M^2, ..., M^(count-1)]``."""
        self._require_square()
        out = [Matrix.identity(self.ring, self.rows)]
        for _ in range(count - 1):
            out.append(out[-1] @ self)
        return out

    @property
    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(a) for r in self.entries for a in r)

    def is_scalar(self) -> bool:
        self._require_square()
        d = self.entries[0][0]
        z = self.ring.is_zero
        return all(z(a - (d if i == j else 0))
                   for i, r in enumerate(self.entries) for j, a in enumerate(r))

    def vec(self) -> list:
        """Row-major flattening."""
        return [a for r in self.entries for a in r]

    def det(self):
        self._require_square()
        f = charpoly(self)
        return self.ring.norm(f[0] * (-1) ** self.rows)

    def inverse(self) -> "Matrix":
        """Inverse over the ring: Gauss-Jordan with unit pivots (ℤ via ℚ)."""
        self._require_square()
        n = self.rows
        ring = self.ring
        work_ring = QQ if ring.kind == "integers" else ring
        nm = work_ring.norm
        a = [[work_ring(x) for x in r] + [work_ring(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.entries)]
        for c in range(n):
            piv = next((i for i in range(c, n) if work_ring.is_unit(a[i][c])), None)
            if piv is None:
                raise NotAUnit(f"matrix is not invertible over {ring}")
            a[c], a[piv] = a[piv], a[c]
            inv = work_ring.inv(a[c][c])
            a[c] = [nm(x * inv) for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [nm(x - f * y) for x, y in zip(a[i], a[c])]
        out = [r[n:] for r in a]
        if ring.kind == "integers":
            if any(x.denominator != 1 for r in out for x in r):
                raise NotAUnit("integer matrix is not unimodular")
            out = [[int(x) for x in r] for r in out]
        return Matrix(ring, tuple(tuple(r) for r in out))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.entries) + "]"


def commutator(X: Matrix, Y: Matrix) -> Matrix:
    return X @ Y - Y @ X


def charpoly(M: Matrix) -> Polynomial:
    """det(x·1 − M) by Berkowitz's division-free recurrence.

    Grows the characteristic polynomial from the trailing 1×1 minor outward:
    for ``[[a, R], [C, S]]`` the new coefficient vector is ``T · c(S)`` with
    ``T`` lower-triangular Toeplitz on ``(1, −a, −RC, −RSC, −RS²C, ...)``.
    """
    if not M.is_square:
        raise NonSquare(f"{M.shape} is not square")
    ring = M.ring
    nm = ring.norm
    A = M.entries
    n = M.rows
    c = [ring(1)]  # highest degree first
    for r in range(n - 1, -1, -1):
        a = A[r][r]
        R = A[r][r + 1:]
        col = [A[i][r] for i in range(r + 1, n)]
        m = n - 1 - r
        t = [ring(1), nm(-a)]
        v = col
        for _ in range(m):
            t.append(nm(-sum(x * y for x, y in zip(R, v))))
            v = [nm(sum(A[r + 1 + i][r + 1 + j] * v[j] for j in range(m))) for i in range(m)]
        c = [nm(sum(t[i - j] * c[j] for j in range(min(i, m) + 1) if i - j < len(t)))
             for i in range(m + 2)]
    return Polynomial.of(ring, reversed(c))


def companion(f: Polynomial) -> Matrix:
    """Row-wise companion: ones on the superdiagonal, ``−f_0..−f_{n−1}`` in the last row."""
    if not f.is_monic or f.degree < 1:
        raise NotMonic(f"{f} is not monic of positive degree")
    ring = f.ring
    n = f.degree
    rows = [[ring(int(j == i + 1)) for j in range(n)] for i in range(n - 1)]
    rows.append([ring.norm(-f.coeffs[j]) for j in range(n)])
    return Matrix(ring, tuple(tuple(r) for r in rows))

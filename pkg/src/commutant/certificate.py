"""JSON interchange and an independent certificate verifier.

The verifier shares only the entry parser with the construction code.  It
works on plain lists of ints/Fractions with its own schoolbook
multiplication, Bareiss determinant, Euclidean echelon form and mod-p rank,
so a bug in the construction code cannot hide itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .exactring import ZZ, Matrix, Ring

VERSION = "0.1.0"

_KIND_TO_JSON = {"integers": "int", "rationals": "rat", "prime-field": "fp", "residue-ring": "zpk"}
_JSON_TO_KIND = {v: k for k, v in _KIND_TO_JSON.items()}


# -- serialization ------------------------------------------------------------

def ring_to_json(ring: Ring) -> dict:
    out = {"kind": _KIND_TO_JSON[ring.kind]}
    if ring.p is not None:
        out["p"] = ring.p
    if ring.kind == "residue-ring":
        out["k"] = ring.k
    return out


def ring_from_json(obj) -> Ring:
    if not isinstance(obj, dict) or obj.get("kind") not in _JSON_TO_KIND:
        raise InputError(f"bad ring descriptor {obj!r}")
    kind = _JSON_TO_KIND[obj["kind"]]
    p, k = obj.get("p"), obj.get("k")
    for v in (p, k):
        if v is not None and (not isinstance(v, int) or isinstance(v, bool)):
            raise InputError(f"ring parameters must be integers, got {v!r}")
    if kind == "prime-field":
        return Ring(kind, p, None if k in (None, 1) else k)
    if kind == "residue-ring":
        return Ring(kind, p, k)
    return Ring(kind)


def matrix_to_json(M: Matrix) -> dict:
    return {"ring": ring_to_json(M.ring), "rows": M.rows, "cols": M.cols,
            "entries": [[str(v) for v in row] for row in M.entries]}


def _parse_entry(s, ring: Ring):
    if not isinstance(s, str):
        raise InputError(f"matrix entries must be strings, got {s!r}")
    try:
        value = Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse entry {s!r}") from exc
    return ring(value)


def matrix_from_json(obj, ring: Ring | None = None) -> Matrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError("matrix JSON needs an 'entries' field")
    if ring is None:
        ring = ring_from_json(obj["ring"]) if "ring" in obj else ZZ
    elif "ring" in obj and ring_from_json(obj["ring"]) != ring:
        raise InputError(f"ring {ring_from_json(obj['ring'])} in the document conflicts with {ring}")
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("'entries' must be a non-empty list of rows")
    n_rows, n_cols = len(rows), len(rows[0])
    if any(len(r) != n_cols for r in rows) or n_cols == 0:
        raise InputError("ragged matrix")
    if obj.get("rows", n_rows) != n_rows or obj.get("cols", n_cols) != n_cols:
        raise InputError("declared shape does not match the entries")
    return Matrix(ring, tuple(tuple(_parse_entry(v, ring) for v in r) for r in rows))


def _elem(x) -> str | None:
    return None if x is None else str(x)


def lie_certificate_json(cert, command: str, seed: int = 0) -> dict:
    doc = {
        "tool": "commutant",
        "version": VERSION,
        "seed": seed,
        "command": command,
        "kind": "lie",
        "input": matrix_to_json(cert.A),
        "X": matrix_to_json(cert.X),
        "Y": matrix_to_json(cert.Y),
        "g": matrix_to_json(cert.g),
        "d": _elem(cert.d),
        "X_prime": matrix_to_json(cert.X_prime),
        "Y_prime": matrix_to_json(cert.Y_prime),
        "traceless": cert.traceless,
        "gl_cert": cert.gl_cert,
        "a12": _elem(cert.a12),
        "checked_primes": {str(p): ok for p, ok in sorted(cert.checked_primes.items())},
        "regularity": cert.regularity,
    }
    doc["verification"] = verify_certificate(doc).to_json()
    return doc


def group_certificate_json(w, command: str = "group-commutator", seed: int = 0) -> dict:
    doc = {
        "tool": "commutant",
        "version": VERSION,
        "seed": seed,
        "command": command,
        "kind": "group",
        "variant": w.variant,
        "input": matrix_to_json(w.A),
        "x": matrix_to_json(w.x),
        "y": matrix_to_json(w.y),
        "s": str(w.s),
        "case": w.case,
        "i": w.i,
        "det_x": str(w.det_x),
        "seed_used": list(w.seed_used) if isinstance(w.seed_used, tuple) else w.seed_used,
    }
    doc["verification"] = verify_certificate(doc).to_json()
    return doc


# -- independent arithmetic ----------------------------------------------------

def _reduce(v, m):
    return v % m if m else v


def _mul(a, b, m):
    n, inner, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = 0
            for t in range(inner):
                acc += a[i][t] * b[t][j]
            row.append(_reduce(acc, m))
        out.append(row)
    return out


def _sub(a, b, m):
    return [[_reduce(x - y, m) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _scale(a, c, m):
    return [[_reduce(c * x, m) for x in r] for r in a]


def _trace(a, m):
    return _reduce(sum(a[i][i] for i in range(len(a))), m)


def _bareiss_det(a):
    """Fraction-free determinant over ℤ (or exact over ℚ)."""
    M = [list(r) for r in a]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num / prev if isinstance(num, Fraction) else num // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _det(a, m):
    return _reduce(_bareiss_det(a), m)


def _rank_mod(a, p):
    """Rank over 𝔽_p."""
    M = [[x % p for x in r] for r in a]
    rows, cols = len(M), len(M[0])
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, rows) if M[i][j]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][j], -1, p)
        for i in range(r + 1, rows):
            f = M[i][j] * inv % p
            if f:
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def _inverse2(a, m):
    det = _reduce(a[0][0] * a[1][1] - a[0][1] * a[1][0], m)
    inv = pow(det, -1, m)
    return [[a[1][1] * inv % m, -a[0][1] * inv % m], [-a[1][0] * inv % m, a[0][0] * inv % m]]


def _powers(X, n, m):
    out = [[[int(i == j) for j in range(n)] for i in range(n)]]
    for _ in range(n - 1):
        out.append(_mul(out[-1], X, m))
    return out


def _vec_powers(X, m):
    n = len(X)
    pw = _powers(X, n, m)
    return [[pw[c][i][j] for c in range(n)] for i in range(n) for j in range(n)], pw


def minor_gcd_oracle(W) -> int:
    """gcd of the maximal minors of a tall integer matrix, by Euclidean row reduction."""
    M = [list(r) for r in W]
    rows, cols = len(M), len(M[0])
    out = 1
    r = 0
    for j in range(cols):
        while True:
            nz = [i for i in range(r, rows) if M[i][j] != 0]
            if not nz:
                return 0
            i0 = min(nz, key=lambda i: abs(M[i][j]))
            M[r], M[i0] = M[i0], M[r]
            done = True
            for i in range(r + 1, rows):
                if M[i][j]:
                    q = M[i][j] // M[r][j]
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                    if M[i][j]:
                        done = False
            if done:
                break
        out *= abs(M[r][j])
        r += 1
    return out


def _sl_regular_mod(X, p) -> bool:
    n = len(X)
    W, pw = _vec_powers([[x % p for x in r] for r in X], p)
    if _rank_mod(W, p) < n:
        return False
    return any(_trace(P, p) for P in pw)


# -- verification --------------------------------------------------------------

@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks)}


def _raw(obj, ring: Ring):
    M = matrix_from_json(obj, ring)
    return [list(r) for r in M.entries]


def _scalar(s, ring: Ring):
    if s is None:
        return None
    return _parse_entry(s, ring)


def verify_certificate(doc: dict) -> VerificationReport:
    """Recompute every claim in a certificate; raises :class:`InputError` if unparseable."""
    if not isinstance(doc, dict) or doc.get("kind") not in ("lie", "group"):
        raise InputError("not a commutant certificate")
    try:
        ring = ring_from_json(doc["input"]["ring"])
        A = _raw(doc["input"], ring)
        if doc["kind"] == "lie":
            return _verify_lie(doc, ring, A)
        return _verify_group(doc, ring, A)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed certificate: {exc!r}") from exc


def _verify_lie(doc, ring, A) -> VerificationReport:
    m = ring.modulus
    rep = VerificationReport()
    X, Y = _raw(doc["X"], ring), _raw(doc["Y"], ring)
    n = len(A)
    shapes_ok = all(len(M) == n and len(M[0]) == n for M in (X, Y))
    rep.checks["shape"] = shapes_ok
    if not shapes_ok:
        return rep
    A_red = [[_reduce(v, m) for v in r] for r in A]
    rep.checks["commutator"] = _sub(_mul(X, Y, m), _mul(Y, X, m), m) == A_red
    rep.checks["trace_X"] = _trace(X, m) == 0
    if doc.get("traceless", True):
        rep.checks["trace_Y"] = _trace(Y, m) == 0
    g = _raw(doc["g"], ring)
    Xp, Yp = _raw(doc["X_prime"], ring), _raw(doc["Y_prime"], ring)
    d = _scalar(doc.get("d"), ring)
    detg = _det(g, m)
    rep.checks["conjugator_invertible"] = ring.is_unit(detg)
    rep.checks["conjugator_X"] = _mul(g, X, m) == _mul(Xp, g, m)
    rep.checks["conjugator_Y"] = d is not None and _mul(g, Y, m) == _scale(_mul(Yp, g, m), d, m)
    claimed = doc.get("gl_cert")
    if claimed is not None:
        if ring.kind != "integers":
            rep.checks["gl_cert"] = False
        else:
            rep.checks["gl_cert"] = minor_gcd_oracle(_vec_powers(X, None)[0]) == claimed
    primes = doc.get("checked_primes") or {}
    if primes:
        ok = True
        for key, flag in primes.items():
            p = int(key)
            if ring.p is not None and p != ring.p:
                ok = False
                break
            Xi = [[int(v) for v in r] for r in X]
            ok = ok and _sl_regular_mod(Xi, p) == bool(flag)
        rep.checks["prime_table"] = ok
    return rep


def _verify_group(doc, ring, A) -> VerificationReport:
    rep = VerificationReport()
    if ring.modulus is None:
        rep.checks["ring"] = False
        return rep
    m, p = ring.modulus, ring.p
    x, y = _raw(doc["x"], ring), _raw(doc["y"], ring)
    if any(len(M) != 2 or len(M[0]) != 2 for M in (A, x, y)):
        rep.checks["shape"] = False
        return rep
    dx = (x[0][0] * x[1][1] - x[0][1] * x[1][0]) % m
    dy = (y[0][0] * y[1][1] - y[0][1] * y[1][0]) % m
    rep.checks["det_y"] = dy == 1
    rep.checks["det_x_unit"] = dx % p != 0
    rep.checks["det_x_claim"] = _scalar(doc.get("det_x"), ring) == dx
    if rep.checks["det_x_unit"] and dy % p:
        comm = _mul(_mul(_mul(x, y, m), _inverse2(x, m), m), _inverse2(y, m), m)
        rep.checks["group_commutator"] = comm == [[v % m for v in r] for r in A]
    else:
        rep.checks["group_commutator"] = False
    s = _scalar(doc.get("s"), ring)
    rep.checks["trace_y"] = s == (y[0][0] + y[1][1]) % m
    if doc.get("variant", "sl") == "sl":
        rep.checks["det_x"] = dx == 1
        rep.checks["semisimple_trace"] = s is not None and (s - 2) % p != 0 and (s + 2) % p != 0
    return rep

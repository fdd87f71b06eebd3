import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commutant.errors import (
    BadTrace, InputError, NotAUnit, NotRegularModP, PrecisionExhausted, SingularSeed,
    UnsupportedPrime,
)
from commutant.exactring import Matrix, Ring, charpoly
from commutant.samples import random_scalar_sl2, random_sl2
from commutant.sl2grp import (
    NONSCALAR, SCALAR_EXACT, SCALAR_MINUS, SCALAR_PLUS, _poly_eval, centralizer_unit_with_det,
    companion_conjugator, group_commutator_gl, group_commutator_sl, hensel_lift2, norm_form,
    scalar_split,
)

PK = [(5, 1), (5, 3), (7, 2), (11, 2), (13, 1)]


def group_comm(x, y):
    return x @ y @ x.inverse() @ y.inverse()


def test_companion_conjugator_examples():
    R = Ring.zpk(5, 2)
    g, C = companion_conjugator(Matrix.of(R, [[1, 1], [0, 1]]))
    assert g == Matrix.of(R, [[1, 0], [1, 1]]) and C == Matrix.of(R, [[0, 1], [-1, 2]])
    M = Matrix.of(R, [[0, 1], [3, 7]])
    g, C = companion_conjugator(M)
    assert g == Matrix.identity(R, 2) and C == M
    with pytest.raises(NotRegularModP):
        companion_conjugator(Matrix.identity(R, 2))


def test_scalar_split_examples():
    R = Ring.zpk(5, 3)
    A = Matrix.identity(R, 2) + Matrix.of(R, [[0, 1], [-1, 0]]).scale(5)
    sp = scalar_split(A)
    assert (sp.lam, sp.i) == (1, 1)
    # the quotient is only defined modulo p^(k − i)
    R2 = Ring.zpk(5, 2)
    assert sp.Aprime.change_ring(R2) == Matrix.of(R2, [[0, 1], [-1, 0]])
    assert sp.Aprime.scale(5) == A - Matrix.identity(R, 2)
    assert (sp.aprime % 25, sp.bprime % 25) == (24, 0)
    N = Matrix.of(R, [[0, 1], [0, 0]])
    A = -Matrix.identity(R, 2) + N.scale(25)
    assert A.det() == 1
    sp = scalar_split(A)
    assert (sp.lam, sp.i) == (-1, 2)
    with pytest.raises(PrecisionExhausted):
        scalar_split(Matrix.identity(R, 2))


@pytest.mark.parametrize("p,k", [(5, 3), (7, 2), (11, 2)])
def test_scalar_split_invariants(p, k):
    R = Ring.zpk(p, k)
    rng = random.Random(p)
    for _ in range(50):
        A = random_scalar_sl2(R, rng.choice([1, -1]), rng)
        if A.is_scalar():
            continue
        sp = scalar_split(A)
        assert A - Matrix.scalar(R, 2, sp.lam) == sp.Aprime.scale(p ** sp.i)
        assert not sp.Aprime.change_ring(Ring.fp(p)).is_scalar()
        assert sp.i < k and sp.bprime % p == 0


def test_hensel_examples():
    F = norm_form(1, 2)
    a, b = hensel_lift2(F, (2, 1), 5, 2)
    assert (a % 5, b % 5) == (2, 1) and _poly_eval(F, a, b) % 25 == 0
    with pytest.raises(SingularSeed):
        hensel_lift2({(2, 0): 1, (0, 2): 1}, (0, 0), 5, 3)
    with pytest.raises(SingularSeed):
        hensel_lift2(F, (1, 1), 5, 2)


@given(st.sampled_from([5, 7, 11, 13]), st.integers(1, 6), st.integers(0, 12), st.integers(1, 12))
def test_hensel_lift_norm_form(p, k, s, r):
    if s % p in (2, p - 2) or r % p == 0:
        return
    F = norm_form(s, r)
    seeds = [(a, b) for b in range(p) for a in range(p) if _poly_eval(F, a, b) % p == 0]
    assert seeds
    for seed in seeds[:3]:
        a, b = hensel_lift2(F, seed, p, k)
        assert (a % p, b % p) == seed and _poly_eval(F, a, b) % p ** k == 0


def test_centralizer_examples():
    R = Ring.fp(7)
    y = Matrix.of(R, [[0, 1], [-1, 1]])
    g = centralizer_unit_with_det(y, 6)
    assert g.det() == 6 and g @ y == y @ g
    assert centralizer_unit_with_det(y, 1) == Matrix.identity(R, 2)
    with pytest.raises(BadTrace):
        centralizer_unit_with_det(Matrix.of(R, [[0, 1], [-1, 2]]), 3)
    with pytest.raises(NotAUnit):
        centralizer_unit_with_det(y, 7)


@given(st.sampled_from(PK), st.integers(0, 10**6))
def test_centralizer_property(pk, seed):
    R = Ring.zpk(*pk)
    rng = random.Random(seed)
    y = random_sl2(R, rng)
    r = rng.randrange(1, R.modulus)
    if y.trace() % R.p in (2, R.p - 2) or r % R.p == 0:
        return
    g = centralizer_unit_with_det(y, r)
    assert g.det() == r and g @ y == y @ g


def test_gl_examples():
    R = Ring.zpk(7, 2)
    w = group_commutator_gl(-Matrix.identity(R, 2))
    assert w.y == Matrix.of(R, [[0, 1], [-1, 0]])
    assert w.x @ w.y @ w.x.inverse() == -w.y
    assert w.det_x == R(-1) and w.case == SCALAR_EXACT
    R = Ring.zpk(5, 2)
    A = Matrix.of(R, [[1, 1], [0, 1]])
    w = group_commutator_gl(A)
    assert w.case == NONSCALAR and group_comm(w.x, w.y) == A
    w = group_commutator_gl(Matrix.identity(R, 2))
    assert group_comm(w.x, w.y) == Matrix.identity(R, 2)


def test_sl_examples():
    R = Ring.fp(7)
    w = group_commutator_sl(-Matrix.identity(R, 2))
    assert w.x.det() == 1 and group_comm(w.x, w.y) == -Matrix.identity(R, 2)
    w = group_commutator_sl(Matrix.identity(R, 2))
    assert w.x == Matrix.identity(R, 2) and w.s == 0


def test_unsupported_primes_and_bad_input():
    for p in (2,):
        with pytest.raises(UnsupportedPrime):
            group_commutator_gl(Matrix.identity(Ring.zpk(p, 3), 2))
    with pytest.raises(UnsupportedPrime):
        group_commutator_sl(Matrix.identity(Ring.zpk(3, 2), 2))
    group_commutator_gl(Matrix.of(Ring.zpk(3, 2), [[1, 1], [0, 1]]))
    with pytest.raises(InputError):
        group_commutator_sl(Matrix.of(Ring.zpk(5, 2), [[2, 0], [0, 1]]))


def _check_sl(A, w):
    R = A.ring
    assert group_comm(w.x, w.y) == A
    assert w.x.det() == 1 and w.y.det() == 1
    assert w.s == w.y.trace() and w.s % R.p not in (2, R.p - 2)
    assert charpoly(w.y) == charpoly(w.y @ A)


def test_sl_exhaustive_f5():
    R = Ring.fp(5)
    count = 0
    for e in itertools.product(range(5), repeat=4):
        A = Matrix.of(R, [e[:2], e[2:]])
        if A.det() != 1:
            continue
        _check_sl(A, group_commutator_sl(A))
        count += 1
    assert count == 120


@given(st.sampled_from(PK), st.integers(0, 10**6), st.sampled_from(["any", "plus", "minus"]))
def test_sl_random(pk, seed, kind):
    R = Ring.zpk(*pk)
    rng = random.Random(seed)
    if kind == "any" or R.k == 1:
        A = random_sl2(R, rng)
    else:
        A = random_scalar_sl2(R, 1 if kind == "plus" else -1, rng)
    w = group_commutator_sl(A)
    _check_sl(A, w)
    if kind != "any" and R.k > 1 and not A.is_scalar():
        assert w.case == (SCALAR_PLUS if kind == "plus" else SCALAR_MINUS)


@given(st.sampled_from([(3, 1), (3, 3), (5, 2), (7, 2)]), st.integers(0, 10**6), st.booleans())
def test_gl_random(pk, seed, scalar):
    R = Ring.zpk(*pk)
    rng = random.Random(seed)
    A = random_scalar_sl2(R, rng.choice([1, -1]), rng) if scalar and R.k > 1 else random_sl2(R, rng)
    w = group_commutator_gl(A)
    assert group_comm(w.x, w.y) == A and w.y.det() == 1 and w.x.det() == w.det_x
    assert charpoly(w.y) == charpoly(w.y @ A)


def test_f5_scalar_plus_with_aprime_minus_one():
    """Over F_5 with a' ≡ −1 every residue solution has trace ±2; the fallback still works."""
    R = Ring.zpk(5, 2)
    # a' ≡ −1 forces y11·y22 ≡ 2, and all four residue pairs have trace ±2
    A = Matrix.identity(R, 2) + Matrix.of(R, [[0, 1], [-1, 0]]).scale(5)
    sp = scalar_split(A)
    assert sp.aprime % 5 == 4
    w = group_commutator_sl(A)
    assert w.seed_used == "diagonal"
    _check_sl(A, w)


def test_witnesses_are_deterministic():
    R = Ring.zpk(7, 2)
    rng = random.Random(3)
    A = random_sl2(R, rng)
    assert group_commutator_sl(A) == group_commutator_sl(A)

from __future__ import annotations

import random

import numpy as np
from hypothesis import given, strategies as st

from sepdef.linalg import EchelonBasis, ff_nullspace, ff_rref, nullspace, rank, rref, solve
from sepdef.scalars import GF, rational_function_field

F2t = rational_function_field(GF(2))


def rand_matrix(K, rng, r, c):
    return [[K.random_element(rng) for _ in range(c)] for _ in range(r)]


def matvec(K, rows, v):
    return [K.sum(K.mul(a, b) for a, b in zip(row, v)) for row in rows]


@given(st.integers(0, 2**32))
def test_nullspace_vectors_are_in_the_kernel(seed):
    rng = random.Random(seed)
    for K in (GF(3), GF(2, 3), F2t):
        r, c = rng.randint(1, 5), rng.randint(1, 6)
        M = rand_matrix(K, rng, r, c)
        ns = nullspace(K, M, c)
        assert len(ns) + rank(K, M) == c
        for v in ns:
            assert all(K.is_zero(x) for x in matvec(K, M, v))


@given(st.integers(0, 2**32))
def test_solve_returns_a_solution(seed):
    rng = random.Random(seed)
    K = GF(5)
    M = rand_matrix(K, rng, 4, 3)
    x = [K.random_element(rng) for _ in range(3)]
    b = matvec(K, M, x)
    y = solve(K, M, b)
    assert y is not None and matvec(K, M, y) == b


def test_inconsistent_system():
    K = GF(2)
    assert solve(K, [[1, 1], [1, 1]], [0, 1]) is None


@given(st.integers(0, 2**32))
def test_numpy_rref_agrees_with_generic(seed):
    rng = random.Random(seed)
    for F in (GF(2), GF(3), GF(2, 4)):
        M = rand_matrix(F, rng, rng.randint(1, 6), rng.randint(1, 7))
        R1, p1 = rref(F, M)
        R2, p2 = ff_rref(F, np.array(M, dtype=np.int64))
        assert p1 == p2
        assert [list(r) for r in R1] == R2.tolist()
        ns = ff_nullspace(F, np.array(M, dtype=np.int64), len(M[0]))
        assert ns.shape[0] == len(M[0]) - len(p1)
        for v in ns:
            assert all(F.is_zero(x) for x in matvec(F, M, list(v)))


def test_echelon_basis_coordinates():
    K = GF(3)
    vecs = [[1, 2, 0], [0, 1, 1]]
    E = EchelonBasis(K, vecs, 3)
    w = [K.add(K.mul(2, a), b) for a, b in zip(*vecs)]
    assert E.contains(w)
    assert not E.contains([0, 0, 1])
    coords = E.coordinates(w)
    assert [K.sum(K.mul(c, r[i]) for c, r in zip(coords, E.rows)) for i in range(3)] == w

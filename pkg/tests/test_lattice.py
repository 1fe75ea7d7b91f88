from itertools import product

import numpy as np
from flint import fmpz_mat
from hypothesis import given, settings, strategies as st

from qtorus.lattice import (
    gamma_cosets,
    int_det,
    matmul,
    normalize_q,
    radical_basis,
    radical_from_exponents,
    skew_normal_form,
    smith_normal_form,
    xi_norm,
)
from qtorus.sweeps import radical_bruteforce
from qtorus.torus import QMatrix, QuantumTorus


def is_unimodular(M):
    return abs(int_det(M)) == 1


def test_smith_examples():
    S, U, V = smith_normal_form([[1, 0], [0, 1]])
    assert S == [[1, 0], [0, 1]]
    S, U, V = smith_normal_form([[2, 0], [0, 3]])
    assert S == [[1, 0], [0, 6]]
    assert matmul(matmul(U, [[2, 0], [0, 3]]), V) == S
    S, _, _ = smith_normal_form([[0, 0], [0, 0]])
    assert S == [[0, 0], [0, 0]]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-12, 12), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_properties(A):
    S, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert is_unimodular(U) and is_unimodular(V)
    diag = [S[i][i] for i in range(3)]
    assert all(S[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    # flint computes the diagonal independently (without transforms)
    oracle = fmpz_mat(A).snf()
    assert diag == [int(oracle[i, i]) for i in range(3)]


def test_radical_examples():
    rad = radical_basis(QMatrix.normal_form(2, [4]))
    assert rad.xis == [(4, 0), (0, 4)]
    assert rad.invariants_k == (4,) and rad.z == 1 and rad.N == 4
    rad = radical_basis(QMatrix.normal_form(3, [2]))
    assert rad.xis == [(2, 0, 0), (0, 2, 0), (0, 0, 1)]
    rad = radical_basis(QMatrix.ones(3))
    assert rad.N == 1 and rad.z == 0 and rad.delta == ((0, 0, 0),)


def test_cosets():
    rad = radical_basis(QMatrix.normal_form(2, [2]))
    assert sorted(gamma_cosets(rad)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(radical_basis(QMatrix.normal_form(2, [3])).delta) == 9
    rad = radical_basis(QMatrix.normal_form(4, [4, 2]))
    assert len(rad.delta) == rad.N ** 2 == 64
    # one representative per coset, and 0 stands for its own coset
    assert rad.reduce((0, 0, 0, 0)) == (0, 0, 0, 0)
    assert len({rad.reduce(n) for n in product(range(-5, 6), repeat=4)}) == 64


def test_xi_norm():
    rad = radical_basis(QMatrix.normal_form(2, [4]))
    assert xi_norm((0, 0), rad) == 0
    assert rad.coords((4, 8)) == (1, 2)
    assert xi_norm((4, 8), rad) == 3
    assert rad.coords((1, 0)) is None
    assert len(rad.points(1)) == 5


@st.composite
def skew_exponents(draw):
    d = draw(st.integers(2, 4))
    L = draw(st.sampled_from([2, 3, 4, 6, 8]))
    A = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i):
            a = draw(st.integers(0, L - 1))
            A[i][j], A[j][i] = a, (-a) % L
    return A, L


@settings(max_examples=40, deadline=None)
@given(skew_exponents())
def test_radical_matches_bruteforce(data):
    A, L = data
    torus = QuantumTorus(QMatrix.from_exponents(A, L))
    brute = {tuple(int(x) for x in n) for n in radical_bruteforce(torus, 3, 1)}
    window = product(range(-3, 4), repeat=len(A))
    assert brute == {n for n in window if torus.rad.contains(n)}
    assert len(torus.rad.delta) == torus.rad.N ** 2


@settings(max_examples=40, deadline=None)
@given(skew_exponents())
def test_normalize_conjugates_f(data):
    A, L = data
    q = QMatrix.from_exponents(A, L)
    q_std, P = normalize_q(q)
    assert is_unimodular(P)
    assert q_std.is_normal_form()
    T, S = QuantumTorus(q), QuantumTorus(q_std)
    pts = np.array(list(product(range(-2, 3), repeat=q.d)))
    Pn = pts @ np.array(P).T
    assert np.array_equal(S.f_exponents(pts[:, None], pts[None, :]) * (T.L // S.L or 1) % T.L,
                          T.f_exponents(Pn[:, None], Pn[None, :]))
    assert S.rad.N == T.rad.N


def test_normalize_zeta4_cubed():
    q = QMatrix.from_pairs([[[0, 1], [1, 4]], [[3, 4], [0, 1]]])
    q_std, P = normalize_q(q)
    (k, root), = q_std.block_roots()
    assert k == 4
    T, S = QuantumTorus(q), QuantumTorus(q_std)
    for n in product(range(-3, 4), repeat=2):
        for m in product(range(-3, 4), repeat=2):
            Pn = tuple(int(x) for x in np.array(P) @ n)
            Pm = tuple(int(x) for x in np.array(P) @ m)
            assert S.f(n, m) == T.f(Pn, Pm)


def test_normalize_trivial_cases():
    q = QMatrix.normal_form(2, [2])
    q_std, P = normalize_q(q)
    assert q_std == q
    q_std, _ = normalize_q(QMatrix.ones(3))
    assert q_std == QMatrix.ones(3)


def test_skew_normal_form_shape():
    B = [[0, -2, 4], [2, 0, -6], [-4, 6, 0]]
    P, C = skew_normal_form(B)
    Pt = [list(r) for r in zip(*P)]
    assert matmul(matmul(Pt, B), P) == C
    assert C[1][0] > 0 and C[2] == [0, 0, 0]


def test_radical_of_non_normal_q():
    # q_21 = zeta_4, q_12 = zeta_4^3 written directly by exponents
    rad = radical_from_exponents([[0, 3], [1, 0]], 4)
    assert rad.N == 4 and rad.xis == [(4, 0), (0, 4)]

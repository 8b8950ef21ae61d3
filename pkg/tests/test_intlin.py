"""Integer linear algebra: normal forms, kernels, lattice comparison.

Oracles: brute-force determinant/minor GCDs for SNF invariants, and
box-bounded kernel enumeration for integer kernels.
"""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torilat import intlin
from torilat.errors import ValidationError

small_entries = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(small_entries, min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            )
        )
    )


def fixed_matrices(m, n):
    return st.lists(
        st.lists(small_entries, min_size=n, max_size=n), min_size=m, max_size=m
    )


def brute_force_kernel_box(M, bound):
    """All kernel vectors with entries in [-bound, bound]."""
    _, n = intlin.shape(M)
    out = []
    for v in product(range(-bound, bound + 1), repeat=n):
        if not any(intlin.mat_vec(M, list(v))):
            out.append(list(v))
    return out


class TestHNF:
    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_defining_equations(self, M):
        H, U = intlin.hnf(M)
        assert intlin.mat_mul(U, M) == H
        assert abs(intlin.det_sign_unimodular(U)) == 1

    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_echelon_shape(self, M):
        H, _ = intlin.hnf(M)
        m, n = intlin.shape(H)
        pivots = []
        for i in range(m):
            p = next((j for j in range(n) if H[i][j]), None)
            if p is None:
                # all later rows must be zero too
                assert all(not any(H[k]) for k in range(i, m))
                break
            pivots.append(p)
            assert H[i][p] > 0
            for k in range(i):
                assert 0 <= H[k][p] < H[i][p]
        assert pivots == sorted(pivots)

    def test_known_small_case(self):
        # rows (2,4),(3,5) span the same lattice as (1,1),(0,2)
        H, _ = intlin.hnf([[2, 4], [3, 5]])
        assert H == [[1, 1], [0, 2]]


class TestSNF:
    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_defining_equations(self, M):
        res = intlin.snf(M)
        S = intlin.mat_mul(intlin.mat_mul(res.U, M), res.V)
        assert S == res.S
        assert abs(intlin.det_sign_unimodular(res.U)) == 1
        assert abs(intlin.det_sign_unimodular(res.V)) == 1
        diag = res.diagonal
        m, n = intlin.shape(res.S)
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert res.S[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and b >= 0
            if a and b:
                assert b % a == 0
            if a == 0:
                assert b == 0

    @given(matrices(3, 3))
    @settings(max_examples=80, deadline=None)
    def test_invariants_match_minor_gcds(self, M):
        # d_1 * ... * d_k equals the gcd of all k x k minors
        res = intlin.snf(M)
        diag = res.diagonal
        prod = 1
        for k in range(1, len(diag) + 1):
            prod *= diag[k - 1]
            assert abs(prod) == intlin.gcd_of_minors(M, k)

    def test_textbook_case(self):
        res = intlin.snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        assert res.diagonal == [2, 6, 12]


class TestKernel:
    @given(matrices(2, 4))
    @settings(max_examples=80, deadline=None)
    def test_kernel_vectors_annihilate(self, M):
        K = intlin.integer_kernel(M)
        for c in intlin.columns(K):
            assert not any(intlin.mat_vec(M, c))

    @given(matrices(2, 3))
    @settings(max_examples=60, deadline=None)
    def test_box_kernel_is_spanned(self, M):
        # every small kernel vector is an integer combination of the basis
        K = intlin.integer_kernel(M)
        reducer = intlin.HermiteReducer.from_basis(K) if K and K[0] else None
        for v in brute_force_kernel_box(M, 3):
            if not any(v):
                continue
            assert reducer is not None and reducer.contains(v)

    def test_rank_count(self):
        K = intlin.integer_kernel([[1, 1, 1, 3]])
        _, ncols = intlin.shape(K)
        assert ncols == 3

    def test_canonical_basis_is_deterministic_and_spans(self):
        M = [[1, -2, 1, 0], [0, 1, 0, 1]]
        K1 = intlin.kernel_basis_canonical(M)
        K2 = intlin.kernel_basis_canonical([list(r) for r in M])
        assert K1 == K2
        assert intlin.lattice_equal(K1, intlin.integer_kernel(M))


class TestLatticeEqual:
    @given(matrices(3, 3))
    @settings(max_examples=60, deadline=None)
    def test_reflexive_and_column_shuffle(self, M):
        assert intlin.lattice_equal(M, M)
        cols = intlin.columns(M)
        shuffled = intlin.from_columns(cols[::-1], len(M))
        assert intlin.lattice_equal(M, shuffled)

    def test_unimodular_invariance(self):
        B = [[2, 0], [1, 3], [0, -1]]
        # post-multiplying by a unimodular matrix keeps the column span
        W = [[1, 4], [0, 1]]
        assert intlin.lattice_equal(B, intlin.mat_mul(B, W))
        assert not intlin.lattice_equal(B, [[4, 0], [2, 6], [0, -2]])

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            intlin.lattice_equal([[1]], [[1], [0]])


class TestSolveInverse:
    @given(fixed_matrices(3, 3), st.lists(small_entries, min_size=3, max_size=3))
    @settings(max_examples=80, deadline=None)
    def test_solve_consistency(self, M, x):
        b = intlin.mat_vec(M, x)
        y = intlin.solve_integer(M, b)
        assert y is not None
        assert intlin.mat_vec(M, y) == b

    def test_unsolvable(self):
        assert intlin.solve_integer([[2, 0], [0, 2]], [1, 0]) is None

    def test_inverse_unimodular(self):
        U = [[1, 2], [1, 3]]
        V = intlin.inverse_unimodular(U)
        assert intlin.mat_mul(U, V) == intlin.identity(2)


class TestHermiteReducer:
    @given(fixed_matrices(3, 2), st.lists(small_entries, min_size=3, max_size=3))
    @settings(max_examples=80, deadline=None)
    def test_reduce_is_coset_invariant(self, L, v):
        if not any(any(c) for c in intlin.columns(L)):
            return
        reducer = intlin.HermiteReducer.from_basis(L)
        for c in intlin.columns(L):
            shifted = [a + b for a, b in zip(v, c)]
            assert reducer.reduce(shifted) == reducer.reduce(v)
        assert reducer.contains(list(intlin.columns(L)[0]))

    def test_zero_reduction(self):
        reducer = intlin.HermiteReducer.from_basis([[2], [0]])
        assert reducer.reduce([4, 1]) == (0, 1)
        assert reducer.contains([6, 0])
        assert not reducer.contains([3, 0])


class TestCokernel:
    def test_structure_of_p113_presentation(self):
        # Z^4 / im(columns of the kernel of [1,1,1,3]) is Z
        K = intlin.integer_kernel([[1, 1, 1, 3]])
        free, factors = intlin.cokernel_structure(K)
        assert (free, factors) == (1, [])

    def test_torsion_quotient(self):
        free, factors = intlin.cokernel_structure([[2, 0], [0, 3]])
        assert (free, factors) == (0, [6])

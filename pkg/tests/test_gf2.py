"""GF(2) kernel: oracle-checked elimination, inverses, kron, vec, solving."""

import itertools

import numpy as np
import pytest

from qsurg import gf2

HAMMING_H = gf2.bitmat(
    [
        [0, 1, 1, 1, 1, 0, 0],
        [1, 0, 1, 1, 0, 1, 0],
        [1, 1, 0, 1, 0, 0, 1],
    ]
)


def span_size(m):
    """Brute-force |rowspan| by enumerating all row combinations."""
    seen = set()
    for coeffs in itertools.product([0, 1], repeat=m.shape[0]):
        v = np.zeros(m.shape[1], dtype=np.uint8)
        for c, row in zip(coeffs, m):
            if c:
                v ^= row
        seen.add(v.tobytes())
    return len(seen)


class TestRank:
    def test_identity(self):
        assert gf2.rank(gf2.eye(3)) == 3

    def test_zero(self):
        assert gf2.rank(gf2.zeros(2, 5)) == 0

    def test_hamming_vs_span_oracle(self):
        # rank = log2 of the row-span size, enumerated exhaustively
        assert span_size(HAMMING_H) == 2 ** gf2.rank(HAMMING_H)
        assert gf2.rank(HAMMING_H) == 3

    def test_random_vs_span_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            m = rng.integers(0, 2, size=(4, 6)).astype(np.uint8)
            assert span_size(m) == 2 ** gf2.rank(m)


class TestRightInverse:
    def test_identity(self):
        assert np.array_equal(gf2.right_inverse(gf2.eye(4)), gf2.eye(4))

    def test_standard_form_generator(self):
        # G = (E_k | P) must get the sparse right inverse (E_k | 0)ᵀ.
        p = gf2.bitmat([[1, 0, 1], [0, 1, 1]])
        g = np.concatenate([gf2.eye(2), p], axis=1)
        r = gf2.right_inverse(g)
        expected = np.concatenate([gf2.eye(2), gf2.zeros(2, 3)], axis=1).T
        assert np.array_equal(r, expected)

    def test_rank_deficient_is_absent(self):
        assert gf2.right_inverse(gf2.bitmat([[1, 1], [1, 1]])) is None

    def test_random_full_rank(self):
        rng = np.random.default_rng(5)
        found = 0
        while found < 25:
            m = rng.integers(0, 2, size=(3, 7)).astype(np.uint8)
            if gf2.rank(m) < 3:
                continue
            found += 1
            r = gf2.right_inverse(m)
            assert np.array_equal(gf2.mul(m, r), gf2.eye(3))


class TestKron:
    def test_identities(self):
        assert np.array_equal(gf2.kron(gf2.eye(2), gf2.eye(3)), gf2.eye(6))

    def test_row_vectors(self):
        out = gf2.kron([[1, 1]], [[1, 0, 1]])
        assert np.array_equal(out, gf2.bitmat([[1, 0, 1, 1, 0, 1]]))

    def test_mixed_product_vs_direct_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            a, b, c, d = (rng.integers(0, 2, size=(3, 3)).astype(np.uint8) for _ in range(4))
            lhs = gf2.mul(gf2.kron(a, b), gf2.kron(c, d))
            rhs = gf2.kron(gf2.mul(a, c), gf2.mul(b, d))
            assert np.array_equal(lhs, rhs)


class TestVec:
    def test_vec_identity(self):
        assert np.array_equal(gf2.vec(gf2.eye(2)), gf2.bitvec([1, 0, 0, 1]))

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        x = rng.integers(0, 2, size=(3, 4)).astype(np.uint8)
        assert np.array_equal(gf2.unvec(gf2.vec(x), 3), x)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            gf2.unvec(gf2.bitvec([1, 0, 1]), 2)

    def test_column_selector_identity(self):
        # (e_mᵀ ⊗ E_n) · vec(U) = column m of U, for all m.
        rng = np.random.default_rng(9)
        u = rng.integers(0, 2, size=(4, 3)).astype(np.uint8)
        for m in range(3):
            sel = gf2.zeros(1, 3)
            sel[0, m] = 1
            got = gf2.mul(gf2.kron(sel, gf2.eye(4)), gf2.vec(u))
            assert np.array_equal(got, u[:, m])

    def test_kron_vec_compatibility(self):
        # (P ⊗ Q) · vec(X) = vec(Q X Pᵀ) under column stacking.
        rng = np.random.default_rng(13)
        p = rng.integers(0, 2, size=(2, 3)).astype(np.uint8)
        q = rng.integers(0, 2, size=(4, 5)).astype(np.uint8)
        x = rng.integers(0, 2, size=(5, 3)).astype(np.uint8)
        lhs = gf2.mul(gf2.kron(p, q), gf2.vec(x))
        rhs = gf2.vec(gf2.mul(q, x, p.T))
        assert np.array_equal(lhs, rhs)


class TestSolveLinear:
    def test_identity_system(self):
        x = gf2.solve_linear(gf2.eye(3), [1, 0, 1])
        assert np.array_equal(x, gf2.bitvec([1, 0, 1]))

    def test_inconsistent(self):
        a = gf2.bitmat([[1, 1], [0, 0]])
        assert gf2.solve_linear(a, [1, 1]) is None

    def test_any_mode_satisfies_system(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            a = rng.integers(0, 2, size=(4, 7)).astype(np.uint8)
            x_true = rng.integers(0, 2, size=7).astype(np.uint8)
            b = gf2.mul(a, x_true)
            x = gf2.solve_linear(a, b)
            assert x is not None
            assert np.array_equal(gf2.mul(a, x), b)

    def test_min_weight_hamming_preimage(self):
        v = gf2.bitvec([1, 0, 0])
        # Exhaustive oracle over all 2^7 candidates.
        best = min(
            (sum(u) for u in itertools.product([0, 1], repeat=7)
             if np.array_equal(gf2.mul(HAMMING_H, gf2.bitvec(u)), v)),
        )
        x = gf2.solve_linear(HAMMING_H, v, mode="min_weight")
        assert np.array_equal(gf2.mul(HAMMING_H, x), v)
        assert gf2.weight(x) == best == 1

    def test_min_weight_never_beaten_by_enumeration(self):
        rng = np.random.default_rng(23)
        a = rng.integers(0, 2, size=(3, 6)).astype(np.uint8)
        b = gf2.mul(a, rng.integers(0, 2, size=6).astype(np.uint8))
        x = gf2.solve_linear(a, b, mode="min_weight")
        for u in itertools.product([0, 1], repeat=6):
            u = gf2.bitvec(u)
            if np.array_equal(gf2.mul(a, u), b):
                assert gf2.weight(u) >= gf2.weight(x)

    def test_kernel_cap(self):
        with pytest.raises(gf2.SearchTooLarge):
            gf2.solve_linear(gf2.zeros(1, 30), [0], mode="min_weight", kernel_cap=24)


class TestKernelsAndForms:
    def test_null_space(self):
        k = gf2.null_space(HAMMING_H)
        assert k.shape == (4, 7)
        assert not gf2.mul(HAMMING_H, k.T).any()
        assert gf2.rank(k) == 4

    def test_left_null_space(self):
        m = gf2.bitmat([[1, 0], [1, 0], [0, 1]])
        l = gf2.left_null_space(m)
        assert l.shape[0] == 1
        assert not gf2.mul(l, m).any()

    def test_standard_form(self):
        g = gf2.bitmat([[0, 1, 1, 1], [1, 1, 0, 1]])
        g_std, perm = gf2.standard_form(g)
        assert gf2.is_standard_form(g_std)
        # Same row space after undoing the permutation.
        undone = gf2.zeros(*g.shape)
        undone[:, perm] = g_std
        assert np.array_equal(gf2.row_basis(undone), gf2.row_basis(g))


class TestTextFormat:
    def test_round_trip(self):
        rng = np.random.default_rng(29)
        m = rng.integers(0, 2, size=(5, 9)).astype(np.uint8)
        assert np.array_equal(gf2.from_text(gf2.to_text(m)), m)

    def test_bit_exact_layout(self):
        m = gf2.bitmat([[1, 0, 1], [0, 1, 1]])
        assert gf2.to_text(m) == "2 3\n101\n011\n"

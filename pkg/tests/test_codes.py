"""Code objects: validation, distance vs brute force, soundness, constructors."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from qsurg import codes, gf2


def brute_css_distance(code):
    """Independent oracle: scan all 2^n patterns for undetected logical errors."""
    best = None
    for bits in itertools.product([0, 1], repeat=code.n):
        u = gf2.bitvec(bits)
        w = gf2.weight(u)
        if w == 0 or (best is not None and w >= best):
            continue
        if not gf2.mul(code.h_z, u).any() and gf2.mul(code.j_z, u).any():
            best = w
        elif not gf2.mul(code.h_x, u).any() and gf2.mul(code.j_x, u).any():
            best = w
    return best


class TestValidate:
    def test_steane_valid(self):
        code = codes.steane()
        assert codes.validate_css(code) == []
        # Direct numpy re-check of one identity, independent of gf2.mul.
        assert not ((code.h_x.astype(int) @ code.h_z.T.astype(int)) % 2).any()

    def test_broken_pairing_reported(self):
        code = codes.steane()
        code.j_z = gf2.zeros(1, 7)
        report = codes.validate_css(code)
        assert any("pairing" in item for item in report)

    def test_hgp_output_valid(self):
        code = codes.hypergraph_product(codes.hamming_743(), codes.repetition(3))
        assert codes.validate_css(code) == []


class TestHypergraphProduct:
    def test_rep3_rep3_parameters(self):
        code = codes.hypergraph_product(codes.repetition(3), codes.repetition(3))
        assert (code.n, code.k) == (13, 1)
        assert codes.validate_css(code) == []

    def test_degenerate_factor(self):
        ham = codes.hamming_743()
        code = codes.hypergraph_product(codes.repetition(1), ham)
        # A length-1 first factor reproduces the second code's dimensions.
        assert (code.n, code.k) == (ham.n, ham.k)


class TestDistance:
    def test_repetition(self):
        assert codes.distance(codes.repetition(3)).d == 3
        assert codes.distance(codes.repetition(5)).d == 5

    def test_steane_vs_brute_force(self):
        code = codes.steane()
        res = codes.distance(code)
        assert res.exact and res.d == 3 == brute_css_distance(code)

    def test_surface_d3(self):
        code = codes.surface_code_via_hgp(3)
        assert (code.n, code.k, code.d) == (13, 1, 3)
        assert codes.distance(code).d == 3

    def test_bounded_sweep_certificate(self):
        code = codes.surface_code_via_hgp(3)
        wide = codes.CssCode(
            h_x=code.h_x, h_z=code.h_z, j_x=code.j_x, j_z=code.j_z,
            n=code.n, k=code.k,
        )
        # Force the sweep path by shrinking the span cap.
        old = gf2.MIN_WEIGHT_KERNEL_CAP
        gf2.MIN_WEIGHT_KERNEL_CAP = 2
        try:
            res = codes.distance(wide, budget=2)
        finally:
            gf2.MIN_WEIGHT_KERNEL_CAP = old
        assert not res.exact and res.floor == 2


class TestSoundness:
    def test_identity_checks(self):
        code = codes.ClassicalCode(h=gf2.eye(4), g=gf2.zeros(0, 4), n=4, k=0)
        assert codes.soundness(code) == Fraction(1)

    def test_repetition3_chain(self):
        assert codes.soundness(codes.repetition(3)) == Fraction(3, 2)

    def test_hamming_vs_plain_oracle(self):
        code = codes.hamming_743()
        s = codes.soundness(code)
        # Plain re-computation: every codeword and every word, no packing.
        words = [gf2.bitvec(b) for b in itertools.product([0, 1], repeat=7)
                 if not gf2.mul(code.h, gf2.bitvec(b)).any()]
        ratios = []
        for bits in itertools.product([0, 1], repeat=7):
            u = gf2.bitvec(bits)
            if not gf2.mul(code.h, u).any():
                continue
            dist = min(gf2.weight(u ^ c) for c in words)
            ratios.append(Fraction(7 * int(gf2.mul(code.h, u).sum()), 3 * dist))
        assert s == min(ratios) == Fraction(7, 3)

    def test_defining_inequality_holds_everywhere(self):
        code = codes.hamming_743()
        s = codes.soundness(code)
        r, n = code.h.shape
        words = [gf2.bitvec(b) for b in itertools.product([0, 1], repeat=7)
                 if not gf2.mul(code.h, gf2.bitvec(b)).any()]
        for bits in itertools.product([0, 1], repeat=7):
            u = gf2.bitvec(bits)
            dist = min(gf2.weight(u ^ c) for c in words)
            assert Fraction(int(gf2.mul(code.h, u).sum()), r) >= Fraction(s * dist, n)

    def test_preimage_bound_all_syndromes(self):
        # For every v in colsp(h): min-weight u with h·uᵀ = v has
        # |u| ≤ (n / (r s)) |v|.
        code = codes.hamming_743()
        s = codes.soundness(code)
        r, n = code.h.shape
        for bits in itertools.product([0, 1], repeat=r):
            v = gf2.bitvec(bits)
            u = gf2.solve_linear(code.h, v, mode="min_weight")
            assert u is not None
            assert gf2.weight(u) <= Fraction(n, r) / s * gf2.weight(v)


class TestConstructors:
    def test_repetition5(self):
        code = codes.repetition(5)
        assert (code.n, code.k, code.d) == (5, 1, 5)
        assert codes.validate_classical(code) == []

    def test_hamming(self):
        code = codes.hamming_743()
        assert code.h.shape == (3, 7)
        assert codes.validate_classical(code) == []
        assert codes.distance(code).d == 3
        assert gf2.is_standard_form(code.g)

    def test_trivial_css(self):
        code = codes.trivial_css()
        assert codes.validate_css(code) == []

    def test_surface_requires_odd(self):
        with pytest.raises(ValueError):
            codes.surface_code_via_hgp(4)


class TestManifests:
    def test_css_round_trip(self, tmp_path):
        code = codes.steane()
        path = codes.save_css(code, str(tmp_path), name="steane")
        loaded = codes.load_manifest(path)
        for attr in ("h_x", "h_z", "j_x", "j_z"):
            assert np.array_equal(getattr(loaded, attr), getattr(code, attr))
        assert (loaded.n, loaded.k, loaded.d) == (7, 1, 3)

    def test_classical_round_trip(self, tmp_path):
        code = codes.hamming_743()
        code.soundness = Fraction(7, 3)
        path = codes.save_classical(code, str(tmp_path), name="ham")
        loaded = codes.load_manifest(path)
        assert np.array_equal(loaded.h, code.h)
        assert loaded.soundness == Fraction(7, 3)

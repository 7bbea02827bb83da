"""Deformed-code construction: glue conditions, block structure, distance."""

import numpy as np
import pytest

from qsurg import codes, gf2, surgery


@pytest.fixture(scope="module")
def target13():
    return codes.surface_code_via_hgp(3)


@pytest.fixture(scope="module")
def hamming_r():
    return codes.hamming_743()


@pytest.fixture(scope="module")
def deformed13(target13, hamming_r):
    return surgery.build_deformed(target13, gf2.bitmat([[1]]), hamming_r)


class TestBuildGlue:
    def test_surface_target(self, target13):
        glue = surgery.build_glue(target13, [[1]])
        assert surgery.verify_glue(target13, glue) == []

    def test_empty_measurement(self, target13):
        glue = surgery.build_glue(target13, gf2.zeros(0, 1))
        assert glue.n_g == 0
        assert surgery.verify_glue(target13, glue) == []

    def test_steane_selection_weights(self):
        code = codes.steane()
        glue = surgery.build_glue(code, [[1]])
        assert np.all(glue.s.sum(axis=1) == 1)
        assert np.all(glue.s.sum(axis=0) <= 1)
        assert surgery.verify_glue(code, glue) == []

    def test_thickness_violation_rejected(self):
        two = codes.direct_sum_css(codes.steane(), codes.steane())
        overlapping = gf2.bitmat([[1, 1], [1, 0]])
        with pytest.raises(surgery.GlueConstructionError):
            surgery.build_glue(two, overlapping)


class TestVerifyGlue:
    def test_zeroed_s_cites_condition_ii(self, target13):
        glue = surgery.build_glue(target13, [[1]])
        glue.s = gf2.zeros(*glue.s.shape)
        report = surgery.verify_glue(target13, glue)
        assert any("condition ii)" in item for item in report)

    def test_zeroed_t_cites_condition_i(self, target13):
        glue = surgery.build_glue(target13, [[1]])
        glue.t = gf2.zeros(*glue.t.shape)
        report = surgery.verify_glue(target13, glue)
        assert any("condition i)" in item for item in report)


class TestBuildDeformed:
    def test_column_count(self, deformed13, target13, hamming_r):
        # k_R·n + r_R·n_G + n_R·r_X with n = 13, n_G = 3, r_X = 6
        n_g = deformed13.glue.n_g
        r_x = target13.h_x.shape[0]
        assert deformed13.css.n == 4 * 13 + 3 * n_g + 7 * r_x

    def test_css_identities(self, deformed13):
        assert codes.validate_css(deformed13.css) == []

    def test_lifted_conditions(self, deformed13):
        assert surgery.verify_lifted_conditions(deformed13) == []

    def test_pairing_dimension(self, deformed13):
        # Measuring the only logical leaves no tracked pairs.
        assert deformed13.css.k == 0

    def test_single_block_degenerate(self):
        # k_R = 1 with a length-1 R code collapses to the one-block layout
        # [[h_z, 0], [s, h_gᵀ]] / [h_x | t].
        code = codes.steane()
        glue = surgery.build_glue(code, [[1]])
        dc = surgery.build_deformed(code, [[1]], codes.repetition(1), glue)
        n1, n2, n3 = dc.n_sectors
        assert (n1, n2, n3) == (7, 0, glue.r_g)
        expected_hdz = np.concatenate([
            np.concatenate([code.h_z, gf2.zeros(3, glue.r_g)], axis=1),
            np.concatenate([glue.s, glue.h_g.T], axis=1),
        ])
        assert np.array_equal(dc.css.h_z, expected_hdz)
        expected_hdx = np.concatenate([code.h_x, glue.t], axis=1)
        assert np.array_equal(dc.css.h_x, expected_hdx)

    def test_weight_bound(self, deformed13):
        actual, cap = surgery.deformed_weight_bound(deformed13)
        assert actual.max_row_weight <= cap
        assert actual.max_col_weight <= cap

    def test_requires_standard_form_r(self, target13):
        bad = codes.hamming_743()
        bad.g = bad.g[:, ::-1].copy()
        with pytest.raises(ValueError):
            surgery.build_deformed(target13, [[1]], bad)


class TestExtraction:
    def test_identity_holds(self, deformed13):
        coeff = surgery.measured_extraction(deformed13)
        assert coeff.shape == (4, deformed13.css.h_z.shape[0])

    def test_empty_measurement(self, target13):
        glue = surgery.build_glue(target13, gf2.zeros(0, 1))
        dc = surgery.build_deformed(target13, gf2.zeros(0, 1),
                                    codes.hamming_743(), glue)
        coeff = surgery.measured_extraction(dc)
        assert coeff.shape[0] == 0

    def test_single_block(self):
        code = codes.steane()
        dc = surgery.build_deformed(code, [[1]], codes.repetition(1))
        coeff = surgery.measured_extraction(dc)
        # One measured operator, reconstructed from the s-coupled rows.
        assert coeff.shape == (1, dc.css.h_z.shape[0])


class TestDistanceBound:
    def test_budget_zero(self, deformed13):
        assert surgery.verify_distance_bound(deformed13, 0).ok

    def test_weight2_certified(self, deformed13):
        cert = surgery.verify_distance_bound(deformed13, 2)
        assert cert.ok

    def test_budget_above_floor_rejected(self, deformed13):
        with pytest.raises(ValueError):
            surgery.verify_distance_bound(deformed13, 3)

    def test_asymmetric_target_partial_measurement(self, hamming_r):
        # Four logical qubits; measure two of them, leaving a nontrivial
        # beta certificate and unmeasured logical bookkeeping.
        target = codes.hypergraph_product(codes.hamming_743(), codes.repetition(3))
        assert target.k == 4
        alpha = gf2.bitmat([[1, 0, 0, 0], [0, 1, 0, 0]])
        glue = surgery.build_glue(target, alpha)
        assert surgery.verify_glue(target, glue) == []
        dc = surgery.build_deformed(target, alpha, hamming_r, glue)
        assert codes.validate_css(dc.css) == []
        assert dc.css.k == hamming_r.k * 2
        assert surgery.verify_lifted_conditions(dc) == []
        surgery.measured_extraction(dc)
        assert surgery.verify_distance_bound(dc, 1).ok

    def test_composite_build_certified(self, target13, hamming_r):
        two = codes.direct_sum_css(target13, target13)
        dc = surgery.build_deformed(two, gf2.bitmat([[1, 1]]), hamming_r)
        assert surgery.verify_lifted_conditions(dc) == []
        assert surgery.verify_distance_bound(dc, 2).ok

    def test_corrupted_checks_flagged(self, target13, hamming_r):
        # A composite target with one unmeasured logical per copy; zeroing
        # target-code Z checks lets low-weight X errors slip through as
        # logical errors, which the sweep must find.
        two = codes.direct_sum_css(target13, target13)
        dc = surgery.build_deformed(two, gf2.bitmat([[1, 1]]), hamming_r)
        assert dc.css.k == 4
        corrupt = dc.css
        zapped = corrupt.h_z.copy()
        # Blind copy 0: its target Z checks and its readout couplings.
        r_z, n_g = two.h_z.shape[0], dc.glue.n_g
        zapped[0:r_z] = 0
        zapped[4 * r_z: 4 * r_z + n_g] = 0
        corrupt = codes.CssCode(h_x=corrupt.h_x, h_z=zapped, j_x=corrupt.j_x,
                                j_z=corrupt.j_z, n=corrupt.n, k=corrupt.k)
        bad_dc = surgery.DeformedCode(css=corrupt, glue=dc.glue,
                                      r_code=dc.r_code, target=dc.target)
        cert = surgery.verify_distance_bound(bad_dc, 2)
        assert not cert.ok
        assert gf2.weight(cert.violation) <= 2

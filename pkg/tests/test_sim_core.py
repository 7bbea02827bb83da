"""Circuit IR, frame simulation vs tableau oracle, primitive decompositions."""

import itertools

import numpy as np

from qsurg import frame, gf2, tableau
from qsurg.circuit import Circuit, Loc


def build_mixed_circuit():
    """Small two-block circuit exercising every primitive op."""
    rng = np.random.default_rng(42)
    c = Circuit()
    a = c.new_block("a", 4)
    b = c.new_block("b", 3)
    c.init(a, "+")
    c.init(b, "0")
    coupling = rng.integers(0, 2, size=(4, 3)).astype(np.uint8)
    c.gcnot(a, b, coupling)
    c.h_layer(b[:2])
    checks = gf2.bitmat([[1, 1, 0, 0], [0, 1, 1, 0]])
    _, s1 = c.measure_pauli("X", checks, a)
    c.feedback("Z", a, gf2.bitmat([[1, 0, 0, 0], [0, 1, 0, 0]]), s1, 2)
    _, s2 = c.measure(b, "Z")
    c.feedback("X", a[:3], gf2.eye(3), s2, 3)
    c.measure(a, "X")
    return c


def frame_vs_tableau(circ, x_locs=(), z_locs=(), flip_locs=()):
    fr = frame.run_frames(circ, x_locs=x_locs, z_locs=z_locs, flip_locs=flip_locs)
    tr = tableau.run_tableau(circ, forced_outcomes=fr.outcome_flips,
                             x_errors=x_locs, z_errors=z_locs, flip_locs=flip_locs)
    return np.array_equal(tr.outcomes, fr.outcome_flips)


class TestTableauBasics:
    def test_bell_pair_forced_zero(self):
        c = Circuit()
        a = c.new_block("a", 1)
        b = c.new_block("b", 1)
        c.init(a, "+")
        c.init(b, "0")
        c.gcnot(a, b, gf2.eye(1))
        c.measure(np.concatenate([a, b]), "Z")
        res = tableau.run_tableau(c, force_zero=True)
        assert not res.outcomes.any()
        # First bit random, second forced into correlation => deterministic.
        assert not res.deterministic[0] and res.deterministic[1]

    def test_pauli_error_flips_deterministic_outcome(self):
        c = Circuit()
        a = c.new_block("a", 1)
        c.init(a, "0")
        c.measure(a, "Z")
        res = tableau.run_tableau(c, force_zero=True,
                                  x_errors=[Loc("q", 0, 0)])
        assert res.outcomes[0] == 1 and res.deterministic[0]

    def test_plus_state_stabilized(self):
        c = Circuit()
        a = c.new_block("a", 2)
        c.init(a, "+")
        res = tableau.run_tableau(c, force_zero=True)
        assert tableau.stabilizer_phase(res.sim, a, [1, 1], [0, 0]) == 0
        assert tableau.stabilizer_phase(res.sim, a, [0, 0], [1, 1]) is None


class TestFrameVsTableau:
    def test_reference_is_all_zero(self):
        circ = build_mixed_circuit()
        res = tableau.run_tableau(circ, force_zero=True)
        assert not res.outcomes.any()

    def test_all_weight_one_faults(self):
        circ = build_mixed_circuit()
        locs = circ.locations()
        for loc in locs:
            if loc.kind == "q":
                assert frame_vs_tableau(circ, x_locs=[loc]), f"X at {loc}"
                assert frame_vs_tableau(circ, z_locs=[loc]), f"Z at {loc}"
            else:
                assert frame_vs_tableau(circ, flip_locs=[loc]), f"flip at {loc}"

    def test_sampled_weight_two_faults(self):
        circ = build_mixed_circuit()
        qlocs = [l for l in circ.locations() if l.kind == "q"]
        rng = np.random.default_rng(7)
        for _ in range(60):
            l1, l2 = rng.choice(len(qlocs), size=2, replace=False)
            kinds = rng.integers(0, 2, size=2)
            xs = [qlocs[l] for l, k in zip((l1, l2), kinds) if k == 0]
            zs = [qlocs[l] for l, k in zip((l1, l2), kinds) if k == 1]
            assert frame_vs_tableau(circ, x_locs=xs, z_locs=zs)


class TestFrameProperties:
    def test_linearity(self):
        circ = build_mixed_circuit()
        qlocs = [l for l in circ.locations() if l.kind == "q"]
        rng = np.random.default_rng(11)
        for _ in range(25):
            picks = rng.choice(len(qlocs), size=4, replace=False)
            f1 = [qlocs[i] for i in picks[:2]]
            f2 = [qlocs[i] for i in picks[2:]]
            r1 = frame.run_frames(circ, x_locs=f1)
            r2 = frame.run_frames(circ, x_locs=f2)
            r12 = frame.run_frames(circ, x_locs=f1 + f2)
            assert np.array_equal(r12.outcome_flips,
                                  r1.outcome_flips ^ r2.outcome_flips)
            assert r12.x_final == r1.x_final ^ r2.x_final
            assert r12.z_final == r1.z_final ^ r2.z_final

    def test_xz_decoupling(self):
        # Z-only fault paths never flip X-type outcomes, and conversely —
        # on circuits without basis-changing layers.
        c = Circuit()
        a = c.new_block("a", 3)
        b = c.new_block("b", 3)
        c.init(a, "+")
        c.init(b, "0")
        c.gcnot(a, b, gf2.eye(3))
        _, sx = c.measure(a, "X")
        _, sz = c.measure(b, "Z")
        x_slots = set(range(sx, sx + 3))
        for loc in c.locations():
            if loc.kind != "q":
                continue
            rz = frame.run_frames(c, z_locs=[loc])
            rx = frame.run_frames(c, x_locs=[loc])
            assert not rz.outcome_flips[list(range(sz, sz + 3))].any()
            assert not rx.outcome_flips[list(range(sx, sx + 3))].any()


class TestProjectiveDecomposition:
    """A projective Z(B) measurement equals its ancilla-readout expansion."""

    @staticmethod
    def build_pair():
        checks = gf2.bitmat([[1, 1, 0, 1], [0, 1, 1, 0]])
        direct = Circuit()
        d = direct.new_block("data", 4)
        direct.mark_input(d)
        direct.measure_pauli("Z", checks, d)

        expanded = Circuit()
        e = expanded.new_block("data", 4)
        anc = expanded.new_block("anc", 2)
        expanded.mark_input(e)
        expanded.init(anc, "0")
        expanded.gcnot(e, anc, checks.T)
        expanded.measure(anc, "Z")
        return direct, expanded, d, e

    def test_outcomes_match_on_all_weight_le_2_input_faults(self):
        direct, expanded, d, e = self.build_pair()
        inputs = list(range(4))
        for w in (1, 2):
            for combo in itertools.combinations(inputs, w):
                for kinds in itertools.product("XZ", repeat=w):
                    dx = [Loc("q", -1, q) for q, k in zip(combo, kinds) if k == "X"]
                    dz = [Loc("q", -1, q) for q, k in zip(combo, kinds) if k == "Z"]
                    r_direct = frame.run_frames(direct, x_locs=dx, z_locs=dz)
                    r_exp = frame.run_frames(expanded, x_locs=dx, z_locs=dz)
                    assert np.array_equal(r_direct.outcome_flips,
                                          r_exp.outcome_flips)

    def test_propagation_weight_bounded_by_coupling(self):
        # One fault spreads to at most max-row/col-weight locations through
        # a generalized CNOT.
        rng = np.random.default_rng(3)
        a = rng.integers(0, 2, size=(5, 6)).astype(np.uint8)
        wp = gf2.weight_profile(a)
        c = Circuit()
        u = c.new_block("u", 5)
        v = c.new_block("v", 6)
        c.mark_input(np.concatenate([u, v]))
        c.gcnot(u, v, a)
        for q in range(5):
            r = frame.run_frames(c, x_locs=[Loc("q", -1, q)])
            spread = r.x_final.bit_count() - 1
            assert spread <= wp.max_row_weight
        for q in range(6):
            r = frame.run_frames(c, z_locs=[Loc("q", -1, 5 + q)])
            spread = r.z_final.bit_count() - 1
            assert spread <= wp.max_col_weight

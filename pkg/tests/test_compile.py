"""Operation decomposition, scheduling, edge coloring, cost arithmetic."""

import itertools

import numpy as np
import pytest

from qsurg import codes, gf2
from qsurg import compile as qc


def random_layer(rng, n_blocks, k, n_ops):
    """Random qubit-disjoint operation layer."""
    free = [(f"b{b}", j) for b in range(n_blocks) for j in range(k)]
    rng.shuffle(free)
    ops = []
    it = iter(free)
    for _ in range(n_ops):
        kind = ["MEA", "H", "S", "T", "CNOT"][rng.integers(0, 5)]
        try:
            if kind == "CNOT":
                (b1, q1), (b2, q2) = next(it), next(it)
                ops.append(qc.LogicalOp("CNOT", (b1, b2), (q1, q2)))
            else:
                b, q = next(it)
                ops.append(qc.LogicalOp(kind, (b,), (q,)))
        except StopIteration:
            break
    return ops


class TestParsing:
    def test_round_trip_kinds(self):
        text = "CNOT u.0 v.1\nT u.2\nMEA w.3\nH u.1\nS v.0\nINIT w\n"
        ops = qc.parse_circuit(text)
        assert [op.kind for op in ops] == ["CNOT", "T", "MEA", "H", "S", "INIT"]
        assert ops[0].blocks == ("u", "v") and ops[0].qubits == (0, 1)

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            qc.parse_op("CZ u.1 v.2")


class TestDecomposition:
    def test_table_rows_verbatim(self):
        assert qc.decompose("MEA").measurements == ("Zj",)
        assert qc.decompose("MEA").extra_resources == ()
        assert qc.decompose("INIT").measurements == ()
        assert qc.decompose("INIT").extra_resources == ("HM_X",)
        assert qc.decompose("H").measurements == ("Zj*Z1", "Xj", "Zj*X1", "Z1")
        assert qc.decompose("H").extra_resources == ("HM_Z",)
        assert qc.decompose("S").measurements == ("Z1*Z1", "Zj*Z1*X1", "X1")
        assert qc.decompose("T").measurements == (
            "Zj*Z1", "X1", "X1", "Z1*Z1", "Zj*Z1*X1")
        assert qc.decompose("CNOT").measurements == ("Za*Z1", "Xb*X1", "Z1")
        assert qc.decompose("CNOT").extra_resources == ("HM_Z",)
        assert qc.decompose("NOISY_T_PREP").extra_resources == (
            "HS_X", "HS_Z", "HM_Z")
        assert qc.decompose("S_STATE_PREP").extra_resources == (
            "HC_X", "HC_Z", "HM_Z")

    def test_magic_flags(self):
        assert qc.decompose("T").consumes_t_magic
        assert not qc.decompose("T").uses_s_magic
        assert qc.decompose("S").uses_s_magic
        assert not qc.decompose("S").consumes_t_magic

    def test_measurement_resources(self):
        res = qc.measurement_resources("Zj", k_r=4)
        assert res == {"HD_Z(Zj)": 1, "HM_X": 4}
        res = qc.measurement_resources("Zj*Z1*X1", k_r=3)
        assert res == {"HD_Z(Zj*Z1*X1)": 1, "HM_X": 6, "HM_Z": 6}


class TestDisjointness:
    def test_shared_block_not_block_disjoint(self):
        a = qc.LogicalOp("CNOT", ("u", "v"), (0, 0))
        b = qc.LogicalOp("CNOT", ("u", "v"), (1, 1))
        assert qc.is_qubit_disjoint([a, b])
        assert not qc.is_block_disjoint([a, b])

    def test_empty_set(self):
        assert qc.is_qubit_disjoint([]) and qc.is_block_disjoint([])

    def test_against_pairwise_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            ops = random_layer(rng, 6, 3, 8)
            brute_q = all(
                not (o1.qubit_support() & o2.qubit_support())
                for o1, o2 in itertools.combinations(ops, 2))
            brute_b = all(
                not (o1.block_support() & o2.block_support())
                for o1, o2 in itertools.combinations(ops, 2))
            assert qc.is_qubit_disjoint(ops) == brute_q
            assert qc.is_block_disjoint(ops) == brute_b


class TestSerialize:
    def test_parallel_cnots_same_blocks(self):
        ops = [qc.LogicalOp("CNOT", ("u", "v"), (j, j)) for j in range(5)]
        sched = qc.serialize(ops, k=6)
        assert sched.colors == 5
        assert sched.validate(ops) == []

    def test_single_op(self):
        ops = [qc.LogicalOp("H", ("u",), (0,))]
        assert qc.serialize(ops, k=4).colors == 1

    def test_random_layers(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            k = int(rng.integers(1, 7))
            ops = random_layer(rng, int(rng.integers(2, 9)), k, 12)
            sched = qc.serialize(ops, k)
            assert sched.validate(ops) == []
            assert sched.colors <= 2 * k - 1

    def test_rejects_qubit_collision(self):
        ops = [qc.LogicalOp("H", ("u",), (0,)),
               qc.LogicalOp("T", ("u",), (0,))]
        with pytest.raises(ValueError):
            qc.serialize(ops, k=2)


class TestEdgeColoring:
    @staticmethod
    def proper(a, colors):
        for r in range(a.shape[0]):
            used = [colors[r, c] for c in range(a.shape[1]) if a[r, c]]
            if len(used) != len(set(used)):
                return False
        for c in range(a.shape[1]):
            used = [colors[r, c] for r in range(a.shape[0]) if a[r, c]]
            if len(used) != len(set(used)):
                return False
        return True

    def test_random_matrices_hit_max_degree(self):
        rng = np.random.default_rng(3)
        for _ in range(60):
            a = rng.integers(0, 2, size=(rng.integers(1, 9),
                                         rng.integers(1, 9))).astype(np.uint8)
            colors = qc.bipartite_edge_coloring(a)
            assert self.proper(a, colors)
            deg = max(int(a.sum(axis=1).max(initial=0)),
                      int(a.sum(axis=0).max(initial=0)))
            assert int(colors.max(initial=0)) <= deg

    def test_depth_bound_for_parity_check_layer(self):
        # Check-readout layers decompose to depth ≤ max weight + 2.
        h = codes.hamming_743().h
        wp = gf2.weight_profile(h)
        w_max = max(wp.max_row_weight, wp.max_col_weight)
        assert qc.decomposed_depth(h, projective=True) <= w_max + 2


class TestBatchArithmetic:
    def test_zero_and_exact_fill(self):
        assert qc.batch(0, 4, 4, 3) == 0
        assert qc.batch(4 * 4 * 9, 4, 4, 3) == 1

    def test_grid_against_bound(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            num = int(rng.integers(0, 5000))
            k_r = int(rng.integers(1, 9))
            k_f = int(rng.integers(1, 9))
            d_s = int(rng.integers(1, 6))
            b = qc.batch(num, k_r, k_f, d_s)
            assert b <= qc.batch_bound(num, k_r, k_f, d_s)

    def test_sublayer_cost(self):
        ops = [qc.LogicalOp("CNOT", ("u", "v"), (0, 0)),
               qc.LogicalOp("T", ("w",), (1,)),
               qc.LogicalOp("MEA", ("x",), (2,))]
        rep = qc.sublayer_cost(ops, k_r=4, k_f=4, d_s=3,
                               memory_blocks=16, block_qubits=13)
        assert rep.num == {"CNOT": 1, "T": 1, "MEA": 1}
        assert rep.t_magic_consumed == 1
        assert rep.sum_batches <= rep.sum_bound
        assert rep.resource_counts["HD_Z(Zj)"] == 1
        assert rep.qubit_sectors["data_memory"] == 16 * 13

    def test_block_disjointness_required(self):
        ops = [qc.LogicalOp("H", ("u",), (0,)),
               qc.LogicalOp("T", ("u",), (1,))]
        with pytest.raises(ValueError):
            qc.sublayer_cost(ops, 4, 4, 3)


class TestOverheadTable:
    @pytest.mark.parametrize("a", [1, 1.5, 2])
    def test_this_scheme_row(self, a):
        rows = qc.overhead_exponents(a)
        assert rows["this scheme"] == ("0", f"{a:g}")

    def test_static_rows(self):
        rows = qc.overhead_exponents(1)
        assert rows["GM+BFB"] == ("0", ">=2")
        assert rows["DS"] == ("1", "1")
        assert rows["LS (surface code)"] == ("2", "1")

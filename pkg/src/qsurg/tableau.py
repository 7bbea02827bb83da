"""Stabilizer-tableau simulator (independent oracle for the frame simulator).

Standard destabilizer/stabilizer tableau with sign tracking.  Supports the
circuit IR directly, general commuting-Pauli-set measurements, and forced
outcomes; `force_zero` runs validate the all-zero reference trajectory that
the Pauli-frame simulator relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import gf2
from .circuit import (Circuit, FeedbackOp, GCnotOp, HLayerOp, InitOp,
                      MeasureOp, ProjectiveOp)


class Tableau:
    """Aaronson–Gottesman tableau over n qubits, initialized to |0…0⟩."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.x = np.zeros((2 * n, n), dtype=bool)
        self.z = np.zeros((2 * n, n), dtype=bool)
        self.r = np.zeros(2 * n, dtype=np.uint8)
        for i in range(n):
            self.x[i, i] = True
            self.z[n + i, i] = True

    # ── gates ───────────────────────────────────────────────────────

    def h(self, q: int) -> None:
        self.r ^= self.x[:, q] & self.z[:, q]
        self.x[:, q], self.z[:, q] = self.z[:, q].copy(), self.x[:, q].copy()

    def cnot(self, c: int, t: int) -> None:
        self.r ^= self.x[:, c] & self.z[:, t] & (self.x[:, t] ^ self.z[:, c] ^ True)
        self.x[:, t] ^= self.x[:, c]
        self.z[:, c] ^= self.z[:, t]

    def pauli_x(self, q: int) -> None:
        self.r ^= self.z[:, q].astype(np.uint8)

    def pauli_z(self, q: int) -> None:
        self.r ^= self.x[:, q].astype(np.uint8)

    # ── phase-tracked row multiplication ────────────────────────────

    @staticmethod
    def _g(x1, z1, x2, z2):
        x1, z1 = x1.astype(np.int8), z1.astype(np.int8)
        x2, z2 = x2.astype(np.int8), z2.astype(np.int8)
        return (x1 & z1) * (z2 - x2) \
            + (x1 & ~z1 & 1) * (z2 * (2 * x2 - 1)) \
            + (~x1 & 1 & z1) * (x2 * (1 - 2 * z2))

    def _rowsum_into(self, xh, zh, rh, i: int):
        gs = int(self._g(self.x[i], self.z[i], xh, zh).sum())
        total = (2 * int(rh) + 2 * int(self.r[i]) + gs) % 4
        return xh ^ self.x[i], zh ^ self.z[i], np.uint8(total // 2)

    def _rowsum(self, h: int, i: int) -> None:
        self.x[h], self.z[h], self.r[h] = self._rowsum_into(
            self.x[h], self.z[h], self.r[h], i)

    # ── measurement ─────────────────────────────────────────────────

    def _anticommute(self, xv, zv) -> np.ndarray:
        return ((self.x @ zv.astype(np.int64)) + (self.z @ xv.astype(np.int64))) % 2 == 1

    def deterministic_value(self, xv, zv) -> Optional[int]:
        """Sign bit of +P in the stabilizer group, or None if P is random."""
        xv = np.asarray(xv, dtype=bool)
        zv = np.asarray(zv, dtype=bool)
        anti = self._anticommute(xv, zv)
        if anti[self.n:].any():
            return None
        xh = np.zeros(self.n, dtype=bool)
        zh = np.zeros(self.n, dtype=bool)
        rh = np.uint8(0)
        for i in range(self.n):
            if anti[i]:
                xh, zh, rh = self._rowsum_into(xh, zh, rh, self.n + i)
        if not (np.array_equal(xh, xv) and np.array_equal(zh, zv)):
            raise ValueError("operator is not in the stabilizer group")
        return int(rh)

    def measure_pauli(self, xv, zv, rng=None, forced: Optional[int] = None):
        """Measure +P for P given by support vectors; returns (bit, deterministic)."""
        xv = np.asarray(xv, dtype=bool)
        zv = np.asarray(zv, dtype=bool)
        anti = self._anticommute(xv, zv)
        stab_anti = np.nonzero(anti[self.n:])[0]
        if stab_anti.size == 0:
            return self.deterministic_value(xv, zv), True
        p = self.n + int(stab_anti[0])
        for i in np.nonzero(anti)[0]:
            if int(i) != p:
                self._rowsum(int(i), p)
        self.x[p - self.n] = self.x[p]
        self.z[p - self.n] = self.z[p]
        self.r[p - self.n] = self.r[p]
        if forced is not None:
            bit = int(forced)
        elif rng is not None:
            bit = int(rng.integers(0, 2))
        else:
            raise ValueError("random outcome requires rng or forced value")
        self.x[p] = xv
        self.z[p] = zv
        self.r[p] = bit
        return bit, False


@dataclass
class TableauResult:
    outcomes: np.ndarray        # uint8 reported outcome bits
    deterministic: np.ndarray   # bool per outcome bit
    sim: Tableau


def run_tableau(
    circ: Circuit,
    rng=None,
    force_zero: bool = False,
    forced_outcomes=None,
    x_errors=(),
    z_errors=(),
    flip_locs=(),
) -> TableauResult:
    """Execute a circuit on the tableau simulator.

    Random outcomes are drawn from rng, forced to 0 (force_zero=True), or
    forced to the entries of `forced_outcomes`; forcing picks one valid
    trajectory.  force_zero on a noiseless circuit validates the all-zero
    reference the frame simulator assumes.  Pauli errors are injected at
    quantum locations (interval after Loc.step); flip_locs invert the
    *reported* bit of an outcome location, with any physical projection
    following the true bit.
    """
    sim = Tableau(circ.n_qubits)
    outcomes = np.zeros(circ.n_outcomes, dtype=np.uint8)
    deterministic = np.zeros(circ.n_outcomes, dtype=bool)
    xq: dict[int, list[int]] = {}
    zq: dict[int, list[int]] = {}
    for loc in x_errors:
        xq.setdefault(loc.step, []).append(loc.index)
    for loc in z_errors:
        zq.setdefault(loc.step, []).append(loc.index)
    flips = {loc.index for loc in flip_locs}

    def apply_errors(step: int) -> None:
        for q in xq.get(step, ()):
            sim.pauli_x(q)
        for q in zq.get(step, ()):
            sim.pauli_z(q)

    def measure_row(qubits, sigma, slot):
        xv = np.zeros(circ.n_qubits, dtype=bool)
        zv = np.zeros(circ.n_qubits, dtype=bool)
        vec = xv if sigma == "X" else zv
        for q in qubits:
            vec[int(q)] = True
        flip = 1 if slot in flips else 0
        if sim._anticommute(xv, zv)[sim.n:].any():
            if forced_outcomes is not None:
                reported = int(forced_outcomes[slot])
            elif force_zero:
                reported = 0
            elif rng is not None:
                reported = (int(rng.integers(0, 2)) ^ flip)
            else:
                raise ValueError("random outcome needs rng or forcing")
            sim.measure_pauli(xv, zv, forced=reported ^ flip)
            outcomes[slot] = reported
        else:
            bit, _ = sim.measure_pauli(xv, zv, forced=0)
            outcomes[slot] = bit ^ flip
            deterministic[slot] = True

    apply_errors(-1)
    for step, op in enumerate(circ.ops):
        if isinstance(op, InitOp):
            if op.basis == "+":
                for q in op.qubits:
                    sim.h(int(q))
        elif isinstance(op, HLayerOp):
            for q in op.qubits:
                sim.h(int(q))
        elif isinstance(op, GCnotOp):
            for j, i in zip(*np.nonzero(op.a)):
                sim.cnot(int(op.controls[j]), int(op.targets[i]))
        elif isinstance(op, MeasureOp):
            for i, q in enumerate(op.qubits):
                measure_row([q], op.basis, op.start + i)
        elif isinstance(op, ProjectiveOp):
            for i, row in enumerate(op.a):
                measure_row(op.qubits[np.nonzero(row)[0]], op.sigma, op.start + i)
        elif isinstance(op, FeedbackOp):
            bits = outcomes[op.src: op.src + op.count]
            supp = gf2.mul(bits, op.m)
            for i in np.nonzero(supp)[0]:
                q = int(op.qubits[i])
                if op.pauli == "X":
                    sim.pauli_x(q)
                else:
                    sim.pauli_z(q)
        else:
            raise TypeError(f"unknown op {op!r}")
        apply_errors(step)
    return TableauResult(outcomes=outcomes, deterministic=deterministic, sim=sim)


def stabilizer_phase(sim: Tableau, qubits, x_support, z_support) -> Optional[int]:
    """Phase bit of the Pauli with the given supports on `qubits`, if stabilized."""
    xv = np.zeros(sim.n, dtype=bool)
    zv = np.zeros(sim.n, dtype=bool)
    for q, b in zip(qubits, np.asarray(x_support).reshape(-1)):
        if b:
            xv[int(q)] = True
    for q, b in zip(qubits, np.asarray(z_support).reshape(-1)):
        if b:
            zv[int(q)] = True
    try:
        return sim.deterministic_value(xv, zv)
    except ValueError:
        return None

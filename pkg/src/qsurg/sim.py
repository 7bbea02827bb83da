"""Fault sampling, lookup decoding, and Monte Carlo logical-error rates.

The noise model is local stochastic: every quantum location suffers an X
and, independently, a Z error each with probability ≤ p_phy, and every
outcome bit flips with probability ≤ p_phy.  Sampling is counter-based
(Philox keyed by the run seed, one counter block per trial), so serial and
parallel execution of the same trial list give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frame, gf2, protocol
from .circuit import Circuit
from .codes import CssCode
from .gf2 import SearchTooLarge

_TRIAL_STRIDE = 1 << 24


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    """Independent stream for (seed, trial): fixed Philox counter offset."""
    bg = np.random.Philox(key=seed)
    bg.advance(trial * _TRIAL_STRIDE)
    return np.random.Generator(bg)


@dataclass
class FaultPath:
    x_locs: tuple
    z_locs: tuple
    flip_locs: tuple

    def weight(self) -> int:
        return len(self.x_locs) + len(self.z_locs) + len(self.flip_locs)


def sample_faults(circ: Circuit, p_phy: float, seed: int, trial: int = 0) -> FaultPath:
    """Draw one i.i.d. fault path over the circuit's locations."""
    if not 0 <= p_phy < 1:
        raise ValueError("p_phy must lie in [0, 1)")
    locs = circ.locations()
    rng = trial_rng(seed, trial)
    u = rng.random((len(locs), 2))
    xs, zs, fs = [], [], []
    for i, loc in enumerate(locs):
        if loc.kind == "q":
            if u[i, 0] < p_phy:
                xs.append(loc)
            if u[i, 1] < p_phy:
                zs.append(loc)
        elif u[i, 0] < p_phy:
            fs.append(loc)
    return FaultPath(x_locs=tuple(xs), z_locs=tuple(zs), flip_locs=tuple(fs))


def propagate(circ: Circuit, path: FaultPath) -> frame.FrameResult:
    """Forward the fault path through the circuit (outcome flips + frames)."""
    return frame.run_frames(circ, x_locs=path.x_locs, z_locs=path.z_locs,
                            flip_locs=path.flip_locs)


# ── closed-form reduced noise parameters ────────────────────────────────


def merge_wait(p1: float, p2: float) -> float:
    """Two sequential idle layers merge into one with p1 + p2 + p1·p2."""
    if not (0 <= p1 < 1 and 0 <= p2 < 1):
        raise ValueError("wait parameters must lie in [0, 1)")
    return p1 + p2 + p1 * p2


def reduced_error_params(p_phy: float, s1: int = 1, s2: int = 1) -> dict:
    """Reduced per-location rates after boundary-pushing the standard gadgets.

    q_bs: Bell-pair preparation (depth-1 readout), exactly 12·√p_phy.
    q_ms: depth-s1 check-readout gadget pushed onto its trailing wait layer.
    q_ltc: depth-s2 test-code check gadget pushed onto its leading wait layer.
    """
    if not 0 <= p_phy < 1:
        raise ValueError("p_phy must lie in [0, 1)")
    q_bs = 12.0 * math.sqrt(p_phy)
    e1 = 1 << s1
    q_ms = (2.0 * (2.0 ** (s1 * e1)) * (2.0 * p_phy) ** (1.0 / e1)
            + (2.0 ** (s1 * e1)) * p_phy ** (1.0 / e1))
    e2 = 1 << s2
    q_ltc = 3.0 * (2.0 ** ((s2 + 1) * e2)) * p_phy ** (1.0 / e2)
    return {"q_bs": q_bs, "q_ms": q_ms, "q_ltc": q_ltc}


# ── lookup decoding ─────────────────────────────────────────────────────

TABLE_CAP = 1 << 22


class LookupDecoder:
    """Minimum-weight table decoder, complete up to a chosen error weight.

    The table registers, in weight order, the first (hence minimum-weight)
    error for every syndrome it reaches; the default depth ⌊(d−1)/2⌋
    guarantees exact correction of every correctable error.  decode_x
    corrects X errors from Z-check syndromes; decode_z dually.  Unknown
    syndromes return None (a heralded failure, never a silent wrong
    answer for in-table weights).
    """

    def __init__(self, code: CssCode, max_weight: Optional[int] = None) -> None:
        if code.d is None:
            raise ValueError("code distance must be known")
        self.code = code
        t = (code.d - 1) // 2 if max_weight is None else max_weight
        self.t = t
        self._x_table = self._build(code.h_z, t)
        self._z_table = self._build(code.h_x, t)

    @staticmethod
    def _build(checks: np.ndarray, t: int) -> dict:
        from itertools import combinations
        n = checks.shape[1]
        size = sum(math.comb(n, w) for w in range(t + 1))
        if size > TABLE_CAP:
            raise SearchTooLarge(f"lookup table of {size} entries refused")
        cols = [gf2._pack(col) for col in checks.T]
        table: dict[int, int] = {0: 0}
        for w in range(1, t + 1):
            for combo in combinations(range(n), w):
                syn = 0
                err = 0
                for c in combo:
                    syn ^= cols[c]
                    err |= 1 << c
                table.setdefault(syn, err)
        return table

    def decode_x(self, syndrome: np.ndarray) -> Optional[np.ndarray]:
        return self._lookup(self._x_table, syndrome)

    def decode_z(self, syndrome: np.ndarray) -> Optional[np.ndarray]:
        return self._lookup(self._z_table, syndrome)

    def _lookup(self, table: dict, syndrome: np.ndarray) -> Optional[np.ndarray]:
        key = gf2._pack(np.asarray(syndrome, dtype=np.uint8))
        err = table.get(key)
        if err is None:
            return None
        return gf2._unpack(err, self.code.n)


def lookup_decoder(code: CssCode) -> LookupDecoder:
    return LookupDecoder(code)


def deep_decoder(code: CssCode, cap: int = TABLE_CAP) -> LookupDecoder:
    """Lookup decoder with the deepest table that fits the memory cap.

    Scattered multi-fault configurations then decode to their true
    minimum-weight class instead of heralding.
    """
    t = (code.d - 1) // 2
    w = t
    total = sum(math.comb(code.n, i) for i in range(t + 1))
    while w < code.n:
        nxt = total + math.comb(code.n, w + 1)
        if nxt > cap:
            break
        w += 1
        total = nxt
    return LookupDecoder(code, max_weight=w)


# ── memory experiment ───────────────────────────────────────────────────


@dataclass
class _BasisView:
    """One basis of the memory experiment, ready for fast trial loops.

    A |0…0⟩-logical preparation scores logical X failures (corrupted Z
    readout); the |+…+⟩ preparation scores logical Z failures.  Decoding
    is two-stage: the teleported round's syndrome first, then the ideal
    final syndrome of the residue.
    """

    circuit: Circuit
    mem_out: np.ndarray
    syn_rows: list            # packed outcome combinations -> mid syndrome
    checks: np.ndarray        # final-syndrome check matrix
    logical_rows: list        # packed logical rows tested on the residue
    frame_is_x: bool
    cols: Optional[list] = None

    def compile_faults(self) -> None:
        if self.cols is not None:
            return
        cols = []
        for loc in self.circuit.locations():
            if loc.kind == "flip":
                r = frame.run_frames(self.circuit, flip_locs=[loc])
                cols.append((self._pack(r), None))
            else:
                rx = frame.run_frames(self.circuit, x_locs=[loc])
                rz = frame.run_frames(self.circuit, z_locs=[loc])
                cols.append((self._pack(rx), self._pack(rz)))
        self.cols = cols

    def _pack(self, res: frame.FrameResult):
        fr = res.x_on(self.mem_out) if self.frame_is_x else res.z_on(self.mem_out)
        return (gf2._pack(res.outcome_flips), gf2._pack(fr))


@dataclass
class MemoryExperiment:
    """One EC cycle of a CSS memory with teleported check readout."""

    code: CssCode
    decoder: LookupDecoder
    z_basis: _BasisView
    x_basis: _BasisView

    def compile_faults(self) -> None:
        self.z_basis.compile_faults()
        self.x_basis.compile_faults()


def _build_basis(code: CssCode, basis: str, dec: LookupDecoder) -> _BasisView:
    circ = Circuit()
    mem = circ.new_block("M", code.n)
    if basis == "z":
        protocol._memory_prep(circ, mem, code.h_x)
    else:
        circ.init(mem, "0")
        circ.h_layer(mem)
        _, start = circ.measure_pauli("Z", code.h_z, mem)
        hz_r = gf2.right_inverse(code.h_z)
        circ.feedback("X", mem, hz_r.T, start, code.h_z.shape[0])
    mem2, _, mu_z1, _ = protocol.append_tele_z(circ, mem, code.h_z)
    circ.h_layer(mem2)
    mem3, _, mu_z2, _ = protocol.append_tele_z(circ, mem2, code.h_x)
    circ.h_layer(mem3)
    if basis == "z":
        syn = gf2.zeros(code.h_z.shape[0], circ.n_outcomes)
        syn[:, mu_z1: mu_z1 + code.n] = code.h_z
        return _BasisView(circuit=circ, mem_out=mem3,
                          syn_rows=[gf2._pack(r) for r in syn],
                          checks=code.h_z,
                          logical_rows=[gf2._pack(r) for r in code.j_z],
                          frame_is_x=True)
    syn = gf2.zeros(code.h_x.shape[0], circ.n_outcomes)
    syn[:, mu_z2: mu_z2 + code.n] = code.h_x
    return _BasisView(circuit=circ, mem_out=mem3,
                      syn_rows=[gf2._pack(r) for r in syn],
                      checks=code.h_x,
                      logical_rows=[gf2._pack(r) for r in code.j_x],
                      frame_is_x=False)


def build_memory_experiment(code: CssCode) -> MemoryExperiment:
    dec = deep_decoder(code)
    return MemoryExperiment(code=code, decoder=dec,
                            z_basis=_build_basis(code, "z", dec),
                            x_basis=_build_basis(code, "x", dec))


def _unpack_bits(mask: int, rows: list) -> np.ndarray:
    out = np.zeros(len(rows), dtype=np.uint8)
    for i, row in enumerate(rows):
        out[i] = (mask & row).bit_count() & 1
    return out


@dataclass
class RateEstimate:
    trials: int
    failures: int
    rate: float
    ci_low: float
    ci_high: float

    def overlaps(self, other: "RateEstimate") -> bool:
        return not (self.ci_high < other.ci_low or other.ci_high < self.ci_low)


def wilson_interval(failures: int, trials: int, z: float = 1.959963984540054):
    if trials == 0:
        return 0.0, 1.0
    phat = failures / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials
                         + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == trials else min(1.0, center + half)
    return lo, hi


def _basis_trial(view: _BasisView, dec: LookupDecoder, n: int,
                 u: np.ndarray, p_phy: float) -> bool:
    o = fr = 0
    for i in np.nonzero(u[:, 0] < p_phy)[0]:
        col = view.cols[i][0]
        o ^= col[0]
        fr ^= col[1]
    for i in np.nonzero(u[:, 1] < p_phy)[0]:
        col = view.cols[i][1]
        if col is not None:
            o ^= col[0]
            fr ^= col[1]
    if not (o or fr):
        return False
    decode = dec.decode_x if view.frame_is_x else dec.decode_z
    s1 = _unpack_bits(o, view.syn_rows)
    c1 = decode(s1)
    if c1 is None:
        return True
    resid = fr ^ gf2._pack(c1)
    s2 = gf2.mul(view.checks, gf2._unpack(resid, n))
    c2 = decode(s2)
    if c2 is None:
        return True
    resid ^= gf2._pack(c2)
    return any((resid & l).bit_count() & 1 for l in view.logical_rows)


def logical_error_rate(exp: MemoryExperiment, p_phy: float, trials: int,
                       seed: int) -> RateEstimate:
    """Monte Carlo failure-rate estimate with a 95% Wilson interval.

    Each trial runs the |0…0⟩-basis and |+…+⟩-basis circuits on
    independent fault draws; it fails on a heralded decode, a logical X
    flip in the first, or a logical Z flip in the second.
    """
    exp.compile_faults()
    n = exp.code.n
    n1 = len(exp.z_basis.circuit.locations())
    n2 = len(exp.x_basis.circuit.locations())
    failures = 0
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        u = rng.random((n1 + n2, 2))
        if _basis_trial(exp.z_basis, exp.decoder, n, u[:n1], p_phy) or \
                _basis_trial(exp.x_basis, exp.decoder, n, u[n1:], p_phy):
            failures += 1
    lo, hi = wilson_interval(failures, trials)
    return RateEstimate(trials=trials, failures=failures,
                        rate=failures / trials if trials else 0.0,
                        ci_low=lo, ci_high=hi)

"""Classical and CSS code objects, example constructors, exact metrics.

Codes are kept as plain dataclasses over GF(2) matrices.  Distances and
soundness are computed exhaustively (desk scale) and never estimated; when
an instance is too large for the exhaustive strategy the functions return a
certified lower bound or refuse with :class:`qsurg.gf2.SearchTooLarge`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import gf2
from .gf2 import SearchTooLarge


@dataclass
class ClassicalCode:
    """[n, k, d] linear code given by a check matrix and a generator matrix."""

    h: np.ndarray  # r × n
    g: np.ndarray  # k × n
    n: int
    k: int
    d: Optional[int] = None
    soundness: Optional[Fraction] = None


@dataclass
class CssCode:
    """[[n, k, d]] CSS code: stabilizer checks (h_x, h_z), logicals (j_x, j_z).

    The four matrices must satisfy h_x·h_zᵀ = h_x·j_zᵀ = j_x·h_zᵀ = 0 and
    j_x·j_zᵀ = E_k.  k counts the *tracked* logical pairs; the stabilizer
    group is not required to be complete, so a code may carry spectator
    logical degrees of freedom beyond the listed generators.
    """

    h_x: np.ndarray
    h_z: np.ndarray
    j_x: np.ndarray
    j_z: np.ndarray
    n: int
    k: int
    d: Optional[int] = None


@dataclass(frozen=True)
class DistanceResult:
    """Exact distance when `d` is set; otherwise `floor` certifies d > floor."""

    d: Optional[int]
    floor: int

    @property
    def exact(self) -> bool:
        return self.d is not None


# ── validation ──────────────────────────────────────────────────────────


def validate_css(code: CssCode) -> list[str]:
    """Return the list of violated CSS identities (empty iff valid)."""
    report: list[str] = []
    hx, hz, jx, jz = code.h_x, code.h_z, code.j_x, code.j_z
    for m, name, rows in ((hx, "h_x", None), (hz, "h_z", None),
                          (jx, "j_x", code.k), (jz, "j_z", code.k)):
        if m.shape[1] != code.n:
            report.append(f"{name} has {m.shape[1]} columns, expected n={code.n}")
        if rows is not None and m.shape[0] != rows:
            report.append(f"{name} has {m.shape[0]} rows, expected k={code.k}")
    if report:
        return report
    if gf2.mul(hx, hz.T).any():
        report.append("h_x·h_zᵀ != 0")
    if gf2.mul(hx, jz.T).any():
        report.append("h_x·j_zᵀ != 0")
    if gf2.mul(jx, hz.T).any():
        report.append("j_x·h_zᵀ != 0")
    if not np.array_equal(gf2.mul(jx, jz.T), gf2.eye(code.k)):
        report.append("j_x·j_zᵀ != identity (symplectic pairing)")
    if gf2.rank(np.concatenate([hx, jx])) != gf2.rank(hx) + code.k:
        report.append("j_x rows not independent of the X stabilizer row space")
    if gf2.rank(np.concatenate([hz, jz])) != gf2.rank(hz) + code.k:
        report.append("j_z rows not independent of the Z stabilizer row space")
    return report


def validate_classical(code: ClassicalCode) -> list[str]:
    report: list[str] = []
    if code.h.shape[1] != code.n or code.g.shape[1] != code.n:
        report.append("matrix widths disagree with n")
        return report
    if gf2.mul(code.h, code.g.T).any():
        report.append("h·gᵀ != 0")
    if gf2.rank(code.g) != code.k:
        report.append("generator rows are dependent")
    if gf2.rank(code.h) == code.h.shape[0] and code.k + code.h.shape[0] != code.n:
        report.append("k + rank(h) != n for full-rank h")
    return report


# ── logical-generator completion ────────────────────────────────────────


def _extend_basis(base: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Rows of *candidates* that extend span(base), taken in order."""
    picked = []
    acc = base
    r = gf2.rank(acc)
    for row in candidates:
        trial = np.concatenate([acc, row.reshape(1, -1)])
        tr = gf2.rank(trial)
        if tr > r:
            picked.append(row)
            acc, r = trial, tr
    return np.array(picked, dtype=np.uint8).reshape(len(picked), base.shape[1])


def complete_logicals(h_x: np.ndarray, h_z: np.ndarray):
    """Deterministic symplectic completion of (j_x, j_z) for given checks.

    X candidates span ker(h_z) over the X-stabilizer rows, Z candidates span
    ker(h_x) over the Z-stabilizer rows; the Z side is then recombined so
    j_x·j_zᵀ = E_k.
    """
    h_x, h_z = gf2.bitmat(h_x), gf2.bitmat(h_z)
    lx = _extend_basis(gf2.row_basis(h_x), gf2.null_space(h_z))
    lz = _extend_basis(gf2.row_basis(h_z), gf2.null_space(h_x))
    if lx.shape[0] != lz.shape[0]:
        raise ValueError("logical X/Z dimensions disagree; bad check matrices")
    k = lx.shape[0]
    if k == 0:
        n = h_x.shape[1]
        return gf2.zeros(0, n), gf2.zeros(0, n)
    m = gf2.mul(lx, lz.T)
    minv = gf2.inverse(m)
    if minv is None:
        raise ValueError("degenerate logical pairing; bad check matrices")
    jz = gf2.mul(minv.T, lz)
    return lx, jz


def css_from_checks(h_x, h_z, d: Optional[int] = None) -> CssCode:
    """Build a CSS code from orthogonal check matrices, completing logicals."""
    h_x, h_z = gf2.bitmat(h_x), gf2.bitmat(h_z)
    if gf2.mul(h_x, h_z.T).any():
        raise ValueError("check matrices do not commute: h_x·h_zᵀ != 0")
    j_x, j_z = complete_logicals(h_x, h_z)
    n = h_x.shape[1]
    return CssCode(h_x=h_x, h_z=h_z, j_x=j_x, j_z=j_z, n=n, k=j_x.shape[0], d=d)


# ── distance ────────────────────────────────────────────────────────────


def _pack_rows(m: np.ndarray) -> list[int]:
    return [gf2._pack(row) for row in m]


def _min_weight_flagged(basis: np.ndarray, flag: np.ndarray) -> Optional[int]:
    """Min weight over span(basis) of vectors v with flag·vᵀ != 0.

    Gray-code walk; `flag` rows are tracked incrementally alongside v.
    """
    dim = basis.shape[0]
    if dim > gf2.MIN_WEIGHT_KERNEL_CAP:
        raise SearchTooLarge(f"span dimension {dim} exceeds cap")
    vec_masks = _pack_rows(basis)
    flag_cols = _pack_rows(gf2.mul(flag, basis.T).T) if flag.shape[0] else [0] * dim
    cur_v, cur_f = 0, 0
    best: Optional[int] = None
    gray_prev = 0
    for i in range(1, 1 << dim):
        gray = i ^ (i >> 1)
        j = (gray ^ gray_prev).bit_length() - 1
        gray_prev = gray
        cur_v ^= vec_masks[j]
        cur_f ^= flag_cols[j]
        if cur_f:
            w = cur_v.bit_count()
            if best is None or w < best:
                best = w
    return best


def _sweep_bounded(n: int, budget: int, checks: np.ndarray, flag: np.ndarray):
    """First weight-≤budget vector in ker(checks) with flag·vᵀ != 0, else None."""
    check_cols = _pack_rows(checks.T)
    flag_cols = _pack_rows(flag.T)
    for w in range(1, budget + 1):
        for combo in combinations(range(n), w):
            syn = 0
            fl = 0
            for c in combo:
                syn ^= check_cols[c]
                fl ^= flag_cols[c]
            if syn == 0 and fl:
                v = gf2.zeros(1, n)[0]
                v[list(combo)] = 1
                return v
    return None


def distance(code, budget: Optional[int] = None) -> DistanceResult:
    """Exact distance, or a certified lower bound when only swept to *budget*.

    Classical codes: min weight of a nonzero codeword (span of g).  CSS
    codes: min over both error types of the min weight of an undetected
    error with nonzero logical action.  Exhaustive strategies require the
    relevant span dimension ≤ the gf2 cap; otherwise a weight-bounded sweep
    up to *budget* runs, and `floor = budget` is certified.
    """
    n = code.n
    if isinstance(code, ClassicalCode):
        # Nonzero codewords: span of g, flagged by any nonzero coordinate.
        sides = [(code.g, gf2.eye(n))] if code.k else []
    else:
        # X-type errors live in ker(h_z) and are logical iff j_z·uᵀ != 0.
        sides = [(gf2.null_space(code.h_z), code.j_z),
                 (gf2.null_space(code.h_x), code.j_x)]
    try:
        exact_vals = []
        for basis, flag in sides:
            if flag.shape[0] == 0:
                continue
            val = _min_weight_flagged(basis, flag)
            if val is not None:
                exact_vals.append(val)
        if not exact_vals:
            return DistanceResult(d=None, floor=n)
        d = min(exact_vals)
        return DistanceResult(d=d, floor=d - 1)
    except SearchTooLarge:
        if budget is None:
            raise
    # Weight-bounded sweep fallback.
    if isinstance(code, ClassicalCode):
        hit = _sweep_bounded(n, budget, code.h, gf2.eye(n))
    else:
        hit = None
        for checks, flag in ((code.h_z, code.j_z), (code.h_x, code.j_x)):
            hit = _sweep_bounded(n, budget, checks, flag)
            if hit is not None:
                break
    if hit is not None:
        return DistanceResult(d=int(gf2.weight(hit)), floor=int(gf2.weight(hit)) - 1)
    return DistanceResult(d=None, floor=budget)


# ── local testability ───────────────────────────────────────────────────


def soundness(code: ClassicalCode) -> Optional[Fraction]:
    """Largest s with (1/r)·|H uᵀ| ≥ (s/n)·dist(u, C) for all u ∉ C.

    Exact rational from a full 2^n sweep (n ≤ cap).  None when the code has
    no checks (every word is a codeword, so the bound is vacuous).
    """
    r, n = code.h.shape
    if r == 0:
        return None
    if n > gf2.MIN_WEIGHT_KERNEL_CAP:
        raise SearchTooLarge(f"soundness sweep over 2^{n} refused")
    words = _codewords_packed(code)
    h_cols = _pack_rows(code.h.T)
    best: Optional[Fraction] = None
    for u in range(1, 1 << n):
        if u in words:
            continue
        syn = 0
        rem = u
        while rem:
            low = rem & -rem
            syn ^= h_cols[low.bit_length() - 1]
            rem ^= low
        dist_u = min((u ^ c).bit_count() for c in words)
        ratio = Fraction(n * syn.bit_count(), r * dist_u)
        if best is None or ratio < best:
            best = ratio
    return best


def _codewords_packed(code: ClassicalCode) -> set[int]:
    if code.k > gf2.MIN_WEIGHT_KERNEL_CAP:
        raise SearchTooLarge("codeword enumeration refused")
    masks = _pack_rows(code.g)
    words = {0}
    cur = 0
    gray_prev = 0
    for i in range(1, 1 << code.k):
        gray = i ^ (i >> 1)
        cur ^= masks[(gray ^ gray_prev).bit_length() - 1]
        gray_prev = gray
        words.add(cur)
    return words


# ── example constructors ────────────────────────────────────────────────


def repetition(n: int) -> ClassicalCode:
    """[n, 1, n] repetition code with chain checks (1 at i, i+1)."""
    h = gf2.zeros(n - 1, n)
    for i in range(n - 1):
        h[i, i] = h[i, i + 1] = 1
    g = np.ones((1, n), dtype=np.uint8)
    return ClassicalCode(h=h, g=g, n=n, k=1, d=n)


_HAMMING_P = gf2.bitmat([[0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]])


def hamming_743() -> ClassicalCode:
    """[7, 4, 3] Hamming code with standard-form generator (E_4 | P)."""
    g = np.concatenate([gf2.eye(4), _HAMMING_P], axis=1)
    h = np.concatenate([_HAMMING_P.T, gf2.eye(3)], axis=1)
    return ClassicalCode(h=h, g=g, n=7, k=4, d=3)


def steane() -> CssCode:
    """[[7, 1, 3]] code with X and Z checks both the Hamming check matrix."""
    h = hamming_743().h
    return css_from_checks(h, h, d=3)


def trivial_css() -> CssCode:
    """[[1, 1, 1]] single qubit with no checks."""
    return CssCode(
        h_x=gf2.zeros(0, 1), h_z=gf2.zeros(0, 1),
        j_x=gf2.eye(1), j_z=gf2.eye(1), n=1, k=1, d=1,
    )


def hypergraph_product(c1: ClassicalCode, c2: ClassicalCode) -> CssCode:
    """Hypergraph product of two classical codes.

    Qubits split into the (vertical) bit×bit sector of size n1·n2 followed
    by the (horizontal) check×check sector of size r1·r2, row-major:
        h_x = (h1 ⊗ E_n2 | E_r1 ⊗ h2ᵀ)
        h_z = (E_n1 ⊗ h2 | h1ᵀ ⊗ E_r2)
    """
    h1, h2 = c1.h, c2.h
    r1, n1 = h1.shape
    r2, n2 = h2.shape
    h_x = np.concatenate([gf2.kron(h1, gf2.eye(n2)), gf2.kron(gf2.eye(r1), h2.T)], axis=1)
    h_z = np.concatenate([gf2.kron(gf2.eye(n1), h2), gf2.kron(h1.T, gf2.eye(r2))], axis=1)
    return css_from_checks(h_x, h_z)


def rotated_css(code: CssCode) -> CssCode:
    """The code seen through a transversal-Hadamard layer (X and Z swapped).

    Measuring X-type logical factors reduces to pure-Z measurements on a
    composite target in which the affected block is rotated; the physical
    Hadamard layer is a frame relabeling outside this module's scope.
    """
    return CssCode(h_x=code.h_z, h_z=code.h_x, j_x=code.j_z, j_z=code.j_x,
                   n=code.n, k=code.k, d=code.d)


def direct_sum_css(a: CssCode, b: CssCode) -> CssCode:
    """Two CSS codes side by side as one composite block."""
    def stack(ma, mb):
        top = np.concatenate([ma, gf2.zeros(ma.shape[0], mb.shape[1])], axis=1)
        bot = np.concatenate([gf2.zeros(mb.shape[0], ma.shape[1]), mb], axis=1)
        return np.concatenate([top, bot])
    d = None
    if a.d is not None and b.d is not None:
        d = min(a.d, b.d)
    return CssCode(
        h_x=stack(a.h_x, b.h_x), h_z=stack(a.h_z, b.h_z),
        j_x=stack(a.j_x, b.j_x), j_z=stack(a.j_z, b.j_z),
        n=a.n + b.n, k=a.k + b.k, d=d,
    )


def surface_code_via_hgp(d: int) -> CssCode:
    """[[d² + (d−1)², 1, d]] surface code as HGP(rep_d, rep_d)."""
    if d % 2 == 0:
        raise ValueError("surface code distance must be odd")
    code = hypergraph_product(repetition(d), repetition(d))
    return replace(code, d=d)


# ── manifest I/O ────────────────────────────────────────────────────────
# Plain-text key/value blocks; matrices stored next to the manifest in the
# bit-exact text format from qsurg.gf2.


def save_css(code: CssCode, directory: str, name: str = "code") -> str:
    os.makedirs(directory, exist_ok=True)
    files = {"hx": code.h_x, "hz": code.h_z, "jx": code.j_x, "jz": code.j_z}
    lines = ["type=css", f"n={code.n}", f"k={code.k}"]
    if code.d is not None:
        lines.append(f"d={code.d}")
    for key, m in files.items():
        fname = f"{name}.{key}.txt"
        gf2.save_matrix(os.path.join(directory, fname), m)
        lines.append(f"{key}={fname}")
    path = os.path.join(directory, f"{name}.manifest")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def save_classical(code: ClassicalCode, directory: str, name: str = "code") -> str:
    os.makedirs(directory, exist_ok=True)
    lines = ["type=classical", f"n={code.n}", f"k={code.k}"]
    if code.d is not None:
        lines.append(f"d={code.d}")
    if code.soundness is not None:
        lines.append(f"soundness={code.soundness.numerator}/{code.soundness.denominator}")
    for key, m in (("h", code.h), ("g", code.g)):
        fname = f"{name}.{key}.txt"
        gf2.save_matrix(os.path.join(directory, fname), m)
        lines.append(f"{key}={fname}")
    path = os.path.join(directory, f"{name}.manifest")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def load_manifest(path: str):
    """Load a code manifest; returns a ClassicalCode or CssCode."""
    base = os.path.dirname(os.path.abspath(path))
    kv: dict[str, str] = {}
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or "=" not in line:
                continue
            key, val = line.split("=", 1)
            kv[key] = val
    mat = lambda key: gf2.load_matrix(os.path.join(base, kv[key]))
    n, k = int(kv["n"]), int(kv["k"])
    d = int(kv["d"]) if "d" in kv else None
    if kv["type"] == "css":
        return CssCode(h_x=mat("hx"), h_z=mat("hz"), j_x=mat("jx"), j_z=mat("jz"),
                       n=n, k=k, d=d)
    if kv["type"] == "classical":
        s = None
        if "soundness" in kv:
            num, den = kv["soundness"].split("/")
            s = Fraction(int(num), int(den))
        return ClassicalCode(h=mat("h"), g=mat("g"), n=n, k=k, d=d, soundness=s)
    raise ValueError(f"unknown manifest type {kv.get('type')!r}")

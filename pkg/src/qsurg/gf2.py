"""Dense GF(2) linear algebra on numpy uint8 arrays.

Every matrix in this package is a 2-D numpy array with entries in {0, 1}
(row-major, dtype uint8) and every vector is a 1-D array.  All arithmetic
is mod 2.  Elimination always picks the leftmost available pivot column and
the first available row, so echelon forms, kernels, right inverses and
solutions are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


class SearchTooLarge(Exception):
    """Raised when an exhaustive search would exceed its configured cap."""


# Exhaustive coset enumeration is allowed up to this kernel dimension.
MIN_WEIGHT_KERNEL_CAP = 24


def bitmat(data) -> np.ndarray:
    """Coerce nested lists / arrays to a 2-D uint8 matrix with entries in {0,1}."""
    m = np.atleast_2d(np.asarray(data, dtype=np.uint8)) & 1
    return m


def bitvec(data) -> np.ndarray:
    v = np.asarray(data, dtype=np.uint8).reshape(-1) & 1
    return v


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def mul(*ms) -> np.ndarray:
    """Product of matrices (or a trailing vector) over GF(2)."""
    acc = np.asarray(ms[0], dtype=np.int64)
    for m in ms[1:]:
        acc = acc @ np.asarray(m, dtype=np.int64)
        acc &= 1
    return acc.astype(np.uint8)


def weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


@dataclass(frozen=True)
class WeightProfile:
    """Maximum row and column Hamming weights of a matrix."""

    max_row_weight: int
    max_col_weight: int


def weight_profile(m: np.ndarray) -> WeightProfile:
    m = bitmat(m)
    if m.size == 0:
        return WeightProfile(0, 0)
    return WeightProfile(
        max_row_weight=int(m.sum(axis=1).max(initial=0)),
        max_col_weight=int(m.sum(axis=0).max(initial=0)),
    )


def row_echelon(m: np.ndarray, ncols: Optional[int] = None):
    """Reduced row-echelon form over GF(2).

    Pivots are searched left to right in the first *ncols* columns; row
    operations act on the full width, and entries above pivots are cleared
    as well (fully reduced form).

    Returns:
        (R, pivots): reduced matrix and the list of pivot column indices.
    """
    r = bitmat(m).copy()
    nrows, nc = r.shape
    if ncols is None:
        ncols = nc
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        sub = np.nonzero(r[prow:, col])[0]
        if sub.size == 0:
            continue
        piv = prow + int(sub[0])
        if piv != prow:
            r[[prow, piv]] = r[[piv, prow]]
        hits = np.nonzero(r[:, col])[0]
        for i in hits:
            if i != prow:
                r[i] ^= r[prow]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    return r, pivots


def rank(m: np.ndarray) -> int:
    """GF(2) rank by Gaussian elimination."""
    _, pivots = row_echelon(m)
    return len(pivots)


def row_basis(m: np.ndarray) -> np.ndarray:
    """Rows forming a basis of the row space, in echelon order."""
    r, pivots = row_echelon(m)
    return r[: len(pivots)].copy()


def null_space(m: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right kernel {x : m xᵀ = 0}.

    One basis vector per free column, in ascending free-column order.
    """
    m = bitmat(m)
    nc = m.shape[1]
    r, pivots = row_echelon(m)
    free = [c for c in range(nc) if c not in pivots]
    basis = zeros(len(free), nc)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for prow, pc in enumerate(pivots):
            basis[i, pc] = r[prow, fc]
    return basis


def left_null_space(m: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : x·m = 0}."""
    return null_space(bitmat(m).T)


def right_inverse(m: np.ndarray) -> Optional[np.ndarray]:
    """Right inverse M^r with M·M^r = identity, or None if rows are dependent.

    The inverse is supported on the leftmost pivot columns of M, which makes
    the choice deterministic; for a standard-form generator (E_k | P) this
    yields (E_k | 0)ᵀ.
    """
    m = bitmat(m)
    nrows, ncols = m.shape
    aug = np.concatenate([m, eye(nrows)], axis=1)
    r, pivots = row_echelon(aug, ncols=ncols)
    if len(pivots) < nrows:
        return None
    inv = zeros(ncols, nrows)
    for prow, pc in enumerate(pivots):
        inv[pc] = r[prow, ncols:]
    return inv


def inverse(m: np.ndarray) -> Optional[np.ndarray]:
    """Two-sided inverse of a square matrix, or None if singular."""
    m = bitmat(m)
    if m.shape[0] != m.shape[1]:
        return None
    return right_inverse(m)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product over GF(2)."""
    return (np.kron(bitmat(a), bitmat(b)) & 1).astype(np.uint8)


def vec(a: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization: vec(A)[j*rows + i] = A[i, j].

    The column-stacking choice is forced by the selector identity used
    throughout the deformed-code proofs,
        (e_mᵀ ⊗ E_n) · vec(U) = column m of U,
    which holds only when columns are stacked in order.
    """
    return bitmat(a).flatten(order="F")


def unvec(v: np.ndarray, rows: int) -> np.ndarray:
    """Inverse of :func:`vec`; the length of v must be a multiple of rows."""
    v = bitvec(v)
    if rows == 0:
        if v.size != 0:
            raise ValueError("cannot unvec a nonempty vector into 0 rows")
        return zeros(0, 0)
    if v.size % rows != 0:
        raise ValueError(f"length {v.size} not divisible by {rows} rows")
    return v.reshape((rows, v.size // rows), order="F").copy()


def solve_linear(
    a: np.ndarray,
    b: np.ndarray,
    mode: str = "any",
    kernel_cap: int = MIN_WEIGHT_KERNEL_CAP,
) -> Optional[np.ndarray]:
    """Solve a·xᵀ = bᵀ over GF(2).

    mode="any" returns one solution (or None when the system is
    inconsistent).  mode="min_weight" returns a minimum-Hamming-weight
    solution, found by exhaustively enumerating the solution coset; if the
    kernel dimension exceeds *kernel_cap* the search is refused with
    :class:`SearchTooLarge` rather than answered heuristically.
    """
    a = bitmat(a)
    b = bitvec(b)
    nrows, ncols = a.shape
    if b.size != nrows:
        raise ValueError(f"rhs length {b.size} != {nrows} rows")
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, pivots = row_echelon(aug, ncols=ncols)
    # Inconsistent iff some row reduces to (0 ... 0 | 1).
    lead = len(pivots)
    if np.any(r[lead:, ncols]):
        return None
    x0 = zeros(1, ncols)[0]
    for prow, pc in enumerate(pivots):
        x0[pc] = r[prow, ncols]
    if mode == "any":
        return x0
    if mode != "min_weight":
        raise ValueError(f"unknown mode {mode!r}")
    kern = null_space(a)
    dim = kern.shape[0]
    if dim > kernel_cap:
        raise SearchTooLarge(f"kernel dimension {dim} exceeds cap {kernel_cap}")
    # Gray-code walk over the coset x0 + span(kern), on packed integers.
    basis = [_pack(row) for row in kern]
    cur = _pack(x0)
    best, best_w = cur, cur.bit_count()
    gray_prev = 0
    for i in range(1, 1 << dim):
        gray = i ^ (i >> 1)
        cur ^= basis[(gray ^ gray_prev).bit_length() - 1]
        gray_prev = gray
        w = cur.bit_count()
        if w < best_w:
            best, best_w = cur, w
    return _unpack(best, ncols)


def _pack(v: np.ndarray) -> int:
    acc = 0
    for i in np.nonzero(v)[0]:
        acc |= 1 << int(i)
    return acc


def _unpack(bits: int, n: int) -> np.ndarray:
    v = zeros(1, n)[0]
    while bits:
        low = bits & -bits
        v[low.bit_length() - 1] = 1
        bits ^= low
    return v


def standard_form(g: np.ndarray):
    """Column-permute a full-row-rank generator matrix into (E_k | P) form.

    Returns:
        (g_std, perm): g_std = g[:, perm] with an identity in the first k
        columns.  Raises ValueError when rows are dependent.
    """
    g = bitmat(g)
    k, n = g.shape
    r, pivots = row_echelon(g)
    if len(pivots) < k:
        raise ValueError("generator rows are dependent; no standard form")
    rest = [c for c in range(n) if c not in pivots]
    perm = np.array(list(pivots) + rest, dtype=np.int64)
    return r[:, perm].copy(), perm


def is_standard_form(g: np.ndarray) -> bool:
    g = bitmat(g)
    k = g.shape[0]
    return g.shape[1] >= k and bool(np.array_equal(g[:, :k], eye(k)))


# ── matrix text format ──────────────────────────────────────────────────
# Line 1: "<rows> <cols>"; then one line of '0'/'1' characters per row.


def to_text(m: np.ndarray) -> str:
    m = bitmat(m)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines.extend("".join("1" if b else "0" for b in row) for row in m)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows, cols = (int(t) for t in lines[0].split())
    m = zeros(rows, cols)
    for i in range(rows):
        row = lines[1 + i].strip()
        if len(row) != cols:
            raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
        m[i] = [1 if ch == "1" else 0 for ch in row]
    return m


def save_matrix(path, m: np.ndarray) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(to_text(m))


def load_matrix(path) -> np.ndarray:
    with open(path, encoding="ascii") as fh:
        return from_text(fh.read())

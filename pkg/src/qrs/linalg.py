"""Gaussian elimination over F_2 and GF(2^k).

Matrices are ``numpy.uint8`` arrays. Entries of GF(2^k) matrices are field
elements in their packed polynomial-basis form (``0 <= e < 2^k``). Every
routine takes an optional ``field``; ``None`` means F_2.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from qrs.errors import DimensionError, NotInvertibleError

if TYPE_CHECKING:
    from qrs.galois import FieldContext


def as_matrix(rows, cols: int | None = None) -> np.ndarray:
    """Coerce ``rows`` to a 2-D uint8 array; ``cols`` fixes the width of an empty input."""
    m = np.array(rows, dtype=np.uint8)
    if m.ndim == 1:
        if m.size == 0 and cols is not None:
            return np.zeros((0, cols), dtype=np.uint8)
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {m.shape}")
    return m


def _scale(field: FieldContext | None, coeffs: np.ndarray, row: np.ndarray) -> np.ndarray:
    """Outer product ``coeffs[:, None] * row[None, :]`` over the field."""
    if field is None:
        return coeffs[:, None] & row[None, :]
    return field.mul_table[coeffs[:, None], row[None, :]]


def rref(m: np.ndarray, field: FieldContext | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Zero rows are dropped, so the result has exactly ``rank`` rows.
    """
    a = as_matrix(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        if field is not None and a[r, c] != 1:
            a[r] = field.mul_table[field.inv_table[a[r, c]], a[r]]
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] ^= _scale(field, a[others, c], a[r])
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: np.ndarray, field: FieldContext | None = None) -> int:
    return len(rref(m, field)[1])


def nullspace(m: np.ndarray, field: FieldContext | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : m @ x = 0}``, in reduced row-echelon form."""
    m = as_matrix(m)
    cols = m.shape[1]
    r, pivots = rref(m, field)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        # x_pivot = -r[row, f] * x_f, and -1 = 1 in characteristic 2
        for row, p in enumerate(pivots):
            basis[i, p] = r[row, f]
    return rref(basis, field)[0] if len(free) else basis


def matmul(a: np.ndarray, b: np.ndarray, field: FieldContext | None = None) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if field is None:
        return ((a.astype(np.int64) @ b.astype(np.int64)) & 1).astype(np.uint8)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if a.shape[-1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    prod = field.mul_table[a[:, :, None], b[None, :, :]]
    out = np.bitwise_xor.reduce(prod, axis=1) if a.shape[1] else np.zeros((a.shape[0], b.shape[1]), np.uint8)
    return out[:, 0] if vec else out


def inverse(m: np.ndarray, field: FieldContext | None = None) -> np.ndarray:
    m = as_matrix(m)
    n, cols = m.shape
    if n != cols:
        raise DimensionError(f"cannot invert a {n}x{cols} matrix")
    aug = np.concatenate([m, np.eye(n, dtype=np.uint8)], axis=1)
    r, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise NotInvertibleError("matrix is singular")
    return r[:, n:].copy()


def solve(a: np.ndarray, b: np.ndarray, field: FieldContext | None = None) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x = b`` (free variables set to 0), or ``None``."""
    a = as_matrix(a)
    b = np.asarray(b, dtype=np.uint8).reshape(-1, 1)
    rows, cols = a.shape
    r, pivots = rref(np.concatenate([a, b], axis=1), field)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = r[row, cols]
    return x


def row_space_equal(a: np.ndarray, b: np.ndarray, field: FieldContext | None = None) -> bool:
    ra, rb = rref(a, field)[0], rref(b, field)[0]
    return ra.shape == rb.shape and bool(np.array_equal(ra, rb))


def in_row_space(v: np.ndarray, m: np.ndarray, field: FieldContext | None = None) -> bool:
    m = as_matrix(m)
    v = np.asarray(v, dtype=np.uint8).reshape(1, -1)
    return rank(np.concatenate([m, v]), field) == rank(m, field)


def reduce_against(v: np.ndarray, r: np.ndarray, pivots: list[int], field: FieldContext | None = None) -> np.ndarray:
    """Reduce ``v`` modulo the row space of an RREF matrix ``r`` (zeroes the pivot columns)."""
    v = np.asarray(v, dtype=np.uint8).copy()
    for row, p in enumerate(pivots):
        c = v[p]
        if c:
            v ^= _scale(field, np.array([c], dtype=np.uint8), r[row])[0]
    return v

"""Finite-field DFT of length ``N = 2^k - 1`` and binary expansion of linear maps.

Frequency ``i`` corresponds to evaluation at ``alpha^i`` for the context's
fixed primitive element. Because ``N`` is odd, ``N * 1 = 1`` in characteristic
two and the inverse transform needs no scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from qrs import linalg
from qrs.errors import ContextMismatchError, DimensionError, ParameterError
from qrs.galois import Basis, FieldContext


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """A matrix with entries in one GF(2^k) context (packed elements)."""

    ctx: FieldContext
    entries: np.ndarray

    def __post_init__(self) -> None:
        e = linalg.as_matrix(self.entries)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def T(self) -> FieldMatrix:
        return FieldMatrix(self.ctx, self.entries.T.copy())

    def __matmul__(self, other):
        if isinstance(other, FieldMatrix):
            if other.ctx != self.ctx:
                raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")
            return FieldMatrix(self.ctx, linalg.matmul(self.entries, other.entries, self.ctx))
        return linalg.matmul(self.entries, np.asarray(other, dtype=np.uint8), self.ctx)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldMatrix)
            and other.ctx == self.ctx
            and np.array_equal(other.entries, self.entries)
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.entries.tobytes()))

    @classmethod
    def identity(cls, ctx: FieldContext, n: int) -> FieldMatrix:
        return cls(ctx, np.eye(n, dtype=np.uint8))

    def inverse(self) -> FieldMatrix:
        return FieldMatrix(self.ctx, linalg.inverse(self.entries, self.ctx))


def _power_matrix(ctx: FieldContext, sign: int) -> FieldMatrix:
    n = ctx.n
    i = np.arange(n)
    return FieldMatrix(ctx, ctx.exp_table[(sign * np.outer(i, i)) % n].astype(np.uint8))


def dft_matrix(ctx: FieldContext) -> FieldMatrix:
    """``(alpha^(ij))`` for ``i, j = 0..N-1``."""
    return _power_matrix(ctx, 1)


def idft_matrix(ctx: FieldContext) -> FieldMatrix:
    """``(alpha^(-ij))``, the exact inverse of :func:`dft_matrix`."""
    return _power_matrix(ctx, -1)


def spectrum(v, ctx: FieldContext) -> np.ndarray:
    """DFT of a single vector (or of each row of a 2-D array)."""
    v = np.asarray(v, dtype=np.uint8)
    f = dft_matrix(ctx).entries
    if v.ndim == 1:
        return linalg.matmul(f, v, ctx)
    return linalg.matmul(v, f.T, ctx)


def binary_expand_matrix(m: FieldMatrix, basis: Basis) -> np.ndarray:
    """The ``(k*rows) x (k*cols)`` F_2 matrix of ``m`` acting on symbol-major coordinates.

    Block ``(i, j)`` is the matrix of multiplication by ``m[i, j]``: its column
    ``c`` holds the coordinates of ``m[i, j] * b_c``.
    """
    if m.ctx != basis.ctx:
        raise ContextMismatchError(f"matrix over {m.ctx} but basis over {basis.ctx}")
    ctx, k = m.ctx, m.ctx.k
    rows, cols = m.shape
    table = basis.coord_table()
    b = np.array(basis.elements, dtype=np.int64)
    # prod[i, j, c] = m[i, j] * b_c ; coords -> [i, j, c, r]
    prod = ctx.mul_table[m.entries[:, :, None].astype(np.int64), b[None, None, :]]
    bits = table[prod]
    return bits.transpose(0, 3, 1, 2).reshape(rows * k, cols * k).astype(np.uint8)


@dataclass(frozen=True)
class FrequencyLayout:
    """Partition of the ``N`` frequencies used by the quantum RS encoder and syndrome circuit.

    ``message_freqs`` carry logical input, ``zero_freqs`` are the zeros of the
    dual code (bit-flip syndrome block), ``h_freqs`` span the code itself
    (Hadamard / phase-flip syndrome block).
    """

    k: int
    n_symbols: int
    dimension: int

    def __post_init__(self) -> None:
        n, kk = self.n_symbols, self.dimension
        if not 1 <= kk or 2 * kk >= n:
            raise ParameterError(f"need 1 <= K < N/2, got N={n}, K={kk}")

    @cached_property
    def message_freqs(self) -> tuple[int, ...]:
        n, kk = self.n_symbols, self.dimension
        return (0,) + tuple(range(kk + 1, n - kk))

    @cached_property
    def zero_freqs(self) -> tuple[int, ...]:
        return tuple(range(1, self.dimension + 1))

    @cached_property
    def h_freqs(self) -> tuple[int, ...]:
        n = self.n_symbols
        return tuple(range(n - self.dimension, n))

    def qubit_of(self, freq: int, bit: int) -> int:
        if not 0 <= freq < self.n_symbols or not 0 <= bit < self.k:
            raise DimensionError(f"no qubit for frequency {freq}, bit {bit}")
        return freq * self.k + bit

    def qubits(self, freqs) -> list[int]:
        return [self.qubit_of(f, b) for f in freqs for b in range(self.k)]

    @cached_property
    def message_qubits(self) -> tuple[int, ...]:
        return tuple(self.qubits(self.message_freqs))

    @cached_property
    def zero_qubits(self) -> tuple[int, ...]:
        return tuple(self.qubits(self.zero_freqs))

    @cached_property
    def h_qubits(self) -> tuple[int, ...]:
        return tuple(self.qubits(self.h_freqs))

    @cached_property
    def phase_syndrome_qubits(self) -> tuple[int, ...]:
        """``h_freqs`` qubits paired with ``zero_qubits``: zero frequency ``i`` pairs with ``N - i``.

        With a self-dual basis a Z error with spectrum component at ``i``
        shows up at frequency ``N - i`` after the forward DFT, so this
        ordering makes the phase syndrome use the same check rows as the
        bit-flip syndrome.
        """
        return tuple(self.qubits(self.n_symbols - f for f in self.zero_freqs))


def rs_layout(ctx: FieldContext, delta: int) -> FrequencyLayout:
    return FrequencyLayout(ctx.k, ctx.n, ctx.n - delta + 1)

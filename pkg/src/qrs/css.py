"""CSS codes from weakly self-dual binary codes, and quantum Reed-Solomon codes.

A weakly self-dual binary code ``C`` (``C <= C^perp``) gives a quantum code
whose X and Z stabilizers are both the rows of a generator matrix of ``C``.
Logical X operators are X-strings on a transversal of ``C^perp / C``;
logical Z operators are solved for so that ``X_i`` and ``Z_j`` anticommute
exactly when ``i == j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from qrs import linalg
from qrs.codes import (
    LinearCode,
    binary_expansion,
    combine_rows,
    complement_basis,
    dual_code,
    is_weakly_self_dual,
    min_distance,
    reed_solomon,
)
from qrs.errors import (
    CapabilityError,
    DimensionError,
    DistanceBudgetError,
    NotSelfOrthogonalError,
    ParameterError,
    UncorrectableError,
)
from qrs.galois import Basis, FieldContext, find_self_dual_basis, make_field
from qrs.spectral import FrequencyLayout, binary_expand_matrix, dft_matrix, idft_matrix, rs_layout

DECODER_TABLE_BUDGET = 10**6
_CHARS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True, eq=False)
class PauliOperator:
    """A signed Pauli string ``sign * P_0 (x) ... (x) P_{n-1}``.

    Position ``q`` is X if ``x[q] = 1, z[q] = 0``, Z if ``x[q] = 0, z[q] = 1``
    and Y (the Hermitian ``iXZ``) if both are set.
    """

    x: np.ndarray
    z: np.ndarray
    sign: int = 1

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=np.uint8).ravel() & 1
        z = np.asarray(self.z, dtype=np.uint8).ravel() & 1
        if x.shape != z.shape:
            raise DimensionError(f"x part has {x.size} qubits, z part {z.size}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.x.size

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @classmethod
    def from_string(cls, s: str) -> PauliOperator:
        """Parse ``"+XIZY"``, ``"-ZZ"`` or an unsigned ``"XYZ"``."""
        sign = 1
        if s[:1] in "+-":
            sign = -1 if s[0] == "-" else 1
            s = s[1:]
        try:
            x = [c in "XY" for c in s.upper()]
            z = [c in "ZY" for c in s.upper()]
            if any(c not in "IXYZ" for c in s.upper()):
                raise ValueError
        except ValueError:
            raise ValueError(f"not a Pauli string: {s!r}") from None
        return cls(np.array(x, np.uint8), np.array(z, np.uint8), sign)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> PauliOperator:
        s = ["I"] * n
        s[qubit] = kind
        return cls.from_string("".join(s))

    @classmethod
    def x_type(cls, bits, sign: int = 1) -> PauliOperator:
        bits = np.asarray(bits, np.uint8)
        return cls(bits, np.zeros_like(bits), sign)

    @classmethod
    def z_type(cls, bits, sign: int = 1) -> PauliOperator:
        bits = np.asarray(bits, np.uint8)
        return cls(np.zeros_like(bits), bits, sign)

    @property
    def weight(self) -> int:
        return int((self.x | self.z).sum())

    @property
    def support(self) -> list[int]:
        return [int(q) for q in np.flatnonzero(self.x | self.z)]

    def commutes_with(self, other: PauliOperator) -> bool:
        if other.n != self.n:
            raise DimensionError(f"{self.n} vs {other.n} qubits")
        return not (int(self.x @ other.z) + int(self.z @ other.x)) % 2

    def compose(self, other: PauliOperator) -> PauliOperator:
        """Product with the overall phase dropped (sign reset to +1)."""
        if other.n != self.n:
            raise DimensionError(f"{self.n} vs {other.n} qubits")
        return PauliOperator(self.x ^ other.x, self.z ^ other.z)

    def padded(self, n: int) -> PauliOperator:
        """The same operator on ``n >= self.n`` qubits (identity on the extra ones)."""
        pad = n - self.n
        if pad < 0:
            raise DimensionError(f"cannot shrink {self.n} qubits to {n}")
        return PauliOperator(np.pad(self.x, (0, pad)), np.pad(self.z, (0, pad)), self.sign)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.x, self.z, -self.sign)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PauliOperator)
            and other.sign == self.sign
            and np.array_equal(other.x, self.x)
            and np.array_equal(other.z, self.z)
        )

    def __hash__(self) -> int:
        return hash((self.x.tobytes(), self.z.tobytes(), self.sign))

    def __str__(self) -> str:
        body = "".join(_CHARS[int(a), int(b)] for a, b in zip(self.x, self.z))
        return ("+" if self.sign > 0 else "-") + body

    __repr__ = __str__


@dataclass(frozen=True)
class RsData:
    """Classical data behind a quantum Reed-Solomon code."""

    field: FieldContext
    delta: int
    basis: Basis
    classical: LinearCode
    layout: FrequencyLayout

    @property
    def n_symbols(self) -> int:
        return self.field.n

    @property
    def dimension(self) -> int:
        return self.classical.dimension


@dataclass(frozen=True, eq=False)
class QuantumCssCode:
    """A CSS code with identical X and Z stabilizer matrices.

    Attributes:
        binary_code: The weakly self-dual binary code ``C``.
        stabilizers: Generator rows of ``C`` used for both stabilizer types
            and for the classical syndromes.
        transversal: Basis of ``C^perp`` modulo ``C``; logical X operator
            ``j`` is the X-string of row ``j``.
        logical_z_rows: Z-strings of the logical Z operators.
        distance_bound: Guaranteed lower bound on the distance, if known.
        rs: Spectral data when the code is a quantum Reed-Solomon code.
    """

    binary_code: LinearCode
    stabilizers: np.ndarray
    transversal: np.ndarray
    logical_z_rows: np.ndarray
    distance_bound: int | None = None
    rs: RsData | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.binary_code.length

    @property
    def k_logical(self) -> int:
        return self.n - 2 * self.binary_code.dimension

    @property
    def x_stabilizers(self) -> np.ndarray:
        return self.stabilizers

    @property
    def z_stabilizers(self) -> np.ndarray:
        return self.stabilizers

    @cached_property
    def logical_x(self) -> tuple[PauliOperator, ...]:
        return tuple(PauliOperator.x_type(w) for w in self.transversal)

    @cached_property
    def logical_z(self) -> tuple[PauliOperator, ...]:
        return tuple(PauliOperator.z_type(z) for z in self.logical_z_rows)

    def stabilizer_generators(self) -> list[PauliOperator]:
        """All ``2 * dim C`` generators: X-type rows first, then Z-type rows."""
        return [PauliOperator.x_type(g) for g in self.stabilizers] + [
            PauliOperator.z_type(g) for g in self.stabilizers
        ]

    def coset_rep(self, j: int) -> np.ndarray:
        """``w_j``: bit ``i`` of ``j`` selects transversal row ``i``."""
        if not 0 <= j < 1 << self.k_logical:
            raise IndexError(f"logical index {j} out of range")
        return combine_rows(self.transversal, j)

    @cached_property
    def coset_reps(self) -> np.ndarray:
        if self.k_logical > 20:
            raise DistanceBudgetError(f"2^{self.k_logical} coset representatives is too many to list")
        return np.array([self.coset_rep(j) for j in range(1 << self.k_logical)], dtype=np.uint8)

    @cached_property
    def dual_code(self) -> LinearCode:
        return dual_code(self.binary_code)

    @cached_property
    def distance_exact(self) -> int | None:
        """Minimum distance of ``C^perp`` when it is small enough to enumerate, else ``None``."""
        try:
            return min_distance(self.dual_code)
        except DistanceBudgetError:
            return None

    @property
    def distance(self) -> int | None:
        return self.distance_exact if self.distance_exact is not None else self.distance_bound

    def in_stabilizer_group(self, p: PauliOperator) -> bool:
        """Whether ``p`` equals a stabilizer element up to phase."""
        if p.n != self.n:
            raise DimensionError(f"{p.n} vs {self.n} qubits")
        return linalg.in_row_space(p.x, self.stabilizers) and linalg.in_row_space(p.z, self.stabilizers)

    def parameters(self) -> str:
        d = self.distance_exact
        if d is not None:
            return f"[[{self.n},{self.k_logical},{d}]]"
        if self.distance_bound is not None:
            return f"[[{self.n},{self.k_logical},>={self.distance_bound}]]"
        return f"[[{self.n},{self.k_logical}]]"

    def to_text(self) -> str:
        """Parameters line, then one ``X``/``Z`` line per stabilizer and ``LX``/``LZ`` per logical."""
        lines = [self.parameters()]
        for g in self.stabilizers:
            lines.append("X " + "".join("X" if b else "I" for b in g))
        for g in self.stabilizers:
            lines.append("Z " + "".join("Z" if b else "I" for b in g))
        for w in self.transversal:
            lines.append("LX " + "".join("X" if b else "I" for b in w))
        for z in self.logical_z_rows:
            lines.append("LZ " + "".join("Z" if b else "I" for b in z))
        return "\n".join(lines) + "\n"


def _solve_logical_z(cbin: LinearCode, dual: LinearCode, transversal: np.ndarray) -> np.ndarray:
    """Z-strings ``z_j`` in ``C^perp`` with ``w_i . z_j = delta_ij``, reduced modulo ``C``."""
    d = dual.generator
    pairing = linalg.matmul(transversal, d.T)
    sub_pivots = linalg.rref(cbin.generator)[1]
    out = []
    for j in range(len(transversal)):
        target = np.zeros(len(transversal), np.uint8)
        target[j] = 1
        y = linalg.solve(pairing, target)
        if y is None:
            raise AssertionError("transversal pairing is degenerate")
        z = linalg.matmul(y[None, :], d)[0]
        out.append(linalg.reduce_against(z, cbin.generator, sub_pivots))
    return np.array(out, dtype=np.uint8).reshape(len(transversal), cbin.length)


def build_css(
    cbin: LinearCode,
    *,
    stabilizers: np.ndarray | None = None,
    transversal: np.ndarray | None = None,
    distance_bound: int | None = None,
    rs: RsData | None = None,
) -> QuantumCssCode:
    """CSS code of a weakly self-dual binary code.

    Args:
        cbin: The binary code ``C``; must satisfy ``C <= C^perp`` and be nonzero.
        stabilizers: Optional alternative generator matrix of ``C`` (defaults
            to its RREF generator). Its row order fixes the syndrome bit order.
        transversal: Optional basis of ``C^perp`` modulo ``C`` (defaults to
            the row-echelon complement basis).
        distance_bound: Known lower bound on the distance.
        rs: Spectral metadata, attached by :func:`build_quantum_rs`.
    """
    if not cbin.is_binary:
        raise ParameterError("build_css needs a binary code")
    if cbin.is_zero:
        raise ParameterError("zero code has no stabilizers")
    if not is_weakly_self_dual(cbin):
        raise NotSelfOrthogonalError(f"{cbin!r} is not contained in its dual")
    dual = dual_code(cbin)
    if stabilizers is None:
        stabilizers = cbin.generator
    else:
        stabilizers = linalg.as_matrix(stabilizers, cbin.length)
        if len(stabilizers) != cbin.dimension or not linalg.row_space_equal(stabilizers, cbin.generator):
            raise ParameterError("stabilizer rows must be a basis of the code")
    if transversal is None:
        transversal = complement_basis(cbin, dual)
    else:
        transversal = linalg.as_matrix(transversal, cbin.length)
        m = cbin.length - 2 * cbin.dimension
        stacked = np.concatenate([cbin.generator, transversal])
        if len(transversal) != m or linalg.rank(stacked) != dual.dimension or not all(w in dual for w in transversal):
            raise ParameterError("transversal must be a basis of C^perp modulo C")
    stabilizers = np.array(stabilizers, dtype=np.uint8)
    transversal = np.array(transversal, dtype=np.uint8)
    logical_z = _solve_logical_z(cbin, dual, transversal)
    for a in (stabilizers, transversal, logical_z):
        a.setflags(write=False)
    return QuantumCssCode(cbin, stabilizers, transversal, logical_z, distance_bound, rs)


def build_quantum_rs(k: int, delta: int) -> QuantumCssCode:
    """The ``[[kN, k(N-2K), d >= K+1]]`` quantum RS code from ``RS(delta)`` over GF(2^k).

    Stabilizer rows and logical X operators are taken from the binary DFT
    matrices so that they match what the encoder and syndrome circuits
    produce: stabilizer row ``(i, j)`` is row ``(i, j)`` of the expanded DFT
    for zero frequency ``i``, and logical X ``m`` is the column of the
    expanded inverse DFT at message qubit ``m``.
    """
    ctx = make_field(k)
    classical = reed_solomon(ctx, delta)
    basis = find_self_dual_basis(ctx)
    cbin = binary_expansion(classical, basis)
    layout = rs_layout(ctx, delta)
    fwd = binary_expand_matrix(dft_matrix(ctx), basis)
    inv = binary_expand_matrix(idft_matrix(ctx), basis)
    stabilizers = fwd[list(layout.zero_qubits)]
    transversal = inv[:, list(layout.message_qubits)].T
    rs = RsData(ctx, delta, basis, classical, layout)
    return build_css(
        cbin,
        stabilizers=stabilizers,
        transversal=transversal,
        distance_bound=classical.dimension + 1,
        rs=rs,
    )


def classical_syndrome(code: QuantumCssCode, error: PauliOperator) -> tuple[np.ndarray, np.ndarray]:
    """``(G x(E), G z(E))``: bit-flip and phase-flip syndromes of a Pauli error."""
    if error.n != code.n:
        raise DimensionError(f"error acts on {error.n} qubits, code has {code.n}")
    g = code.stabilizers
    return linalg.matmul(g, error.x), linalg.matmul(g, error.z)


def _key(s_x, s_z) -> tuple[bytes, bytes]:
    return np.asarray(s_x, np.uint8).tobytes(), np.asarray(s_z, np.uint8).tobytes()


@dataclass(frozen=True, eq=False)
class DecoderTable:
    """Minimum-weight lookup decoder for errors of weight at most ``t``."""

    code: QuantumCssCode
    t: int
    entries: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.entries)


def max_correctable(code: QuantumCssCode) -> int:
    d = code.distance
    if d is None:
        raise CapabilityError("code distance unknown")
    return (d - 1) // 2


def build_decoder_table(code: QuantumCssCode, t: int | None = None) -> DecoderTable:
    """Map every syndrome of a weight-``<= t`` Pauli to a minimum-weight error.

    ``t`` defaults to ``floor((d - 1) / 2)`` with ``d`` the exact distance when
    it could be enumerated, else the guaranteed bound.
    """
    limit = max_correctable(code)
    if t is None:
        t = limit
    if t < 0 or t > limit:
        raise CapabilityError(f"t={t} exceeds floor((d-1)/2) = {limit} for {code.parameters()}")
    n = code.n
    size = sum(comb(n, w) * 3**w for w in range(t + 1))
    if size > DECODER_TABLE_BUDGET:
        raise CapabilityError(f"table would hold {size} errors (budget {DECODER_TABLE_BUDGET})")
    entries: dict = {}
    for w in range(t + 1):
        for qubits in itertools.combinations(range(n), w):
            for kinds in itertools.product("XYZ", repeat=w):
                x = np.zeros(n, np.uint8)
                z = np.zeros(n, np.uint8)
                for q, kind in zip(qubits, kinds):
                    x[q] = kind in "XY"
                    z[q] = kind in "ZY"
                err = PauliOperator(x, z)
                entries.setdefault(_key(*classical_syndrome(code, err)), err)
    return DecoderTable(code, t, entries)


def decode(table: DecoderTable, s_x, s_z) -> PauliOperator:
    """The table's correction for a syndrome pair.

    Raises:
        UncorrectableError: the syndrome is nonzero but no weight-``<= t`` error produces it.
    """
    s_x = np.asarray(s_x, np.uint8)
    s_z = np.asarray(s_z, np.uint8)
    if not s_x.any() and not s_z.any():
        return PauliOperator.identity(table.code.n)
    try:
        return table.entries[_key(s_x, s_z)]
    except KeyError:
        raise UncorrectableError(s_x, s_z) from None

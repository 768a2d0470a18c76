"""Linear codes over GF(2^k) and F_2.

Covers Reed-Solomon construction, Euclidean duals, binary expansion with
respect to an F_2-basis, self-orthogonality, exhaustive minimum distance and
coset representatives. Binary expansions are symbol-major: the ``k`` bits of
symbol ``i`` occupy positions ``i*k .. i*k + k - 1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from qrs import linalg
from qrs.errors import (
    ContainmentError,
    ContextMismatchError,
    DimensionError,
    DistanceBudgetError,
    ParameterError,
)
from qrs.galois import Basis, FieldContext, dual_basis, make_field

DISTANCE_BUDGET = 1 << 24

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear ``[N, K]`` code given by a generator matrix.

    The generator is brought to reduced row-echelon form (dependent rows are
    dropped) on construction, so two codes are equal iff their generators are.

    Attributes:
        field: The symbol field, or ``None`` for binary codes.
        generator: ``K x N`` uint8 matrix in RREF.
        designed_distance: Designed distance (Reed-Solomon codes only).
    """

    field: FieldContext | None
    generator: np.ndarray
    designed_distance: int | None = None

    def __post_init__(self) -> None:
        g = linalg.as_matrix(self.generator)
        limit = 2 if self.field is None else self.field.order
        if g.size and int(g.max()) >= limit:
            raise ValueError(f"generator entries must be < {limit}")
        g = linalg.rref(g, self.field)[0]
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)

    @classmethod
    def zero(cls, length: int, field: FieldContext | None = None) -> LinearCode:
        return cls(field, np.zeros((0, length), dtype=np.uint8))

    @classmethod
    def full(cls, length: int, field: FieldContext | None = None) -> LinearCode:
        return cls(field, np.eye(length, dtype=np.uint8))

    @property
    def length(self) -> int:
        return self.generator.shape[1]

    @property
    def dimension(self) -> int:
        return self.generator.shape[0]

    @property
    def is_binary(self) -> bool:
        return self.field is None

    @property
    def q(self) -> int:
        return 2 if self.field is None else self.field.order

    @property
    def is_zero(self) -> bool:
        return self.dimension == 0

    def __len__(self) -> int:
        return self.q**self.dimension

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearCode)
            and other.field == self.field
            and np.array_equal(other.generator, self.generator)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.generator.tobytes(), self.generator.shape))

    def __contains__(self, word) -> bool:
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.length,):
            return False
        return linalg.in_row_space(word, self.generator, self.field)

    def encode(self, message) -> np.ndarray:
        return linalg.matmul(np.asarray(message, dtype=np.uint8).reshape(1, -1), self.generator, self.field)[0]

    def codewords(self) -> Iterator[np.ndarray]:
        """All ``q^K`` codewords, in base-``q`` counting order of the message."""
        for msg in itertools.product(range(self.q), repeat=self.dimension):
            yield self.encode(msg[::-1]) if self.dimension else np.zeros(self.length, dtype=np.uint8)

    def __repr__(self) -> str:
        where = "F_2" if self.field is None else f"GF({self.field.order})"
        return f"LinearCode([{self.length},{self.dimension}] over {where})"


def _check_same_field(a: LinearCode, b: LinearCode) -> None:
    if a.field != b.field:
        raise ContextMismatchError(f"{a!r} and {b!r} are over different fields")
    if a.length != b.length:
        raise DimensionError(f"lengths differ: {a.length} vs {b.length}")


def rs_generator_polynomial(field: FieldContext, delta: int) -> list[int]:
    """Coefficients (low degree first) of ``prod_{i=0}^{delta-2} (x - alpha^i)``."""
    g = [1]
    for i in range(delta - 1):
        root = field.alpha_pow(i)
        shifted = [0] + g
        for j, c in enumerate(g):
            shifted[j] ^= field.mul(root, c)
        g = shifted
    return g


def reed_solomon(field: FieldContext, delta: int) -> LinearCode:
    """Narrow-sense RS code of length ``N = 2^k - 1`` with designed distance ``delta``.

    Only the weakly self-dual range ``N/2 + 1 < delta <= N`` is accepted.
    """
    n = field.n
    if not (2 * delta > n + 2 and delta <= n):
        raise ParameterError(
            f"delta={delta} not admissible for N={n}: need delta > N/2+1 = {n / 2 + 1:g} and delta <= N"
        )
    g = rs_generator_polynomial(field, delta)
    k_dim = n - delta + 1
    rows = np.zeros((k_dim, n), dtype=np.uint8)
    for j in range(k_dim):
        rows[j, j : j + len(g)] = g
    return LinearCode(field, rows, designed_distance=delta)


def dual_code(code: LinearCode) -> LinearCode:
    """Euclidean dual ``{y : sum_i x_i y_i = 0 for all x in code}``."""
    if code.dimension == 0:
        return LinearCode.full(code.length, code.field)
    return LinearCode(code.field, linalg.nullspace(code.generator, code.field))


def expand_vector(v, basis: Basis) -> np.ndarray:
    """Symbol-major bit expansion of a GF(2^k) vector in coordinates of ``basis``."""
    v = np.asarray(v, dtype=np.int64)
    return basis.coord_table()[v].reshape(*v.shape[:-1], -1)


def collapse_vector(bits, basis: Basis) -> np.ndarray:
    """Inverse of :func:`expand_vector`."""
    bits = np.asarray(bits, dtype=np.int64)
    k = basis.ctx.k
    if bits.shape[-1] % k:
        raise DimensionError(f"bit length {bits.shape[-1]} is not a multiple of k={k}")
    blocks = bits.reshape(*bits.shape[:-1], -1, k)
    packed = (blocks << np.arange(k)).sum(-1)
    return basis._from_packed[packed].astype(np.uint8)


def binary_expansion(code: LinearCode, basis: Basis) -> LinearCode:
    """The binary ``[kN, kK]`` image of ``code`` under coordinate expansion in ``basis``."""
    if code.field is None:
        raise ContextMismatchError("binary expansion needs a code over GF(2^k)")
    if code.field != basis.ctx:
        raise ContextMismatchError(f"code over {code.field} but basis over {basis.ctx}")
    ctx = code.field
    k, n = ctx.k, code.length
    rows = np.zeros((code.dimension * k, n * k), dtype=np.uint8)
    for r, g in enumerate(code.generator):
        for j, b in enumerate(basis.elements):
            rows[r * k + j] = expand_vector(ctx.mul_table[b, g], basis)
    return LinearCode(None, rows if len(rows) else np.zeros((0, n * k), dtype=np.uint8))


def is_weakly_self_dual(code: LinearCode) -> bool:
    """``G G^T = 0`` over the code's field, i.e. ``C`` is contained in its dual."""
    g = code.generator
    return not linalg.matmul(g, g.T, code.field).any()


def min_distance(code: LinearCode, budget: int = DISTANCE_BUDGET) -> int:
    """Exact minimum Hamming weight over the nonzero codewords.

    The zero code has no nonzero words; it reports 0 (check ``code.is_zero``).

    Raises:
        DistanceBudgetError: if the code has more than ``budget`` codewords.
    """
    if code.is_zero:
        return 0
    if code.q**code.dimension > budget:
        raise DistanceBudgetError(
            f"{code!r} has {code.q}^{code.dimension} codewords, over the budget of {budget}"
        )
    if code.is_binary:
        return _min_weight_binary(code.generator)
    return _min_weight_qary(code.generator, code.field)


def _min_weight_binary(g: np.ndarray) -> int:
    packed = np.packbits(g, axis=1)
    k = len(packed)
    low = min(k, 16)
    table = np.zeros((1 << low, packed.shape[1]), dtype=np.uint8)
    for i in range(low):
        table[1 << i : 2 << i] = table[: 1 << i] ^ packed[i]
    weights = _POPCOUNT8[table].sum(axis=1)
    best = int(weights[1:].min()) if len(weights) > 1 else g.shape[1] + 1
    offset = np.zeros(packed.shape[1], dtype=np.uint8)
    # walk the high rows in Gray-code order so each step is one XOR
    for step in range(1, 1 << (k - low)):
        offset ^= packed[low + (step & -step).bit_length() - 1]
        best = min(best, int(_POPCOUNT8[table ^ offset].sum(axis=1).min()))
    return best


def _min_weight_qary(g: np.ndarray, field: FieldContext) -> int:
    q = field.order
    k = len(g)
    low = 1
    while low < k and q ** (low + 1) <= 1 << 16:
        low += 1
    mul = field.mul_table
    table = np.zeros((1, g.shape[1]), dtype=np.uint8)
    for i in range(low):
        table = np.concatenate([table ^ mul[c, g[i]] for c in range(q)])
    best = int((table[1:] != 0).sum(axis=1).min()) if len(table) > 1 else g.shape[1] + 1
    for coeffs in itertools.product(range(q), repeat=k - low):
        if not any(coeffs):
            continue
        offset = np.zeros(g.shape[1], dtype=np.uint8)
        for c, row in zip(coeffs, g[low:]):
            offset ^= mul[c, row]
        best = min(best, int(((table ^ offset) != 0).sum(axis=1).min()))
    return best


def contains_code(sup: LinearCode, sub: LinearCode) -> bool:
    """Whether the row space of ``sub`` lies inside that of ``sup``."""
    _check_same_field(sup, sub)
    if sub.is_zero:
        return True
    stacked = np.concatenate([sup.generator, sub.generator])
    return linalg.rank(stacked, sup.field) == sup.dimension


def complement_basis(sub: LinearCode, sup: LinearCode) -> np.ndarray:
    """Rows spanning ``sup`` modulo ``sub``.

    The rows of ``sup``'s RREF generator are reduced, in order, against the
    span of ``sub`` plus the complement rows found so far; each nonzero
    remainder is kept. All kept rows vanish on the pivot columns of ``sub``.
    """
    _check_same_field(sub, sup)
    if not contains_code(sup, sub):
        raise ContainmentError(f"{sub!r} is not contained in {sup!r}")
    field = sub.field
    span, pivots = sub.generator.copy(), list(linalg.rref(sub.generator, field)[1])
    out = []
    for row in sup.generator:
        rem = linalg.reduce_against(row, span, pivots, field)
        if rem.any():
            out.append(rem)
            span, pivots = linalg.rref(np.concatenate([span, rem[None, :]]), field)
    return np.array(out, dtype=np.uint8).reshape(len(out), sup.length)


def combine_rows(rows: np.ndarray, index: int, field: FieldContext | None = None) -> np.ndarray:
    """The ``index``-th combination of ``rows`` in base-``q`` counting order.

    Digit ``i`` of ``index`` (least significant first) is the coefficient of row ``i``.
    """
    q = 2 if field is None else field.order
    out = np.zeros(rows.shape[1], dtype=np.uint8)
    for row in rows:
        c = index % q
        index //= q
        if c:
            out ^= row if field is None else field.mul_table[c, row]
    return out


def coset_representatives(sub: LinearCode, sup: LinearCode) -> np.ndarray:
    """One representative of every coset of ``sub`` in ``sup``; row 0 is the zero vector."""
    basis = complement_basis(sub, sup)
    count = sub.q ** len(basis)
    return np.array([combine_rows(basis, j, sub.field) for j in range(count)], dtype=np.uint8)


def verify_duality_diagram(code: LinearCode, basis: Basis) -> bool:
    """Check that the dual of the expansion equals the dual-basis expansion of the dual code."""
    expanded = binary_expansion(code, basis)
    left = dual_code(expanded)
    right = binary_expansion(dual_code(code), dual_basis(basis))
    return left == right


def write_code(code: LinearCode) -> str:
    """Plain-text matrix format: field header, ``N K``, then ``K`` rows of hex symbols."""
    if code.field is None:
        lines = ["field gf2"]
    else:
        lines = [f"field k={code.field.k} modulus={code.field.modulus:#x}"]
    lines.append(f"{code.length} {code.dimension}")
    lines += [" ".join(f"{int(s):x}" for s in row) for row in code.generator]
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"field\s+(?:gf2|k=(\d+)\s+modulus=(0x[0-9a-fA-F]+|[0-9a-fA-F]+))\s*$")


def read_code(text: str) -> LinearCode:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty code file")
    m = _HEADER.match(lines[0])
    if not m:
        raise ValueError(f"bad header line: {lines[0]!r}")
    field = None
    if m.group(1):
        k, modulus = int(m.group(1)), int(m.group(2), 16)
        field = make_field(k)
        if field.modulus != modulus:
            field = FieldContext(k, modulus)
    try:
        n, k_dim = (int(t) for t in lines[1].split())
    except (IndexError, ValueError):
        raise ValueError("second line must be 'N K'") from None
    rows = [[int(t, 16) for t in ln.split()] for ln in lines[2 : 2 + k_dim]]
    if len(rows) != k_dim or any(len(r) != n for r in rows):
        raise ValueError(f"expected {k_dim} rows of {n} symbols")
    code = LinearCode(field, np.array(rows, dtype=np.uint8).reshape(k_dim, n))
    if code.dimension != k_dim:
        raise ValueError(f"rows have rank {code.dimension}, header says {k_dim}")
    return code

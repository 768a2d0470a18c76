"""Arithmetic in GF(2^k) together with traces, dual bases and self-dual bases.

Elements are packed as integers: bit ``i`` is the coefficient of ``x^i`` in
the polynomial basis modulo the context's modulus. Contexts are cached, so
``make_field(k)`` always returns the same object for the same ``k``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from qrs import linalg
from qrs.errors import (
    ContextMismatchError,
    DimensionError,
    NotABasisError,
    UnsupportedDegreeError,
)

MIN_DEGREE = 2
MAX_DEGREE = 8


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Carry-less product of two F_2 polynomials reduced modulo ``modulus``."""
    deg = modulus.bit_length() - 1
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return out


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, d) == 0:
            return False
    return True


def _x_is_primitive(modulus: int) -> bool:
    k = modulus.bit_length() - 1
    order = (1 << k) - 1
    a = 1
    for m in range(1, order + 1):
        a = poly_mulmod(a, 2, modulus)
        if a == 1:
            return m == order
    return False


@dataclass(frozen=True)
class FieldContext:
    """GF(2^k) with a fixed modulus and primitive element ``alpha = x``.

    Attributes:
        k: Extension degree.
        modulus: Irreducible polynomial of degree ``k`` packed as a ``k+1``-bit integer.
        alpha: Packed primitive element.
    """

    k: int
    modulus: int
    alpha: int = 2
    exp_table: np.ndarray = field(init=False, repr=False, compare=False)
    log_table: np.ndarray = field(init=False, repr=False, compare=False)
    mul_table: np.ndarray = field(init=False, repr=False, compare=False)
    inv_table: np.ndarray = field(init=False, repr=False, compare=False)
    trace_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        q, order = 1 << self.k, (1 << self.k) - 1
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        a = 1
        for i in range(order):
            exp[i] = exp[i + order] = a
            if log[a] != -1:
                raise ValueError(f"{self.alpha:#x} is not primitive modulo {self.modulus:#x}")
            log[a] = i
            a = poly_mulmod(a, self.alpha, self.modulus)
        if a != 1:
            raise ValueError(f"{self.alpha:#x} is not primitive modulo {self.modulus:#x}")

        la = log[1:]
        mul = np.zeros((q, q), dtype=np.uint8)
        mul[1:, 1:] = exp[(la[:, None] + la[None, :]) % order]
        inv = np.zeros(q, dtype=np.uint8)
        inv[1:] = exp[(-la) % order]

        tr = np.zeros(q, dtype=np.uint8)
        for v in range(q):
            s, sq = 0, v
            for _ in range(self.k):
                s ^= sq
                sq = int(mul[sq, sq])
            tr[v] = s  # s is 0 or 1

        for name, table in (
            ("exp_table", exp),
            ("log_table", log),
            ("mul_table", mul),
            ("inv_table", inv),
            ("trace_table", tr),
        ):
            table.setflags(write=False)
            object.__setattr__(self, name, table)

    @property
    def order(self) -> int:
        """Number of field elements, ``2^k``."""
        return 1 << self.k

    @property
    def n(self) -> int:
        """Multiplicative order of ``alpha``: ``N = 2^k - 1``."""
        return (1 << self.k) - 1

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def alpha_pow(self, e: int) -> int:
        """Packed ``alpha^e`` for any integer ``e`` (negative allowed)."""
        return int(self.exp_table[e % self.n])

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.order)]

    # packed-int arithmetic, used by the other modules
    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^k)")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % self.n])

    def trace(self, a: int) -> int:
        return int(self.trace_table[a])

    def __str__(self) -> str:
        return f"GF(2^{self.k}) mod {self.modulus:#x}"


@functools.lru_cache(maxsize=None)
def make_field(k: int) -> FieldContext:
    """GF(2^k) using the smallest irreducible modulus for which ``x`` is primitive.

    Raises:
        UnsupportedDegreeError: if ``k`` is not in ``2..8``.
    """
    if not isinstance(k, (int, np.integer)) or not MIN_DEGREE <= k <= MAX_DEGREE:
        raise UnsupportedDegreeError(f"degree k={k} not supported (need {MIN_DEGREE} <= k <= {MAX_DEGREE})")
    k = int(k)
    for modulus in range(1 << k, 1 << (k + 1)):
        if is_irreducible(modulus) and _x_is_primitive(modulus):
            return FieldContext(k, modulus)
    raise AssertionError("unreachable: a primitive polynomial exists for every degree")


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.ctx.order:
            raise ValueError(f"{self.value} is not an element of {self.ctx}")

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.ctx, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.ctx, self.ctx.mul(self.value, other.value))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def __neg__(self) -> FieldElement:
        return self

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def trace(self) -> int:
        return self.ctx.trace(self.value)

    def __repr__(self) -> str:
        if self.value == 0:
            return "0"
        return f"a^{int(self.ctx.log_table[self.value])}"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Field product; raises ContextMismatchError for elements of different fields."""
    return a * b


def inverse(a: FieldElement) -> FieldElement:
    """Multiplicative inverse, computed as ``a^(2^k - 2)``."""
    if a.value == 0:
        raise ZeroDivisionError("inverse of zero in GF(2^k)")
    return a ** (a.ctx.order - 2)


def trace(a: FieldElement) -> int:
    """Absolute trace ``a + a^2 + ... + a^(2^(k-1))`` as a bit."""
    s, sq = 0, a.value
    for _ in range(a.ctx.k):
        s ^= sq
        sq = a.ctx.mul(sq, sq)
    return s


def _packed(ctx: FieldContext, e: FieldElement | int) -> int:
    if isinstance(e, FieldElement):
        if e.ctx != ctx:
            raise ContextMismatchError(f"{e.ctx} vs {ctx}")
        return e.value
    return int(e)


class Basis:
    """An ordered F_2-basis ``(b_1, ..., b_k)`` of GF(2^k).

    The trace Gram matrix ``gram[i, j] = Tr(b_i b_j)`` is computed on
    construction; the basis is self-dual exactly when it is the identity.
    """

    def __init__(self, ctx: FieldContext, elements: Iterable[FieldElement | int]):
        self.ctx = ctx
        self.elements: tuple[int, ...] = tuple(_packed(ctx, e) for e in elements)
        k = ctx.k
        if len(self.elements) != k:
            raise NotABasisError(f"need {k} elements, got {len(self.elements)}")
        # from_coords for every bit-vector; independence <=> the map is a bijection
        span = np.zeros(1 << k, dtype=np.int64)
        for v in range(1, 1 << k):
            low = v & -v
            span[v] = span[v ^ low] ^ self.elements[low.bit_length() - 1]
        to_coords = np.full(1 << k, -1, dtype=np.int64)
        to_coords[span] = np.arange(1 << k)
        if (to_coords < 0).any():
            raise NotABasisError(f"elements {self.elements} are linearly dependent over F_2")
        self._from_packed = span
        self._to_packed = to_coords
        el = np.array(self.elements, dtype=np.uint8)
        self.gram = ctx.trace_table[ctx.mul_table[el[:, None], el[None, :]]].astype(np.uint8)
        self.gram.setflags(write=False)

    @classmethod
    def polynomial(cls, ctx: FieldContext) -> Basis:
        """The basis ``(1, x, ..., x^(k-1))``."""
        return cls(ctx, [1 << i for i in range(ctx.k)])

    @property
    def is_self_dual(self) -> bool:
        return bool(np.array_equal(self.gram, np.eye(self.ctx.k, dtype=np.uint8)))

    def coords(self, a: FieldElement | int) -> np.ndarray:
        packed = int(self._to_packed[_packed(self.ctx, a)])
        return np.array([(packed >> j) & 1 for j in range(self.ctx.k)], dtype=np.uint8)

    def from_coords(self, v: Sequence[int]) -> FieldElement:
        v = np.asarray(v, dtype=np.int64).ravel()
        if v.shape != (self.ctx.k,):
            raise DimensionError(f"expected {self.ctx.k} coordinates, got {v.shape[0]}")
        packed = int(((v & 1) << np.arange(self.ctx.k)).sum())
        return FieldElement(self.ctx, int(self._from_packed[packed]))

    def coord_table(self) -> np.ndarray:
        """``(2^k, k)`` array whose row ``a`` holds the coordinates of element ``a``."""
        packed = self._to_packed
        return ((packed[:, None] >> np.arange(self.ctx.k)[None, :]) & 1).astype(np.uint8)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Basis) and other.ctx == self.ctx and other.elements == self.elements

    def __hash__(self) -> int:
        return hash((self.ctx, self.elements))

    def __repr__(self) -> str:
        return f"Basis({[FieldElement(self.ctx, e) for e in self.elements]})"


def coords(a: FieldElement, basis: Basis) -> np.ndarray:
    """Coordinates ``v`` of ``a`` with ``a = sum_j v_j b_j``."""
    return basis.coords(a)


def from_coords(v: Sequence[int], basis: Basis) -> FieldElement:
    return basis.from_coords(v)


def dual_basis(basis: Basis) -> Basis:
    """The trace-dual basis ``D`` with ``Tr(b_i d_j) = delta_ij``.

    If ``T`` is the Gram matrix of ``basis`` then ``d_j = sum_l (T^-1)[l, j] b_l``.
    """
    ctx = basis.ctx
    t_inv = linalg.inverse(basis.gram)
    dual = []
    for j in range(ctx.k):
        d = 0
        for l in range(ctx.k):
            if t_inv[l, j]:
                d ^= basis.elements[l]
        dual.append(d)
    return Basis(ctx, dual)


@functools.lru_cache(maxsize=None)
def find_self_dual_basis(ctx: FieldContext) -> Basis:
    """First self-dual basis in lexicographic order of packed element tuples.

    Depth-first search: each new element must have trace 1 and be
    trace-orthogonal to the ones already chosen (which also forces linear
    independence). Backtracking covers the dead end where the chosen elements
    already sum to 1.
    """
    trace_one = [v for v in range(1, ctx.order) if ctx.trace(v)]
    chosen: list[int] = []

    def extend() -> bool:
        if len(chosen) == ctx.k:
            return True
        start = chosen[-1] + 1 if chosen else 0
        for v in trace_one:
            if v < start:
                continue
            if all(ctx.trace(ctx.mul(v, c)) == 0 for c in chosen):
                chosen.append(v)
                if extend():
                    return True
                chosen.pop()
        return False

    if not extend():
        raise AssertionError(f"no self-dual basis found for {ctx}")
    return Basis(ctx, chosen)

"""Exact simulation engines: a stabilizer tableau and a dense state-vector oracle.

The tableau follows Aaronson and Gottesman: rows ``0..n-1`` are
destabilizers, rows ``n..2n-1`` stabilizers, each a signed Pauli with Y
encoded as ``x = z = 1``. It is stored column-wise: ``_x[q]`` is an integer
whose bit ``i`` is the X bit of row ``i`` on qubit ``q``. Gates then touch two
integers per qubit; measurement transposes to row form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qrs.circuits import Circuit
from qrs.css import PauliOperator
from qrs.errors import CircuitError, DimensionError

DENSE_MAX_QUBITS = 14


def _bits_to_int(bits) -> int:
    out = 0
    for q in np.flatnonzero(np.asarray(bits)):
        out |= 1 << int(q)
    return out


def _int_to_bits(v: int, n: int) -> np.ndarray:
    return np.array([(v >> q) & 1 for q in range(n)], dtype=np.uint8)


def _transpose(cols: list[int], n_rows: int) -> list[int]:
    """Bit-matrix transpose: ``cols[c]`` bit ``r``  ->  ``out[r]`` bit ``c``."""
    if not cols:
        return [0] * n_rows
    nb = (n_rows + 7) // 8
    raw = b"".join(c.to_bytes(nb, "little") for c in cols)
    m = np.unpackbits(np.frombuffer(raw, np.uint8).reshape(len(cols), nb), axis=1, bitorder="little")
    packed = np.packbits(m[:, :n_rows].T, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _product(x1: int, z1: int, s1: int, x2: int, z2: int, s2: int) -> tuple[int, int, int]:
    """Signed product of two Hermitian Pauli rows, phase tracked mod 4.

    A row is ``(-1)^s i^{|x & z|} X^x Z^z``. Moving ``Z^z1`` past ``X^x2``
    contributes ``(-1)^{|z1 & x2|}``.
    """
    x3, z3 = x1 ^ x2, z1 ^ z2
    e = (
        2 * s1
        + 2 * s2
        + (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        + 2 * (z1 & x2).bit_count()
        - (x3 & z3).bit_count()
    ) % 4
    if e & 1:
        raise ArithmeticError("product of anticommuting rows is not Hermitian")
    return x3, z3, e >> 1


@dataclass
class MeasurementRecord:
    """Outcome and determinism flag per classical slot (``-1`` for unwritten slots)."""

    outcomes: np.ndarray
    deterministic: np.ndarray

    @classmethod
    def empty(cls, n_cbits: int) -> MeasurementRecord:
        return cls(np.full(n_cbits, -1, dtype=np.int8), np.zeros(n_cbits, dtype=bool))


class StabilizerState:
    """A stabilizer state on ``n`` qubits, initially ``|0...0>``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"need at least one qubit, got {n}")
        self.n = n
        self._x = [1 << q for q in range(n)]
        self._z = [1 << (n + q) for q in range(n)]
        self._r = 0
        self._full = (1 << 2 * n) - 1
        self._destab = (1 << n) - 1

    def copy(self) -> StabilizerState:
        out = StabilizerState.__new__(StabilizerState)
        out.n, out._full, out._destab = self.n, self._full, self._destab
        out._x, out._z, out._r = list(self._x), list(self._z), self._r
        return out

    def _check(self, *qubits: int) -> None:
        for q in qubits:
            if not 0 <= q < self.n:
                raise IndexError(f"qubit {q} out of range for {self.n} qubits")

    def h(self, a: int) -> None:
        self._check(a)
        x, z = self._x[a], self._z[a]
        self._r ^= x & z
        self._x[a], self._z[a] = z, x

    def cx(self, c: int, t: int) -> None:
        self._check(c, t)
        if c == t:
            raise CircuitError("cx control equals target")
        xc, zt = self._x[c], self._z[t]
        self._r ^= xc & zt & ~(self._x[t] ^ self._z[c]) & self._full
        self._x[t] ^= xc
        self._z[c] ^= zt

    def x(self, a: int) -> None:
        self._check(a)
        self._r ^= self._z[a]

    def z(self, a: int) -> None:
        self._check(a)
        self._r ^= self._x[a]

    def _anticommute_mask(self, p: PauliOperator) -> int:
        """Bit ``i`` set iff tableau row ``i`` anticommutes with ``p``."""
        if p.n != self.n:
            raise DimensionError(f"Pauli on {p.n} qubits, state has {self.n}")
        m = 0
        for q in np.flatnonzero(p.x):
            m ^= self._z[q]
        for q in np.flatnonzero(p.z):
            m ^= self._x[q]
        return m

    def apply_pauli(self, p: PauliOperator) -> None:
        """Conjugate by ``p``: every row anticommuting with it flips sign."""
        self._r ^= self._anticommute_mask(p)

    def _rows(self) -> tuple[list[int], list[int]]:
        n2 = 2 * self.n
        return _transpose(self._x, n2), _transpose(self._z, n2)

    def _stabilizer_product(self, indices: int) -> tuple[int, int, int]:
        """Product of stabilizer rows ``n + i`` for each bit ``i`` of ``indices``."""
        xr, zr = self._rows()
        acc = (0, 0, 0)
        i = indices
        while i:
            low = i & -i
            row = self.n + low.bit_length() - 1
            acc = _product(*acc, xr[row], zr[row], (self._r >> row) & 1)
            i ^= low
        return acc

    def measure(self, a: int, rng: np.random.Generator | None = None) -> tuple[int, bool]:
        """Measure ``Z_a``; returns ``(outcome, deterministic)``."""
        self._check(a)
        n = self.n
        xa = self._x[a]
        hits = xa & ~self._destab & self._full
        if not hits:
            _, _, s = self._stabilizer_product(xa & self._destab)
            return s, True

        rng = rng if rng is not None else np.random.default_rng()
        p = (hits & -hits).bit_length() - 1
        xr, zr = self._rows()
        r = [(self._r >> i) & 1 for i in range(2 * n)]
        i_set = xa
        while i_set:
            low = i_set & -i_set
            i = low.bit_length() - 1
            i_set ^= low
            if i in (p, p - n):
                continue
            xr[i], zr[i], r[i] = _product(xr[p], zr[p], r[p], xr[i], zr[i], r[i])
        outcome = int(rng.integers(2))
        xr[p - n], zr[p - n], r[p - n] = xr[p], zr[p], r[p]
        xr[p], zr[p], r[p] = 0, 1 << a, outcome
        self._x = _transpose(xr, n)
        self._z = _transpose(zr, n)
        self._r = sum(bit << i for i, bit in enumerate(r))
        return outcome, False

    def is_stabilized_by(self, p: PauliOperator) -> bool:
        """Whether ``+p`` (with its sign) lies in the stabilizer group.

        ``p`` must commute with every stabilizer; its expansion in stabilizer
        generators then uses exactly the rows whose destabilizer anticommutes
        with ``p``.
        """
        m = self._anticommute_mask(p)
        if m & ~self._destab & self._full:
            return False
        x, z, s = self._stabilizer_product(m & self._destab)
        if x != _bits_to_int(p.x) or z != _bits_to_int(p.z):
            return False
        return (-1) ** s == p.sign

    def _row_pauli(self, row: int, xr: list[int], zr: list[int]) -> PauliOperator:
        sign = -1 if (self._r >> row) & 1 else 1
        return PauliOperator(_int_to_bits(xr[row], self.n), _int_to_bits(zr[row], self.n), sign)

    def stabilizers(self) -> list[PauliOperator]:
        xr, zr = self._rows()
        return [self._row_pauli(self.n + i, xr, zr) for i in range(self.n)]

    def destabilizers(self) -> list[PauliOperator]:
        xr, zr = self._rows()
        return [self._row_pauli(i, xr, zr) for i in range(self.n)]

    def symplectic_rank(self) -> int:
        from qrs import linalg

        stab = self.stabilizers()
        m = np.array([np.concatenate([s.x, s.z]) for s in stab], dtype=np.uint8)
        return linalg.rank(m)

    def __str__(self) -> str:
        return "\n".join(str(s) for s in self.stabilizers())


def init_state(n: int) -> StabilizerState:
    return StabilizerState(n)


def apply_pauli(state: StabilizerState, p: PauliOperator) -> StabilizerState:
    state.apply_pauli(p)
    return state


def is_stabilized_by(state: StabilizerState, p: PauliOperator) -> bool:
    return state.is_stabilized_by(p)


def apply_circuit(
    state: StabilizerState, circuit: Circuit, rng: np.random.Generator | None = None
) -> tuple[StabilizerState, MeasurementRecord]:
    """Run ``circuit`` on ``state`` in place; random outcomes draw from ``rng``."""
    if circuit.n_qubits != state.n:
        raise DimensionError(f"circuit has {circuit.n_qubits} qubits, state has {state.n}")
    record = MeasurementRecord.empty(circuit.n_cbits)
    for g in circuit.gates:
        name = g.name
        if name == "cx":
            state.cx(*g.qubits)
        elif name == "h":
            state.h(g.qubits[0])
        elif name == "x":
            state.x(g.qubits[0])
        elif name == "z":
            state.z(g.qubits[0])
        else:
            out, det = state.measure(g.qubits[0], rng)
            record.outcomes[g.slot] = out
            record.deterministic[g.slot] = det
    return state, record


def basis_action(circuit: Circuit, bits) -> np.ndarray:
    """Image of a computational basis state under an X/CNOT-only circuit."""
    v = np.array(bits, dtype=np.uint8).ravel()
    if v.size != circuit.n_qubits:
        raise DimensionError(f"{v.size} input bits for {circuit.n_qubits} qubits")
    for g in circuit.gates:
        if g.name == "cx":
            v[g.qubits[1]] ^= v[g.qubits[0]]
        elif g.name == "x":
            v[g.qubits[0]] ^= 1
        elif g.name != "z":
            raise CircuitError(f"gate '{g}' does not permute basis states")
    return v


@dataclass
class DenseState:
    """``2^n`` amplitudes; index bit ``n-1-q`` is qubit ``q`` (qubit 0 most significant)."""

    n: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, bits) -> complex:
        return complex(self.amplitudes[_index(bits)])

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def prob_one(self, q: int) -> float:
        p = self.probabilities().reshape((2,) * self.n)
        return float(np.take(p, 1, axis=q).sum())

    def expectation(self, p: PauliOperator) -> float:
        """``<psi| p |psi>`` (real for Hermitian ``p``)."""
        if p.n != self.n:
            raise DimensionError(f"Pauli on {p.n} qubits, state has {self.n}")
        psi = self.amplitudes.reshape((2,) * self.n)
        out = psi
        for q in range(self.n):
            if p.z[q]:
                out = _apply_1q(out, q, _PZ)
            if p.x[q]:
                out = _apply_1q(out, q, _PX)
            if p.x[q] and p.z[q]:
                out = out * 1j  # Y = i X Z
        return float(np.real(np.vdot(psi.ravel(), out.ravel()))) * p.sign

    def support(self, tol: float = 1e-12) -> list[str]:
        idx = np.flatnonzero(np.abs(self.amplitudes) > tol)
        return [format(int(i), f"0{self.n}b") for i in idx]


_PX = np.array([[0, 1], [1, 0]], dtype=complex)
_PZ = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def _index(bits) -> int:
    bits = bits if isinstance(bits, str) else "".join(str(int(b)) for b in bits)
    return int(bits, 2)


def _apply_1q(psi: np.ndarray, q: int, u: np.ndarray) -> np.ndarray:
    return np.moveaxis(np.tensordot(u, psi, axes=([1], [q])), 0, q)


def dense_simulate(circuit: Circuit, input_bits=None) -> DenseState:
    """Exact state vector of ``circuit`` applied to the basis state ``input_bits``."""
    n = circuit.n_qubits
    if n > DENSE_MAX_QUBITS:
        raise DimensionError(f"dense simulation limited to {DENSE_MAX_QUBITS} qubits, got {n}")
    if circuit.has_measurements:
        raise CircuitError("dense simulation does not support measurements")
    bits = np.zeros(n, np.uint8) if input_bits is None else np.asarray(list(input_bits), dtype=np.uint8)
    if bits.size != n:
        raise DimensionError(f"{bits.size} input bits for {n} qubits")
    psi = np.zeros((2,) * n, dtype=complex)
    psi[tuple(int(b) for b in bits)] = 1.0
    for g in circuit.gates:
        if g.name == "h":
            psi = _apply_1q(psi, g.qubits[0], _H)
        elif g.name == "x":
            psi = _apply_1q(psi, g.qubits[0], _PX)
        elif g.name == "z":
            psi = _apply_1q(psi, g.qubits[0], _PZ)
        else:
            c, t = g.qubits
            sel = [slice(None)] * n
            sel[c] = 1
            sub = psi[tuple(sel)]
            t_axis = t if t < c else t - 1
            psi[tuple(sel)] = np.flip(sub, axis=t_axis).copy()
    return DenseState(n, psi.reshape(-1))

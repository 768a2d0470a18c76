"""Gate-list circuits, CNOT synthesis of invertible F_2 maps, and the quantum RS
encoder and syndrome-extraction circuits.

Text format, one item per line::

    qubits <n>
    cbits <m>          (only when the circuit measures)
    h <q> | cx <c> <t> | x <q> | z <q> | mz <q> <slot>

Blank lines and ``#`` comments are ignored by the parser.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from qrs import linalg
from qrs.css import QuantumCssCode
from qrs.errors import CircuitError, CircuitParseError, DimensionError, NotInvertibleError, UnsupportedCodeError
from qrs.spectral import FrequencyLayout, binary_expand_matrix, dft_matrix, idft_matrix

_ARITY = {"h": 1, "x": 1, "z": 1, "cx": 2, "mz": 1}


@dataclass(frozen=True)
class Gate:
    """One instruction. ``qubits`` is ``(control, target)`` for ``cx``; ``slot`` is set only for ``mz``."""

    name: str
    qubits: tuple[int, ...]
    slot: int | None = None

    def __post_init__(self) -> None:
        if self.name not in _ARITY:
            raise CircuitError(f"unknown gate {self.name!r}")
        if len(self.qubits) != _ARITY[self.name]:
            raise CircuitError(f"{self.name} takes {_ARITY[self.name]} qubit(s), got {self.qubits}")
        if self.name == "cx" and self.qubits[0] == self.qubits[1]:
            raise CircuitError(f"cx control equals target ({self.qubits[0]})")
        if (self.name == "mz") != (self.slot is not None):
            raise CircuitError("a classical slot is required for mz and only for mz")

    def __str__(self) -> str:
        args = list(self.qubits) + ([self.slot] if self.slot is not None else [])
        return " ".join([self.name, *map(str, args)])


def H(q: int) -> Gate:
    return Gate("h", (q,))


def CX(control: int, target: int) -> Gate:
    return Gate("cx", (control, target))


def X(q: int) -> Gate:
    return Gate("x", (q,))


def Z(q: int) -> Gate:
    return Gate("z", (q,))


def MZ(q: int, slot: int) -> Gate:
    return Gate("mz", (q,), slot)


@dataclass(frozen=True)
class Circuit:
    """An immutable gate list; list order is time order."""

    n_qubits: int
    gates: tuple[Gate, ...] = ()
    n_cbits: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise CircuitError("a circuit needs at least one qubit")
        for g in self.gates:
            if any(not 0 <= q < self.n_qubits for q in g.qubits):
                raise CircuitError(f"gate '{g}' addresses a qubit outside 0..{self.n_qubits - 1}")
            if g.slot is not None and not 0 <= g.slot < self.n_cbits:
                raise CircuitError(f"gate '{g}' writes outside classical slots 0..{self.n_cbits - 1}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise CircuitError(f"cannot append a {other.n_qubits}-qubit circuit to a {self.n_qubits}-qubit one")
        return Circuit(self.n_qubits, self.gates + other.gates, max(self.n_cbits, other.n_cbits))

    def counts(self) -> Counter:
        return Counter(g.name for g in self.gates)

    @property
    def has_measurements(self) -> bool:
        return any(g.name == "mz" for g in self.gates)

    def remapped(self, mapping: Sequence[int], n_qubits: int, n_cbits: int | None = None) -> Circuit:
        """Relabel qubit ``q`` as ``mapping[q]`` inside a wider register."""
        gates = [Gate(g.name, tuple(mapping[q] for q in g.qubits), g.slot) for g in self.gates]
        return Circuit(n_qubits, gates, self.n_cbits if n_cbits is None else n_cbits)

    def inverse(self) -> Circuit:
        """Reverse of a unitary circuit (every supported unitary gate is self-inverse)."""
        if self.has_measurements:
            raise CircuitError("cannot invert a circuit with measurements")
        return Circuit(self.n_qubits, self.gates[::-1], self.n_cbits)


def synthesize_linear(a: np.ndarray) -> Circuit:
    """CNOT circuit with ``|v> -> |A v>`` for an invertible F_2 matrix ``A``.

    Gauss-Jordan elimination without row swaps: a missing pivot is repaired
    by adding a lower row into the pivot row, so every column costs at most
    ``n`` row additions and the circuit has at most ``n^2`` CNOTs. The row
    operation ``row_t += row_c`` is ``CX(c, t)``; the eliminating sequence
    reduces ``A`` to the identity, so the circuit is that sequence reversed.
    """
    a = linalg.as_matrix(a).copy() & 1
    n, cols = a.shape
    if n != cols:
        raise DimensionError(f"need a square matrix, got {n}x{cols}")
    ops: list[Gate] = []
    for c in range(n):
        if not a[c, c]:
            below = np.flatnonzero(a[c + 1 :, c])
            if below.size == 0:
                raise NotInvertibleError("matrix is singular over F_2")
            r = c + 1 + int(below[0])
            a[c] ^= a[r]
            ops.append(CX(r, c))
        for r in np.flatnonzero(a[:, c]):
            if r != c:
                a[r] ^= a[c]
                ops.append(CX(c, int(r)))
    return Circuit(n, ops[::-1])


def _layout(code: QuantumCssCode) -> FrequencyLayout:
    if code.rs is None:
        raise UnsupportedCodeError("circuits need a quantum Reed-Solomon code (build_quantum_rs)")
    return code.rs.layout


def build_encoder(code: QuantumCssCode) -> Circuit:
    """Hadamards on the ``h_freqs`` block followed by the expanded inverse DFT.

    Inputs: message bits on ``layout.message_qubits`` (bit ``m`` of logical
    index ``j`` on message qubit ``m``), every other qubit ``|0>``.
    """
    layout = _layout(code)
    rs = code.rs
    hadamards = Circuit(code.n, [H(q) for q in layout.h_qubits])
    return hadamards + synthesize_linear(binary_expand_matrix(idft_matrix(rs.field), rs.basis))


def syndrome_ancillas(code: QuantumCssCode) -> tuple[list[int], list[int]]:
    """Ancilla qubit indices: bit-flip block first, then phase-flip block."""
    n, r = code.n, len(code.stabilizers)
    return list(range(n, n + r)), list(range(n + r, n + 2 * r))


def build_syndrome_circuit(code: QuantumCssCode) -> Circuit:
    """Frequency-domain syndrome extraction on ``kN`` data plus ``2kK`` ancilla qubits.

    DFT; copy the zero-frequency block into the bit-flip ancillas; H on the
    ``h_freqs`` block; copy it into the phase-flip ancillas; H again; inverse
    DFT; measure every ancilla. Slot ``i`` holds ancilla ``i`` (bit-flip
    syndrome in slots ``0..kK-1``, phase-flip syndrome after).
    """
    layout = _layout(code)
    rs = code.rs
    n = code.n
    bit_anc, phase_anc = syndrome_ancillas(code)
    total = n + len(bit_anc) + len(phase_anc)
    data = list(range(n))
    fwd = synthesize_linear(binary_expand_matrix(dft_matrix(rs.field), rs.basis)).remapped(data, total)
    inv = synthesize_linear(binary_expand_matrix(idft_matrix(rs.field), rs.basis)).remapped(data, total)
    gates: list[Gate] = list(fwd.gates)
    gates += [CX(q, a) for q, a in zip(layout.zero_qubits, bit_anc)]
    gates += [H(q) for q in layout.h_qubits]
    gates += [CX(q, a) for q, a in zip(layout.phase_syndrome_qubits, phase_anc)]
    gates += [H(q) for q in layout.h_qubits]
    gates += inv.gates
    gates += [MZ(a, i) for i, a in enumerate(bit_anc + phase_anc)]
    return Circuit(total, gates, len(bit_anc) + len(phase_anc))


def write_circuit(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.n_qubits}"]
    if circuit.n_cbits:
        lines.append(f"cbits {circuit.n_cbits}")
    lines += [str(g) for g in circuit.gates]
    return "\n".join(lines) + "\n"


def _ints(tokens: Iterable[str], lineno: int) -> list[int]:
    out = []
    for t in tokens:
        if not t.isdigit():
            raise CircuitParseError(lineno, f"expected a non-negative decimal index, got {t!r}")
        out.append(int(t))
    return out


def parse_circuit(text: str) -> Circuit:
    n_qubits = None
    n_cbits = 0
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if n_qubits is None:
            if head != "qubits" or len(args) != 1:
                raise CircuitParseError(lineno, "first statement must be 'qubits <n>'")
            (n_qubits,) = _ints(args, lineno)
            continue
        if head == "cbits":
            if gates or n_cbits or len(args) != 1:
                raise CircuitParseError(lineno, "'cbits <m>' must appear once, before any gate")
            (n_cbits,) = _ints(args, lineno)
            continue
        if head not in _ARITY:
            raise CircuitParseError(lineno, f"unknown gate {head!r}")
        want = _ARITY[head] + (head == "mz")
        if len(args) != want:
            raise CircuitParseError(lineno, f"{head} takes {want} argument(s), got {len(args)}")
        vals = _ints(args, lineno)
        bad = [q for q in vals[: _ARITY[head]] if q >= n_qubits]
        if bad:
            raise CircuitParseError(lineno, f"qubit {bad[0]} out of range for {n_qubits} qubits")
        if head == "mz" and vals[1] >= n_cbits:
            raise CircuitParseError(lineno, f"slot {vals[1]} out of range for {n_cbits} cbits")
        try:
            gates.append(Gate(head, tuple(vals[: _ARITY[head]]), vals[1] if head == "mz" else None))
        except CircuitError as e:
            raise CircuitParseError(lineno, str(e)) from None
    if n_qubits is None:
        raise CircuitParseError(1, "missing 'qubits <n>' header")
    try:
        return Circuit(n_qubits, gates, n_cbits)
    except CircuitError as e:
        raise CircuitParseError(1, str(e)) from None

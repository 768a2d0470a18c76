"""Verification suite and Monte Carlo error-correction experiments for one code instance."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from qrs import linalg
from qrs.circuits import Circuit, build_encoder, build_syndrome_circuit
from qrs.codes import (
    binary_expansion,
    dual_code,
    is_weakly_self_dual,
    verify_duality_diagram,
)
from qrs.css import (
    DecoderTable,
    PauliOperator,
    QuantumCssCode,
    build_decoder_table,
    build_quantum_rs,
    classical_syndrome,
    decode,
)
from qrs.errors import UncorrectableError
from qrs.galois import Basis
from qrs.simulator import DENSE_MAX_QUBITS, StabilizerState, apply_circuit, dense_simulate

QUICK_SAMPLE = 48


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, passed: bool, detail: str = "") -> Check:
    return Check(name, bool(passed), detail)


def message_bits(code: QuantumCssCode, j: int) -> np.ndarray:
    """Encoder input for logical basis state ``j`` (bit ``m`` of ``j`` on message qubit ``m``)."""
    bits = np.zeros(code.n, np.uint8)
    for m, q in enumerate(code.rs.layout.message_qubits):
        bits[q] = (j >> m) & 1
    return bits


def all_paulis(n: int, weight: int):
    for qubits in itertools.combinations(range(n), weight):
        for kinds in itertools.product("XYZ", repeat=weight):
            s = ["I"] * n
            for q, kind in zip(qubits, kinds):
                s[q] = kind
            yield PauliOperator.from_string("".join(s))


class SyndromeHarness:
    """Encoder and syndrome circuit on a shared data-plus-ancilla register."""

    def __init__(self, code: QuantumCssCode):
        self.code = code
        self.syndrome = build_syndrome_circuit(code)
        self.width = self.syndrome.n_qubits
        self.encoder = build_encoder(code).remapped(range(code.n), self.width)
        self.r = len(code.stabilizers)
        self._logical = code.rs.layout.message_qubits

    def encoded(self, bits: np.ndarray, x_basis: bool = False) -> StabilizerState:
        """Logical basis state with ``bits`` (Z basis) or ``|+/->`` states (X basis)."""
        state = StabilizerState(self.width)
        for b, q in zip(bits, self._logical):
            if b:
                state.x(q)
            if x_basis:
                state.h(q)
        apply_circuit(state, self.encoder)
        return state

    def extract(self, state: StabilizerState, rng=None) -> tuple[np.ndarray, np.ndarray, bool]:
        """Run the syndrome circuit, then return the measured ancillas to ``|0>``."""
        _, rec = apply_circuit(state, self.syndrome, rng)
        out = rec.outcomes.astype(np.uint8)
        for q in np.flatnonzero(out):
            state.x(self.code.n + int(q))
        return out[: self.r], out[self.r :], bool(rec.deterministic.all())

    def logicals_hold(self, state: StabilizerState, bits: np.ndarray, x_basis: bool = False) -> bool:
        ops = self.code.logical_x if x_basis else self.code.logical_z
        return all(
            state.is_stabilized_by(PauliOperator(op.x, op.z, -1 if b else 1).padded(self.width))
            for op, b in zip(ops, bits)
        )


def _sample(items: list, level: str, rng: np.random.Generator) -> list:
    if level == "exhaustive" or len(items) <= QUICK_SAMPLE:
        return items
    idx = rng.choice(len(items), QUICK_SAMPLE, replace=False)
    return [items[i] for i in sorted(idx)]


def run_checks(k: int, delta: int, level: str = "exhaustive", seed: int = 0) -> tuple[QuantumCssCode, list[Check]]:
    """Every property check for the quantum RS code ``(k, delta)``."""
    code = build_quantum_rs(k, delta)
    rs = code.rs
    ctx, basis, classical = rs.field, rs.basis, rs.classical
    n_sym, kk = ctx.n, classical.dimension
    rng = np.random.default_rng(seed)
    checks: list[Check] = []

    checks.append(_check("self_dual_basis", basis.is_self_dual, f"gram={basis.gram.tolist()}"))
    checks.append(_check("rs_weakly_self_dual", is_weakly_self_dual(classical)))
    checks.append(_check("expansion_weakly_self_dual", is_weakly_self_dual(code.binary_code)))
    checks.append(_check("duality_diagram_self_dual_basis", verify_duality_diagram(classical, basis)))
    checks.append(_check("duality_diagram_polynomial_basis", verify_duality_diagram(classical, Basis.polynomial(ctx))))
    checks.append(
        _check(
            "stabilizers_span_expansion",
            linalg.row_space_equal(code.stabilizers, code.binary_code.generator),
        )
    )

    want = (k * n_sym, k * (n_sym - 2 * kk))
    got = (code.n, code.k_logical)
    rank = linalg.rank(code.stabilizers)
    checks.append(
        _check(
            "parameters",
            got == want and rank == k * kk and code.n - 2 * rank == code.k_logical,
            f"[[n,k]]={list(got)} expected {list(want)}, stabilizer rank {rank}",
        )
    )
    d = code.distance_exact
    if d is None:
        checks.append(_check("distance", True, f"dual too large to enumerate; bound d>={kk + 1}"))
    else:
        checks.append(_check("distance", d >= kk + 1, f"exact d={d}, bound {kk + 1}"))

    g = code.stabilizers
    checks.append(_check("stabilizers_commute", not linalg.matmul(g, g.T).any()))
    pairing = linalg.matmul(code.transversal, code.logical_z_rows.T)
    logical_ok = (
        np.array_equal(pairing, np.eye(code.k_logical, dtype=np.uint8))
        and not linalg.matmul(g, code.transversal.T).any()
        and not linalg.matmul(g, code.logical_z_rows.T).any()
    )
    checks.append(_check("logical_commutation", logical_ok))

    harness = SyndromeHarness(code)
    counts = build_encoder(code).counts()
    checks.append(
        _check(
            "encoder_gate_set",
            counts.get("h", 0) == k * kk and set(counts) <= {"h", "cx"},
            f"gates {dict(counts)}",
        )
    )

    inputs = list(range(1 << code.k_logical)) if code.k_logical <= 10 else []
    if not inputs or level != "exhaustive":
        inputs = [0] + [int(j) for j in rng.integers(1 << min(code.k_logical, 62), size=QUICK_SAMPLE - 1)]
    witness = ""
    for j in inputs:
        bits = np.array([(j >> m) & 1 for m in range(code.k_logical)], np.uint8)
        state = harness.encoded(bits)
        if not all(state.is_stabilized_by(p.padded(harness.width)) for p in code.stabilizer_generators()):
            witness = f"logical input {j}: a stabilizer generator does not fix the state"
            break
        if not harness.logicals_hold(state, bits):
            witness = f"logical input {j}: logical Z signs wrong"
            break
    checks.append(_check("encoder_stabilized", not witness, witness or f"{len(inputs)} logical inputs"))

    if code.n <= DENSE_MAX_QUBITS:
        checks.append(_dense_encoder_check(code))

    weight_one = list(all_paulis(code.n, 1))
    witness = ""
    for err in _sample(weight_one, level, rng):
        state = harness.encoded(np.zeros(code.k_logical, np.uint8))
        state.apply_pauli(err.padded(harness.width))
        s_x, s_z, det = harness.extract(state)
        s_x2, s_z2, det2 = harness.extract(state)
        want_x, want_z = classical_syndrome(code, err)
        if not (det and det2 and np.array_equal(s_x, want_x) and np.array_equal(s_z, want_z)):
            witness = f"error {err}: readout {s_x}{s_z}, expected {want_x}{want_z}"
            break
        if not (np.array_equal(s_x, s_x2) and np.array_equal(s_z, s_z2)):
            witness = f"error {err}: repeated extraction changed the readout"
            break
    checks.append(_check("syndrome_agreement", not witness, witness))

    checks.append(_correction_check(code, level, rng))
    return code, checks


def _dense_encoder_check(code: QuantumCssCode) -> Check:
    enc = build_encoder(code)
    words = {tuple(int(b) for b in c) for c in code.binary_code.codewords()}
    amp = 1 / np.sqrt(len(words))
    for j in range(1 << code.k_logical):
        psi = dense_simulate(enc, message_bits(code, j)).amplitudes
        expected = np.zeros(1 << code.n, dtype=complex)
        w = code.coset_rep(j)
        for c in words:
            idx = int("".join(str(a ^ b) for a, b in zip(c, w)), 2)
            expected[idx] = amp
        if not np.allclose(psi, expected, atol=1e-10, rtol=0):
            return _check("dense_encoder_amplitudes", False, f"logical input {j} off the coset of w_{j}")
    return _check("dense_encoder_amplitudes", True, f"{1 << code.k_logical} inputs")


def _correction_check(code: QuantumCssCode, level: str, rng: np.random.Generator) -> Check:
    t = max(0, (code.distance - 1) // 2) if code.distance else 0
    if t == 0:
        for err in _sample(list(all_paulis(code.n, 1)), level, rng):
            s_x, s_z = classical_syndrome(code, err)
            if not (s_x.any() or s_z.any() or code.in_stabilizer_group(err)):
                return _check("detection", False, f"undetected weight-1 error {err}")
        return _check("detection", True, "every weight-1 error detected")
    table = build_decoder_table(code, t)
    for w in range(1, t + 1):
        for err in _sample(list(all_paulis(code.n, w)), level, rng):
            corr = decode(table, *classical_syndrome(code, err))
            if not code.in_stabilizer_group(err.compose(corr)):
                return _check("correction", False, f"error {err} corrected by {corr}")
    return _check("correction", True, f"all errors of weight <= {t} corrected (table of {len(table)})")


@dataclass
class TrialResult:
    weight: int
    success: bool
    uncorrectable: bool


@dataclass
class SimulationSummary:
    trials: int
    successes: int = 0
    uncorrectable: int = 0
    by_weight: dict = field(default_factory=dict)  # weight -> [trials, successes]

    def add(self, r: TrialResult) -> None:
        self.successes += r.success
        self.uncorrectable += r.uncorrectable
        tally = self.by_weight.setdefault(r.weight, [0, 0])
        tally[0] += 1
        tally[1] += r.success

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    def low_weight(self, t: int) -> tuple[int, int]:
        """``(trials, successes)`` over trials whose error had weight ``<= t``."""
        rows = [v for w, v in self.by_weight.items() if w <= t]
        return sum(r[0] for r in rows), sum(r[1] for r in rows)


def low_weight_probability(n: int, p: float, t: int) -> float:
    """Probability that i.i.d. errors with rate ``p`` hit at most ``t`` of ``n`` qubits."""
    return sum(comb(n, w) * p**w * (1 - p) ** (n - w) for w in range(t + 1))


class MonteCarlo:
    """Encode, add depolarizing noise, extract, decode, correct, check logicals."""

    def __init__(self, code: QuantumCssCode, p: float, t: int | None = None):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"error probability must lie in [0, 1], got {p}")
        self.code = code
        self.p = p
        self.harness = SyndromeHarness(code)
        self.table: DecoderTable = build_decoder_table(code, t)

    def trial(self, seed: int, index: int) -> TrialResult:
        code, h = self.code, self.harness
        rng = np.random.default_rng([seed, index])
        x_basis = bool(rng.integers(2))
        bits = rng.integers(2, size=code.k_logical).astype(np.uint8)
        hit = rng.random(code.n) < self.p
        kinds = rng.integers(3, size=code.n)  # 0: X, 1: Y, 2: Z
        err = PauliOperator(hit & (kinds < 2), hit & (kinds > 0))

        state = h.encoded(bits, x_basis)
        state.apply_pauli(err.padded(h.width))
        s_x, s_z, _ = h.extract(state, rng)
        try:
            corr = decode(self.table, s_x, s_z)
        except UncorrectableError:
            return TrialResult(err.weight, False, True)
        state.apply_pauli(corr.padded(h.width))
        return TrialResult(err.weight, h.logicals_hold(state, bits, x_basis), False)

    def run(self, trials: int, seed: int, start: int = 0) -> SimulationSummary:
        summary = SimulationSummary(trials)
        for i in range(start, start + trials):
            summary.add(self.trial(seed, i))
        return summary


def _run_chunk(args) -> SimulationSummary:
    k, delta, p, t, seed, start, count = args
    return MonteCarlo(build_quantum_rs(k, delta), p, t).run(count, seed, start)


def simulate(k: int, delta: int, p: float, trials: int, seed: int, workers: int = 1, t: int | None = None) -> tuple[MonteCarlo, SimulationSummary]:
    """Monte Carlo run; per-trial seeds are ``(seed, trial index)`` so the worker count never changes the result."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    mc = MonteCarlo(build_quantum_rs(k, delta), p, t)
    if workers <= 1:
        return mc, mc.run(trials, seed)
    size = -(-trials // workers)
    chunks = [(k, delta, p, mc.table.t, seed, s, min(size, trials - s)) for s in range(0, trials, size)]
    total = SimulationSummary(trials)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_chunk, chunks):
            total.successes += part.successes
            total.uncorrectable += part.uncorrectable
            for w, (n_w, s_w) in part.by_weight.items():
                tally = total.by_weight.setdefault(w, [0, 0])
                tally[0] += n_w
                tally[1] += s_w
    return mc, total


__all__ = [
    "Check",
    "Circuit",
    "MonteCarlo",
    "SimulationSummary",
    "SyndromeHarness",
    "binary_expansion",
    "dual_code",
    "low_weight_probability",
    "run_checks",
    "simulate",
]

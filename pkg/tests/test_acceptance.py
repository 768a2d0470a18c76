"""Acceptance suite: one test per criterion, each with its runtime budget.

A summary line per criterion is printed at the end of the pytest run.
"""

import itertools
import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from oracles import all_spectra, gf2_rank, oracle_mul_table, orthogonal_to, random_invertible
from qrs import linalg
from qrs.circuits import build_encoder, parse_circuit, synthesize_linear, write_circuit
from qrs.cli import main
from qrs.codes import LinearCode, binary_expansion, dual_code, min_distance, reed_solomon, verify_duality_diagram
from qrs.css import PauliOperator, build_decoder_table, build_quantum_rs, classical_syndrome, decode
from qrs.errors import UncorrectableError
from qrs.experiments import SyndromeHarness, message_bits
from qrs.galois import Basis, dual_basis, find_self_dual_basis, make_field
from qrs.simulator import basis_action, dense_simulate
from qrs.spectral import FieldMatrix, binary_expand_matrix, dft_matrix, idft_matrix


def admissible(k):
    n = (1 << k) - 1
    return [d for d in range(2, n + 1) if 2 * d > n + 2]


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f} s, budget {seconds} s"


def report(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")


def paulis_of_weight(n, w):
    for qubits in itertools.combinations(range(n), w):
        for kinds in itertools.product("XYZ", repeat=w):
            s = ["I"] * n
            for q, kind in zip(qubits, kinds):
                s[q] = kind
            yield PauliOperator.from_string("".join(s))


def _random_basis(F, rng):
    while True:
        try:
            return Basis(F, rng.choice(np.arange(1, F.order), F.k, replace=False).tolist())
        except ValueError:
            continue


@pytest.mark.criterion(1, "duality diagram, all RS codes k=2..4 plus 20 random codes")
def test_criterion_1_duality_diagram():
    checked = 0
    with budget(5):
        for k in (2, 3, 4):
            F = make_field(k)
            for delta in admissible(k):
                C = reed_solomon(F, delta)
                for basis in (find_self_dual_basis(F), Basis.polynomial(F)):
                    # both routes computed independently, compared as row spaces
                    left = dual_code(binary_expansion(C, basis))
                    right = binary_expansion(dual_code(C), dual_basis(basis))
                    assert linalg.row_space_equal(left.generator, right.generator)
                    assert verify_duality_diagram(C, basis)
                    checked += 1
        rng = np.random.default_rng(1)
        for trial in range(20):
            F = make_field(2 if trial % 2 == 0 else 3)
            n = int(rng.integers(2, 8))
            kk = int(rng.integers(1, n))
            C = LinearCode(F, rng.integers(F.order, size=(kk, n)).astype(np.uint8))
            basis = _random_basis(F, rng)
            left = dual_code(binary_expansion(C, basis))
            right = binary_expansion(dual_code(C), dual_basis(basis))
            assert linalg.row_space_equal(left.generator, right.generator)
            checked += 1
    report(1, True, f"{checked} diagrams commute")


@pytest.mark.criterion(2, "parameter identities and exhaustive distance, k=2,3")
def test_criterion_2_parameters():
    rows = []
    with budget(60):
        for k in (2, 3):
            n_sym = (1 << k) - 1
            for delta in admissible(k):
                q = build_quantum_rs(k, delta)
                kk = n_sym - delta + 1
                assert q.n == k * n_sym
                assert q.k_logical == k * (n_sym - 2 * kk)
                d = min_distance(q.dual_code)
                assert d >= kk + 1
                rows.append((k, delta, q.n, q.k_logical, d))
        assert (2, 3, 6, 2, 2) in rows
        q215 = build_quantum_rs(3, 5)
        assert q215.dual_code.dimension == 12  # 2^12 dual codewords enumerated
        assert min_distance(q215.dual_code) >= 4
    report(2, True, " ".join(f"[[{n},{kl},{d}]]" for _, _, n, kl, d in rows))


@pytest.mark.criterion(3, "encoder: dense amplitudes for [[6,2]], stabilized tableau states for [[21,3]], [[21,9]]")
def test_criterion_3_encoder():
    with budget(10):
        q = build_quantum_rs(2, 3)
        enc = parse_circuit(write_circuit(build_encoder(q)))
        words = []
        for coeffs in itertools.product((0, 1), repeat=q.binary_code.dimension):
            w = np.zeros(q.n, np.uint8)
            for c, r in zip(coeffs, q.binary_code.generator):
                if c:
                    w ^= r
            words.append(w)
        amp = 1 / np.sqrt(len(words))
        assert amp == 0.5
        for j in range(1 << q.k_logical):
            expected = np.zeros(1 << q.n)
            for c in words:
                expected[int("".join(map(str, c ^ q.coset_rep(j))), 2)] = amp
            psi = dense_simulate(enc, message_bits(q, j)).amplitudes
            assert np.max(np.abs(psi - expected)) < 1e-10
        for delta in (5, 6):
            q = build_quantum_rs(3, delta)
            h = SyndromeHarness(q)
            gens = [g.padded(h.width) for g in q.stabilizer_generators()]
            assert len(gens) == 2 * len(q.stabilizers)
            for j in range(1 << q.k_logical):
                bits = np.array([(j >> m) & 1 for m in range(q.k_logical)], np.uint8)
                state = h.encoded(bits)
                assert all(state.is_stabilized_by(g) for g in gens)
                assert h.logicals_hold(state, bits)
    report(3, True, "dense cosets exact; 8 + 512 encoded tableau states stabilized")


@pytest.mark.criterion(4, "syndrome circuit readouts equal classical syndromes")
def test_criterion_4_syndrome_circuit():
    count = 0
    with budget(30):
        cases = [((2, 3), (1, 2)), ((3, 6), (1,))]
        for (k, delta), weights in cases:
            q = build_quantum_rs(k, delta)
            h = SyndromeHarness(q)
            for w in weights:
                for e in paulis_of_weight(q.n, w):
                    state = h.encoded(np.zeros(q.k_logical, np.uint8))
                    state.apply_pauli(e.padded(h.width))
                    want = classical_syndrome(q, e)
                    first = h.extract(state)
                    again = h.extract(state)
                    for s_x, s_z, det in (first, again):
                        assert det, f"nondeterministic readout for {e}"
                        assert np.array_equal(s_x, want[0]) and np.array_equal(s_z, want[1]), str(e)
                    count += 1
    assert count == 18 + 135 + 63
    report(4, True, f"{count} errors, readouts deterministic and repeatable")


@pytest.mark.criterion(5, "detection on [[6,2,2]], weight-1 correction on [[21,9]]")
def test_criterion_5_detection_correction():
    with budget(60):
        q = build_quantum_rs(2, 3)
        table = build_decoder_table(q)
        for e in paulis_of_weight(6, 1):
            s_x, s_z = classical_syndrome(q, e)
            assert s_x.any() or s_z.any() or q.in_stabilizer_group(e)
            if s_x.any() or s_z.any():
                with pytest.raises(UncorrectableError):
                    decode(table, s_x, s_z)
        q = build_quantum_rs(3, 6)
        assert q.distance_exact >= 3
        table = build_decoder_table(q, 1)
        errors = [PauliOperator.identity(q.n)] + list(paulis_of_weight(q.n, 1))
        for e in errors:
            fix = decode(table, *classical_syndrome(q, e))
            assert q.in_stabilizer_group(e.compose(fix)), str(e)
        for a, b in itertools.combinations(errors, 2):
            sa, sb = classical_syndrome(q, a), classical_syndrome(q, b)
            if np.array_equal(sa[0], sb[0]) and np.array_equal(sa[1], sb[1]):
                assert q.in_stabilizer_group(a.compose(b))
    report(5, True, "18 weight-1 errors detected; 63 weight-1 errors corrected")


@pytest.mark.criterion(6, "spectral engine: inverse, functoriality, membership")
def test_criterion_6_spectral():
    with budget(10):
        for k in (2, 3, 4, 5):
            F = make_field(k)
            assert dft_matrix(F) @ idft_matrix(F) == FieldMatrix.identity(F, F.n)
        rng = np.random.default_rng(6)
        for _ in range(50):
            F = make_field(int(rng.integers(2, 5)))
            a, m, c = (int(x) for x in rng.integers(1, 6, size=3))
            A = FieldMatrix(F, rng.integers(F.order, size=(a, m)).astype(np.uint8))
            B = FieldMatrix(F, rng.integers(F.order, size=(m, c)).astype(np.uint8))
            basis = _random_basis(F, rng)
            lhs = binary_expand_matrix(A @ B, basis)
            rhs = linalg.matmul(binary_expand_matrix(A, basis), binary_expand_matrix(B, basis))
            assert np.array_equal(lhs, rhs)
        for k in (2, 3):
            F = make_field(k)
            mul = oracle_mul_table(F)
            vecs, spec = all_spectra(F, mul)
            for delta in admissible(k):
                C = reed_solomon(F, delta)
                D = dual_code(C)
                kk = C.dimension
                assert np.array_equal(~spec[:, : F.n - kk].any(axis=1), orthogonal_to(vecs, D.generator, mul))
                assert np.array_equal(~spec[:, 1 : kk + 1].any(axis=1), orthogonal_to(vecs, C.generator, mul))
    report(6, True, "dft*idft = I for k=2..5; 50 functoriality pairs; exhaustive membership k<=3")


@pytest.mark.criterion(7, "CNOT synthesis round trip on 100 random invertible matrices")
def test_criterion_7_synthesis():
    rng = np.random.default_rng(7)
    worst = 0.0
    with budget(10):
        for _ in range(100):
            n = int(rng.integers(2, 25))
            a = random_invertible(n, rng)
            assert gf2_rank(a) == n
            c = synthesize_linear(a)
            for j in range(n):
                e = np.zeros(n, np.uint8)
                e[j] = 1
                assert np.array_equal(basis_action(c, e), a[:, j])
            assert len(c) <= n * n + 2 * n
            worst = max(worst, len(c) / (n * n))
    report(7, True, f"100 matrices, max gates/n^2 = {worst:.2f}")


@pytest.mark.criterion(8, "Monte Carlo [[21,9]], p=0.01, 10^4 trials")
def test_criterion_8_monte_carlo(capsys):
    p, n = 0.01, 21
    bound = (1 - p) ** n + n * p * (1 - p) ** (n - 1)
    argv = ["simulate", "--k", "3", "--delta", "6", "--p", str(p), "--trials", "10000", "--seed", "2026", "--format", "json"]
    with budget(120):
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
    assert first == second
    counts = json.loads(first)["counts"]
    rate = counts["success_rate"]
    assert counts["low_weight_successes"] == counts["low_weight_trials"]
    assert rate >= bound, f"success rate {rate} below {bound:.6f}"
    with capsys.disabled():
        report(8, True, f"success rate {rate:.4f} >= bound {bound:.6f}; reruns identical")

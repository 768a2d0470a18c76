import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_spectra, gf_mul, gf_pow, oracle_mul_table, orthogonal_to
from qrs import linalg
from qrs.codes import dual_code, reed_solomon
from qrs.errors import ContextMismatchError, DimensionError, ParameterError
from qrs.galois import Basis, find_self_dual_basis, make_field
from qrs.spectral import (
    FieldMatrix,
    FrequencyLayout,
    binary_expand_matrix,
    dft_matrix,
    idft_matrix,
    rs_layout,
    spectrum,
)

F4 = make_field(2)
W, W2 = 2, 3


def test_gf4_dft_tables():
    assert dft_matrix(F4).entries.tolist() == [[1, 1, 1], [1, W, W2], [1, W2, W]]
    assert idft_matrix(F4).entries.tolist() == [[1, 1, 1], [1, W2, W], [1, W, W2]]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_dft_inverse(k):
    F = make_field(k)
    f, g = dft_matrix(F), idft_matrix(F)
    assert f @ g == FieldMatrix.identity(F, F.n)
    assert g @ f == FieldMatrix.identity(F, F.n)
    assert f.inverse() == g


@pytest.mark.parametrize("k", [2, 3, 4])
def test_dft_entries_by_oracle(k):
    F = make_field(k)
    f = dft_matrix(F).entries
    for i in range(F.n):
        for j in range(F.n):
            assert f[i, j] == gf_pow(2, i * j, F.modulus)


def test_expand_identity_and_scalar():
    b = find_self_dual_basis(F4)
    assert np.array_equal(binary_expand_matrix(FieldMatrix.identity(F4, 3), b), np.eye(6, dtype=np.uint8))
    assert binary_expand_matrix(FieldMatrix(F4, [[W]]), b).tolist() == [[0, 1], [1, 1]]


def test_expand_context_mismatch():
    with pytest.raises(ContextMismatchError):
        binary_expand_matrix(dft_matrix(F4), find_self_dual_basis(make_field(3)))
    with pytest.raises(ContextMismatchError):
        _ = dft_matrix(F4) @ dft_matrix(make_field(3))


def _random_basis(F, rng):
    while True:
        try:
            return Basis(F, rng.choice(np.arange(1, F.order), F.k, replace=False).tolist())
        except ValueError:
            continue


def test_expand_is_functorial_on_random_pairs():
    rng = np.random.default_rng(50)
    for trial in range(50):
        F = make_field(int(rng.integers(2, 5)))
        a, m, c = (int(x) for x in rng.integers(1, 5, size=3))
        A = FieldMatrix(F, rng.integers(F.order, size=(a, m)).astype(np.uint8))
        B = FieldMatrix(F, rng.integers(F.order, size=(m, c)).astype(np.uint8))
        basis = _random_basis(F, rng)
        lhs = binary_expand_matrix(A @ B, basis)
        rhs = linalg.matmul(binary_expand_matrix(A, basis), binary_expand_matrix(B, basis))
        assert np.array_equal(lhs, rhs)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_expand_acts_on_coordinates(k, seed):
    rng = np.random.default_rng(seed)
    F = make_field(k)
    basis = _random_basis(F, rng)
    M = rng.integers(F.order, size=(2, 3)).astype(np.uint8)
    v = rng.integers(F.order, size=3).astype(np.uint8)
    mv = [0, 0]
    for i in range(2):
        for j in range(3):
            mv[i] ^= gf_mul(int(M[i, j]), int(v[j]), F.modulus)
    coords_v = np.concatenate([basis.coords(int(x)) for x in v])
    coords_mv = np.concatenate([basis.coords(x) for x in mv])
    assert np.array_equal(linalg.matmul(binary_expand_matrix(FieldMatrix(F, M), basis), coords_v), coords_mv)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_expanded_dft_symmetric_with_self_dual_basis(k):
    F = make_field(k)
    b = find_self_dual_basis(F)
    bf = binary_expand_matrix(dft_matrix(F), b)
    bi = binary_expand_matrix(idft_matrix(F), b)
    assert np.array_equal(bf, bf.T)
    assert np.array_equal(linalg.matmul(bf, bi), np.eye(k * F.n, dtype=np.uint8))


@pytest.mark.parametrize("k", [2, 3])
def test_spectral_membership_exhaustive(k):
    F = make_field(k)
    mul = oracle_mul_table(F)
    vecs, spec = all_spectra(F, mul)
    for delta in [d for d in range(2, F.n + 1) if 2 * d > F.n + 2]:
        C = reed_solomon(F, delta)
        D = dual_code(C)
        kk = C.dimension
        in_c = ~spec[:, : F.n - kk].any(axis=1)
        in_d = ~spec[:, 1 : kk + 1].any(axis=1)
        assert in_c.sum() == F.order**kk
        assert in_d.sum() == F.order ** (F.n - kk)
        # membership in C is orthogonality to C^perp and vice versa
        assert np.array_equal(in_c, orthogonal_to(vecs, D.generator, mul))
        assert np.array_equal(in_d, orthogonal_to(vecs, C.generator, mul))


def test_spectrum_single_and_rows():
    F = make_field(3)
    rows = np.random.default_rng(3).integers(8, size=(4, 7)).astype(np.uint8)
    batch = spectrum(rows, F)
    for r, s in zip(rows, batch):
        assert np.array_equal(spectrum(r, F), s)


def test_layout_gf8():
    lay = rs_layout(make_field(3), 6)
    assert lay.dimension == 2
    assert lay.message_freqs == (0, 3, 4)
    assert lay.zero_freqs == (1, 2)
    assert lay.h_freqs == (5, 6)
    assert lay.qubit_of(4, 2) == 14
    assert lay.zero_qubits == (3, 4, 5, 6, 7, 8)
    assert lay.phase_syndrome_qubits == (18, 19, 20, 15, 16, 17)
    everything = sorted(lay.message_qubits + lay.zero_qubits + lay.h_qubits)
    assert everything == list(range(21))
    with pytest.raises(DimensionError):
        lay.qubit_of(7, 0)


def test_layout_rejects_bad_dimension():
    with pytest.raises(ParameterError):
        FrequencyLayout(2, 3, 2)
    with pytest.raises(ParameterError):
        FrequencyLayout(2, 3, 0)

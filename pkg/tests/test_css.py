import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import gf2_rank, span
from qrs.codes import LinearCode, binary_expansion, reed_solomon
from qrs.css import (
    PauliOperator,
    build_css,
    build_decoder_table,
    build_quantum_rs,
    classical_syndrome,
    decode,
    max_correctable,
)
from qrs.errors import CapabilityError, DimensionError, NotSelfOrthogonalError, ParameterError, UncorrectableError
from qrs.galois import find_self_dual_basis, make_field


@pytest.fixture(scope="module")
def q62():
    return build_quantum_rs(2, 3)


@pytest.fixture(scope="module")
def q219():
    return build_quantum_rs(3, 6)


def _symplectic(p, q):
    return (int(p.x @ q.z) + int(p.z @ q.x)) % 2


def test_pauli_strings():
    p = PauliOperator.from_string("-XIZY")
    assert str(p) == "-XIZY"
    assert p.sign == -1 and p.weight == 3 and p.support == [0, 2, 3]
    assert p.x.tolist() == [1, 0, 0, 1] and p.z.tolist() == [0, 0, 1, 1]
    assert str(-p) == "+XIZY"
    assert str(PauliOperator.single(3, 1, "Y")) == "+IYI"
    assert str(PauliOperator.identity(2)) == "+II"
    assert str(PauliOperator.from_string("XZ").padded(4)) == "+XZII"
    with pytest.raises(ValueError):
        PauliOperator.from_string("XQ")


paulis = st.integers(1, 8).flatmap(lambda n: st.tuples(st.text("IXYZ", min_size=n, max_size=n), st.text("IXYZ", min_size=n, max_size=n)))


@given(paulis)
def test_commutation_matches_symplectic_form(pair):
    a, b = (PauliOperator.from_string(s) for s in pair)
    assert a.commutes_with(b) == (_symplectic(a, b) == 0)
    # qubit-by-qubit count of anticommuting positions
    anti = sum(1 for u, v in zip(*pair) if "I" not in (u, v) and u != v)
    assert a.commutes_with(b) == (anti % 2 == 0)
    c = a.compose(b)
    assert np.array_equal(c.x, a.x ^ b.x) and np.array_equal(c.z, a.z ^ b.z)


def test_build_css_gf4(q62):
    b = find_self_dual_basis(make_field(2))
    cbin = binary_expansion(reed_solomon(make_field(2), 3), b)
    q = build_css(cbin)
    assert (q.n, q.k_logical) == (6, 2)
    assert span(q.x_stabilizers) == span([[1, 0, 0, 1, 1, 1], [0, 1, 1, 1, 1, 0]])
    assert np.array_equal(q.x_stabilizers, q.z_stabilizers)
    gens = q.stabilizer_generators()
    assert [str(g) for g in gens[:2]] == ["+" + "".join("X" if c else "I" for c in r) for r in q.stabilizers]
    assert all(g.commutes_with(h) for g, h in itertools.combinations(gens, 2))
    assert q62.stabilizers.tolist() == [[1, 0, 0, 1, 1, 1], [0, 1, 1, 1, 1, 0]]


def test_build_css_rejects_bad_input():
    with pytest.raises(NotSelfOrthogonalError):
        build_css(LinearCode(None, [[1, 0, 0]]))
    with pytest.raises(ParameterError):
        build_css(LinearCode.zero(4))
    with pytest.raises(ParameterError):
        build_css(reed_solomon(make_field(2), 3))


def _brute_distance(q):
    """Minimum weight over the nonzero words of C^perp, by enumerating packed integers."""
    return min(bin(w).count("1") for w in _packed_span(q.dual_code.generator)[1:])


def _packed_span(rows):
    words = [0]
    for r in rows:
        v = int("".join(map(str, r)), 2)
        words += [w ^ v for w in words]
    return words


@pytest.mark.parametrize(
    "k, delta, params, d",
    [(2, 3, (6, 2), 2), (3, 5, (21, 3), 5), (3, 6, (21, 9), 3), (3, 7, (21, 15), 2)],
)
def test_quantum_rs_parameters(k, delta, params, d):
    q = build_quantum_rs(k, delta)
    n_sym = (1 << k) - 1
    kk = n_sym - delta + 1
    assert (q.n, q.k_logical) == params == (k * n_sym, k * (n_sym - 2 * kk))
    assert q.distance_bound == kk + 1
    assert q.distance_exact == d == _brute_distance(q)
    assert q.distance_exact >= q.distance_bound
    assert gf2_rank(q.stabilizers) == k * kk


def test_parameter_strings(q62):
    assert q62.parameters() == "[[6,2,2]]"
    assert build_quantum_rs(4, 10).parameters() == "[[60,12,>=7]]"


def test_logical_operators(q219):
    q = q219
    stabs = q.stabilizer_generators()
    for i, lx in enumerate(q.logical_x):
        for j, lz in enumerate(q.logical_z):
            assert lx.commutes_with(lz) == (i != j)
    for op in q.logical_x + q.logical_z:
        assert all(op.commutes_with(s) for s in stabs)
        assert not q.in_stabilizer_group(op)


def test_coset_reps_gf4(q62):
    assert {tuple(r) for r in q62.coset_reps} == {(0,) * 6, (1,) * 6, (1, 0) * 3, (0, 1) * 3}
    assert q62.coset_rep(0).tolist() == [0] * 6
    assert q62.coset_rep(1).tolist() == [1, 0, 1, 0, 1, 0]
    with pytest.raises(IndexError):
        q62.coset_rep(4)


def test_classical_syndrome_examples(q62):
    s = classical_syndrome(q62, PauliOperator.single(6, 0, "X"))
    assert [v.tolist() for v in s] == [[1, 0], [0, 0]]
    s = classical_syndrome(q62, PauliOperator.single(6, 3, "Z"))
    assert [v.tolist() for v in s] == [[0, 0], [1, 1]]
    s = classical_syndrome(q62, PauliOperator.identity(6))
    assert [v.tolist() for v in s] == [[0, 0], [0, 0]]
    with pytest.raises(DimensionError):
        classical_syndrome(q62, PauliOperator.identity(5))


@settings(max_examples=50)
@given(st.text("IXYZ", min_size=6, max_size=6), st.text("IXYZ", min_size=6, max_size=6))
def test_syndrome_is_linear(a, b):
    q = build_quantum_rs(2, 3)
    pa, pb = PauliOperator.from_string(a), PauliOperator.from_string(b)
    sa, sb, sab = (classical_syndrome(q, p) for p in (pa, pb, pa.compose(pb)))
    assert np.array_equal(sab[0], sa[0] ^ sb[0]) and np.array_equal(sab[1], sa[1] ^ sb[1])


def test_detection_only_decoder(q62):
    assert max_correctable(q62) == 0
    table = build_decoder_table(q62)
    assert table.t == 0 and len(table) == 1
    assert str(decode(table, [0, 0], [0, 0])) == "+IIIIII"
    with pytest.raises(UncorrectableError) as err:
        decode(table, [1, 0], [0, 0])
    assert err.value.s_x.tolist() == [1, 0]
    with pytest.raises(CapabilityError):
        build_decoder_table(q62, 1)


def _weight_one(n):
    for q, kind in itertools.product(range(n), "XYZ"):
        yield PauliOperator.single(n, q, kind)


def test_weight_one_correction(q219):
    table = build_decoder_table(q219, 1)
    assert len(table) == 64
    errors = list(_weight_one(q219.n)) + [PauliOperator.identity(q219.n)]
    for e in errors:
        fix = decode(table, *classical_syndrome(q219, e))
        assert q219.in_stabilizer_group(e.compose(fix))
    # degenerate pairs: equal syndromes differ by a stabilizer
    for a, b in itertools.combinations(errors, 2):
        sa, sb = classical_syndrome(q219, a), classical_syndrome(q219, b)
        if np.array_equal(sa[0], sb[0]) and np.array_equal(sa[1], sb[1]):
            assert q219.in_stabilizer_group(a.compose(b))


def test_code_text(q62):
    lines = q62.to_text().splitlines()
    assert lines[0] == "[[6,2,2]]"
    assert lines[1] == "X XIIXXX"
    assert sum(ln.startswith("LX ") for ln in lines) == 2

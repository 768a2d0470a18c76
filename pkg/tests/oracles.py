"""Slow, table-free reference implementations used to cross-check the library."""

import itertools

import numpy as np


def clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def gf_mul(a: int, b: int, modulus: int) -> int:
    return polymod(clmul(a, b), modulus)


def gf_pow(a: int, e: int, modulus: int) -> int:
    r = 1
    for _ in range(e):
        r = gf_mul(r, a, modulus)
    return r


def irreducible(p: int) -> bool:
    d = p.bit_length() - 1
    return all(polymod(p, q) for q in range(2, 1 << (d // 2 + 1)))


def order_of_x(modulus: int) -> int:
    v, i = 2, 1
    while v != 1:
        v = gf_mul(v, 2, modulus)
        i += 1
    return i


def gf_trace(a: int, modulus: int) -> int:
    k = modulus.bit_length() - 1
    t, s = 0, a
    for _ in range(k):
        t ^= s
        s = gf_mul(s, s, modulus)
    assert t in (0, 1)
    return t


def coords_by_search(a: int, basis, modulus: int) -> tuple[int, ...]:
    """Brute-force the coordinate vector of ``a``."""
    k = len(basis)
    for bits in itertools.product((0, 1), repeat=k):
        s = 0
        for b, e in zip(bits, basis):
            if b:
                s ^= e
        if s == a:
            return bits
    raise AssertionError("not spanned")


def gf2_rank(m) -> int:
    rows = [int("".join(map(str, r)), 2) for r in np.asarray(m, dtype=np.uint8)] if len(m) else []
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        if not pivot:
            break
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
    return rank


def span(rows) -> set[tuple[int, ...]]:
    rows = [tuple(int(x) for x in r) for r in rows]
    n = len(rows[0]) if rows else 0
    out = {tuple([0] * n)}
    for r in rows:
        out |= {tuple(a ^ b for a, b in zip(r, w)) for w in out}
    return out


def random_invertible(n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        a = rng.integers(2, size=(n, n)).astype(np.uint8)
        if gf2_rank(a) == n:
            return a


def oracle_mul_table(F):
    return np.array([[gf_mul(a, b, F.modulus) for b in range(F.order)] for a in range(F.order)], dtype=np.uint8)


def all_spectra(F, mul):
    """Every vector of GF(q)^N with its spectrum, from the carry-less oracle tables."""
    n, q = F.n, F.order
    vecs = np.indices((q,) * n, dtype=np.uint8).reshape(n, -1).T
    spec = np.zeros_like(vecs)
    for i in range(n):
        for j in range(n):
            spec[:, i] ^= mul[vecs[:, j], gf_pow(2, i * j, F.modulus)]
    return vecs, spec


def orthogonal_to(vecs, rows, mul):
    ok = np.ones(len(vecs), dtype=bool)
    for r in rows:
        acc = np.zeros(len(vecs), dtype=np.uint8)
        for j, c in enumerate(r):
            acc ^= mul[vecs[:, j], c]
        ok &= acc == 0
    return ok

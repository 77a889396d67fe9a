from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerloop.gf2 import (
    DimensionMismatch,
    F2Matrix,
    F2Subspace,
    Quotient,
    image,
    kernel,
    preimage_subspace,
    rank,
    sum_intersect_quotient,
    unpack,
    vector,
)


# brute-force oracles: enumerate every vector of the ambient space


def all_vectors(n):
    return range(1 << n)


def span_set(vectors, n):
    out = {0}
    for v in vectors:
        out |= {w ^ v for w in out}
    return out


def brute_rank(m: F2Matrix):
    return len(span_set(m.bits, m.cols)).bit_length() - 1


def brute_kernel(m: F2Matrix):
    return {v for v in all_vectors(m.cols) if m.apply(v) == 0}


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return F2Matrix(r, c, rows)


@st.composite
def subspaces(draw, n):
    vecs = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=n + 1))
    return F2Subspace.span(n, vecs)


def test_rank_examples():
    assert rank(F2Matrix.identity(3)) == 3
    assert rank(F2Matrix.zeros(3, 3)) == 0
    m = F2Matrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank(m) == 2 == brute_rank(m)


def test_kernel_examples():
    assert kernel(F2Matrix.identity(3)).dim == 0
    assert kernel(F2Matrix.zeros(3, 3)) == F2Subspace.full(3)
    k = kernel(F2Matrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))
    assert set(k.elements()) == {0, vector([1, 1, 1])}


def test_preimage_examples():
    m = F2Matrix.from_lists([[1, 1], [0, 1], [1, 0]])
    assert preimage_subspace(m, F2Subspace.full(3)) == F2Subspace.full(2)
    assert preimage_subspace(m, F2Subspace.zero(3)) == kernel(m)
    ident = F2Matrix.identity(2)
    line = F2Subspace.span(2, [vector([1, 0])])
    assert preimage_subspace(ident, line) == line
    with pytest.raises(DimensionMismatch):
        preimage_subspace(ident, F2Subspace.full(3))


def test_sum_intersect_examples():
    a = F2Subspace.span(3, [0b011, 0b100])
    s, i, q = sum_intersect_quotient(a, a, F2Subspace.zero(3))
    assert s == i == a and q == 2
    x, y = F2Subspace.span(2, [0b01]), F2Subspace.span(2, [0b11])
    s, i, q = sum_intersect_quotient(x, y, x)
    assert s == F2Subspace.full(2) and i.dim == 0 and q == 1
    with pytest.raises(DimensionMismatch):
        sum_intersect_quotient(x, F2Subspace.zero(3), x)


@given(matrices())
def test_rank_nullity(m):
    k = kernel(m)
    assert rank(m) + k.dim == m.cols
    assert rank(m) == brute_rank(m)
    assert set(k.elements()) == brute_kernel(m)


@given(matrices())
def test_transpose_rank_and_image(m):
    assert rank(m.transpose()) == rank(m)
    img = {m.apply(v) for v in all_vectors(m.cols)}
    assert set(image(m).elements()) == img


@given(matrices(5), st.data())
def test_preimage_by_enumeration(m, data):
    t = data.draw(subspaces(m.rows))
    tset = set(t.elements())
    want = {v for v in all_vectors(m.cols) if m.apply(v) in tset}
    assert set(preimage_subspace(m, t).elements()) == want


@settings(max_examples=60)
@given(st.integers(1, 12), st.data())
def test_dimension_formula_and_enumeration(n, data):
    a = data.draw(subspaces(n))
    b = data.draw(subspaces(n))
    c = data.draw(subspaces(n))
    s, i, q = sum_intersect_quotient(a, b, c)
    assert s.dim + i.dim == a.dim + b.dim
    if n <= 8:
        sa, sb, sc = set(a.elements()), set(b.elements()), set(c.elements())
        assert set(i.elements()) == sa & sb
        assert set(s.elements()) == {x ^ y for x in sa for y in sb}
        assert (1 << q) == len(set(s.elements())) // len(sc & set(s.elements()))


@given(st.integers(1, 8), st.data())
def test_echelon_canonical(n, data):
    vecs = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=6))
    perm = data.draw(st.permutations(vecs))
    # mix in redundant combinations: the span is unchanged
    extra = [v ^ w for v, w in zip(vecs, vecs[1:])]
    a = F2Subspace.span(n, vecs)
    b = F2Subspace.span(n, list(perm) + extra)
    assert a.basis == b.basis
    assert a == b and hash(a) == hash(b)


@given(st.integers(1, 7), st.data())
def test_quotient_coordinates(n, data):
    sub = data.draw(subspaces(n))
    space = sub + data.draw(subspaces(n))
    q = Quotient(space, sub)
    assert q.dim == space.dim - sub.dim
    # coordinates are linear and vanish exactly on sub
    for v in space.elements():
        assert (q.coords(v) == 0) == (v in sub)
    for i, r in enumerate(q.reps):
        assert q.coords(r) == 1 << i


def test_quotient_rejects_non_subspace():
    with pytest.raises(ValueError):
        Quotient(F2Subspace.span(2, [1]), F2Subspace.span(2, [2]))


@given(matrices(4), matrices(4))
def test_matmul_matches_entrywise(a, b):
    if a.cols != b.rows:
        b = F2Matrix(a.cols, b.cols, [r for r in b.bits[: a.cols]] + [0] * max(0, a.cols - b.rows))
    c = a @ b
    for i, j in product(range(a.rows), range(b.cols)):
        assert c[i, j] == sum(a[i, k] * b[k, j] for k in range(a.cols)) % 2


def test_pack_roundtrip():
    for bits in product([0, 1], repeat=4):
        assert unpack(vector(bits), 4) == list(bits)

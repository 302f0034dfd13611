import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import PolyField, rank_by_enumeration
from scalarend import matrix as mx
from scalarend.gf import make_field

FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2)]


def rand_mat(F, rng, r, c, density=0.7):
    a = rng.integers(0, F.q, (r, c))
    a[rng.random((r, c)) > density] = 0
    return a


def poly(F):
    return PolyField(F.p, F.modulus if F.m > 1 else (0, 1))


@settings(max_examples=40, deadline=None)
@given(pm=st.sampled_from(FIELDS), r=st.integers(1, 3), c=st.integers(1, 5), seed=st.integers(0, 10**6))
def test_rank_matches_span_enumeration(pm, r, c, seed):
    F = make_field(*pm)
    a = rand_mat(F, np.random.default_rng(seed), r, c)
    assert mx.rank(F, a) == rank_by_enumeration(poly(F), a)


@settings(max_examples=40, deadline=None)
@given(pm=st.sampled_from(FIELDS), r=st.integers(1, 7), c=st.integers(1, 7), seed=st.integers(0, 10**6))
def test_nullspace_and_rref(pm, r, c, seed):
    F = make_field(*pm)
    a = rand_mat(F, np.random.default_rng(seed), r, c)
    e, piv, rk = mx.rref(F, a)
    assert rk == len(piv) == mx.rank(F, a)
    # pivots are leading ones with zeros elsewhere in their column
    for i, p in enumerate(piv):
        assert e[i, p] == 1 and np.count_nonzero(e[:, p]) == 1
        assert not e[i, :p].any()
    left = mx.left_nullspace(F, a)
    assert left.dim == r - rk
    if left.dim:
        assert not F.dot(left.basis, a).any()
    right = mx.nullspace(F, a)
    assert right.dim == c - rk
    if right.dim:
        assert not F.dot(a, right.basis.T).any()


@settings(max_examples=30, deadline=None)
@given(pm=st.sampled_from(FIELDS), n=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_inverse_and_solve(pm, n, seed):
    F = make_field(*pm)
    rng = np.random.default_rng(seed)
    a = rand_mat(F, rng, n, n, 1.0)
    if not mx.is_invertible(F, a):
        with pytest.raises(ZeroDivisionError):
            mx.inverse(F, a)
        return
    ai = mx.inverse(F, a)
    assert np.array_equal(F.dot(a, ai), mx.identity(n))
    x = rand_mat(F, rng, 2, n, 1.0)
    b = F.dot(x, a)
    assert np.array_equal(mx.solve(F, a, b), x)


def test_solve_inconsistent():
    F = make_field(2)
    with pytest.raises(mx.NoSolution):
        mx.solve(F, [[1, 0], [1, 0]], [[0, 1]])


def _elements(F, sub):
    """All vectors of a subspace, by enumerating coefficient tuples."""
    P = poly(F)
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=sub.dim):
        v = [0] * sub.ambient_dim
        for c, row in zip(coeffs, sub.basis):
            for j in range(sub.ambient_dim):
                v[j] = P.add(v[j], P.mul(c, int(row[j])))
        out.add(tuple(v))
    return out


@settings(max_examples=40, deadline=None)
@given(pm=st.sampled_from([(2, 1), (3, 1), (2, 2)]), n=st.integers(1, 4), seed=st.integers(0, 10**6))
def test_subspace_lattice_against_enumeration(pm, n, seed):
    F = make_field(*pm)
    rng = np.random.default_rng(seed)
    U = mx.Subspace.span(F, rand_mat(F, rng, rng.integers(1, n + 1), n), n)
    W = mx.Subspace.span(F, rand_mat(F, rng, rng.integers(1, n + 1), n), n)
    eu, ew = _elements(F, U), _elements(F, W)
    cap = U.intersect(W)
    assert _elements(F, cap) == eu & ew
    assert (U + W).dim + cap.dim == U.dim + W.dim
    assert U.issubspace(U + W) and cap.issubspace(U)
    for v in list(eu)[:5]:
        assert U.contains(np.array(v))
        assert np.array_equal(F.dot(U.coordinates(np.array(v)), U.basis)[0], np.array(v))


def test_incremental_nullspace_matches_batch():
    F = make_field(3, 2)
    rng = np.random.default_rng(3)
    cols = [rand_mat(F, rng, 9, k) for k in (2, 3, 1, 4)]
    inc = mx.IncrementalNullspace(F, 9)
    for c in cols:
        inc.add(c)
    whole = mx.left_nullspace(F, np.concatenate(cols, axis=1))
    assert inc.result() == whole
    assert inc.dim == whole.dim


def test_block_and_direct_sum():
    a = np.array([[1, 2], [0, 1]])
    b = np.array([[2]])
    m = mx.direct_sum(a, b)
    assert m.shape == (3, 3) and m[2, 2] == 2 and not m[:2, 2].any()
    blk = mx.block([[a, np.zeros((2, 1), dtype=np.int64)], [np.zeros((1, 2), dtype=np.int64), b]])
    assert np.array_equal(blk, m)
    with pytest.raises(mx.DimensionError):
        mx.block([[a, b], [b, a]])


def test_kron_and_order():
    F = make_field(3)
    a = np.array([[0, 1], [2, 0]])
    assert mx.order(F, a) == 4
    k = mx.kron(F, a, mx.identity(2))
    assert np.array_equal(F.dot(k, k), mx.kron(F, F.dot(a, a), mx.identity(2)))
    assert np.array_equal(mx.matpow(F, a, -1), mx.inverse(F, a))


def test_matrix_text_roundtrip():
    F = make_field(5, 2)
    a = np.random.default_rng(0).integers(0, 25, (3, 4))
    G, b = mx.parse_matrix(mx.format_matrix(F, a))
    assert G == F and np.array_equal(a, b)
    with pytest.raises(ValueError):
        mx.parse_matrix("GF 2 1 0 1\n1 2\n0 3\n")
    with pytest.raises(mx.DimensionError):
        mx.parse_matrix("GF 2 1 0 1\n1 2\n0\n")


@settings(max_examples=60, deadline=None)
@given(r=st.integers(1, 90), c=st.integers(1, 140), seed=st.integers(0, 10**6), full=st.booleans())
def test_packed_gf2_elimination_matches_dense(r, c, seed, full):
    F = make_field(2)
    a = rand_mat(F, np.random.default_rng(seed), r, c, 0.4)
    x, y = a.copy(), a.copy()
    assert mx._eliminate_gf2(x, full) == mx._eliminate_dense(F, y, full)
    assert np.array_equal(x, y)

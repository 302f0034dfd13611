import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scalarend import grpmod as gm
from scalarend import matrix as mx
from scalarend.gf import make_field

GF9 = make_field(3, 2)
GF2 = make_field(2)
A6 = gm.PermGroup(6, (gm.perm_from_cycles(6, [(1, 2, 3, 4, 5)]), gm.perm_from_cycles(6, [(4, 5, 6)])))


def sym(n):
    return gm.PermGroup(n, (gm.perm_from_cycles(n, [(1, 2)]), gm.perm_from_cycles(n, [tuple(range(1, n + 1))])))


@pytest.fixture(scope="module")
def a6_simples():
    perm = gm.perm_to_rep(A6, GF9, "a6")
    fs = dict((f.dim, f) for f, _ in gm.chop(perm))
    more = [f for f, _ in gm.chop(gm.tensor(fs[4], fs[4]))]
    return fs[1], fs[4], [f for f in more if f.dim == 3], [f for f in more if f.dim == 9]


def test_group_orders():
    assert A6.order() == 360
    assert [sym(n).order() for n in (3, 4, 5, 6, 7)] == [6, 24, 120, 720, 5040]
    assert len(A6.elements()) == 360


def test_word_parsing():
    w = gm.parse_word("abBA")
    assert w == (0, 1, -2, -1)
    assert gm.format_word(w) == "abBA"
    assert gm.free_reduce(w) == ()
    assert gm.invert_word(gm.parse_word("ab")) == gm.parse_word("BA")
    assert gm.free_reduce(gm.parse_word("Aaba")) == gm.parse_word("ba")
    assert gm.cyclic_reduce(gm.parse_word("Aba")) == gm.parse_word("b")


words = st.lists(st.sampled_from([0, 1, -1, -2]), max_size=12).map(tuple)


@settings(max_examples=60, deadline=None)
@given(w=words)
def test_matrix_rep_matches_permutation_words(w):
    """rho(word) must be the permutation matrix of the word evaluated on points."""
    rep = gm.perm_to_rep(A6, GF9)
    g = A6.evaluate(w)
    expect = np.zeros((6, 6), dtype=np.int64)
    for i in range(6):
        expect[i, g[i]] = 1
    assert np.array_equal(rep.evaluate(w), expect)


def test_perm_product_convention():
    x, y = A6.gens
    # (x*y)(i) = y(x(i)): apply x first
    assert gm.perm_mul(x, y) == tuple(y[x[i]] for i in range(6))
    assert gm.perm_mul(x, gm.perm_inv(x)) == A6.identity


def test_chop_permutation_module(a6_simples):
    one, four, threes, nines = a6_simples
    perm = gm.perm_to_rep(A6, GF9)
    factors = gm.chop(perm)
    assert sorted((f.dim, k) for f, k in factors) == [(1, 2), (4, 1)]
    for f, _ in factors:
        assert gm.is_absolutely_irreducible(f)
        assert gm.end_dim(f) == 1
    assert len(threes) == 2 and len(nines) == 1
    assert not gm.iso_test(threes[0], threes[1])[0]


def test_hom_solver_against_full_commutant(a6_simples):
    one, four, threes, _ = a6_simples
    perm = gm.perm_to_rep(A6, GF9)
    for M in (perm, four, gm.direct_sum(one, one), gm.direct_sum(four, threes[0]), gm.tensor(threes[0], threes[1])):
        assert gm.end_dim(M) == gm.commutant_dim(M)
    for f in gm.hom_basis(perm, gm.direct_sum(one, four)):
        assert gm.is_hom(perm, gm.direct_sum(one, four), f)


def test_iso_test_on_conjugates(a6_simples):
    _, four, threes, _ = a6_simples
    rng = np.random.default_rng(1)
    while True:
        x = rng.integers(0, 9, (4, 4))
        if mx.is_invertible(GF9, x):
            break
    ok, f = gm.iso_test(four, gm.conjugate(four, x))
    assert ok and gm.is_hom(four, gm.conjugate(four, x), f)
    assert not gm.iso_test(four, gm.direct_sum(threes[0], gm.trivial_rep(GF9, 2)))[0]


def test_dual_twist_tensor(a6_simples):
    _, four, threes, _ = a6_simples
    dd = gm.dual(gm.dual(four))
    assert all(np.array_equal(x, y) for x, y in zip(dd.gens, four.gens))
    assert gm.iso_test(gm.frobenius_twist(threes[0]), threes[1])[0]
    assert gm.frobenius_twist(four, 2).gens[0].tolist() == four.gens[0].tolist()
    t = gm.tensor(four, threes[0])
    assert t.dim == 12 and sum(f.dim * k for f, k in gm.chop(t)) == 12


def test_split_direct_sum():
    F = make_field(2)
    S5 = sym(5)
    perm = gm.perm_to_rep(S5, F)
    # odd degree: the permutation module splits as 1 + 4
    assert sorted(f.dim for f in gm.composition_factors(perm)) == [1, 4]
    assert gm.hom_dim(perm, gm.trivial_rep(F, 2)) == 1
    assert gm.end_dim(perm) == 2


def test_radical_of_uniserial_module(a6_simples):
    one, four, threes, nines = a6_simples
    perm = gm.perm_to_rep(A6, GF9)
    simples = [one, four, *threes, *nines]
    rad = gm.radical(perm, simples)
    # permutation module in characteristic 3 dividing 6 is uniserial 1 | 4 | 1
    assert rad.dim == 5
    assert gm.top_dims(perm, simples) == [1, 0, 0, 0, 0]
    # only the trivial module sits on top, so the other simples are not needed
    assert gm.radical(perm, [one]) == rad


def test_submodule_quotient():
    perm = gm.perm_to_rep(A6, GF9)
    ones = mx.Subspace.span(GF9, np.ones((1, 6), dtype=np.int64))
    assert gm.is_submodule(perm, ones)
    q = gm.quotient(perm, ones)
    assert q.dim == 5
    assert gm.sub(perm, ones).dim == 1
    with pytest.raises(gm.ModuleError):
        gm.sub(perm, mx.Subspace.span(GF9, np.eye(6, dtype=np.int64)[:1]))


def test_rep_text_roundtrip(a6_simples):
    _, four, _, _ = a6_simples
    back = gm.parse_rep(gm.format_rep(four))
    assert back.field == GF9 and all(np.array_equal(x, y) for x, y in zip(back.gens, four.gens))
    A = gm.PermGroup.parse(A6.format())
    assert A == A6


def test_regular_rep_small():
    S3 = sym(3)
    reg = gm.regular_rep(S3.elements(), GF2)
    assert reg.dim == 6
    assert gm.end_dim(reg) == 6

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scalarend import ext as ex
from scalarend import grpmod as gm
from scalarend import matrix as mx
from scalarend.gf import make_field

GF2, GF3 = make_field(2), make_field(3)


def perm_group(n, *cycles):
    return gm.PermGroup(n, tuple(gm.perm_from_cycles(n, c) for c in cycles))


S3 = perm_group(3, [(1, 2)], [(1, 2, 3)])
C3 = perm_group(3, [(1, 2, 3)])
A5 = perm_group(5, [(1, 2), (3, 4)], [(1, 3, 5)])


def pres_of(G):
    return ex.find_presentation(G)


def sign(F):
    return gm.GroupRep(F, [np.array([[F.neg(1)]]), np.array([[1]])], "s3", "sgn")


# -- coset enumeration --------------------------------------------------------------


def test_coset_enumeration_small():
    w = gm.parse_word
    assert ex.coset_enumerate(1, [w("aaaaa")]) == 5
    a5 = [w("aa"), w("bbb"), w("ababababab")]
    assert ex.coset_enumerate(2, a5) == 60
    assert ex.coset_enumerate(2, a5, [w("a")]) == 30
    assert ex.coset_enumerate(2, a5, [w("ab")]) == 12
    # S3 = <a, b | a^2, b^3, (ab)^2>
    assert ex.coset_enumerate(2, [w("aa"), w("bbb"), w("abab")]) == 6
    with pytest.raises(ex.CosetOverflow):
        ex.coset_enumerate(2, [w("aa")], cap=500)


@pytest.mark.parametrize("G,order", [(S3, 6), (C3, 3), (A5, 60)])
def test_found_presentations_verify(G, order):
    P = pres_of(G)
    assert P.verified and P.check_relators()
    assert ex.coset_enumerate(P.ngens, P.relators) == order
    back = ex.Presentation.parse(P.format(), G)
    assert back.relators == P.relators and back.verify() == order


def test_subgroup_certificate():
    w = gm.parse_word
    # A5 target gens: a = (12)(34), b = (135); ab has order 5
    P = ex.Presentation(2, [w("aa"), w("bbb"), w("ab") * 5], A5, subgroup=w("ab"))
    assert P.check_relators()
    assert P.verify() == 60
    assert ex.Presentation.parse(P.format(), A5).subgroup == w("ab")
    # without (ab)^5 among the relators the bound is lost
    Q = ex.Presentation(2, [w("aa"), w("bbb"), w("ab") * 10], A5, subgroup=w("ab"))
    with pytest.raises(ex.ExtError):
        Q.verify()


def test_wrong_presentation_rejected():
    w = gm.parse_word
    with pytest.raises(ex.ExtError):
        ex.Presentation(2, [w("aa"), w("bb")], S3).verify()  # b has order 3
    with pytest.raises(ex.CosetOverflow):
        ex.Presentation(2, [w("aa"), w("bbb")], S3).verify(cap=10**4)  # modular group: infinite
    with pytest.raises(ex.ExtError):
        ex.ext1_cocycle(gm.trivial_rep(GF2, 2), gm.trivial_rep(GF2, 2), ex.Presentation(2, [w("aa")], S3))


# -- Ext^1 ---------------------------------------------------------------------------


def brute_cocycle_count(S, T, pres):
    """Number of generator tuples d with [[S, d], [0, T]] satisfying every relator."""
    F = S.field
    n = S.ngens * S.dim * T.dim
    count = 0
    for flat in itertools.product(range(F.q), repeat=n):
        d = np.array(flat, dtype=np.int64).reshape(S.ngens, S.dim, T.dim)
        E = ex.extension_module(ex.ExtClass(S, T, list(d)))
        if all(np.array_equal(E.evaluate(r), mx.identity(E.dim)) for r in pres.relators):
            count += 1
    return count


@pytest.mark.parametrize("F", [GF2, GF3])
def test_cocycle_space_against_enumeration(F):
    P = pres_of(S3)
    mods = [gm.trivial_rep(F, 2), sign(F)] if F.p == 3 else [gm.trivial_rep(F, 2)]
    for S in mods:
        for T in mods:
            Z = ex.cocycle_space(S, T, P)
            assert F.q**Z.dim == brute_cocycle_count(S, T, P)


@pytest.mark.parametrize(
    "F,which,expect",
    [
        # H^1(S3, k) = Hom(S3, k): C2 quotient gives 1 in char 2, nothing in char 3
        (GF2, ("1", "1"), 1),
        (GF3, ("1", "1"), 0),
        (GF3, ("1", "sgn"), 1),
        (GF3, ("sgn", "1"), 1),
        (GF3, ("sgn", "sgn"), 0),
    ],
)
def test_s3_ext_known_values(F, which, expect):
    P = pres_of(S3)
    mods = {"1": gm.trivial_rep(F, 2), "sgn": sign(F)}
    S, T = mods[which[0]], mods[which[1]]
    assert len(ex.ext1_cocycle(S, T, P, allow_isomorphic=True)) == expect
    assert ex.ext1_freehull(S, T, S3.elements()) == expect


def test_cyclic_ext_and_projective_simple():
    P = pres_of(C3)
    k = gm.trivial_rep(GF3, 1)
    assert ex.ext1_dim(k, k, P) == 1 == ex.ext1_freehull(k, k, C3.elements())
    # the 2-dim simple of S3 in char 2 is projective
    Ps = pres_of(S3)
    perm = gm.perm_to_rep(S3, GF2)
    two = [f for f, _ in gm.chop(perm) if f.dim == 2]
    if not two:
        two = [gm.quotient(perm, mx.Subspace.span(GF2, np.ones((1, 3), dtype=np.int64)))]
    for T in (gm.trivial_rep(GF2, 2), two[0]):
        assert ex.ext1_dim(two[0], T, Ps) == 0
        assert ex.ext1_freehull(two[0], T, S3.elements()) == 0


@settings(max_examples=20, deadline=None)
@given(k=st.integers(0, 2), seed=st.integers(0, 10**6))
def test_extension_modules_and_splitting(k, seed):
    F = GF3
    P = pres_of(S3)
    one, sg = gm.trivial_rep(F, 2), sign(F)
    (c,) = ex.ext1_cocycle(one, sg, P)
    cls = c.scaled(k)
    assert ex.is_cocycle(cls, P)
    E = ex.extension_module(cls)
    assert ex.is_split(cls) == (k == 0)
    # non-split extensions have a one-dimensional endomorphism ring here
    assert gm.end_dim(E) == (2 if k == 0 else 1)
    # adding a coboundary does not change the class
    rng = np.random.default_rng(seed)
    f = rng.integers(0, 3, (1, 1))
    cob = [F.sub(F.dot(s, f), F.dot(f, t)) for s, t in zip(one.gens, sg.gens)]
    moved = ex.ExtClass(one, sg, [F.add(d, b) for d, b in zip(cls.cocycle, cob)])
    assert np.array_equal(ex.reduce_class(moved), ex.reduce_class(cls))


def test_isomorphic_pair_and_stack_errors():
    P = pres_of(S3)
    one, sg = gm.trivial_rep(GF3, 2), sign(GF3)
    with pytest.raises(ex.ExtError):
        ex.ext1_cocycle(one, one, P)
    (c,) = ex.ext1_cocycle(one, sg, P)
    with pytest.raises(ex.ExtError):
        ex.stack_extensions([c, c.scaled(2)])
    M = ex.stack_extensions([c])
    assert M.dim == 2 and gm.end_dim(M) == 1
    with pytest.raises(ex.ExtError):
        ex.stack_extensions([])


def test_class_text_roundtrip():
    P = pres_of(S3)
    one, sg = gm.trivial_rep(GF3, 2), sign(GF3)
    (c,) = ex.ext1_cocycle(one, sg, P)
    back = ex.parse_class(ex.format_class(c), one, sg)
    assert all(np.array_equal(x, y) for x, y in zip(back.cocycle, c.cocycle))
    with pytest.raises(ex.ExtError):
        ex.parse_class(ex.format_class(c), gm.trivial_rep(GF2, 2), gm.trivial_rep(GF2, 2))


def test_freehull_cap():
    k = gm.trivial_rep(GF2, 2)
    with pytest.raises(ex.ExtError):
        ex.ext1_freehull(k, k, A5.elements(), cap=10)

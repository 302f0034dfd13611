"""Acceptance criteria.  Each test records one line, printed in the terminal summary."""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from oracles import PolyField, chain_factors, spin_dimension_census

from scalarend import assembly as asm
from scalarend import catalog as cat
from scalarend import grpmod as gm
from scalarend import quiver as qv
from scalarend.ext import ext1_cocycle, ext1_freehull
from scalarend.gf import make_field


def record(key, ok, detail):
    ACCEPTANCE[key] = ("PASS " if ok else "FAIL ") + detail
    assert ok, detail


@pytest.fixture(scope="module")
def a6():
    e = cat.load("a6_f9")
    cat.simples(e)
    return e


def test_criterion_1_quiver_end_scalar():
    t0 = time.perf_counter()
    bad, count = [], 0
    runs = [("i", None, q) for q in (2, 3, 9)] + [("ii", None, q) for q in (2, 3, 9)]
    runs += [("iii", r, q) for r in (2, 3, 5) for q in (2, 3, 9)]
    for case, r, q in runs:
        F = make_field(*{2: (2, 1), 3: (3, 1), 9: (3, 2)}[q])
        for m in range(1, 101):
            d = qv.end_dim(qv.build_mm(case, F, m, r))
            count += 1
            if d != 1:
                bad.append((case, r, q, m, d))
    dt = time.perf_counter() - t0
    record("1", not bad and dt < 30, f"{count} modules, End dim 1 for all: {not bad}, {dt:.1f}s (limit 30s)")


def test_criterion_2_case_i_decompositions():
    bad = []
    for q in (2, 9):
        F = make_field(*{2: (2, 1), 9: (3, 2)}[q])
        for m in range(1, 51):
            rep = qv.build_mm("i", F, m)
            d = qv.proof_decompositions(rep)
            if not qv.is_direct_sum([d["ker_Y"], d["ker_X"]], rep.dims[0]):
                bad.append(("V", q, m))
            if not qv.is_direct_sum([d["im_X"], d["im_Y"]], rep.dims[1]):
                bad.append(("W", q, m))
    record("2", not bad, f"V = Ker Y + Ker X and W = Im X + Im Y direct for m=1..50 over GF(2), GF(9); failures {bad}")


def test_criterion_3_a6_simples():
    t0 = time.perf_counter()
    e = cat.load("a6_f9")
    found = cat.discover_simples(e).simples
    by_dim = {d: [s for s in found if s.dim == d] for d in (1, 3, 4)}
    ok_found = all(by_dim[d] for d in (1, 3, 4))
    ok_abs = all(gm.is_absolutely_irreducible(s) and gm.end_dim(s) == 1 for d in by_dim for s in by_dim[d])
    lib = sorted(f.dim for f in gm.composition_factors(e.perm_module()))
    P = PolyField(e.field.p, e.field.modulus)
    census = spin_dimension_census(P.tables(), e.field.q, e.group.degree, e.group.gens)
    oracle = chain_factors(e.field.q, e.group.degree, census)
    dt = time.perf_counter() - t0
    ok = ok_found and ok_abs and lib == [1, 1, 4] and oracle is not None and sorted(oracle) == lib and dt < 120
    record("3", ok, f"simple dims {[s.dim for s in found]}, abs. irreducible with End 1: {ok_abs}; "
                    f"perm chop {lib}, oracle {oracle}; {dt:.1f}s (limit 120s)")


def test_criterion_4_a6_ext(a6):
    t0 = time.perf_counter()
    ss = [s for s in cat.simples(a6) if s.dim in (1, 3, 4)]
    one = next(s for s in ss if s.dim == 1)
    four = next(s for s in ss if s.dim == 4)
    pres = a6.presentation
    elems = a6.group.elements()
    table, disagree = {}, []
    for S in ss:
        for T in ss:
            c = len(ext1_cocycle(S, T, pres, allow_isomorphic=True))
            f = ext1_freehull(S, T, elems)
            table[(S.name, T.name)] = c
            if c != f:
                disagree.append((S.name, T.name, c, f))
    r_ok = [s.name for s in ss if s.dim == 3 and table[(s.name, four.name)] >= 1]
    dt = time.perf_counter() - t0
    ok = (table[(one.name, four.name)] == 2 and table[(four.name, one.name)] == 2 and r_ok
          and not disagree and dt < 300)
    record("4", ok, f"Ext(1,4)={table[(one.name, four.name)]} Ext(4,1)={table[(four.name, one.name)]}, "
                    f"3-dim R with Ext(R,4)>=1: {r_ok}, methods agree on {len(table)} pairs: {not disagree}; "
                    f"{dt:.1f}s (limit 300s)")


def _profile(r):
    return r.end_dim, r.radical_dim, dict(r.radical_mult), dict(r.top)


def test_criterion_5_a6_case_ii(a6):
    t0 = time.perf_counter()
    ing = cat.ingredients(a6)
    dR, dS, dT = (ing.simples[k].dim for k in ("R", "S", "T"))
    problems = []
    for m in range(1, 9):
        b = asm.blueprint("ii", m, None, a6.field)
        M = asm.build_group_mm(b, ing)
        emb = asm.embed_group_mm(b, asm.blueprint("ii", m + 1, None, a6.field), ing)
        r = asm.verify_theorem_mm(M, b, ing, embedding=emb)
        want = (1, dT * m, {"T": m}, {"R": 1, **({"S": m - 1} if m > 1 else {})})
        if not r.ok or _profile(r) != want or M.dim != dR + (m - 1) * dS + m * dT or M.dim != 5 * m + 2:
            problems.append((m, r.failure, _profile(r), M.dim))
        if not emb.is_intertwining():
            problems.append((m, "embedding"))
    dt = time.perf_counter() - t0
    record("5", not problems and dt < 300,
           f"m=1..8: End 1, Rad dim 4m with Hom(Rad,T)=m, top R+S^(m-1), dim 5m+2, embeddings intertwine; "
           f"problems {problems}; {dt:.1f}s (limit 300s)")


def test_criterion_6_basis_independence(a6):
    ing1 = cat.ingredients(a6, "canonical")
    ing2 = cat.ingredients(a6, "alt")
    differs = any(not np.array_equal(ing1.classes[k].vector, ing2.classes[k].vector) for k in ing1.classes)
    b = asm.blueprint("ii", 4, None, a6.field)
    r1 = asm.verify_theorem_mm(asm.build_group_mm(b, ing1), b, ing1)
    r2 = asm.verify_theorem_mm(asm.build_group_mm(b, ing2), b, ing2)
    ok = differs and r1.ok and r2.ok and _profile(r1) == _profile(r2) and r2.end_dim == 1
    record("6", ok, f"second basis differs: {differs}; M_4 profiles {_profile(r1)} vs {_profile(r2)}")


def test_criterion_7_centraliser(a6):
    ing = cat.ingredients(a6)
    certs = []
    for m in range(1, 5):
        b = asm.blueprint("ii", m, None, a6.field)
        M = asm.build_group_mm(b, ing)
        certs.append(asm.centraliser_certificate(M, asm.quotient_slot(b, ing)))
    S = ing.simples["S"]
    neg = asm.centraliser_certificate(gm.direct_sum(S, S), (0, S.dim))
    ok = all(c.ok and c.commutant_dim == 1 and c.lam == 1 for c in certs) and not neg.ok and neg.commutant_dim == 4
    record("7", ok, f"commutant dims {[c.commutant_dim for c in certs]}, lambda {[c.lam for c in certs]}; "
                    f"S+S commutant {neg.commutant_dim}, refused: {not neg.ok}")


def test_criterion_8_psl2_25():
    t0 = time.perf_counter()
    e = cat.load("l25_f25")
    ss = cat.discover_simples(e).simples
    four = [s for s in ss if s.dim == 4]
    nine = [s for s in ss if s.dim == 9]
    ok_found = bool(four and nine) and all(gm.is_absolutely_irreducible(s) for s in four + nine)
    a = b = None
    if ok_found:
        a = len(ext1_cocycle(four[0], nine[0], e.presentation))
        b = len(ext1_cocycle(nine[0], four[0], e.presentation))
    dt = time.perf_counter() - t0
    record("8", ok_found and a == 2 and b == 2 and dt < 900,
           f"simples {[s.dim for s in ss]}; Ext(4,9)={a} Ext(9,4)={b}; {dt:.1f}s (limit 900s)")


@pytest.mark.stretch
def test_criterion_9a_psl42_case_iii():
    t0 = time.perf_counter()
    e = cat.load("l42_f2", verify=True)
    ing = cat.ingredients(e)
    results = []
    for m in range(1, 6):
        b = asm.blueprint("iii", m, e.r, e.field)
        r = asm.verify_theorem_mm(asm.build_group_mm(b, ing), b, ing)
        results.append((m, r.end_dim, r.ok))
    roles = {k: v.name for k, v in ing.simples.items()}
    dt = time.perf_counter() - t0
    record("9a", all(ok and d == 1 for _, d, ok in results),
           f"PSL(4,2) roles {roles}; (m, End dim, theorem checks) {results}; {dt:.1f}s")


@pytest.mark.stretch
def test_criterion_9b_m12():
    t0 = time.perf_counter()
    e = cat.load("m12_f2", verify=True)
    ss = cat.discover_simples(e).simples
    dims = sorted({s.dim for s in ss})
    ra = cat.assign_roles(e)
    st = ra.ext_dims.get(("S", "T"))
    rt = ra.ext_dims.get(("R", "T"))
    dt = time.perf_counter() - t0
    record("9b", {1, 10, 44} <= set(dims) and st == 2,
           f"M12 simple dims {dims}; Ext(S,T)={st} Ext(R,T)={rt}; {dt:.1f}s")

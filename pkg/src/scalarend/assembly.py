"""Group-level modules M_m assembled from quiver blueprints and Ext^1 classes.

A blueprint is a quiver representation whose basis vectors are labelled
``("v", i)`` (top slots) and ``("w", j)`` (bottom slots).  Each quiver vertex
is assigned a simple module and each arrow an extension class between the
simples at its ends.  The group module has one diagonal block per slot, top
slots first, and the off-diagonal block for slot pair (v_i, w_j) is the sum
over arrows of ``M_arrow[v_i, w_j] * d_arrow``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import Counter

import numpy as np

from . import grpmod as gm
from . import matrix as mx
from . import quiver as qv
from .ext import ExtClass, ExtError, Presentation, classes_independent, ext1_cocycle
from .gf import FieldSpec
from .grpmod import GHom, GroupRep


class AssemblyError(ValueError):
    pass


# -- blueprints -----------------------------------------------------------------


@dataclass(eq=False)
class Blueprint:
    case: str
    m: int
    r: int | None
    rep: qv.QuiverRep
    vertex_roles: tuple[str, ...]
    arrow_roles: tuple[str, ...]

    def slots(self) -> list[tuple[tuple, str]]:
        """(label, role) for every slot: v_1..v_m, then w_1..w_m."""
        found = {}
        for v, labs in enumerate(self.rep.labels):
            for lab in labs:
                found[lab] = self.vertex_roles[v]
        keys = sorted(found, key=lambda lab: (lab[0] != "v", lab[1]))
        return [(k, found[k]) for k in keys]

    def top_roles(self) -> Counter:
        return Counter(role for lab, role in self.slots() if lab[0] == "v")

    def bottom_roles(self) -> Counter:
        return Counter(role for lab, role in self.slots() if lab[0] == "w")


def roles_for(case: str, r: int | None = None) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Default vertex roles and arrow class keys for the three families."""
    if case == "i":
        return ("S", "T"), ("X", "Y", "Z")
    if case == "ii":
        return ("R", "S", "T"), ("X", "Y", "Z")
    if case == "iii":
        if r is None:
            raise AssemblyError("case iii needs r")
        verts = ("R",) + tuple(f"S{i}" for i in range(1, r + 1)) + tuple(f"T{i}" for i in range(1, r + 1))
        arrows = tuple(f"Y{i}" for i in range(1, r + 1)) + tuple(f"Z{i}" for i in range(1, r + 1)) + ("X",)
        return verts, arrows
    raise AssemblyError(f"unknown case {case!r}")


def blueprint(case: str, m: int, r: int | None = None, F: FieldSpec | None = None,
              vertex_roles=None) -> Blueprint:
    rep = qv.build_mm(case, F if F is not None else _gf2(), m, r)
    verts, arrows = roles_for(case, r)
    return Blueprint(case, m, r, rep, tuple(vertex_roles or verts), arrows)


def _gf2():
    from .gf import make_field
    return make_field(2)


# -- ingredients ----------------------------------------------------------------------


@dataclass(eq=False)
class Ingredients:
    """Simples by role, one class per arrow key, and the list of all known simples."""

    simples: dict[str, GroupRep]
    classes: dict[str, ExtClass]
    all_simples: list[GroupRep] = field(default_factory=list)
    presentation: Presentation | None = None


def arrow_ends(b: Blueprint, key: str) -> tuple[str, str]:
    k = b.rep.quiver.arrow_names.index(key)
    s, t = b.rep.quiver.arrows[k]
    return b.vertex_roles[s], b.vertex_roles[t]


def choose_classes(case: str, simples: dict[str, GroupRep], pres: Presentation,
                   r: int | None = None, change=None) -> dict[str, ExtClass]:
    """Pick Ext^1 classes for every arrow from the canonical bases.

    Arrows sharing source and target roles get distinct basis vectors.  If
    ``change`` is given it maps a (source role, target role) pair to an
    invertible matrix applied to that canonical basis first, which gives a
    second, different choice of classes.
    """
    verts, arrows = roles_for(case, r)
    tmp = blueprint(case, 1, r, vertex_roles=verts)
    used: Counter = Counter()
    bases: dict[tuple[str, str], list[ExtClass]] = {}
    out = {}
    for key in arrows:
        s, t = arrow_ends(tmp, key)
        if (s, t) not in bases:
            basis = ext1_cocycle(simples[s], simples[t], pres)
            if change is not None and (s, t) in change:
                basis = _change_basis(basis, change[(s, t)])
            bases[(s, t)] = basis
        basis = bases[(s, t)]
        if used[(s, t)] >= len(basis):
            raise AssemblyError(f"Ext^1({s},{t}) has dimension {len(basis)}; not enough classes for the arrows")
        out[key] = basis[used[(s, t)]]
        used[(s, t)] += 1
    return out


def _change_basis(basis: list[ExtClass], g) -> list[ExtClass]:
    F = basis[0].source.field
    g = mx.asmat(g)
    if g.shape != (len(basis), len(basis)) or not mx.is_invertible(F, g):
        raise AssemblyError("basis change must be an invertible square matrix")
    out = []
    for row in g:
        c = None
        for coef, b in zip(row, basis):
            if coef:
                term = b.scaled(int(coef))
                c = term if c is None else c.plus(term)
        out.append(c)
    return out


# -- construction -----------------------------------------------------------------------


def _slot_offsets(b: Blueprint, ing: Ingredients):
    offs, pos = {}, 0
    for lab, role in b.slots():
        d = ing.simples[role].dim
        offs[lab] = (pos, d, role)
        pos += d
    return offs, pos


def check_ingredients(b: Blueprint, ing: Ingredients, check_end: bool = True) -> None:
    roles = set(b.vertex_roles)
    missing = [r for r in roles if r not in ing.simples]
    if missing:
        raise AssemblyError(f"no simple module for roles {missing}")
    first = ing.simples[b.vertex_roles[0]]
    for r in roles:
        try:
            first.compatible(ing.simples[r])
        except gm.ModuleError as exc:
            raise AssemblyError(str(exc)) from exc
        if check_end and gm.end_dim(ing.simples[r]) != 1:
            raise AssemblyError(f"simple {r} does not have End of dimension 1")
    groups: dict[tuple, list[ExtClass]] = {}
    for key in b.arrow_roles:
        if key not in ing.classes:
            raise AssemblyError(f"no class for arrow {key}")
        c = ing.classes[key]
        s, t = arrow_ends(b, key)
        if c.source.dim != ing.simples[s].dim or c.target.dim != ing.simples[t].dim:
            raise AssemblyError(f"class for arrow {key} has the wrong shape")
        if c.source.field != first.field:
            raise AssemblyError("class over a different field")
        groups.setdefault((s, t), []).append(c)
    for (s, t), cs in groups.items():
        if len(cs) > 1 and not classes_independent(cs):
            raise AssemblyError(f"classes for arrows {s}->{t} are dependent in Ext^1")


def build_group_mm(b: Blueprint, ing: Ingredients, check: bool = True) -> GroupRep:
    """Block upper-triangular module: top slots, then bottom slots."""
    if check:
        check_ingredients(b, ing)
    F = ing.simples[b.vertex_roles[0]].field
    offs, n = _slot_offsets(b, ing)
    ngens = ing.simples[b.vertex_roles[0]].ngens
    gens = [mx.zeros(n, n) for _ in range(ngens)]
    for lab, (o, d, role) in offs.items():
        for j in range(ngens):
            gens[j][o : o + d, o : o + d] = ing.simples[role].gens[j]
    q = b.rep.quiver
    for a, (s, t), key in zip(b.rep.mats, q.arrows, q.arrow_names):
        c = ing.classes[key]
        for i, j in zip(*np.nonzero(a)):
            vi, wj = b.rep.labels[s][i], b.rep.labels[t][j]
            oi, di, _ = offs[vi]
            oj, dj, _ = offs[wj]
            for g in range(ngens):
                blk = gens[g][oi : oi + di, oj : oj + dj]
                gens[g][oi : oi + di, oj : oj + dj] = F.add(blk, F.mul(c.cocycle[g], int(a[i, j])))
    name = f"M_{b.m}({b.case})"
    return GroupRep(F, gens, ing.simples[b.vertex_roles[0]].tag, name)


def slot_range(b: Blueprint, ing: Ingredients, label) -> tuple[int, int]:
    offs, _ = _slot_offsets(b, ing)
    o, d, _ = offs[label]
    return o, o + d


def embed_group_mm(small: Blueprint, big: Blueprint, ing: Ingredients) -> GHom:
    """Coordinate inclusion M_m -> M_{m+k}, matching slots by label."""
    if small.case != big.case or small.r != big.r or small.vertex_roles != big.vertex_roles:
        raise AssemblyError("blueprints belong to different families")
    so, sn = _slot_offsets(small, ing)
    bo, bn = _slot_offsets(big, ing)
    f = mx.zeros(sn, bn)
    for lab, (o, d, role) in so.items():
        if lab not in bo or bo[lab][2] != role:
            raise AssemblyError(f"slot {lab} missing from the larger blueprint")
        p = bo[lab][0]
        f[o : o + d, p : p + d] = mx.identity(d)
    return GHom(build_group_mm(small, ing, check=False), build_group_mm(big, ing, check=False), f)


# -- verification --------------------------------------------------------------------


@dataclass
class VerificationReport:
    m: int
    dim: int = 0
    expected_dim: int = 0
    relators_ok: bool | None = None
    end_dim: int | None = None
    radical_dim: int | None = None
    expected_radical_dim: int | None = None
    radical_mult: dict[str, int] = field(default_factory=dict)
    expected_radical_mult: dict[str, int] = field(default_factory=dict)
    top: dict[str, int] = field(default_factory=dict)
    expected_top: dict[str, int] = field(default_factory=dict)
    embedding_ok: bool | None = None
    centraliser_ok: bool | None = None
    failure: str = ""

    @property
    def ok(self) -> bool:
        return not self.failure

    def lines(self) -> list[str]:
        def fmt(d):
            return ",".join(f"{k}^{v}" for k, v in sorted(d.items())) or "-"

        def flag(x):
            return "n/a" if x is None else ("yes" if x else "no")

        out = [
            f"M: {self.m}",
            f"DIM: {self.dim} (expected {self.expected_dim})",
            f"RELATORS_OK: {flag(self.relators_ok)}",
            f"END_DIM: {self.end_dim if self.end_dim is not None else 'n/a'}",
            f"RADICAL_DIM: {self.radical_dim if self.radical_dim is not None else 'n/a'}"
            f" (expected {self.expected_radical_dim})",
            f"RADICAL_HOM: {fmt(self.radical_mult)} (expected {fmt(self.expected_radical_mult)})",
            f"TOP: {fmt(self.top)} (expected {fmt(self.expected_top)})",
            f"EMBEDDING_OK: {flag(self.embedding_ok)}",
            f"CENTRALISER_OK: {flag(self.centraliser_ok)}",
        ]
        out.append(f"RESULT: {'PASS' if self.ok else 'FAIL ' + self.failure}")
        return out


def relators_hold(M: GroupRep, pres: Presentation) -> str:
    """Empty string, or the first relator that is not the identity on M."""
    one = mx.identity(M.dim)
    for r in pres.relators:
        if not np.array_equal(M.evaluate(r), one):
            return gm.format_word(r)
    return ""


def _named_simple(s: GroupRep, ing: Ingredients) -> str:
    for role, t in ing.simples.items():
        if t is s or (t.dim == s.dim and gm.iso_test(s, t)[0]):
            return role
    return s.name or f"dim{s.dim}"


def verify_theorem_mm(M: GroupRep, b: Blueprint, ing: Ingredients, embedding: GHom | None = None,
                      certify: bool = False) -> VerificationReport:
    """Recompute dimension, End, radical and top of M; stop at the first failure."""
    rep = VerificationReport(b.m)
    offs, n = _slot_offsets(b, ing)
    rep.dim, rep.expected_dim = M.dim, n
    bottom = b.bottom_roles()
    rep.expected_radical_dim = sum(ing.simples[r].dim * k for r, k in bottom.items())
    rep.expected_radical_mult = dict(bottom)
    rep.expected_top = dict(b.top_roles())
    if M.dim != n:
        rep.failure = "dimension differs from the slot count"
        return rep
    if ing.presentation is not None:
        bad = relators_hold(M, ing.presentation)
        rep.relators_ok = not bad
        if bad:
            rep.failure = f"relator {bad} is not the identity"
            return rep
    rep.end_dim = gm.end_dim(M)
    if rep.end_dim != 1:
        rep.failure = f"End has dimension {rep.end_dim}"
        return rep
    simples = ing.all_simples or list(ing.simples.values())
    try:
        rad = gm.radical(M, simples)
    except gm.ModuleError as exc:
        rep.failure = f"radical: {exc}"
        return rep
    rep.radical_dim = rad.dim
    radmod = gm.sub(M, rad)
    for role in bottom:
        rep.radical_mult[role] = gm.hom_dim(radmod, ing.simples[role])
    if rad.dim != rep.expected_radical_dim:
        rep.failure = f"radical has dimension {rad.dim}"
        return rep
    if rep.radical_mult != rep.expected_radical_mult:
        rep.failure = "radical is not the expected sum of bottom simples"
        return rep
    top = gm.quotient(M, rad)
    counts: Counter = Counter()
    for s in simples:
        k = gm.hom_dim(top, s)
        if k:
            counts[_named_simple(s, ing)] += k
    rep.top = dict(counts)
    if sum(ing.simples[r].dim * k if r in ing.simples else 0 for r, k in counts.items()) != top.dim:
        rep.failure = "top has factors outside the known simples"
        return rep
    if rep.top != rep.expected_top:
        rep.failure = "top differs from the blueprint"
        return rep
    if embedding is not None:
        rep.embedding_ok = embedding_ok(embedding)
        if not rep.embedding_ok:
            rep.failure = "embedding is not an injective intertwiner"
            return rep
    if certify:
        cert = centraliser_certificate(M, quotient_slot(b, ing))
        rep.centraliser_ok = cert.ok
        if not cert.ok:
            rep.failure = f"centraliser: {cert.reason}"
    return rep


def embedding_ok(f: GHom) -> bool:
    return f.is_intertwining() and mx.rank(f.source.field, f.matrix) == f.source.dim


def radicals_compatible(f: GHom, simples: list[GroupRep]) -> bool:
    """Image of Rad(dom) lies in Rad(cod)."""
    F = f.source.field
    r1 = gm.radical(f.source, simples)
    r2 = gm.radical(f.target, simples)
    img = mx.Subspace.span(F, F.dot(r1.basis, f.matrix), f.target.dim) if r1.dim else mx.Subspace.zero(F, f.target.dim)
    return img.issubspace(r2)


# -- centraliser certificate ------------------------------------------------------------


def quotient_slot(b: Blueprint, ing: Ingredients) -> tuple[int, int]:
    """Coordinates of the last-added top slot."""
    last = max(lab for lab, _ in b.slots() if lab[0] == "v")
    return slot_range(b, ing, last)


@dataclass
class Certificate:
    commutant_dim: int
    hom_end_dim: int
    lam: int | None
    ok: bool
    reason: str = ""

    def lines(self) -> list[str]:
        return [
            f"COMMUTANT_DIM: {self.commutant_dim}",
            f"HOM_END_DIM: {self.hom_end_dim}",
            f"LAMBDA: {self.lam if self.lam is not None else 'n/a'}",
            f"CERTIFICATE: {'PASS' if self.ok else 'REFUSED ' + self.reason}",
        ]


def centraliser_certificate(M: GroupRep, quotient: tuple[int, int]) -> Certificate:
    """Commutant equals scalars, and identity on the chosen slot quotient forces lambda = 1.

    ``quotient`` is a coordinate range [lo, hi) whose complement spans a
    submodule; the quotient by that complement is where the scalar must act
    trivially.
    """
    F = M.field
    cdim = gm.commutant_dim(M)
    hdim = gm.end_dim(M)
    if cdim != hdim:
        return Certificate(cdim, hdim, None, False, "commutant and hom solver disagree")
    if cdim != 1:
        return Certificate(cdim, hdim, None, False, f"commutant has dimension {cdim}, not scalars")
    lo, hi = quotient
    if not 0 <= lo < hi <= M.dim:
        return Certificate(cdim, hdim, None, False, "empty quotient")
    keep = [i for i in range(M.dim) if not lo <= i < hi]
    W = mx.Subspace.span(F, mx.identity(M.dim)[keep], M.dim) if keep else mx.Subspace.zero(F, M.dim)
    if not gm.is_submodule(M, W):
        return Certificate(cdim, hdim, None, False, "slot complement is not a submodule")
    # the commutant is spanned by I; z = lam*I acts on M/W as lam*I, so lam*I = I there
    z = mx.identity(M.dim)
    on_q = z[lo:hi, lo:hi]
    sols = []
    for lam in range(F.q):
        if np.array_equal(F.mul(on_q, lam), mx.identity(hi - lo)):
            sols.append(lam)
    if sols != [1]:
        return Certificate(cdim, hdim, None, False, f"scalar not pinned: {sols}")
    return Certificate(cdim, hdim, 1, True)

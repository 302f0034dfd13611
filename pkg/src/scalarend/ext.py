"""Ext^1 between group modules, extension modules and stacked extensions.

An extension of S by T (T the submodule) is written in block form

    g -> [[rho_S(g), d(g)],
          [0,        rho_T(g)]]

under the row convention, with ``d(g)`` a ``dim S x dim T`` block.  The map
is a homomorphism iff ``d(gh) = rho_S(g) d(h) + d(g) rho_T(h)``; conjugating
by ``[[I, F], [0, I]]`` adds the coboundary ``rho_S(g) F - F rho_T(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque

import numpy as np

from . import grpmod as gm
from . import matrix as mx
from .gf import FieldSpec
from .grpmod import GroupRep, PermGroup, format_word, parse_word


class ExtError(ValueError):
    pass


class CosetOverflow(RuntimeError):
    """Coset enumeration exceeded its cap; the presentation stays unverified."""


# -- coset enumeration --------------------------------------------------------------


def coset_enumerate(ngens: int, relators, subgroup=(), cap: int = 1_000_000) -> int:
    """Index of the subgroup generated by ``subgroup`` (Todd-Coxeter, HLT strategy)."""
    ncols = 2 * ngens

    def col(x):
        return 2 * x if x >= 0 else 2 * (~x) + 1

    rels = [tuple(col(x) for x in gm.free_reduce(r)) for r in relators]
    subs = [tuple(col(x) for x in gm.free_reduce(w)) for w in subgroup]
    inv = [c ^ 1 for c in range(ncols)]
    table: list[list[int]] = [[-1] * ncols]
    parent = [0]
    queue: list[int] = []

    def rep(k):
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def define(c, x):
        if len(table) >= cap:
            raise CosetOverflow(f"more than {cap} cosets")
        n = len(table)
        table.append([-1] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][inv[x]] = c

    def merge(k, l):
        k, l = rep(k), rep(l)
        if k != l:
            k, l = min(k, l), max(k, l)
            parent[l] = k
            queue.append(l)

    def coincidence(a, b):
        queue.clear()
        merge(a, b)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(ncols):
                f = row[x]
                if f < 0:
                    continue
                if table[f][inv[x]] == e:
                    table[f][inv[x]] = -1
                e1, f1 = rep(e), rep(f)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x])
                elif table[f1][inv[x]] >= 0:
                    merge(e1, table[f1][inv[x]])
                else:
                    table[e1][x] = f1
                    table[f1][inv[x]] = e1

    def scan_and_fill(c, w):
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv[w[j]]] >= 0:
                b = table[b][inv[w[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv[w[i]]] = f
                return
            define(f, w[i])

    for w in subs:
        if w:
            scan_and_fill(0, w)
    c = 0
    while c < len(table):
        if parent[c] == c:
            for r in rels:
                if parent[c] != c:
                    break
                if r:
                    scan_and_fill(c, r)
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] < 0:
                        define(c, x)
        c += 1
    return sum(1 for k in range(len(table)) if parent[k] == k)


@dataclass
class Presentation:
    ngens: int
    relators: list[tuple[int, ...]]
    target: PermGroup | None = None
    verified: bool = False
    # optional word w such that some relator is w^k: cosets of <w> are enumerated instead
    subgroup: tuple[int, ...] | None = None

    def check_relators(self) -> bool:
        ident = self.target.identity
        return all(self.target.evaluate(r) == ident for r in self.relators)

    def _word_order(self, w) -> int:
        g = self.target.evaluate(w)
        k, x = 1, g
        while x != self.target.identity:
            x, k = gm.perm_mul(x, g), k + 1
        return k

    def verify(self, cap: int = 1_000_000, order: int | None = None) -> int:
        """Show the presented group maps isomorphically onto the target; returns its order.

        Relators must hold in the target, so the target is a quotient.  Without a
        subgroup word the trivial subgroup is coset-enumerated.  With a word w of
        target order k, w^k must be a relator: then <w> has order at most k in the
        presented group and index * k bounds its order.
        """
        if self.target is None:
            raise ExtError("presentation has no target group")
        if len(self.target.gens) != self.ngens:
            raise ExtError("generator counts differ")
        if not self.check_relators():
            raise ExtError("a relator is not the identity in the target group")
        order = order or self.target.order()
        if self.subgroup is None:
            index = coset_enumerate(self.ngens, self.relators, (), cap)
        else:
            k = self._word_order(self.subgroup)
            power = _canonical_relator(tuple(self.subgroup) * k)
            if power not in {_canonical_relator(r) for r in self.relators}:
                raise ExtError("subgroup word power is not among the relators")
            index = k * coset_enumerate(self.ngens, self.relators, [self.subgroup], cap)
        if index != order:
            raise ExtError(f"presentation defines a group of order {index}, target has order {order}")
        self.verified = True
        return index

    def format(self) -> str:
        out = f"{self.ngens}\n" + "".join(format_word(r) + "\n" for r in self.relators)
        if self.subgroup is not None:
            out += f"subgroup {format_word(self.subgroup)}\n"
        return out

    @staticmethod
    def parse(text: str, target: PermGroup | None = None) -> "Presentation":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        sub = [ln for ln in lines if ln.startswith("subgroup ")]
        lines = [ln for ln in lines if not ln.startswith("subgroup ")]
        return Presentation(
            int(lines[0]),
            [parse_word(ln) for ln in lines[1:]],
            target,
            subgroup=parse_word(sub[0].split(None, 1)[1]) if sub else None,
        )


def _canonical_relator(w):
    """Representative of w up to cyclic permutation and inversion."""
    w = gm.cyclic_reduce(w)
    if not w:
        return w
    cands = []
    for v in (w, gm.invert_word(w)):
        for k in range(len(v)):
            cands.append(v[k:] + v[:k])
    return min(cands, key=lambda x: (len(x), [(a if a >= 0 else 1000 - a) for a in x]))


def find_presentation(group: PermGroup, cap_factor: int = 8) -> Presentation:
    """Presentation read off the Cayley graph: shortest relators first, then pruned.

    Every non-tree edge x -g-> y of the breadth-first Cayley graph gives the
    relator word(x) g word(y)^-1.  Relators are added in order of length until
    coset enumeration of the trivial subgroup reaches |G|; redundant ones are
    then dropped, longest first.
    """
    elems = group.elements()
    order = len(elems)
    cands = set()
    for k, x in enumerate(elems.perms):
        for j, g in enumerate(group.gens):
            y = elems.index[gm.perm_mul(x, g)]
            if elems.parent[y] == (k, j):
                continue
            w = _canonical_relator(elems.words[k] + (j,) + gm.invert_word(elems.words[y]))
            if w:
                cands.add(w)
    cands = sorted(cands, key=lambda w: (len(w), w))
    cap = cap_factor * order + 1000
    chosen: list = []
    batch = 4
    i = 0
    while True:
        chosen += cands[i : i + batch]
        i += batch
        try:
            if coset_enumerate(len(group.gens), chosen, (), cap) == order:
                break
        except CosetOverflow:
            pass
        if i >= len(cands):
            raise ExtError("candidate relators do not present the group")
        batch *= 2
    for w in sorted(chosen, key=len, reverse=True):
        trial = [r for r in chosen if r != w]
        try:
            if coset_enumerate(len(group.gens), trial, (), cap) == order:
                chosen = trial
        except CosetOverflow:
            pass
    pres = Presentation(len(group.gens), chosen, group)
    pres.verify(cap=cap, order=order)
    return pres


# -- Ext^1 via cocycles ----------------------------------------------------------------


@dataclass(eq=False)
class ExtClass:
    source: GroupRep
    target: GroupRep
    cocycle: list[np.ndarray]

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([d.reshape(-1) for d in self.cocycle])

    def is_zero(self) -> bool:
        return not any(d.any() for d in self.cocycle)

    def scaled(self, c: int) -> "ExtClass":
        F = self.source.field
        return ExtClass(self.source, self.target, [F.mul(d, c) for d in self.cocycle])

    def plus(self, other: "ExtClass") -> "ExtClass":
        F = self.source.field
        return ExtClass(self.source, self.target, [F.add(x, y) for x, y in zip(self.cocycle, other.cocycle)])


def _split_vector(v, ngens, ds, dt):
    return [v[j * ds * dt : (j + 1) * ds * dt].reshape(ds, dt).copy() for j in range(ngens)]


def relator_matrix(S: GroupRep, T: GroupRep, word) -> np.ndarray:
    """Matrix C with vec(d(word)) = u @ C, u the stacked generator blocks."""
    F = S.field
    ds, dt = S.dim, T.dim
    N = S.ngens * ds * dt
    C = mx.zeros(N, ds * dt)
    l = len(word)
    sinv, tinv = S.inverse_gens(), T.inverse_gens()
    smat = lambda x: S.gens[x] if x >= 0 else sinv[~x]  # noqa: E731
    tmat = lambda x: T.gens[x] if x >= 0 else tinv[~x]  # noqa: E731
    suffix = [mx.identity(dt)] * (l + 1)
    for i in range(l - 1, -1, -1):
        suffix[i] = F.dot(tmat(word[i]), suffix[i + 1])
    prefix = mx.identity(ds)
    for i, x in enumerate(word):
        P, Q = prefix, suffix[i + 1]
        g = x if x >= 0 else ~x
        if x < 0:
            # d(g^-1) = -S(g)^-1 d(g) T(g)^-1
            P = F.neg(F.dot(P, sinv[g]))
            Q = F.dot(tinv[g], Q)
        blk = mx.kron(F, P.T, Q)
        sl = slice(g * ds * dt, (g + 1) * ds * dt)
        C[sl] = F.add(C[sl], blk)
        prefix = F.dot(prefix, smat(x))
    return C


def coboundary_matrix(S: GroupRep, T: GroupRep) -> np.ndarray:
    """Rows span the coboundaries: vec(F) -> stacked S(g)F - F T(g)."""
    F = S.field
    ds, dt = S.dim, T.dim
    blocks = [F.sub(mx.kron(F, g.T, mx.identity(dt)), mx.kron(F, mx.identity(ds), h)) for g, h in zip(S.gens, T.gens)]
    return np.concatenate(blocks, axis=1) if blocks else mx.zeros(ds * dt, 0)


def coboundary_space(S: GroupRep, T: GroupRep) -> mx.Subspace:
    return mx.Subspace(S.field, S.ngens * S.dim * T.dim, coboundary_matrix(S, T))


def cocycle_space(S: GroupRep, T: GroupRep, pres: Presentation) -> mx.Subspace:
    F = S.field
    null = mx.IncrementalNullspace(F, S.ngens * S.dim * T.dim)
    for r in pres.relators:
        null.add(relator_matrix(S, T, r))
    return null.result()


def _check_ingredients(S: GroupRep, T: GroupRep, pres: Presentation):
    S.compatible(T)
    if not pres.verified:
        raise ExtError("presentation unverified; run Presentation.verify first")
    if pres.ngens != S.ngens:
        raise ExtError("presentation and module have different generator counts")
    for M in (S, T):
        for r in pres.relators:
            if not np.array_equal(M.evaluate(r), mx.identity(M.dim)):
                raise ExtError(f"module {M.name or M.dim} violates relator {format_word(r)}")


def ext1_cocycle(S: GroupRep, T: GroupRep, pres: Presentation, allow_isomorphic: bool = False) -> list[ExtClass]:
    """Canonical basis of Ext^1(S, T): cocycles modulo coboundaries.

    Basis vectors are reduced against the RREF coboundary basis and then put
    in RREF themselves, which makes the choice reproducible.
    """
    _check_ingredients(S, T, pres)
    if not allow_isomorphic and S.dim == T.dim and gm.iso_test(S, T)[0]:
        raise ExtError("S and T are isomorphic")
    F = S.field
    Z = cocycle_space(S, T, pres)
    B = coboundary_space(S, T)
    if B.dim and not B.issubspace(Z):
        raise ExtError("coboundaries fail the relators; presentation or modules inconsistent")
    if Z.dim == B.dim:
        return []
    z = Z.basis
    if B.dim:
        z = F.sub(z, F.dot(z[:, B.pivots], B.basis))
    reps = mx.row_basis(F, z)
    if reps.shape[0] != Z.dim - B.dim:
        raise ExtError("quotient dimension mismatch")
    return [ExtClass(S, T, _split_vector(v, S.ngens, S.dim, T.dim)) for v in reps]


def ext1_dim(S: GroupRep, T: GroupRep, pres: Presentation) -> int:
    return len(ext1_cocycle(S, T, pres, allow_isomorphic=True))


def is_cocycle(c: ExtClass, pres: Presentation) -> bool:
    """Every relator evaluates to the identity on the extension module."""
    E = extension_module(c)
    one = mx.identity(E.dim)
    return all(np.array_equal(E.evaluate(r), one) for r in pres.relators)


def reduce_class(c: ExtClass) -> np.ndarray:
    """Cocycle vector reduced modulo coboundaries (a canonical class representative)."""
    F = c.source.field
    B = coboundary_space(c.source, c.target)
    v = mx.asmat(c.vector)
    if B.dim:
        v = F.sub(v, F.dot(v[:, B.pivots], B.basis))
    return v[0]


def classes_independent(classes: list[ExtClass]) -> bool:
    if not classes:
        return True
    F = classes[0].source.field
    vecs = np.array([reduce_class(c) for c in classes])
    return mx.rank(F, vecs) == len(classes)


# -- Ext^1 via the free hull ------------------------------------------------------------


def ext1_freehull(S: GroupRep, T: GroupRep, elements: gm.GroupElements, cap: int = 20000) -> int:
    """dim Ext^1(S, T) from 0 -> K -> kG -> S -> 0.

    kG maps onto S by x -> e_1 rho_S(x); Hom(-, T) then gives
    dim Ext^1(S, T) = dim Hom(K, T) - dim T + dim Hom(S, T).
    """
    S.compatible(T)
    n = len(elements)
    if n * max(T.dim, 1) > cap:
        raise ExtError(f"|G| * dim T = {n * T.dim} exceeds the free-hull cap {cap}")
    F = S.field
    regular = gm.regular_rep(elements, F, S.tag)
    imgs = elements.images(S)
    E = np.array([m[0] for m in imgs], dtype=np.int64)  # row x: e_1 rho_S(x)
    K = mx.kernel(F, E)
    if K.dim != n - S.dim:
        raise ExtError("e_1 does not generate S")
    Kmod = gm.sub(regular, K, check=False)
    return gm.hom_dim(Kmod, T) - T.dim + gm.hom_dim(S, T)


# -- extension modules -----------------------------------------------------------------


def extension_module(c: ExtClass) -> GroupRep:
    """Block module with T as the bottom submodule and quotient S."""
    S, T = c.source, c.target
    gens = [mx.block([[s, d], [mx.zeros(T.dim, S.dim), t]]) for s, d, t in zip(S.gens, c.cocycle, T.gens)]
    return GroupRep(S.field, gens, S.tag, f"ext({S.name or S.dim},{T.name or T.dim})")


def is_split(c: ExtClass) -> bool:
    """True iff the class is a coboundary."""
    return not reduce_class(c).any()


def stack_extensions(classes: list[ExtClass]) -> GroupRep:
    """Module with top S (common source) and bottom T_1 + ... + T_r, one class per T_i."""
    if not classes:
        raise ExtError("no classes to stack")
    S = classes[0].source
    for c in classes:
        if c.source is not S and not _same_rep(c.source, S):
            raise ExtError("classes have different sources")
    by_target: dict[int, list[ExtClass]] = {}
    for c in classes:
        key = next((k for k, v in by_target.items() if _same_rep(v[0].target, c.target)), id(c.target))
        by_target.setdefault(key, []).append(c)
    for group in by_target.values():
        if not classes_independent(group):
            raise ExtError(f"{len(group)} classes into the same target are linearly dependent in Ext^1")
    F = S.field
    gens = []
    for j in range(S.ngens):
        row0 = [S.gens[j]] + [c.cocycle[j] for c in classes]
        rows = [row0]
        for i, c in enumerate(classes):
            row = [mx.zeros(c.target.dim, S.dim)]
            for k, c2 in enumerate(classes):
                row.append(c.target.gens[j] if i == k else mx.zeros(c.target.dim, c2.target.dim))
            rows.append(row)
        gens.append(mx.block(rows))
    return GroupRep(F, gens, S.tag, f"stack({S.name or S.dim};{len(classes)})")


def _same_rep(a: GroupRep, b: GroupRep) -> bool:
    return a is b or (a.field == b.field and a.ngens == b.ngens
                      and all(np.array_equal(x, y) for x, y in zip(a.gens, b.gens)))


# -- text format -------------------------------------------------------------------


def format_class(c: ExtClass, source_tag: str = "", target_tag: str = "") -> str:
    F = c.source.field
    out = F.header() + "\n"
    out += f"{source_tag or c.source.name or 'S'} {target_tag or c.target.name or 'T'}\n"
    out += f"{len(c.cocycle)}\n"
    for d in c.cocycle:
        out += mx.format_matrix(F, d, header=False)
    return out


def parse_class(text: str, source: GroupRep, target: GroupRep) -> ExtClass:
    lines = iter([ln for ln in text.splitlines() if ln.strip()])
    F = FieldSpec.from_header(next(lines))
    if F != source.field:
        raise ExtError("class file field differs from the module field")
    next(lines)
    k = int(next(lines))
    return ExtClass(source, target, [mx.read_matrix_lines(lines, F) for _ in range(k)])

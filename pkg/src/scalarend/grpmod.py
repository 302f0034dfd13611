"""Modules for finite groups given by generator matrices.

A :class:`GroupRep` holds one invertible matrix per abstract generator; vectors
are rows, so ``v -> v @ rho(g)`` and ``rho(gh) = rho(g) @ rho(h)``.  Products
of permutations follow the same order: ``(x * g)(i) = g(x(i))``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import matrix as mx
from .gf import FieldSpec


class ModuleError(ValueError):
    pass


# -- words ------------------------------------------------------------------
# A word is a tuple of ints: i >= 0 is generator i, ~i (= -i-1) its inverse.


def parse_word(text: str) -> tuple[int, ...]:
    out = []
    for ch in text.strip():
        if ch.islower():
            out.append(ord(ch) - ord("a"))
        elif ch.isupper():
            out.append(~(ord(ch) - ord("A")))
        elif ch in "1 ":
            continue
        else:
            raise ValueError(f"bad letter {ch!r} in word {text!r}")
    return tuple(out)


def format_word(word) -> str:
    return "".join(chr(ord("a") + x) if x >= 0 else chr(ord("A") + ~x) for x in word) or "1"


def invert_word(word) -> tuple[int, ...]:
    return tuple(~x for x in reversed(word))


def free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == ~x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple[int, ...]:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == ~w[-1]:
        w = w[1:-1]
    return tuple(w)


# -- permutation groups -------------------------------------------------------


def perm_mul(x, y):
    """x then y."""
    return tuple(y[i] for i in x)


def perm_inv(x):
    out = [0] * len(x)
    for i, j in enumerate(x):
        out[j] = i
    return tuple(out)


def perm_from_cycles(degree: int, cycles) -> tuple[int, ...]:
    """Permutation of {0..degree-1} from 1-based cycles, e.g. [(1,2,3,4,5)]."""
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(i) for i in g) for g in self.gens)
        for g in gens:
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise ModuleError(f"not a permutation of degree {self.degree}: {g}")
        object.__setattr__(self, "gens", gens)

    @property
    def identity(self):
        return tuple(range(self.degree))

    def evaluate(self, word):
        x = self.identity
        for a in word:
            g = self.gens[a] if a >= 0 else perm_inv(self.gens[~a])
            x = perm_mul(x, g)
        return x

    def order(self) -> int:
        """Group order from a Schreier-Sims base and strong generating set."""
        return schreier_sims_order(self.degree, self.gens)

    def elements(self, limit: int = 200000):
        """All elements with shortest words, breadth first from the identity."""
        ident = self.identity
        index = {ident: 0}
        perms, words, parent = [ident], [()], [(-1, -1)]
        queue = deque([0])
        while queue:
            k = queue.popleft()
            for j, g in enumerate(self.gens):
                y = perm_mul(perms[k], g)
                if y not in index:
                    index[y] = len(perms)
                    perms.append(y)
                    words.append(words[k] + (j,))
                    parent.append((k, j))
                    queue.append(len(perms) - 1)
                    if len(perms) > limit:
                        raise ModuleError("group larger than enumeration limit")
        return GroupElements(self, perms, words, parent, index)

    def format(self) -> str:
        lines = [f"{self.degree} {len(self.gens)}"]
        lines += [" ".join(str(i + 1) for i in g) for g in self.gens]
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str) -> "PermGroup":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        degree, n = map(int, lines[0].split())
        gens = [tuple(int(t) - 1 for t in lines[1 + i].split()) for i in range(n)]
        return PermGroup(degree, tuple(gens))


@dataclass
class GroupElements:
    group: PermGroup
    perms: list
    words: list
    parent: list  # (parent index, generator) in the BFS tree
    index: dict

    def __len__(self):
        return len(self.perms)

    def right_mult_tables(self) -> list[np.ndarray]:
        """For each generator g, the index of x*g for every element x."""
        return [np.array([self.index[perm_mul(x, g)] for x in self.perms], dtype=np.int64) for g in self.group.gens]

    def images(self, rep: "GroupRep") -> list[np.ndarray]:
        """rho(x) for every element x, via the BFS tree."""
        F = rep.field
        out = [mx.identity(rep.dim)]
        for k in range(1, len(self.perms)):
            pk, j = self.parent[k]
            out.append(F.dot(out[pk], rep.gens[j]))
        return out


def schreier_sims_order(degree: int, gens) -> int:
    """Deterministic Schreier-Sims; returns the product of basic orbit lengths."""
    ident = tuple(range(degree))
    strong = [tuple(g) for g in gens if tuple(g) != ident]
    if not strong:
        return 1
    base: list[int] = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(next(i for i, x in enumerate(g) if x != i))
    trans: list[dict] = [{} for _ in base]

    def level_gens(l):
        return [g for g in strong if all(g[b] == b for b in base[:l])]

    def transversal(point, sgens):
        tr = {point: ident}
        queue = deque([point])
        while queue:
            a = queue.popleft()
            for g in sgens:
                b = g[a]
                if b not in tr:
                    tr[b] = perm_mul(tr[a], g)
                    queue.append(b)
        return tr

    def strip(h, start):
        for i in range(start, len(base)):
            x = h[base[i]]
            if x not in trans[i]:
                return h, i
            h = perm_mul(h, perm_inv(trans[i][x]))
        return h, len(base)

    level = len(base) - 1
    while level >= 0:
        sgens = level_gens(level)
        trans[level] = transversal(base[level], sgens)
        restart = None
        for a, ua in list(trans[level].items()):
            for s in sgens:
                h = perm_mul(perm_mul(ua, s), perm_inv(trans[level][s[a]]))
                if h == ident:
                    continue
                r, j = strip(h, level + 1)
                if r != ident:
                    strong.append(r)
                    if j == len(base):
                        base.append(next(i for i, x in enumerate(r) if x != i))
                        trans.append({})
                    restart = j
                    break
            if restart is not None:
                break
        if restart is None:
            level -= 1
        else:
            level = restart
            # deeper transversals are rebuilt on the way down
            for l in range(restart, len(base)):
                trans[l] = transversal(base[l], level_gens(l))
    order = 1
    for tr in trans:
        order *= len(tr)
    return order


# -- group representations ----------------------------------------------------


@dataclass(eq=False)
class GroupRep:
    field: FieldSpec
    gens: list[np.ndarray]
    tag: str = ""
    name: str = ""

    def __post_init__(self):
        self.gens = [mx.asmat(g) for g in self.gens]
        shapes = {g.shape for g in self.gens}
        if len(shapes) > 1:
            raise ModuleError("generator matrices of different shapes")
        if shapes and next(iter(shapes))[0] != next(iter(shapes))[1]:
            raise ModuleError("generator matrices must be square")
        self._inv = None

    @property
    def dim(self) -> int:
        return self.gens[0].shape[0] if self.gens else 0

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def check_invertible(self) -> bool:
        return all(mx.is_invertible(self.field, g) for g in self.gens)

    def inverse_gens(self) -> list[np.ndarray]:
        if self._inv is None:
            self._inv = [mx.inverse(self.field, g) for g in self.gens]
        return self._inv

    def evaluate(self, word) -> np.ndarray:
        F = self.field
        x = mx.identity(self.dim)
        inv = None
        for a in word:
            if a >= 0:
                x = F.dot(x, self.gens[a])
            else:
                inv = inv or self.inverse_gens()
                x = F.dot(x, inv[~a])
        return x

    def compatible(self, other: "GroupRep") -> None:
        if self.field != other.field:
            raise ModuleError("modules over different fields")
        if self.ngens != other.ngens or (self.tag and other.tag and self.tag != other.tag):
            raise ModuleError("modules for different groups")

    def __repr__(self):
        return f"GroupRep(dim={self.dim}, ngens={self.ngens}, tag={self.tag!r}, name={self.name!r})"


@dataclass(eq=False)
class GHom:
    source: GroupRep
    target: GroupRep
    matrix: np.ndarray = dc_field(default_factory=lambda: mx.zeros(0, 0))

    def is_intertwining(self) -> bool:
        return is_hom(self.source, self.target, self.matrix)


def is_hom(a: GroupRep, b: GroupRep, f) -> bool:
    F = a.field
    return all(np.array_equal(F.dot(f, gb), F.dot(ga, f)) for ga, gb in zip(a.gens, b.gens))


def perm_to_rep(g: PermGroup, F: FieldSpec, tag: str = "") -> GroupRep:
    mats = []
    for perm in g.gens:
        a = mx.zeros(g.degree, g.degree)
        a[np.arange(g.degree), list(perm)] = 1
        mats.append(a)
    return GroupRep(F, mats, tag, name=f"perm{g.degree}")


def trivial_rep(F: FieldSpec, ngens: int, tag: str = "") -> GroupRep:
    return GroupRep(F, [mx.identity(1) for _ in range(ngens)], tag, name="1")


def regular_rep(elements: GroupElements, F: FieldSpec, tag: str = "") -> GroupRep:
    n = len(elements)
    mats = []
    for t in elements.right_mult_tables():
        a = mx.zeros(n, n)
        a[np.arange(n), t] = 1
        mats.append(a)
    return GroupRep(F, mats, tag, name="regular")


# -- constructions ------------------------------------------------------------


def direct_sum(*reps: GroupRep) -> GroupRep:
    r0 = reps[0]
    return GroupRep(r0.field, [mx.direct_sum(*gs) for gs in zip(*(r.gens for r in reps))], r0.tag,
                    "+".join(r.name or str(r.dim) for r in reps))


def tensor(a: GroupRep, b: GroupRep) -> GroupRep:
    a.compatible(b)
    F = a.field
    return GroupRep(F, [mx.kron(F, x, y) for x, y in zip(a.gens, b.gens)], a.tag,
                    f"({a.name or a.dim}x{b.name or b.dim})")


def dual(a: GroupRep) -> GroupRep:
    return GroupRep(a.field, [g.T.copy() for g in a.inverse_gens()], a.tag, f"{a.name or a.dim}*")


def frobenius_twist(a: GroupRep, k: int = 1) -> GroupRep:
    F = a.field
    return GroupRep(F, [F.frobenius(g, k) for g in a.gens], a.tag, f"{a.name or a.dim}^F{k}")


def conjugate(a: GroupRep, x) -> GroupRep:
    """x^-1 rho x, isomorphic to a via v -> v @ x."""
    F = a.field
    xi = mx.inverse(F, x)
    return GroupRep(F, [F.dot(F.dot(xi, g), x) for g in a.gens], a.tag, a.name)


def is_submodule(a: GroupRep, w: mx.Subspace) -> bool:
    if w.dim == 0:
        return True
    return all(w.contains(a.field.dot(w.basis, g)) for g in a.gens)


def sub(a: GroupRep, w: mx.Subspace, check: bool = True) -> GroupRep:
    """Action on the invariant subspace w, in its canonical basis."""
    F = a.field
    piv = w.pivots
    mats = []
    for g in a.gens:
        img = F.dot(w.basis, g)
        if check and not np.array_equal(F.dot(img[:, piv], w.basis), img):
            raise ModuleError("subspace is not invariant")
        mats.append(img[:, piv])
    return GroupRep(F, mats, a.tag, f"sub{w.dim}")


def quotient(a: GroupRep, w: mx.Subspace, check: bool = True) -> GroupRep:
    """Action on a / w, with basis the images of the non-pivot standard vectors."""
    F = a.field
    if check and not is_submodule(a, w):
        raise ModuleError("subspace is not invariant")
    comp = w.complement_pivots()
    piv = w.pivots
    mats = []
    for g in a.gens:
        rows = g[comp]
        if w.dim:
            rows = F.sub(rows, F.dot(rows[:, piv], w.basis))
        mats.append(rows[:, comp])
    return GroupRep(F, mats, a.tag, f"quot{len(comp)}")


def quotient_map(w: mx.Subspace) -> np.ndarray:
    """Matrix of the projection ambient -> ambient / w matching :func:`quotient`."""
    F = w.field
    comp = w.complement_pivots()
    piv = w.pivots
    a = mx.identity(w.ambient_dim)
    if w.dim:
        a = F.sub(a, F.dot(a[:, piv], w.basis))
    return a[:, comp]


# -- spinning -------------------------------------------------------------------


class _Echelon:
    """Growing RREF basis with O(1) matrix-vector reduction."""

    def __init__(self, F: FieldSpec, n: int):
        self.F, self.n = F, n
        self.rows = mx.zeros(0, n)
        self.piv: list[int] = []
        self._prep = None

    def reduce(self, v):
        if not self.piv:
            return v
        if self._prep is None:
            self._prep = self.F.prepare(self.rows)
        return self.F.sub(v, self.F.dot(v[self.piv], self._prep))

    def add(self, v) -> bool:
        F = self.F
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = F.mul(v, F.inv(v[c]))
        if self.piv:
            col = self.rows[:, c].copy()
            if col.any():
                self.rows = F.sub(self.rows, F.mul(col[:, None], v[None, :]))
        self.rows = np.vstack([self.rows, v])
        self.piv.append(c)
        self._prep = None
        return True

    @property
    def dim(self):
        return len(self.piv)


def spin_tree(a: GroupRep, seeds, stop_full: bool = True):
    """Spin seed vectors; returns (basis rows, provenance).

    provenance[k] is ("seed", j) or ("img", parent_row, generator).  Seeds that
    already lie in the span are skipped.
    """
    F = a.field
    ech = _Echelon(F, a.dim)
    basis, prov = [], []
    seeds = mx.asmat(seeds) if np.size(seeds) else mx.zeros(0, a.dim)
    gens = [F.prepare(g) for g in a.gens]
    for j, s in enumerate(seeds):
        if not ech.add(s):
            continue
        start = len(basis)
        basis.append(s)
        prov.append(("seed", j))
        k = start
        while k < len(basis):
            for gi, g in enumerate(gens):
                if stop_full and ech.dim == a.dim:
                    break
                w = F.dot(basis[k], g)
                if ech.add(w):
                    basis.append(w)
                    prov.append(("img", k, gi))
            k += 1
        if stop_full and ech.dim == a.dim:
            break
    return (np.array(basis, dtype=np.int64).reshape(-1, a.dim), prov, ech)


def spin(a: GroupRep, seeds) -> mx.Subspace:
    """Smallest invariant subspace containing the seeds."""
    _, _, ech = spin_tree(a, seeds)
    return mx.Subspace(a.field, a.dim, ech.rows)


# -- Hom spaces -------------------------------------------------------------------


def hom_basis(a: GroupRep, b: GroupRep) -> list[np.ndarray]:
    """Canonical basis of Hom(a, b) as dim(a) x dim(b) matrices.

    a is spun from standard basis vectors; a hom is fixed by the images of the
    seeds, so the unknowns are those images only.  Each spin basis vector's
    image is a linear function of the unknowns, and every generator image
    not used as a tree edge yields a linear constraint.
    """
    a.compatible(b)
    F = a.field
    na, nb = a.dim, b.dim
    if na == 0 or nb == 0:
        return []
    basis, prov, _ = spin_tree(a, mx.identity(na))
    seed_ids = [p[1] for p in prov if p[0] == "seed"]
    K = len(seed_ids) * nb
    # L[k] : K x nb, image of basis[k] as function of the unknown seed images
    L = np.zeros((na, K, nb), dtype=np.int64)
    slot = {}
    for k, p in enumerate(prov):
        if p[0] == "seed":
            s = len(slot)
            slot[k] = s
            L[k, s * nb : (s + 1) * nb] = mx.identity(nb)
        else:
            _, parent, gi = p
            L[k] = F.dot(L[parent], b.gens[gi])
    binv = mx.inverse(F, basis)
    Lflat = L.reshape(na, K * nb)
    null = mx.IncrementalNullspace(F, K)
    for gi, (ga, gb) in enumerate(zip(a.gens, b.gens)):
        coeff = F.dot(F.dot(basis, ga), binv)  # basis[k] g = sum_l coeff[k,l] basis[l]
        lhs = F.dot(Lflat.reshape(na * K, nb), gb).reshape(na, K * nb)
        rhs = F.dot(coeff, Lflat)
        diff = F.sub(lhs, rhs).reshape(na, K, nb)
        for k in range(na):
            if null.dim == 0:
                break
            null.add(diff[k])
    if null.dim == 0:
        return []
    sols = null.result().basis  # rows x in K-space
    # image of basis[k] is x @ L[k]; hom matrix in the standard basis is binv @ images
    imgs = np.stack([F.dot(sols, L[k]) for k in range(na)], axis=1)  # (nsol, na, nb)
    mats = [F.dot(binv, imgs[i]) for i in range(sols.shape[0])]
    flat = mx.row_basis(F, np.array([m.reshape(-1) for m in mats]))
    return [row.reshape(na, nb) for row in flat]


def hom_g(a: GroupRep, b: GroupRep) -> list[GHom]:
    return [GHom(a, b, f) for f in hom_basis(a, b)]


def hom_dim(a: GroupRep, b: GroupRep) -> int:
    return len(hom_basis(a, b))


def end_dim(a: GroupRep) -> int:
    return hom_dim(a, a)


def commutant_dim(a: GroupRep) -> int:
    """dim of {X : X rho(g) = rho(g) X}, solved directly on the full matrix space."""
    F = a.field
    n = a.dim
    cols = []
    for g in a.gens:
        # vec(X g) - vec(g X) = vec(X) (kron(I, g) - kron(g.T, I))
        cols.append(F.sub(mx.kron(F, mx.identity(n), g), mx.kron(F, g.T, mx.identity(n))))
    null = mx.IncrementalNullspace(F, n * n)
    for c in cols:
        null.add(c)
    return null.dim


# -- isomorphism -------------------------------------------------------------------


def iso_test(a: GroupRep, b: GroupRep, seed: int = 0, tries: int = 40):
    """(True, witness) if a and b are isomorphic, else (False, None)."""
    if a.dim != b.dim:
        return False, None
    F = a.field
    basis = hom_basis(a, b)
    if not basis:
        return (True, mx.zeros(0, 0)) if a.dim == 0 else (False, None)
    for f in basis:
        if mx.is_invertible(F, f):
            return True, f
    rng = np.random.default_rng(seed)
    stack = np.array(basis)
    for _ in range(tries):
        c = rng.integers(0, F.q, size=len(basis))
        f = _combine(F, c, stack)
        if mx.is_invertible(F, f):
            return True, f
    if len(basis) <= 3 and F.q <= 9:
        for c in itertools.product(range(F.q), repeat=len(basis)):
            f = _combine(F, np.array(c), stack)
            if mx.is_invertible(F, f):
                return True, f
        return False, None
    if len(basis) == 1:
        return False, None
    # not invertible on any sampled combination; with End fields this large the
    # chance of a miss is below q^-tries
    return False, None


def _combine(F: FieldSpec, coeffs, mats) -> np.ndarray:
    out = np.zeros(mats.shape[1:], dtype=np.int64)
    for c, m in zip(coeffs, mats):
        if c:
            out = F.add(out, F.mul(m, int(c)))
    return out


# -- MeatAxe ----------------------------------------------------------------------


def _irreducible_polys(F: FieldSpec):
    """Monic irreducible polynomials of degree 1, then 2 when q <= 32 (ascending codes)."""
    elems = range(F.q)
    polys = [(int(F.neg(c)), 1) for c in elems]
    if F.q <= 32:
        for c0 in elems:
            for c1 in elems:
                if all(int(F.add(F.add(F.mul(x, x), F.mul(c1, x)), c0)) != 0 for x in elems):
                    polys.append((c0, c1, 1))
    return polys


def _poly_at(F: FieldSpec, coeffs, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = mx.zeros(n, n)
    for c in reversed(coeffs):
        out = F.dot(out, a)
        out[np.arange(n), np.arange(n)] = F.add(out[np.arange(n), np.arange(n)], int(c))
    return out


def random_algebra_element(a: GroupRep, rng, nwords: int = 4, length: int = 6) -> np.ndarray:
    """Random linear combination of random words in the generators."""
    F = a.field
    pool = list(a.gens)
    out = mx.zeros(a.dim, a.dim)
    for _ in range(nwords):
        w = pool[rng.integers(len(pool))]
        for _ in range(length - 1):
            w = F.dot(w, pool[rng.integers(len(pool))])
        pool.append(w)
        c = int(rng.integers(1, F.q))
        out = F.add(out, F.mul(w, c))
    return out


def split(a: GroupRep, rng, attempts: int = 60):
    """Find a proper nonzero submodule, or prove irreducibility (Norton's criterion).

    Returns a Subspace, or None when a is irreducible.
    """
    F = a.field
    n = a.dim
    if n <= 1:
        return None
    polys = _irreducible_polys(F)
    transpose = GroupRep(F, [g.T.copy() for g in a.gens], a.tag)
    for attempt in range(attempts):
        A = random_algebra_element(a, rng)
        deg_limit = 1 if attempt < attempts // 2 else 2
        for f in polys:
            d = len(f) - 1
            if d > deg_limit:
                continue
            fa = _poly_at(F, f, A)
            N = mx.kernel(F, fa)
            if N.dim == 0:
                continue
            w = spin(a, N.basis[:1])
            if w.dim < n:
                return w
            if N.dim == d:
                # Norton: also spin a kernel vector of f(A)^T in the transposed module
                Nt = mx.kernel(F, fa.T)
                wt = spin(transpose, Nt.basis[:1])
                if wt.dim == n:
                    return None
                # annihilator of a proper submodule of the transpose is a submodule
                return mx.nullspace(F, wt.basis)
    raise ModuleError("MeatAxe failed to split or certify; module may need a larger field")


def is_irreducible(a: GroupRep, seed: int = 0) -> bool:
    return split(a, np.random.default_rng(seed)) is None


def is_absolutely_irreducible(a: GroupRep, seed: int = 0) -> bool:
    return is_irreducible(a, seed) and end_dim(a) == 1


def composition_factors(a: GroupRep, seed: int = 0) -> list[GroupRep]:
    """Composition factors in submodule-first order (with repetition)."""
    rng = np.random.default_rng(seed)
    out: list[GroupRep] = []
    todo = [a]
    while todo:
        m = todo.pop()
        if m.dim == 0:
            continue
        w = split(m, rng)
        if w is None:
            out.append(m)
            continue
        # process the submodule first so factors come out bottom-up
        todo.append(quotient(m, w, check=False))
        todo.append(sub(m, w, check=False))
    return out


def group_factors(factors: list[GroupRep], seed: int = 0) -> list[tuple[GroupRep, int]]:
    classes: list[list] = []
    for f in factors:
        for c in classes:
            if iso_test(c[0], f, seed)[0]:
                c[1] += 1
                break
        else:
            classes.append([f, 1])
    return [(c[0], c[1]) for c in classes]


def chop(a: GroupRep, seed: int = 0) -> list[tuple[GroupRep, int]]:
    """Composition factors with multiplicities, isomorphic factors merged."""
    return group_factors(composition_factors(a, seed), seed)


# -- radical ---------------------------------------------------------------------


def radical(a: GroupRep, simples: list[GroupRep], check: bool = True) -> mx.Subspace:
    """Intersection of the kernels of all maps from a to the listed simples.

    The list must contain every simple quotient of a; factors outside it are
    invisible to this computation.
    """
    F = a.field
    maps = [f for s in simples for f in hom_basis(a, s)]
    if not maps:
        return mx.Subspace.full(F, a.dim)
    rad = mx.kernel(F, np.concatenate(maps, axis=1))
    if check:
        if not is_submodule(a, rad):
            raise ModuleError("radical is not a submodule")
        top = quotient(a, rad, check=False)
        if top.dim and radical(top, simples, check=False).dim != 0:
            raise ModuleError("top is not semisimple: simples list incomplete")
    return rad


def top_dims(a: GroupRep, simples: list[GroupRep]) -> list[int]:
    """Multiplicity of each listed simple in the top of a (absolutely irreducible simples)."""
    return [hom_dim(a, s) for s in simples]


# -- text format -------------------------------------------------------------------


def format_rep(a: GroupRep) -> str:
    out = a.field.header() + "\n" + f"{a.dim} {a.ngens}\n"
    for g in a.gens:
        out += mx.format_matrix(a.field, g, header=False)
    return out


def parse_rep(text: str, tag: str = "") -> GroupRep:
    lines = iter([ln for ln in text.splitlines() if ln.strip()])
    F = FieldSpec.from_header(next(lines))
    n, k = map(int, next(lines).split())
    gens = [mx.read_matrix_lines(lines, F) for _ in range(k)]
    for g in gens:
        if g.shape != (n, n):
            raise ModuleError("generator shape differs from declared degree")
    return GroupRep(F, gens, tag)

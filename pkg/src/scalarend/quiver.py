"""Quiver representations, homomorphism spaces, and the M_m families.

Arrow maps follow the row convention: an arrow ``s -> t`` carries a
``dims[s] x dims[t]`` matrix and a vector ``v`` at ``s`` goes to ``v @ A``.
A homomorphism ``phi: M -> N`` intertwines when ``phi[s] @ N_a == M_a @ phi[t]``
for every arrow ``a: s -> t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from . import matrix as mx
from .gf import FieldSpec


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: tuple[tuple[int, int], ...]
    vertex_names: tuple[str, ...] = ()
    arrow_names: tuple[str, ...] = ()

    def __post_init__(self):
        for s, t in self.arrows:
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                raise QuiverError(f"arrow {s}->{t} leaves the vertex range")
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(f"v{i}" for i in range(self.n_vertices)))
        if not self.arrow_names:
            object.__setattr__(self, "arrow_names", tuple(f"a{i}" for i in range(len(self.arrows))))

    def same_shape(self, other: "Quiver") -> bool:
        return self.n_vertices == other.n_vertices and self.arrows == other.arrows

    def sources(self) -> list[int]:
        heads = {t for _, t in self.arrows}
        return [v for v in range(self.n_vertices) if v not in heads]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n_vertices) if v not in self.sources()]


@dataclass(eq=False)
class QuiverRep:
    quiver: Quiver
    field: FieldSpec
    dims: tuple[int, ...]
    mats: list[np.ndarray]
    labels: tuple[tuple, ...] | None = None

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != self.quiver.n_vertices:
            raise QuiverError("one dimension per vertex required")
        if len(self.mats) != len(self.quiver.arrows):
            raise QuiverError("one matrix per arrow required")
        self.mats = [mx.asmat(a) if np.size(a) else mx.zeros(self.dims[s], self.dims[t])
                     for a, (s, t) in zip(self.mats, self.quiver.arrows)]
        for a, (s, t) in zip(self.mats, self.quiver.arrows):
            if a.shape != (self.dims[s], self.dims[t]):
                raise QuiverError(f"arrow {s}->{t} has shape {a.shape}, expected {(self.dims[s], self.dims[t])}")
        if self.labels is not None:
            self.labels = tuple(tuple(lab) for lab in self.labels)
            if tuple(len(lab) for lab in self.labels) != self.dims:
                raise QuiverError("labels do not match dimensions")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def arrow(self, name: str) -> np.ndarray:
        return self.mats[self.quiver.arrow_names.index(name)]

    def position(self, label) -> tuple[int, int]:
        """(vertex, index) of a basis label."""
        for v, labs in enumerate(self.labels or ()):
            if label in labs:
                return v, labs.index(label)
        raise KeyError(label)

    def base_change(self, mats: list[np.ndarray]) -> "QuiverRep":
        """Representation transported along invertible per-vertex matrices g_v (v -> v @ g_v)."""
        F = self.field
        new = []
        for a, (s, t) in zip(self.mats, self.quiver.arrows):
            new.append(F.dot(F.dot(mx.inverse(F, mats[s]), a), mats[t]))
        return QuiverRep(self.quiver, F, self.dims, new)


@dataclass(eq=False)
class RepHom:
    source: QuiverRep
    target: QuiverRep
    maps: list[np.ndarray] = dc_field(default_factory=list)

    def is_intertwining(self) -> bool:
        F = self.source.field
        for a, b, (s, t) in zip(self.source.mats, self.target.mats, self.source.quiver.arrows):
            if not np.array_equal(F.dot(self.maps[s], b), F.dot(a, self.maps[t])):
                return False
        return True

    def compose(self, other: "RepHom") -> "RepHom":
        """self followed by other."""
        F = self.source.field
        return RepHom(self.source, other.target, [F.dot(x, y) for x, y in zip(self.maps, other.maps)])

    def rank(self) -> int:
        F = self.source.field
        return sum(mx.rank(F, m) for m in self.maps if m.size)

    def is_scalar(self) -> bool:
        vals = set()
        for m in self.maps:
            if m.shape[0] != m.shape[1]:
                return False
            if m.size == 0:
                continue
            d = np.diag(m)
            if not np.array_equal(m, np.diag(d)) or len(set(d.tolist())) != 1:
                return False
            vals.add(int(d[0]))
        return len(vals) <= 1


# -- hom solver -----------------------------------------------------------


def _equation_matrix(a: QuiverRep, b: QuiverRep):
    """Sparse matrix C with one row per unknown and one column per equation.

    Unknowns are the row-major entries of phi[0], phi[1], ...; hom vectors are
    the x with x @ C == 0.
    """
    F = a.field
    offsets = np.cumsum([0] + [a.dims[v] * b.dims[v] for v in range(len(a.dims))])
    blocks_r, blocks_c, blocks_v = [], [], []
    col0 = 0
    for A, B, (s, t) in zip(a.mats, b.mats, a.quiver.arrows):
        neq = a.dims[s] * b.dims[t]
        if neq == 0:
            continue
        # phi_s @ B  ->  kron(I_{a_s}, B)
        i, j = np.nonzero(B)
        k = np.arange(a.dims[s])[:, None]
        blocks_r.append((k * B.shape[0] + i).ravel() + offsets[s])
        blocks_c.append((k * B.shape[1] + j).ravel() + col0)
        blocks_v.append(np.broadcast_to(B[i, j], (a.dims[s], len(i))).ravel())
        # - A @ phi_t  ->  -kron(A.T, I_{b_t})
        i, j = np.nonzero(A.T)
        k = np.arange(b.dims[t])[:, None]
        blocks_r.append((i * b.dims[t] + k).ravel() + offsets[t])
        blocks_c.append((j * b.dims[t] + k).ravel() + col0)
        blocks_v.append(np.broadcast_to(F.neg(A.T[i, j]), (b.dims[t], len(i))).ravel())
        col0 += neq
    n = int(offsets[-1])
    if not blocks_r:
        return n, 0, np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(0, np.int64)
    rows = np.concatenate(blocks_r).astype(np.int64)
    cols = np.concatenate(blocks_c).astype(np.int64)
    vals = np.concatenate(blocks_v).astype(np.int64)
    keep = vals != 0
    return n, col0, rows[keep], cols[keep], vals[keep]


def _dense_solve(F: FieldSpec, n: int, neq: int, rows, cols, vals) -> np.ndarray:
    C = mx.zeros(n, neq)
    # no duplicate (row, col) pairs: each kron block touches distinct entries unless s == t
    for r, c, v in zip(rows.tolist(), cols.tolist(), vals.tolist()):
        C[r, c] = int(F.add(C[r, c], v))
    return mx.left_nullspace(F, C).basis


def _two_term_solve(F: FieldSpec, n: int, rows, cols, vals) -> np.ndarray | None:
    """Exact solver for systems whose equations each have at most two terms.

    Unknowns linked by an equation ``c1 x + c2 y = 0`` are tied by a nonzero
    ratio, so the solution space is spanned by one vector per connected
    component of the link graph, unless the component is forced to zero by a
    one-term equation or a cycle whose ratios do not multiply to one.
    Returns None when some equation has three or more terms.
    """
    order = np.lexsort((rows, cols))
    rows, cols, vals = rows[order], cols[order], vals[order]
    ucols, start, counts = np.unique(cols, return_index=True, return_counts=True)
    if counts.size and counts.max() > 2:
        return None
    dead = np.zeros(n, dtype=bool)
    one = start[counts == 1]
    dead_nodes = rows[one]
    two = start[counts == 2]
    u, v = rows[two], rows[two + 1]
    cu, cv = vals[two], vals[two + 1]
    # x_v = ratio * x_u
    ratio = F.neg(F.mul(cu, F.inv(cv)))
    same = u == v
    # c1 x + c2 x = 0 forces x = 0 unless c1 + c2 = 0
    self_dead = same & (F.add(cu, cv) != 0)
    dead[dead_nodes] = True
    dead[u[self_dead]] = True
    u, v, ratio = u[~same], v[~same], ratio[~same]

    g = sparse.coo_matrix((np.ones(u.size, dtype=np.int8), (u, v)), shape=(n, n)).tocsr()
    ncomp, labels = csgraph.connected_components(g, directed=False)
    # tree from a virtual root joined to the smallest unknown of each component
    reps = np.full(ncomp, n, dtype=np.int64)
    np.minimum.at(reps, labels, np.arange(n))
    root_edges = sparse.coo_matrix((np.ones(ncomp, dtype=np.int8), (np.full(ncomp, n), reps)), shape=(n + 1, n + 1))
    link = sparse.coo_matrix((np.ones(u.size, dtype=np.int8), (u, v)), shape=(n + 1, n + 1))
    tree_graph = (link + root_edges).tocsr()
    _, pred = csgraph.breadth_first_order(tree_graph, n, directed=False, return_predecessors=True)
    pred = pred[:n].astype(np.int64)

    # ratio lookup for tree edges, in either direction
    keys = np.concatenate([u * (n + 1) + v, v * (n + 1) + u])
    kval = np.concatenate([ratio, F.inv(ratio)]) if ratio.size else np.zeros(0, np.int64)
    korder = np.argsort(keys, kind="stable")
    keys, kval = keys[korder], kval[korder]
    weight = np.ones(n, dtype=np.int64)
    parent = pred.copy()
    is_rootchild = parent == n
    nonroot = ~is_rootchild
    if nonroot.any():
        q = parent[nonroot] * (n + 1) + np.flatnonzero(nonroot)
        pos = np.searchsorted(keys, q)
        weight[nonroot] = kval[pos]
    parent[is_rootchild] = np.flatnonzero(is_rootchild)
    # pointer jumping: weight[x] becomes x / x_rep
    while True:
        nxt = parent[parent]
        if np.array_equal(nxt, parent):
            break
        weight = F.mul(weight, weight[parent])
        parent = nxt

    comp_dead = np.zeros(ncomp, dtype=bool)
    comp_dead[labels[dead]] = True
    if u.size:
        bad = F.mul(weight[u], ratio) != weight[v]
        comp_dead[labels[u[bad]]] = True
    alive = np.flatnonzero(~comp_dead)
    alive = alive[np.argsort(reps[alive])]
    out = mx.zeros(alive.size, n)
    where = {int(c): i for i, c in enumerate(alive)}
    if alive.size:
        sel = ~comp_dead[labels]
        row_of = np.array([where[int(c)] for c in labels[sel]], dtype=np.int64) if sel.any() else np.zeros(0, np.int64)
        out[row_of, np.flatnonzero(sel)] = weight[sel]
    return out


def hom_basis_vectors(a: QuiverRep, b: QuiverRep, method: str = "auto") -> np.ndarray:
    if not a.quiver.same_shape(b.quiver):
        raise QuiverError("representations of different quivers")
    if a.field != b.field:
        raise QuiverError("representations over different fields")
    F = a.field
    n, neq, rows, cols, vals = _equation_matrix(a, b)
    if n == 0:
        return mx.zeros(0, 0)
    if method in ("auto", "sparse"):
        sol = _two_term_solve(F, n, rows, cols, vals)
        if sol is not None:
            return sol
        if method == "sparse":
            raise QuiverError("system has equations with more than two terms")
    return _dense_solve(F, n, neq, rows, cols, vals)


def hom_space(a: QuiverRep, b: QuiverRep, method: str = "auto") -> list[RepHom]:
    """Canonical basis of Hom(a, b).

    The intertwining equations form one linear system in all vertex-map
    entries; its solution space is returned in RREF.  ``method`` picks the
    solver: "dense" always eliminates the full system, "sparse" requires at
    most two terms per equation, "auto" tries sparse and falls back.
    """
    vecs = hom_basis_vectors(a, b, method)
    homs = []
    for x in vecs:
        maps, off = [], 0
        for v in range(len(a.dims)):
            k = a.dims[v] * b.dims[v]
            maps.append(x[off : off + k].reshape(a.dims[v], b.dims[v]))
            off += k
        homs.append(RepHom(a, b, maps))
    return homs


def end_dim(rep: QuiverRep, method: str = "auto") -> int:
    return len(hom_basis_vectors(rep, rep, method))


def identity_hom(rep: QuiverRep) -> RepHom:
    return RepHom(rep, rep, [mx.identity(d) for d in rep.dims])


def simple_rep(quiver: Quiver, F: FieldSpec, vertex: int) -> QuiverRep:
    dims = [1 if v == vertex else 0 for v in range(quiver.n_vertices)]
    return QuiverRep(quiver, F, dims, [mx.zeros(dims[s], dims[t]) for s, t in quiver.arrows])


# -- the M_m families ---------------------------------------------------------
#
# Basis v_1..v_m, w_1..w_m.  The three arrow kinds act by
#   X: v_1 -> w_1;   Y: v_i -> w_i (i >= 2);   Z: v_i -> w_{i-1} (i >= 2).


def _table_image(kind: str, i: int):
    if kind == "X":
        return 1 if i == 1 else None
    if i == 1:
        return None
    return i if kind == "Y" else i - 1


def _from_table(quiver: Quiver, F: FieldSpec, labels, kinds) -> QuiverRep:
    dims = [len(l) for l in labels]
    mats = []
    for (s, t), kind in zip(quiver.arrows, kinds):
        a = mx.zeros(dims[s], dims[t])
        for r, (_, i) in enumerate(labels[s]):
            j = _table_image(kind, i)
            if j is not None and ("w", j) in labels[t]:
                a[r, labels[t].index(("w", j))] = 1
        mats.append(a)
    return QuiverRep(quiver, F, dims, mats, labels)


def _check_m(m: int):
    if m < 1:
        raise QuiverError("m must be at least 1")


def quiver_case1() -> Quiver:
    return Quiver(2, ((0, 1),) * 3, ("V", "W"), ("X", "Y", "Z"))


def quiver_case2() -> Quiver:
    return Quiver(3, ((0, 2), (1, 2), (1, 2)), ("U", "V", "W"), ("X", "Y", "Z"))


def quiver_case3(r: int) -> Quiver:
    if r < 2:
        raise QuiverError("cycle parameter r must be at least 2")
    V = lambda i: i  # noqa: E731  vertices: U=0, V_i=i, W_i=r+i
    W = lambda i: r + i  # noqa: E731
    arrows = [(V(i), W(i)) for i in range(1, r + 1)]
    arrows += [(V(i), W(i - 1 if i > 1 else r)) for i in range(1, r + 1)]
    arrows.append((0, W(1)))
    names = ("U",) + tuple(f"V{i}" for i in range(1, r + 1)) + tuple(f"W{i}" for i in range(1, r + 1))
    anames = tuple(f"Y{i}" for i in range(1, r + 1)) + tuple(f"Z{i}" for i in range(1, r + 1)) + ("X",)
    return Quiver(2 * r + 1, tuple(arrows), names, anames)


def build_mm_case1(F: FieldSpec, m: int) -> QuiverRep:
    _check_m(m)
    labels = [[("v", i) for i in range(1, m + 1)], [("w", i) for i in range(1, m + 1)]]
    return _from_table(quiver_case1(), F, labels, "XYZ")


def build_mm_case2(F: FieldSpec, m: int) -> QuiverRep:
    """U = <v_1>, V = <v_2..v_m>, W = <w_1..w_m>; X leaves U, Y and Z leave V."""
    _check_m(m)
    labels = [[("v", 1)], [("v", i) for i in range(2, m + 1)], [("w", i) for i in range(1, m + 1)]]
    return _from_table(quiver_case2(), F, labels, "XYZ")


def _residue(j: int, r: int) -> int:
    return (j - 1) % r + 1


def build_mm_case3(F: FieldSpec, r: int, m: int) -> QuiverRep:
    _check_m(m)
    quiver = quiver_case3(r)
    labels = [[("v", 1)]]
    labels += [[("v", j) for j in range(2, m + 1) if _residue(j, r) == i] for i in range(1, r + 1)]
    labels += [[("w", j) for j in range(1, m + 1) if _residue(j, r) == i] for i in range(1, r + 1)]
    return _from_table(quiver, F, labels, "Y" * r + "Z" * r + "X")


def build_mm(case: str, F: FieldSpec, m: int, r: int | None = None) -> QuiverRep:
    if case == "i":
        return build_mm_case1(F, m)
    if case == "ii":
        return build_mm_case2(F, m)
    if case == "iii":
        if r is None:
            raise QuiverError("case iii needs r")
        return build_mm_case3(F, r, m)
    raise QuiverError(f"unknown case {case!r}")


def embed_mm(case: str, F: FieldSpec, m: int, r: int | None = None) -> RepHom:
    """Inclusion M_m -> M_{m+1} sending each basis vector to the one with the same name."""
    src, dst = build_mm(case, F, m, r), build_mm(case, F, m + 1, r)
    return inclusion(src, dst)


def inclusion(src: QuiverRep, dst: QuiverRep) -> RepHom:
    maps = []
    for v, labs in enumerate(src.labels):
        a = mx.zeros(len(labs), dst.dims[v])
        for k, lab in enumerate(labs):
            a[k, dst.labels[v].index(lab)] = 1
        maps.append(a)
    return RepHom(src, dst, maps)


def proof_decompositions(rep: QuiverRep) -> dict[str, mx.Subspace]:
    """Ker Y, Ker X, Im X, Im Y for a case (i) representation."""
    F = rep.field
    X, Y = rep.arrow("X"), rep.arrow("Y")
    return {
        "ker_X": mx.kernel(F, X),
        "ker_Y": mx.kernel(F, Y),
        "im_X": mx.image(F, X),
        "im_Y": mx.image(F, Y),
    }


def is_direct_sum(parts: list[mx.Subspace], whole_dim: int) -> bool:
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total.dim == whole_dim and sum(p.dim for p in parts) == whole_dim


# -- text format ------------------------------------------------------------


def format_rep(rep: QuiverRep) -> str:
    q = rep.quiver
    lines = [rep.field.header(), f"{q.n_vertices} {len(q.arrows)}", " ".join(map(str, rep.dims))]
    lines += [f"{s} {t}" for s, t in q.arrows]
    out = "\n".join(lines) + "\n"
    for a in rep.mats:
        out += mx.format_matrix(rep.field, a, header=False)
    return out


def parse_rep(text: str) -> QuiverRep:
    lines = iter([ln for ln in text.splitlines() if ln.strip()])
    F = FieldSpec.from_header(next(lines))
    nv, na = map(int, next(lines).split())
    dims = [int(t) for t in next(lines).split()]
    arrows = tuple(tuple(map(int, next(lines).split())) for _ in range(na))
    mats = [mx.read_matrix_lines(lines, F) for _ in range(na)]
    return QuiverRep(Quiver(nv, arrows), F, dims, mats)

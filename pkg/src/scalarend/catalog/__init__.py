"""Shipped example groups: permutation generators, presentations and role metadata.

Each entry is a directory holding ``meta.txt`` (``key: value`` lines),
``group.perm`` (degree and generator count, then one-line images, 1-based),
``presentation.txt`` (generator count, then one relator per line) and
optionally ``seed.txt``, a matrix representation used to start the search
for simple modules.  Metadata-only entries carry ``meta.txt`` alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .. import grpmod as gm
from ..ext import CosetOverflow, ExtError, Presentation, ext1_cocycle
from ..gf import FieldSpec, make_field
from ..grpmod import GroupRep, PermGroup

TIERS = ("required", "stretch", "metadata")


class CatalogError(ValueError):
    pass


class TierRefusal(CatalogError):
    pass


def data_dir() -> Path:
    return Path(str(resources.files(__package__) / "data"))


def names() -> list[str]:
    return sorted(p.name for p in data_dir().iterdir() if (p / "meta.txt").exists())


def parse_meta(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        out[key.strip()] = value.strip()
    return out


def parse_roles(text: str) -> dict[str, int]:
    roles = {}
    for item in text.split():
        role, _, dim = item.partition("=")
        roles[role] = int(dim)
    return roles


@dataclass(eq=False)
class CatalogEntry:
    name: str
    meta: dict[str, str]
    field: FieldSpec
    order: int
    case: str
    r: int | None
    roles: dict[str, int]
    tier: str
    group: PermGroup | None = None
    presentation: Presentation | None = None
    seed: GroupRep | None = None
    coset_index: int | None = None
    _simples: list[GroupRep] | None = field(default=None, repr=False)

    @property
    def runnable(self) -> bool:
        return self.tier != "metadata"

    def require_runnable(self) -> None:
        if not self.runnable:
            raise TierRefusal(f"{self.name} is metadata-only; pipeline runs are refused")

    def ensure_presentation(self, cap: int = 1_000_000) -> Presentation:
        self.require_runnable()
        if not self.presentation.verified:
            try:
                self.coset_index = self.presentation.verify(cap=cap, order=self.order)
            except CosetOverflow as exc:
                raise CatalogError(f"{self.name}: coset enumeration overflow ({exc})") from exc
        return self.presentation

    def perm_module(self) -> GroupRep:
        self.require_runnable()
        return gm.perm_to_rep(self.group, self.field, self.name)

    def target_dims(self) -> list[int]:
        return sorted(self.roles.values())


def load(name: str, verify: bool | None = None, cap: int = 1_000_000) -> CatalogEntry:
    """Read an entry; required-tier presentations are coset-verified unless ``verify`` is False."""
    d = data_dir() / name
    if not (d / "meta.txt").exists():
        raise CatalogError(f"unknown catalog entry {name!r}; known: {', '.join(names())}")
    meta = parse_meta((d / "meta.txt").read_text())
    p, m = map(int, meta["field"].split())
    tier = meta.get("tier", "metadata")
    if tier not in TIERS:
        raise CatalogError(f"{name}: unknown tier {tier!r}")
    e = CatalogEntry(
        name=name,
        meta=meta,
        field=make_field(p, m),
        order=int(meta["order"]),
        case=meta.get("case", ""),
        r=int(meta["r"]) if "r" in meta else None,
        roles=parse_roles(meta.get("roles", "")),
        tier=tier,
    )
    if tier == "metadata":
        return e
    e.group = PermGroup.parse((d / "group.perm").read_text())
    if e.group.order() != e.order:
        raise CatalogError(f"{name}: generators give order {e.group.order()}, metadata says {e.order}")
    e.presentation = Presentation.parse((d / "presentation.txt").read_text(), e.group)
    if e.presentation.ngens != len(e.group.gens):
        raise CatalogError(f"{name}: presentation and group have different generator counts")
    if (d / "seed.txt").exists():
        e.seed = gm.parse_rep((d / "seed.txt").read_text(), name)
        if e.seed.field != e.field or e.seed.ngens != len(e.group.gens):
            raise CatalogError(f"{name}: seed module does not match the entry")
    if verify if verify is not None else tier == "required":
        e.ensure_presentation(cap)
    return e


# -- simple modules --------------------------------------------------------------------


def _seed_modules(e: CatalogEntry, spec: str) -> list[GroupRep]:
    """``seed k1,k2,...``: tensor product of Frobenius twists of the seed."""
    if e.seed is None:
        raise CatalogError(f"{e.name}: discovery asks for a seed but none is shipped")
    twists = [int(k) for k in spec.split(",")]
    M = gm.frobenius_twist(e.seed, twists[0])
    for k in twists[1:]:
        M = gm.tensor(M, gm.frobenius_twist(e.seed, k))
    M = GroupRep(M.field, M.gens, e.name, "seed")
    pres = e.ensure_presentation()
    one = np.eye(M.dim, dtype=np.int64)
    for w in pres.relators:
        if not np.array_equal(M.evaluate(w), one):
            raise CatalogError(f"{e.name}: seed product {spec} violates relator {gm.format_word(w)}")
    return [M]


def _starting_modules(e: CatalogEntry) -> list[GroupRep]:
    out = []
    for part in e.meta.get("discovery", "perm").split(";"):
        part = part.strip()
        if part == "perm":
            out.append(e.perm_module())
        elif part.startswith("seed"):
            out += _seed_modules(e, part[4:].strip())
        elif part:
            raise CatalogError(f"{e.name}: unknown discovery step {part!r}")
    return out


@dataclass
class Discovery:
    simples: list[GroupRep]
    log: list[str]


def _name_simples(simples: list[GroupRep]) -> None:
    by_dim: dict[int, list[GroupRep]] = {}
    for s in simples:
        by_dim.setdefault(s.dim, []).append(s)
    for d, group in by_dim.items():
        if len(group) == 1:
            group[0].name = str(d)
        else:
            for k, s in enumerate(group):
                s.name = f"{d}{chr(ord('a') + k)}"


def discover_simples(e: CatalogEntry, seed: int = 0, max_product: int = 200) -> Discovery:
    """Chop the starting modules, then close under duals, twists and tensor products.

    Tensor products are taken in order of increasing dimension and the search
    stops once every target dimension has been found.
    """
    e.require_runnable()
    found: list[GroupRep] = []
    log: list[str] = []

    def add(s: GroupRep, how: str) -> bool:
        if not gm.is_absolutely_irreducible(s, seed):
            log.append(f"skip {s.dim} from {how}: not absolutely irreducible")
            return False
        for t in found:
            if t.dim == s.dim and gm.iso_test(s, t, seed)[0]:
                return False
        s = GroupRep(s.field, s.gens, e.name, "")
        found.append(s)
        log.append(f"found {s.dim} from {how}")
        for k in range(1, e.field.m):
            add(gm.frobenius_twist(s, k), f"twist^{k} of {s.dim}")
        add(gm.dual(s), f"dual of {s.dim}")
        return True

    def done() -> bool:
        have = {s.dim for s in found}
        return all(d in have for d in e.roles.values())

    for M in _starting_modules(e):
        for f, _ in gm.chop(M, seed):
            add(f, f"chop of {M.name or 'perm'} ({M.dim})")
    tried: set[tuple[int, int]] = set()
    while not done():
        pairs = [
            (found[i].dim * found[j].dim, i, j)
            for i, j in itertools.combinations_with_replacement(range(len(found)), 2)
            if (i, j) not in tried and found[i].dim > 1 and found[j].dim > 1
            and found[i].dim * found[j].dim <= max_product
        ]
        if not pairs:
            raise CatalogError(f"{e.name}: target dims {e.target_dims()} not reached by tensor closure")
        _, i, j = min(pairs)
        tried.add((i, j))
        for f, _ in gm.chop(gm.tensor(found[i], found[j]), seed):
            add(f, f"chop of {found[i].dim}x{found[j].dim}")
    found.sort(key=lambda s: s.dim)
    _name_simples(found)
    return Discovery(found, log)


def simples(e: CatalogEntry, seed: int = 0) -> list[GroupRep]:
    if e._simples is None:
        e._simples = discover_simples(e, seed).simples
    return e._simples


def find_simple(e: CatalogEntry, selector: str, seed: int = 0) -> GroupRep:
    """Select by name (``3a``), by dimension (``dim4``, first of that dimension) or by role."""
    ss = simples(e, seed)
    if selector in e.roles:
        return assign_roles(e, seed=seed).simples[selector]
    if selector.startswith("dim"):
        d = int(selector[3:])
        for s in ss:
            if s.dim == d:
                return s
        raise CatalogError(f"{e.name}: no simple of dimension {d}")
    for s in ss:
        if s.name == selector:
            return s
    raise CatalogError(f"{e.name}: no simple named {selector!r}; have {[s.name for s in ss]}")


# -- role assignment -----------------------------------------------------------------


def required_ext(case: str, r: int | None) -> dict[tuple[str, str], int]:
    """Minimum dim Ext^1(source role, target role) each family needs."""
    if case == "i":
        return {("S", "T"): 3}
    if case == "ii":
        return {("R", "T"): 1, ("S", "T"): 2}
    if case == "iii":
        need: dict[tuple[str, str], int] = {("R", "T1"): 1}
        for i in range(1, r + 1):
            prev = i - 1 if i > 1 else r
            need[(f"S{i}", f"T{i}")] = need.get((f"S{i}", f"T{i}"), 0) + 1
            need[(f"S{i}", f"T{prev}")] = need.get((f"S{i}", f"T{prev}"), 0) + 1
        return need
    raise CatalogError(f"unknown case {case!r}")


@dataclass
class RoleAssignment:
    simples: dict[str, GroupRep]
    ext_dims: dict[tuple[str, str], int]
    tried: list[str]


def assign_roles(e: CatalogEntry, seed: int = 0) -> RoleAssignment:
    """First assignment (in discovery order) of simples to roles meeting the Ext^1 needs.

    All candidate assignments are evaluated, and each is recorded with the
    Ext^1 dimensions it gave, so the log shows which alternatives also work.
    """
    ss = simples(e, seed)
    pres = e.ensure_presentation()
    roles = sorted(e.roles)
    cands = [[s for s in ss if s.dim == e.roles[role]] for role in roles]
    need = {k: v for k, v in required_ext(e.case, e.r).items() if k[0] in e.roles and k[1] in e.roles}
    cache: dict[tuple[int, int], int] = {}

    def ext(a: GroupRep, b: GroupRep) -> int:
        key = (id(a), id(b))
        if key not in cache:
            cache[key] = len(ext1_cocycle(a, b, pres, allow_isomorphic=True))
        return cache[key]

    tried, chosen = [], None
    for combo in itertools.product(*cands):
        if len({id(s) for s in combo}) < len(combo):
            continue
        pick = dict(zip(roles, combo))
        dims = {k: ext(pick[k[0]], pick[k[1]]) for k in need}
        tag = " ".join(f"{r}={pick[r].name}" for r in roles)
        ok = all(dims[k] >= v for k, v in need.items())
        tried.append(f"{tag}: " + " ".join(f"Ext({a},{b})={d}" for (a, b), d in sorted(dims.items()))
                     + (" ok" if ok else " rejected"))
        if ok and chosen is None:
            chosen = (pick, dims)
    if chosen is not None:
        return RoleAssignment(chosen[0], chosen[1], tried)
    raise CatalogError(f"{e.name}: no assignment of simples to roles meets the Ext^1 requirements")


# -- entry verification ---------------------------------------------------------------


def verify_entry(e: CatalogEntry, seed: int = 0, pipeline: bool | None = None) -> list[str]:
    """``KEY: value`` lines; the last is ``VERDICT: PASS`` or ``VERDICT: FAIL <reason>``."""
    lines = [f"ENTRY: {e.name}", f"TIER: {e.tier}", f"FIELD: {e.field.header()}", f"ORDER: {e.order}"]
    if not e.runnable:
        lines.append("VERDICT: FAIL metadata-only entry; pipeline refused")
        return lines
    computed = e.group.order()
    lines.append(f"PERM_ORDER: {computed}")
    if computed != e.order:
        lines.append("VERDICT: FAIL group order mismatch")
        return lines
    try:
        e.ensure_presentation()
        idx = e.coset_index
    except (CatalogError, ExtError) as exc:
        lines.append(f"VERDICT: FAIL presentation: {exc}")
        return lines
    lines.append(f"COSET_INDEX: {idx}")
    if pipeline if pipeline is not None else e.tier == "required":
        ss = simples(e, seed)
        lines.append("SIMPLE_DIMS: " + ",".join(str(s.dim) for s in ss))
        missing = [d for d in set(e.roles.values()) if d not in {s.dim for s in ss}]
        if missing:
            lines.append(f"VERDICT: FAIL target dims {missing} not found")
            return lines
        try:
            ra = assign_roles(e, seed)
        except CatalogError as exc:
            lines.append(f"VERDICT: FAIL {exc}")
            return lines
        lines += [f"ROLE_TRY: {t}" for t in ra.tried]
        lines.append("ROLES: " + " ".join(f"{k}={v.name}" for k, v in sorted(ra.simples.items())))
    lines.append("VERDICT: PASS")
    return lines



# -- ingredients for assembly ------------------------------------------------------------


def basis_change(F: FieldSpec, k: int) -> np.ndarray:
    """Upper unitriangular ones with the field generator on the diagonal (q > 2)."""
    g = np.triu(np.ones((k, k), dtype=np.int64))
    if F.q > 2:
        np.fill_diagonal(g, F.generator)
    return g


def ingredients(e: CatalogEntry, basis: str = "canonical", seed: int = 0):
    """Simples, classes and presentation for building the entry's M_m."""
    from ..assembly import Ingredients, choose_classes

    ra = assign_roles(e, seed)
    pres = e.ensure_presentation()
    change = None
    if basis == "alt":
        change = {k: basis_change(e.field, v) for k, v in ra.ext_dims.items()}
    elif basis != "canonical":
        raise CatalogError(f"unknown basis choice {basis!r}")
    classes = choose_classes(e.case, ra.simples, pres, e.r, change=change)
    return Ingredients(ra.simples, classes, simples(e, seed), pres)

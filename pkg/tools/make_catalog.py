"""Regenerate the shipped catalog files (group.perm, presentation.txt, seed.txt, meta.txt).

Run from the repository root:  python3 tools/make_catalog.py [name ...]
Presentations are searched from scratch except for m12_f2, so l42_f2 takes a while.
"""

import itertools
import sys
from pathlib import Path

import numpy as np

from scalarend import matrix as mx
from scalarend.ext import Presentation, find_presentation
from scalarend.gf import make_field
from scalarend.grpmod import GroupRep, parse_word, PermGroup, format_rep, perm_from_cycles, perm_mul

DATA = Path(__file__).resolve().parents[1] / "src" / "scalarend" / "catalog" / "data"


def projective_action(F, mats, n):
    """Permutations induced on the points of P^{n-1}(F), rows normalised to a leading 1."""
    pts = []
    for v in itertools.product(range(F.q), repeat=n):
        nz = [i for i, x in enumerate(v) if x]
        if nz and v[nz[0]] == 1:
            pts.append(v)
    idx = {p: i for i, p in enumerate(pts)}
    perms = []
    for M in mats:
        img = []
        for p in pts:
            w = F.dot(np.array(p)[None, :], M)[0]
            lead = int(w[np.nonzero(w)[0][0]])
            img.append(idx[tuple(int(x) for x in F.mul(w, F.inv(lead)))])
        perms.append(tuple(img))
    return PermGroup(len(pts), tuple(perms))


def a6():
    g = PermGroup(6, (perm_from_cycles(6, [(1, 2, 3, 4, 5)]), perm_from_cycles(6, [(4, 5, 6)])))
    return g, None


def l25():
    F = make_field(5, 2)
    mats = [np.array([[1, 1], [0, 1]]), np.array([[0, 1], [F.neg(1), F.generator]])]
    return projective_action(F, mats, 2), GroupRep(F, mats)


def l42():
    F = make_field(2)
    mats = [
        np.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
        np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 1]]),
    ]
    return projective_action(F, mats, 4), GroupRep(F, mats)


def m12():
    # a in class 2B, b of order 3, ab of order 11; both generate M12 on 12 points
    a = (4, 3, 2, 1, 0, 5, 6, 10, 11, 9, 7, 8)
    b = (4, 11, 7, 5, 8, 10, 1, 9, 0, 2, 3, 6)
    return PermGroup(12, (a, b)), None


# Cayley-graph search is far too slow at order 95040; these power relators were
# found by taking orders of short words and are certified through cosets of <ab>.
FIXED = {
    "m12_f2": Presentation(
        2,
        [parse_word(w) for w in ("aa", "bbb", "ab" * 11, "abAB" * 6, "abaB" * 6, "ababaB" * 6, "ababaBaB" * 5)],
        subgroup=parse_word("ab"),
    )
}


BUILDERS = {"a6_f9": a6, "l25_f25": l25, "l42_f2": l42, "m12_f2": m12}


def main(names):
    for name in names or BUILDERS:
        group, seed = BUILDERS[name]()
        d = DATA / name
        d.mkdir(parents=True, exist_ok=True)
        (d / "group.perm").write_text(group.format())
        if seed is not None:
            (d / "seed.txt").write_text(format_rep(seed))
        if name in FIXED:
            pres = FIXED[name]
            pres.target = group
            pres.verify()
        else:
            pres = find_presentation(group, cap_factor=4)
        (d / "presentation.txt").write_text(pres.format())
        print(name, group.order(), len(pres.relators), "relators")


if __name__ == "__main__":
    main(sys.argv[1:])

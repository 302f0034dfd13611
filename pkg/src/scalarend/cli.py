"""Command line entry point.

Every command prints a report of ``KEY: value`` lines ending with
``VERDICT: PASS`` or ``VERDICT: FAIL <reason>``; the exit status is 0 exactly
when the verdict is PASS and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from . import assembly as asm
from . import catalog as cat
from . import grpmod as gm
from . import quiver as qv
from .ext import ExtError, ext1_cocycle, ext1_freehull
from .gf import FieldError, field_of_order


class Failure(Exception):
    """Ends a command with VERDICT: FAIL."""


class Report:
    def __init__(self, command: str, args):
        self.lines = [f"COMMAND: {command}", f"VERSION: {__version__}", f"SEED: {args.seed}",
                      f"CAPS: coset={args.coset_cap} freehull={args.freehull_cap}"]
        self.failure = ""

    def add(self, key: str, value) -> None:
        self.lines.append(f"{key}: {value}")

    def fail(self, reason: str) -> None:
        if not self.failure:
            self.failure = reason

    def text(self) -> str:
        verdict = "VERDICT: PASS" if not self.failure else f"VERDICT: FAIL {self.failure}"
        return "\n".join(self.lines + [verdict]) + "\n"


def m_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad m range {text!r}; use k or a..b") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"m range {text!r} must satisfy 1 <= a <= b")
    return list(range(lo, hi + 1))


def _field(q: int):
    try:
        return field_of_order(q)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- commands ---------------------------------------------------------------------


def cmd_qend(args, rep: Report) -> None:
    F = args.field
    rep.add("FIELD", F.header())
    rep.add("CASE", args.case + (f" r={args.r}" if args.case == "iii" else ""))
    bad = []
    for m in args.m:
        d = qv.end_dim(qv.build_mm(args.case, F, m, args.r))
        rep.add(f"END_DIM[{m}]", d)
        if d != 1:
            bad.append(m)
    if bad:
        rep.fail(f"End not scalar for m={','.join(map(str, bad))}")


def _entry(args, rep: Report) -> cat.CatalogEntry:
    e = cat.load(args.entry, verify=False)
    rep.add("ENTRY", e.name)
    rep.add("FIELD", e.field.header())
    e.require_runnable()
    e.ensure_presentation(args.coset_cap)
    rep.add("COSET_INDEX", e.coset_index)
    return e


def _module(e: cat.CatalogEntry, name: str, seed: int) -> gm.GroupRep:
    if name == "perm":
        return e.perm_module()
    return cat.find_simple(e, name, seed)


def cmd_chop(args, rep: Report) -> None:
    e = _entry(args, rep)
    M = _module(e, args.module, args.seed)
    rep.add("MODULE_DIM", M.dim)
    factors = gm.composition_factors(M, args.seed)
    rep.add("FACTORS", ",".join(str(f.dim) for f in sorted(factors, key=lambda f: f.dim)))
    for f, k in sorted(gm.group_factors(factors, args.seed), key=lambda x: x[0].dim):
        absirr = gm.is_absolutely_irreducible(f, args.seed)
        rep.add(f"FACTOR[{f.dim}]", f"mult={k} absolutely_irreducible={'yes' if absirr else 'no'} end_dim={gm.end_dim(f)}")


def cmd_ext(args, rep: Report) -> None:
    e = _entry(args, rep)
    S, T = cat.find_simple(e, args.s, args.seed), cat.find_simple(e, args.t, args.seed)
    rep.add("S", f"{S.name} dim={S.dim}")
    rep.add("T", f"{T.name} dim={T.dim}")
    dims = {}
    if args.method in ("cocycle", "both"):
        dims["cocycle"] = len(ext1_cocycle(S, T, e.presentation, allow_isomorphic=True))
    if args.method in ("freehull", "both"):
        elems = e.group.elements()
        dims["freehull"] = ext1_freehull(S, T, elems, cap=args.freehull_cap)
    for k, v in dims.items():
        rep.add(f"EXT1_DIM_{k.upper()}", v)
    if len(set(dims.values())) > 1:
        rep.fail("methods disagree")
    rep.add("EXT1_DIM", next(iter(dims.values())))


def _family(args, e: cat.CatalogEntry) -> str:
    case = args.case or e.case
    if case != e.case:
        raise Failure(f"entry {e.name} carries case {e.case}, not {case}")
    return case


def cmd_build(args, rep: Report) -> None:
    e = _entry(args, rep)
    case = _family(args, e)
    ing = cat.ingredients(e, args.basis, args.seed)
    rep.add("ROLES", " ".join(f"{k}={v.name}" for k, v in sorted(ing.simples.items())))
    rep.add("BASIS", args.basis)
    for m in args.m:
        b = asm.blueprint(case, m, e.r, e.field)
        M = asm.build_group_mm(b, ing)
        bad = asm.relators_hold(M, ing.presentation)
        rep.add(f"DIM[{m}]", M.dim)
        rep.add(f"RELATORS_OK[{m}]", "yes" if not bad else f"no ({bad})")
        if bad:
            rep.fail(f"relator {bad} fails for m={m}")
        if args.write_dir:
            out = Path(args.write_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{e.name}_{case}_m{m}.rep").write_text(gm.format_rep(M))


def cmd_verify(args, rep: Report, certify: bool = False) -> None:
    e = _entry(args, rep)
    case = _family(args, e)
    ing = cat.ingredients(e, args.basis, args.seed)
    rep.add("ROLES", " ".join(f"{k}={v.name}" for k, v in sorted(ing.simples.items())))
    rep.add("BASIS", args.basis)
    for m in args.m:
        b = asm.blueprint(case, m, e.r, e.field)
        M = asm.build_group_mm(b, ing)
        emb = asm.embed_group_mm(b, asm.blueprint(case, m + 1, e.r, e.field), ing)
        r = asm.verify_theorem_mm(M, b, ing, embedding=emb, certify=certify)
        for line in r.lines()[1:]:
            key, _, value = line.partition(": ")
            rep.add(f"{key}[{m}]", value)
        if not r.ok:
            rep.fail(f"m={m}: {r.failure}")


def cmd_certify(args, rep: Report) -> None:
    e = _entry(args, rep)
    if args.module == "mm":
        cmd_verify_cert(args, rep, e)
        return
    # direct sum of a simple with itself: the certificate must refuse
    S = cat.find_simple(e, args.module, args.seed)
    M = gm.direct_sum(S, S)
    cert = asm.centraliser_certificate(M, (0, S.dim))
    rep.add("MODULE", f"{S.name}+{S.name}")
    for line in cert.lines():
        key, _, value = line.partition(": ")
        rep.add(key, value)
    if not cert.ok:
        rep.fail(cert.reason)


def cmd_verify_cert(args, rep: Report, e: cat.CatalogEntry) -> None:
    case = _family(args, e)
    ing = cat.ingredients(e, args.basis, args.seed)
    rep.add("ROLES", " ".join(f"{k}={v.name}" for k, v in sorted(ing.simples.items())))
    for m in args.m:
        b = asm.blueprint(case, m, e.r, e.field)
        M = asm.build_group_mm(b, ing)
        cert = asm.centraliser_certificate(M, asm.quotient_slot(b, ing))
        for line in cert.lines():
            key, _, value = line.partition(": ")
            rep.add(f"{key}[{m}]", value)
        if not cert.ok:
            rep.fail(f"m={m}: {cert.reason}")


def cmd_search(args, rep: Report) -> None:
    """Look for a case i pair: non-isomorphic simples S, T with End 1 and dim Ext^1(S, T) >= 3."""
    e = _entry(args, rep)
    ss = [S for S in cat.simples(e, args.seed) if gm.end_dim(S) == 1]
    rep.add("SIMPLES", ",".join(S.name for S in ss))
    hits, best = [], 0
    for S in ss:
        for T in ss:
            if S is T:
                continue
            d = len(ext1_cocycle(S, T, e.presentation, allow_isomorphic=True))
            best = max(best, d)
            rep.add(f"EXT1_DIM[{S.name},{T.name}]", d)
            if d >= args.min_ext:
                hits.append(f"{S.name}->{T.name}")
    rep.add("MAX_EXT1_DIM", best)
    # the search reports; finding nothing is a result, not a failure
    rep.add("CASE_I_PAIRS", ",".join(hits) or "none")


# -- argument parsing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomised steps (default 0)")
    common.add_argument("--coset-cap", type=int, default=1_000_000, help="coset table limit")
    common.add_argument("--freehull-cap", type=int, default=20000, help="free hull dimension limit")
    common.add_argument("--out", help="write the report here as well as to stdout")

    p = argparse.ArgumentParser(prog="scalarend", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("qend", parents=[common], help="End dimension of the quiver modules M_m")
    q.add_argument("--case", choices=("i", "ii", "iii"), required=True)
    q.add_argument("--r", type=int, help="half cycle length for case iii")
    q.add_argument("--field", type=lambda s: _field(int(s)), required=True, help="field order q")
    q.add_argument("--m", type=m_range, required=True, help="k or a..b")

    c = sub.add_parser("chop", parents=[common], help="composition factors of a module")
    c.add_argument("--entry", required=True)
    c.add_argument("--module", default="perm", help="perm, or a simple selector")

    x = sub.add_parser("ext", parents=[common], help="dim Ext^1(S, T)")
    x.add_argument("--entry", required=True)
    x.add_argument("--s", required=True, help="simple selector: role, name or dimN")
    x.add_argument("--t", required=True)
    x.add_argument("--method", choices=("cocycle", "freehull", "both"), default="cocycle")

    z = sub.add_parser("search", parents=[common], help="search the simples of an entry for a case i pair")
    z.add_argument("--entry", required=True)
    z.add_argument("--min-ext", type=int, default=3, help="Ext^1 dimension needed (default 3)")

    for name, helptext in (("build", "assemble M_m"), ("verify", "check M_m against the theorem"),
                           ("certify", "centraliser certificate for M_m")):
        b = sub.add_parser(name, parents=[common], help=helptext)
        b.add_argument("--entry", required=True)
        b.add_argument("--case", choices=("i", "ii", "iii"))
        b.add_argument("--m", type=m_range, required=True, help="k or a..b")
        b.add_argument("--basis", choices=("canonical", "alt"), default="canonical")
        if name == "build":
            b.add_argument("--write-dir", help="directory for the module files")
        if name == "certify":
            b.add_argument("--module", default="mm", help="mm, or a simple X to certify X+X")
    return p


COMMANDS = {
    "qend": cmd_qend,
    "chop": cmd_chop,
    "ext": cmd_ext,
    "build": cmd_build,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "search": cmd_search,
}


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    rep = Report(args.command, args)
    if args.command == "qend" and args.case == "iii" and (args.r is None or args.r < 2):
        build_parser().error("case iii needs --r at least 2")
    try:
        COMMANDS[args.command](args, rep)
    except (Failure, cat.CatalogError, ExtError, asm.AssemblyError, gm.ModuleError, qv.QuiverError) as exc:
        rep.fail(str(exc))
    text = rep.text()
    if args.out:
        Path(args.out).write_text(text)
    return (0 if not rep.failure else 1), text


def main(argv=None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

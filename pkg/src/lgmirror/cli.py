"""Command-line interface: ``lgmirror <command> --poly ... [--group FILE]``."""
from __future__ import annotations

import argparse
import json
import sys

from .errors import LGError, LoopEvenAmbiguity, ParseError, SizeLimitExceeded
from .exact import fmt
from .groups import (DEFAULT_GROUP_CAP, DiagonalSymmetry, GroupElement, Permutation,
                     dual_group, enumerate_sigma, gdiag)
from .io import read_group, read_polynomial
from .mirror import DEFAULT_PHI_CAP, dsc_check, krawitz_candidates, verify_mirror
from .orbits import FiberKey, projected_dimensions
from .poly import kreuzer_basis, milnor_number, reduce_W_sigma, restrict
from .sectors import sector_basis

COMMANDS = ("weights", "milnor", "basis", "diag-group", "sigma", "state-space", "krawitz",
            "mirror-check", "dsc-check")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lgmirror", description="Landau-Ginzburg state spaces and BHK mirror checks.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--poly", required=True, help="polynomial text or a file containing it")
    p.add_argument("--relabel", action="store_true", help="compress variable indices to 1..N")
    p.add_argument("--group", help="group specification file (TOML)")
    p.add_argument("--model", choices=("A", "B"), default="A")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--method", choices=("orbits", "centralizer"), default="orbits",
                   help="state-space: count G-orbits or centralizer invariants")
    p.add_argument("--sector", default="", help="basis: cycle string of the sector permutation")
    p.add_argument("--diag", default=None,
                   help="comma-separated rationals: the sector's diagonal part (basis, krawitz)")
    p.add_argument("--monomial", default=None, help="krawitz: comma-separated exponents")
    p.add_argument("--fiber", action="append", default=None, metavar="PERM|ALPHA|MONOMIAL",
                   help="mirror-check/dsc-check: restrict to the S-orbit of this fiber")
    p.add_argument("--cap-group-size", type=int, default=DEFAULT_GROUP_CAP)
    p.add_argument("--cap-phi-search", type=int, default=DEFAULT_PHI_CAP)
    return p


def _rationals(text, n, what):
    parts = [t for t in text.split(",") if t.strip()]
    if len(parts) != n:
        raise ParseError("%s needs %d entries, got %d" % (what, n, len(parts)))
    try:
        return DiagonalSymmetry.from_fractions([t.strip() for t in parts])
    except (ValueError, ZeroDivisionError):
        raise ParseError("bad rational in %s %r" % (what, text)) from None


def _ints(text, n, what):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError("bad integer in %s %r" % (what, text)) from None
    if len(vals) != n:
        raise ParseError("%s needs %d entries, got %d" % (what, n, len(vals)))
    return tuple(vals)


def _fiber(text, N):
    try:
        perm, alpha, mono = text.split("|")
    except ValueError:
        raise ParseError("fiber must look like PERM|ALPHA|MONOMIAL, got %r" % text) from None
    sigma = Permutation.from_cycles(perm, N)
    k = len(sigma.cycles())
    return FiberKey(sigma, _rationals(alpha, k, "fiber alpha"), _ints(mono, k, "fiber monomial"))


def _need_group(args, W):
    if not args.group:
        raise ParseError("--group is required for %s" % args.command)
    return read_group(args.group, W, args.cap_group_size)


def _monomial_text(m):
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append("x%d" % (i + 1))
        elif e:
            parts.append("x%d^%d" % (i + 1, e))
    return "*".join(parts) or "1"


def run(args) -> tuple:
    """Return (document, text) for the parsed arguments."""
    W = read_polynomial(args.poly, args.relabel)
    N = W.n_vars
    cmd = args.command
    if cmd == "weights":
        w = [fmt(q) for q in W.weights]
        return {"weights": w}, " ".join(w)
    if cmd == "milnor":
        mu = milnor_number(W)
        return {"milnor_number": mu}, str(mu)
    if cmd == "basis":
        if args.sector or args.diag:
            sigma = Permutation.from_cycles(args.sector, N)
            lam = _rationals(args.diag, N, "--diag") if args.diag else DiagonalSymmetry.zero(N)
            elems = sector_basis(W, GroupElement(sigma, lam))
            doc = {"basis": [b.to_dict() for b in elems]}
            return doc, "\n".join(str(b) for b in elems)
        basis = kreuzer_basis(W)
        return {"basis": [list(m) for m in basis]}, "\n".join(_monomial_text(m) for m in basis)
    if cmd == "diag-group":
        D = gdiag(W)
        doc = {"order": D.order, "generators": [g.to_strings() for g in D.generators()]}
        lines = ["G^diag order %d" % D.order] + ["  %s" % g for g in D.generators()]
        if args.group:
            G = _need_group(args, W)
            HT = dual_group(W, G.H)
            doc["H"] = {"order": G.H.order, "generators": [g.to_strings() for g in G.H.generators()]}
            doc["dual"] = {"order": HT.order, "generators": [g.to_strings() for g in HT.generators()]}
            lines += ["H order %d" % G.H.order] + ["  %s" % g for g in G.H.generators()]
            lines += ["H^T order %d" % HT.order] + ["  %s" % g for g in HT.generators()]
        return doc, "\n".join(lines)
    if cmd == "sigma":
        perms = enumerate_sigma(W)
        return {"permutations": [str(s) for s in perms]}, "\n".join(str(s) for s in perms)
    if cmd == "state-space":
        G = _need_group(args, W)
        dims = projected_dimensions(W, G, args.model, args.method)
        doc = {"model": args.model, "dimensions": dims.to_list(), "total": dims.total()}
        return doc, dims.format_table() + "\ntotal %d" % dims.total()
    if cmd == "krawitz":
        sigma = Permutation.from_cycles(args.sector, N)
        Ws = reduce_W_sigma(W, sigma)
        n = Ws.n_vars
        alpha = _rationals(args.diag, n, "--diag") if args.diag else DiagonalSymmetry.zero(n)
        if not alpha.is_symmetry_of(Ws):
            raise ParseError("%s is not a diagonal symmetry of W^sigma" % alpha)
        mono = _ints(args.monomial, n, "--monomial") if args.monomial else (0,) * n
        F = [k for k in range(n) if alpha.num[k] == 0]
        R = restrict(Ws, F)
        if any(mono[k] for k in range(n) if k not in F) or (
                R is not None and tuple(mono[k] for k in F) not in set(kreuzer_basis(R))):
            raise ParseError("monomial is not in the Milnor basis of the sector")
        cands = krawitz_candidates(Ws, alpha, mono)
        items = [{"monomial": list(m), "alpha": a.to_strings()} for a, m in cands]
        doc = {"source": {"sigma": str(sigma), "monomial": list(mono), "alpha": alpha.to_strings()},
               "partners": items, "ambiguous": len(items) > 1}
        text = "\n".join("[%s; %s]" % (_monomial_text(m), a) for a, m in cands)
        if len(items) > 1:
            text += "\n(two partners: even loop, matched as a two-dimensional block)"
        return doc, text
    if cmd in ("mirror-check", "dsc-check"):
        G = _need_group(args, W)
        fibers = [_fiber(f, N) for f in args.fiber] if args.fiber else None
        if cmd == "dsc-check":
            res = dsc_check(W, G, fibers)
            text = "DSC: %s" % ("pass" if res["passed"] else "fail")
            for w in res["witnesses"]:
                text += "\n  %s side fiber %s scaled by %s (scalar %s)" % (
                    w["side"], _fiber_text(w["fiber"]), _elem_text(w["scaler"]), w["scalar"])
            return res, text
        rep = verify_mirror(W, G, fibers, args.cap_phi_search)
        return rep.to_dict(), _report_text(rep)
    raise ParseError("unknown command %s" % cmd)


def _fiber_text(d):
    return "[%s; %s] over %s" % (",".join(map(str, d["monomial"])), ",".join(d["alpha"]), d["sigma"])


def _elem_text(d):
    return "%s(%s)" % (d["perm"], ",".join(d["diag"]))


def _table_text(items):
    if items is None:
        return "  (not computed: exceeds the group-size cap)"
    return "\n".join("  (%s, %s)  %d" % (it["bidegree"][0], it["bidegree"][1], it["dim"]) for it in items)


def _report_text(rep) -> str:
    lines = ["dual polynomial: %s" % rep.dual_pair["polynomial"],
             "dual group order: %d" % rep.dual_pair["group"]["order"],
             "scope: %s" % rep.scope,
             "DSC: %s" % ("pass" if rep.dsc["passed"] else "fail")]
    for w in rep.dsc["witnesses"]:
        lines.append("  %s side fiber %s scaled by %s (scalar %s)" % (
            w["side"], _fiber_text(w["fiber"]), _elem_text(w["scaler"]), w["scalar"]))
    bad = [c for c in rep.orbit_counts if not c["match"]]
    lines.append("orbit counts: %d fiber pairs, %d mismatched" % (len(rep.orbit_counts), len(bad)))
    lines.append("equivariant Phi: %s (%d orbits matched)" % (
        "found" if rep.phi["passed"] else "not found", rep.phi["matched_orbits"]))
    for w in rep.phi["witnesses"]:
        lines.append("  fiber %s: %s (A: %d, B: %d)" % (
            _fiber_text(w["block"][0]), w["reason"], w["count_A"], w["count_B"]))
        if "fiber_action_A" in w:
            lines.append("    A-side orbit sizes %s, B-side orbit sizes %s" % (
                [a["orbit_size"] for a in w["fiber_action_A"]],
                [b["orbit_size"] for b in w["fiber_action_B"]]))
    if rep.ambiguous_blocks:
        lines.append("even-loop blocks: %d" % len(rep.ambiguous_blocks))
    lines.append("A-model table:")
    lines.append(_table_text(rep.tables["A"]))
    lines.append("B-model table (dual):")
    lines.append(_table_text(rep.tables["B"]))
    lines.append("verdict: %s" % rep.verdict)
    if rep.first_difference:
        d = rep.first_difference
        lines.append("first difference at (%s, %s): A %d, B %d" % (
            d["bidegree"][0], d["bidegree"][1], d["dim_A"], d["dim_B"]))
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text = run(args)
    except SizeLimitExceeded as exc:
        sys.stderr.write("size limit: %s\n" % exc)
        return 2
    except LoopEvenAmbiguity as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except LGError as exc:
        sys.stderr.write("error: %s: %s\n" % (type(exc).__name__, exc))
        return 1
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
